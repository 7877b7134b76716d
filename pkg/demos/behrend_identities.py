"""
Behrend values of pairs of objects, stable pairs and the motivic side.

Ext data are synthetic: a profile of dimensions obeying Serre duality and a
potential on Ext^1.  The product formula is checked on a few of them, then
the stable pair sign, then the motivic Milnor fibre of the cusp.
"""

from cyclic_linf import (
    ExtProfile, check_formula1, euler_specialize, milnor_number, motivic_milnor_fiber,
    parse_polynomial,
)
from cyclic_linf.corpus import load_resolutions
from cyclic_linf.joyce_song import behrend_of_object, stable_pair_chain
from cyclic_linf.potential import FormalPowerSeries

point = FormalPowerSeries((), {})
spherical = (1, 0, 0, 1)
print("nu(spherical) =", behrend_of_object(spherical, point))
print("nu(x^3 object) =", behrend_of_object((1, 1, 1, 1), parse_polynomial("a^3")))

for mixed in [(0, 0, 0, 0), (0, 2, 0, 1), (0, 1, 1, 0)]:
    p = ExtProfile.direct((1, 1, 1, 1), (1, 2, 2, 1), mixed)
    r = check_formula1(p, parse_polynomial("a^3"), parse_polynomial("c^2+d^3"))
    print("Ext(E1,E2) = %s: lhs %d, rhs %d, %s" % (mixed, r.details["lhs"], r.details["rhs"],
                                                   r.status))

print()
for chiF, nuF in [(0, 1), (1, 2), (2, -1)]:
    c = stable_pair_chain(chiF, nuF)
    print("chi(F)=%d nu(F)=%d: stated %d, as written %d, recomputed %d"
          % (chiF, nuF, c["stated"], c["as_written"], c["chain"]))

print()
datum, germ = load_resolutions()["cusp"]
S = motivic_milnor_fiber(datum)
print("S(cusp) =", S)
print("Euler specialisation:", euler_specialize(S), " 1 - mu:", 1 - milnor_number(germ)[0])
