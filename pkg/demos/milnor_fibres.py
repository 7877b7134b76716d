"""
Milnor numbers, Behrend values and two identities they satisfy.

Each germ is a polynomial; the local algebra is computed exactly and comes
with a certificate m^k in J.  Thom-Sebastiani multiplies 1 - chi, and the
blow-up formula compares an integral over the exceptional fibre with the
germ itself.
"""

from cyclic_linf import blowup_formula_check, milnor_data, parse_polynomial, thom_sebastiani_check
from cyclic_linf.corpus import BLOWUPS

print("germ            n  mu  chi  nu  m^k in J")
for text in ["T^2", "x^3", "x^2+y^2", "x^3+y^3", "x^2*y-y^3", "x^3+y^4", "x^2+y^2+z^2"]:
    d = milnor_data(parse_polynomial(text))
    print("%-15s %d  %2d  %3d  %2d  k=%d" % (text, d.n, d.mu, d.chi, d.behrend, d.certificate))

print()
for a, b in [("x^3", "y^4"), ("x^2*y-y^3", "x^3+y^4"), ("x^2+y^3", "u^2+v^2")]:
    r = thom_sebastiani_check(parse_polynomial(a), parse_polynomial(b))
    print("TS %s [+] %s: 1 - chi = %s  %s" % (a, b, r.details["one_minus_chi"], r.status))

print()
for b in BLOWUPS:
    r = blowup_formula_check(parse_polynomial(b["f"]), b["center"], b["strata"])
    print("blow-up %-12s lhs %2d  rhs %2d  %s" % (b["name"], r.details["lhs"],
                                                r.details["rhs"], r.status))
