"""
From a cyclic dgla to the germ of its moduli space.

The four-dimensional quartic dgla has dk = b, [x,x] = b and [x,k] = xi.  Its
cohomology is spanned by x (degree 1) and xi (degree 2); homotopy transfer
produces a ternary operation there, so the superpotential starts in degree 4.
"""

from cyclic_linf import check_structure, superpotential, transfer, verify_transfer
from cyclic_linf.fixtures import quartic_dgla
from cyclic_linf.milnor import chi_of_linf, milnor_data

L = quartic_dgla()
print("structure:", check_structure(L)[0].status)

res = transfer(L)
H = res.structure
print("transfer:", verify_transfer(L, res).status)
for k in sorted(H.ops):
    for inputs, out in sorted(H.ops[k].table.items()):
        print("  mu_%d%s = %s" % (k, inputs, {b: str(c) for b, c in out.items()}))

f = superpotential(H)
print("potential:", f.to_string())
d = milnor_data(f)
print("mu = %d, chi = %d, nu = %d" % (d.mu, d.chi, d.behrend))
print("chi straight from the minimal model:", chi_of_linf(H))
