"""Associated primes of a few small modules.

S/(x^2, xy) has an embedded point: the line x = 0 and the origin.  The
prime (x) is minimal, (x, y) is embedded.  We also look at the filtered
sets Ass_{>=k} and the local dimension.
"""

from lcass import Ideal, ModulePresentation, Ring, associated_primes, local_dim, minimal_primes
from lcass.dimdepth import FilterSpec, filter_primes

R = Ring(32003, "x,y")
I = Ideal(R, [R("x^2"), R("x*y")])
M = ModulePresentation.cyclic(I)

print("Ass(S/I)     :", associated_primes(M).to_json())
print("Min(I)       :", [p.key() for p in minimal_primes(I)])
print("local dim    :", local_dim(M))

A = associated_primes(M)
for k in (-1, 0, 1):
    print(f"Ass_>={k:<2}    :", filter_primes(A, FilterSpec(k)).to_json())

# a non-monomial ideal: its zero set is two coordinate lines, and nothing is embedded
R3 = Ring(32003, "x,y,z")
J = Ideal(R3, [R3("x*y - z^2"), R3("x*z^2")])
print()
print("Ass(S/(xy - z^2, xz^2)):")
for p in associated_primes(ModulePresentation.cyclic(J)).to_json():
    print("   ", p)
