"""depth_k for k = -1, 0, 1 and the sequences that realise it.

Over k[x,y], N = S/(x^2, xy) has depth 0 in m: the origin is associated.
depth_0 and depth_1 are infinite there, since every Ext^j(S/m, N) lives at
the origin and an empty infimum is infinite.  In three variables,
N = S/(x^2, xy, xz) with I = (x, y) separates the three notions: the
origin blocks ordinary depth, the plane x = 0 allows one step in
dimension > 0, and nothing of dimension > 1 ever blocks.  The Ext side
gives the same numbers without choosing any sequence.
"""

from lcass import Ideal, ModulePresentation, Ring, depth_k, is_sequence_in_dim_gt_k
from lcass.cli import depth_check

CASES = [("x,y", ["x^2", "x*y"], ["x", "y"]),
         ("x,y,z", ["x^2", "x*y", "x*z"], ["x", "y"])]

for names, ngens, igens in CASES:
    R = Ring(32003, names)
    N = ModulePresentation.cyclic(Ideal(R, [R(g) for g in ngens]))
    I = Ideal(R, [R(g) for g in igens])
    print(f"N = S/({', '.join(ngens)}), I = ({', '.join(igens)}) over k[{names}]:")
    for k in (-1, 0, 1):
        d = depth_k(I, N, k)
        ext_side = depth_check(I, N, k)
        print(f"  depth_{k:<2}(I, N) = {str(d):<3} witness {[str(x) for x in d.witness]!s:<8}"
              f" from Ext: {ext_side['from_ext']:<8} local dims {ext_side['ext_dims']}")
    print()

R = Ring(32003, "x,y")
N = ModulePresentation.cyclic(Ideal(R, [R("x^2"), R("x*y")]))
print("y regular on S/(x^2, xy)?          ", bool(is_sequence_in_dim_gt_k([R("y")], N, -1)))
print("y an N-sequence in dimension > 0?  ", bool(is_sequence_in_dim_gt_k([R("y")], N, 0)))
print()

# different seeds pick different witnesses but the same length
for seed in (42, 4242):
    d = depth_k(Ideal(R, [R("x"), R("y")]), ModulePresentation.free(R, 1), -1, seed)
    print(f"seed {seed}: depth(m, S) = {d}, witness {[str(x) for x in d.witness]}")
