"""The finite formula for Ass of generalized local cohomology, against Ext.

The union over j <= l of Ass H^j_I(M, N)_{>=k} is computed from one
N-sequence in I_M, then compared with Ext^j(S/J, N) for J = I_M^t and for
generator-power ideals.  All of them agree.
"""

from itertools import product

from lcass import Ideal, ModulePresentation, Ring, ass_lch_formula, ext_ass_sets

R = Ring(32003, "x,y,z")
I = Ideal(R, [R("x"), R("y")])
M = ModulePresentation.cyclic(Ideal(R, [R("z^2")]))
N = ModulePresentation.cyclic(Ideal(R, [R("x*z"), R("y*z")]))

for k in (-1, 0):
    res = ass_lch_formula(I, M, N, k, 1)
    print(f"k = {k}: I_M = {res.ideal.key()}, r = {res.depth}, witness {[str(x) for x in res.witness]}")
    print("   formula union :", res.union.to_json())
    for t in (1, 2, 3):
        same = ext_ass_sets(res.ideal, N, k, 1, t, check_depth=False) == res.union
        print(f"   Ext with J = I_M^{t} agrees: {same}")
    agree = all(ext_ass_sets(res.ideal, N, k, 1, powers=pw, check_depth=False) == res.union
                for pw in product((1, 2), repeat=len(res.ideal.gens)))
    print("   every generator-power tuple agrees:", agree)
