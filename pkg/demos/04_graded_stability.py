"""Graded families: components, stabilization and a common sequence.

The Rees family of I = (y) over N = S/(x^2) has N_n = I^n N, and the
transient custom family below has an embedded prime that disappears after
n = 0.  Everything settles within the window.
"""

from lcass import Ideal, ModulePresentation, Ring
from lcass.graded import (common_sequence, graded_component, make_family, stabilize_ass,
                          stabilize_depth_k, stabilize_theorem_sets)

R = Ring(32003, "x,y")
I = Ideal(R, [R("y")])
N = ModulePresentation.cyclic(Ideal(R, [R("x^2")]))
G = make_family("rees", I, N)

print("N_2 presentation:", graded_component(G, 2).pruned().key())
print(stabilize_ass(G, (0, 8)).to_json())
print(stabilize_depth_k(G, I, -1, (0, 8)).to_json())

T = make_family("custom", None, R, ynames=["u"], degrees=[0, 1],
                columns=[["x^2", "0"], ["x*y", "0"], ["u", "0"]])
m = Ideal(R, [R("x"), R("y")])
print()
print("transient family, Ass per n:")
for n, v in stabilize_ass(T, (0, 5)).values:
    print(f"  n = {n}: {v}")
cs = common_sequence(T, m, -1, (0, 8))
print("common sequence", [str(x) for x in cs.sequence], "onset", cs.onset)
print("per-n check", cs.table, "valid past onset:", cs.valid_past_onset())

S = ModulePresentation.free(R, 1)
rep = stabilize_theorem_sets(T, m, S, -1, 2, (0, 8))
print("theorem sets (k = -1, l = 2):", rep.verdict, rep.stable_value)
