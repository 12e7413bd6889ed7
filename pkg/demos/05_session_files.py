"""Driving everything through a session file, as the command line does."""

from lcass.cli import run_text

SESSION = """
ring S = zp(32003)[x,y];
ideal I = x^2, x*y;
module N = quotient(S, I);
ideal J = x, y;
compute assprimes(N);
compute depthk(J, N, 0);
compute asslch(J, S, N, k = 0, l = 1);
check oracle asslch vs ext(J, N, 0, 1) t 1..3;
check kernel(N, N);
"""

report, code = run_text(SESSION, fmt="text")
print(report)
print("exit code", code)
