"""Three-valued verdicts for q = 13 and a range of n.

For each n the ladder tries the cheap power bound, then the exact inequality
with the best f_i, then a searched sieve plan.  A pair without a degree-2
divisor of x^n - 1 is reported as Unknown(precondition).

Run: python3 demos/02_q13_verdicts.py
"""
from rkpairs import criteria as C
from rkpairs.ffield import FieldCtx
from rkpairs.fqpoly import Poly

for n in range(20, 53):
    if n == 11:
        continue
    last = C.scan_pair(13, n)[-1]
    reason = f"({last.reason})" if last.reason else ""
    print(f"n = {n:>2}: {last.stage:>5} -> {last.verdict.value}{reason}")

print("\nA hand-written sieve plan for (13, 22):")
F13 = FieldCtx(13)
x1, x2 = Poly(F13, (1, 1)), Poly(F13, (12, 0, 1))
v = C.sieve_check(C.pair_context(13, 22), C.flagship(13, 22), C.SievePlan(6, 14, x1, x2, x1, x2))
print(v.verdict.value)
for note in v.notes:
    print("  -", note)
