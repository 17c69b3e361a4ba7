"""Why a divisor f1 containing x - 1 cannot reach Tr(eps) != 0.

If x - 1 divides f1 then any eps = f1 o sigma satisfies
Tr(eps) = ((x^n - 1)/(x - 1)) o eps = 0.  So the triple count C vanishes for
every a != 0, even when the inequality meant to guarantee C > 0 holds.  This
script shows the effect exhaustively on F_{2^10}, where the only degree-1
divisor of x^10 - 1 is x + 1 = x - 1.

Run: python3 demos/04_trace_obstruction.py
"""
from rkpairs import criteria as C
from rkpairs.ffield import FieldCtx
from rkpairs.fqpoly import factor_xn_minus_1
from rkpairs.oracle import TripleCountQuery, count_C_triples, field_scan
from rkpairs.ratfn import RationalFn

ctx = FieldCtx(2, 1, 10)
S = field_scan(ctx)
print("1-normal elements of F_1024 by trace:",
      {t: int(((S.normality == 1) & (S.traces == t)).sum()) for t in range(2)})

xn = factor_xn_minus_1(ctx)
one = tuple(0 for _ in xn.factors)
f1 = next(xn.divisors_of_degree(1))
f0 = next(xn.divisors_of_degree(0))
params = C.PairParams(2, 10, 1, 1, 1, 0, 1, 0)
v = C.theorem_main_check(ctx, params, 1, 1, one, one, f1, f0)
print(f"\nInequality with R = g = 1, k1 = 1: {v.verdict.value}")
for note in v.notes:
    print("  -", note)

F = RationalFn.parse(ctx, "num:1,1")
for a in range(2):
    c = count_C_triples(TripleCountQuery(ctx, F, a, 0, 1, 1, 1, 1, f1=f1, f2=f0))
    print(f"C with Tr(eps) = {a}, Tr(1/eps) = 0: {c}")

xn22 = factor_xn_minus_1(FieldCtx(13, 1, 22))
print("\nDegree-2 divisors of x^22 - 1 over F_13:", [xn22.build(d).coeffs for d in xn22.divisors_of_degree(2)],
      "\nThe only one is x^2 - 1, so every 2-normal element of F_{13^22} has trace 0.")
