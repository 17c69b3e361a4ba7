"""A walk through F_81 = F_{3^4}: orders, normality, freeness and characters.

Run: python3 demos/01_small_field_tour.py
"""
from rkpairs.chars import verify_identities
from rkpairs.ffield import FieldCtx
from rkpairs.fqpoly import factor_xn_minus_1, format_poly
from rkpairs.normal import fq_order_elem, normality_degree
from rkpairs.oracle import count_g_free, count_k_normal, count_r_primitive, field_scan

ctx = FieldCtx(3, 1, 4)
print(f"F_{ctx.size} built over F_{ctx.q} with modulus coefficients {ctx.modulus}")

xn = factor_xn_minus_1(ctx)
print("x^4 - 1 =", " * ".join(f"({format_poly(P)})^{e}" for P, e in xn.factors),
      "(coefficients listed from the constant term up)")

g = field_scan(ctx).T.generator
print(f"\nThe generator {g} has F_q-order {fq_order_elem(ctx, g)} and normality degree {normality_degree(ctx, g)}.")

print("\nr-primitive counts, which match phi((q^n-1)/r):")
for r in (1, 2, 4, 5, 16, 80):
    print(f"  r = {r:>2}: {count_r_primitive(ctx, r)}")

print("\nk-normal counts, which are sums of Phi_q over divisors of degree n-k:")
for k in range(5):
    print(f"  k = {k}: {count_k_normal(ctx, k)}")

print("\ng-free counts, which equal q^(n - deg g) Phi_q(g):")
for v in xn.divisors():
    print(f"  g = {format_poly(xn.build(v)):<12} {count_g_free(ctx, v)}")

rep = verify_identities(ctx)
print("\nThe character-sum indicators agree with the boolean predicates:", rep["ok"])
print("  worst deviation:", max(rep["tau_max_dev"], rep["I0_max_dev"], rep["omega_max_dev"], rep["IRr_max_dev"]))
