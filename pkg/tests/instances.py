"""Small-field instance sweep shared by the soundness and consistency tests."""
from functools import lru_cache

from rkpairs import criteria as C
from rkpairs.ffield import FieldCtx
from rkpairs.fqpoly import Poly, factor_xn_minus_1
from rkpairs.oracle import TripleCountQuery, count_C_triples
from rkpairs.ratfn import RationalFn, lambda_membership
from rkpairs.zarith import factor_int

F_SAMPLES = ("num:1,1", "num:1;den:1,1", "num:2,1;den:1,1", "num:1,0,1;den:0,1", "num:1,1,1")


def oracle_fields(limit: int):
    out = []
    for p, top in ((2, 16), (3, 10), (5, 7), (7, 5)):
        out += [(p, 1, m) for m in range(1, top + 1) if p**m <= limit]
    out += [(13, 1, m) for m in (1, 2, 3)]
    out += [(2, 2, m) for m in range(2, 9)] + [(3, 2, m) for m in range(2, 6)] + [(13, 2, 2)]
    return [f for f in out if f[0] ** (f[1] * f[2]) <= limit]


def members(ctx, m1, m2):
    out = []
    for text in F_SAMPLES:
        F = RationalFn.parse(ctx, text)
        if lambda_membership(F, m1, m2, ctx.size).member:
            out.append(F)
    return out


def instances(limit: int = 10**4):
    """(ctx, params, xn, samples of F in Lambda) over small fields and parameters."""
    for p, k, n in oracle_fields(limit):
        if n < 2:
            continue
        ctx = FieldCtx(p, k, n)
        q, N = ctx.q, ctx.big_order
        xn = factor_xn_minus_1(ctx)
        ks = [d for d in (0, 1) if next(xn.divisors_of_degree(d), None) is not None]
        rs = sorted({1, min(factor_int(N).primes or [1])})
        for k1 in ks:
            for k2 in ks:
                for r1 in rs:
                    for r2 in rs:
                        for m1, m2 in ((1, 0), (0, 1), (1, 1)):
                            Fs = members(ctx, m1, m2)
                            if Fs:
                                yield ctx, C.PairParams(q, n, r1, r2, k1, k2, m1, m2), xn, Fs


def trace_obstructed(ctx, xn, F, a, f1, f2) -> bool:
    """True when Tr(eps) = a is incompatible with eps = f1 o s1 and F(eps) = f2 o s2."""
    base = ctx.base
    xm1 = Poly(base, (base.neg(1), 1))
    i = next((j for j, (P, _) in enumerate(xn.factors) if P == xm1), None)
    if i is None:
        return False
    if f1[i] and a != 0:
        return True
    if f2[i] and F.den.deg == 0 and F.num.deg == 1:
        c, d = F.num.coeffs[1], F.num.coeffs[0]  # the denominator is monic of degree 0, so 1
        if ctx.in_subfield(c):
            # Tr(c eps + d) = c Tr(eps) + Tr(d) must vanish
            forced = ctx.div(ctx.neg(ctx.trace_to_base(d)), c)
            return ctx.embed(a) != forced
    return False


@lru_cache(maxsize=1)
def partial_main_survey():
    """Instances where the R = g = 1 main inequality holds, with their zero triple counts."""
    fired, zeros = [], []
    for ctx, params, xn, Fs in instances():
        f1 = next(xn.divisors_of_degree(params.k1))
        f2 = next(xn.divisors_of_degree(params.k2))
        one = tuple(0 for _ in xn.factors)
        if not C.theorem_main_check(ctx, params, 1, 1, one, one, f1, f2).holds:
            continue
        fired.append((ctx, params))
        for F in Fs:
            for a in range(ctx.q):
                for b in range(ctx.q):
                    qy = TripleCountQuery(ctx, F, a, b, params.r1, params.r2, 1, 1, f1=f1, f2=f2)
                    if count_C_triples(qy) == 0:
                        zeros.append((ctx, params, F, a, b, f1, f2, xn))
    return fired, zeros
