import itertools

import pytest

from rkpairs.errors import CapabilityError, DomainError
from rkpairs.ffield import FieldCtx
from rkpairs.fqpoly import factor_xn_minus_1
from rkpairs.normal import is_k_normal, linear_map_matrix
from rkpairs.oracle import (
    ExistenceQuery,
    TripleCountQuery,
    count_C_triples,
    count_g_free,
    count_k_normal,
    count_r_primitive,
    count_trace_fiber,
    count_witnesses,
    exists_witness,
    field_scan,
    poly_index,
    verify_sieve_lemma_ineq,
)
from rkpairs.ratfn import RationalFn, eval_at
from rkpairs.zarith import divisors, euler_phi_int, factor_int


def test_count_examples():
    F13 = FieldCtx(13)
    assert count_r_primitive(F13, 1) == 4
    assert count_r_primitive(F13, 3) == 2
    assert count_k_normal(FieldCtx(3, 1, 2), 0) == 4
    with pytest.raises(DomainError):
        count_r_primitive(F13, 5)


@pytest.mark.parametrize("p,k,n", [(2, 1, 6), (3, 1, 4), (5, 1, 3), (2, 2, 4), (7, 1, 2), (13, 1, 3)])
def test_count_invariants(p, k, n):
    ctx = FieldCtx(p, k, n)
    N = ctx.big_order
    for r in divisors(factor_int(N)):
        assert count_r_primitive(ctx, r) == euler_phi_int(factor_int(N // r))
    xn = factor_xn_minus_1(ctx)
    for kk in range(n + 1):
        expect = sum(xn.phi_of(g) for g in xn.divisors() if xn.degree_of(g) == n - kk)
        assert count_k_normal(ctx, kk) == expect
        assert count_k_normal(ctx, kk, method="rank") == expect
    assert sum(count_trace_fiber(ctx, a) for a in range(ctx.q)) == ctx.size
    assert all(count_trace_fiber(ctx, a) == ctx.q ** (n - 1) for a in range(ctx.q))
    for g in xn.divisors():
        assert count_g_free(ctx, g) == ctx.q ** (n - xn.degree_of(g)) * xn.phi_of(g)


def _query(ctx, F, a, b, r1, r2, k1, k2):
    return ExistenceQuery(ctx, F, a, b, r1, r2, k1, k2)


def test_trivial_witness():
    for p, n in [(3, 4), (2, 5), (5, 3)]:
        ctx = FieldCtx(p, 1, n)
        N = ctx.big_order
        a = ctx.trace(1)
        qy = _query(ctx, RationalFn.identity(ctx), a, a, N, N, n - 1, n - 1)
        assert exists_witness(qy) == 1


def test_witness_agrees_with_brute_force():
    ctx = FieldCtx(3, 1, 4)
    F = RationalFn.make(ctx, (1, 1))
    for a, b in itertools.product(range(3), repeat=2):
        qy = _query(ctx, F, a, b, 2, 1, 1, 0)
        w = exists_witness(qy)
        good = []
        for e in range(1, 81):
            fe = eval_at(F, e)
            if fe == 0 or not isinstance(fe, int):
                continue
            if (ctx.mult_order(e) == 40 and is_k_normal(ctx, e, 1) and ctx.mult_order(fe) == 80
                    and is_k_normal(ctx, fe, 0) and ctx.trace(e) == a and ctx.trace(ctx.inv(e)) == b):
                good.append(e)
        assert count_witnesses(qy) == len(good)
        assert (w is None) == (not good)
        if w is not None:
            assert w in good
            T = ctx.tables()
            first = min(good, key=lambda e: int(T.log[e]))
            assert w == first
        assert exists_witness(qy, threads=3) == w


def test_witness_domain_errors():
    ctx = FieldCtx(3, 1, 4)
    F = RationalFn.identity(ctx)
    exists_witness(_query(ctx, F, 0, 0, 5, 1, 0, 0))
    with pytest.raises(DomainError):
        exists_witness(_query(ctx, F, 0, 0, 7, 1, 0, 0))
    with pytest.raises(DomainError):
        exists_witness(_query(ctx, F, 0, 0, 1, 1, 4, 0))
    with pytest.raises(CapabilityError):
        field_scan(FieldCtx(2, 1, 22))


def test_triples_degenerate_collapse():
    ctx = FieldCtx(3, 1, 4)
    F = RationalFn.make(ctx, (1, 1))
    for a, b in [(0, 0), (1, 2)]:
        qy = TripleCountQuery(ctx, F, a, b, 1, 1, 1, 1)
        expect = sum(1 for e in range(1, 81)
                     if eval_at(F, e) not in (0,) and isinstance(eval_at(F, e), int)
                     and ctx.trace(e) == a and ctx.trace(ctx.inv(e)) == b)
        assert count_C_triples(qy) == expect


def test_triples_primitive_normal_case():
    ctx = FieldCtx(3, 1, 4)
    full = factor_xn_minus_1(ctx).full()
    F = RationalFn.identity(ctx)
    N = ctx.big_order
    for a, b in [(1, 1), (2, 0)]:
        qy = TripleCountQuery(ctx, F, a, b, 1, 1, N, N, g1=full, g2=full)
        expect = sum(1 for e in range(1, 81) if ctx.mult_order(e) == N and is_k_normal(ctx, e, 0)
                     and ctx.trace(e) == a and ctx.trace(ctx.inv(e)) == b)
        assert count_C_triples(qy) == expect


def test_triples_against_naive_enumeration():
    ctx = FieldCtx(2, 1, 4)
    xn = factor_xn_minus_1(ctx)
    T = ctx.tables()
    F = RationalFn.make(ctx, (1, 0, 1), (0, 1))
    f1 = tuple(int(i == 0) for i in range(len(xn.factors)))
    g2 = tuple(int(i == len(xn.factors) - 1) * xn.multiplicities[-1] for i in range(len(xn.factors)))
    qy = TripleCountQuery(ctx, F, 0, 0, 1, 1, 3, 1, f1=f1, g2=g2)
    from rkpairs.normal import is_g_free
    from rkpairs.chars import is_Rr_free
    M1 = linear_map_matrix(ctx, xn.build(f1))
    img1 = T.apply_linear(T.elements(), M1)
    total = 0
    for e in range(1, 16):
        fe = eval_at(F, e)
        if not isinstance(fe, int) or fe == 0:
            continue
        if ctx.trace(e) or ctx.trace(ctx.inv(e)):
            continue
        if not (is_Rr_free(ctx, e, 3, 1) and is_Rr_free(ctx, fe, 1, 1)):
            continue
        n1 = sum(1 for s in range(16) if img1[s] == e)
        n2 = sum(1 for s in range(16) if s == fe and is_g_free(ctx, s, g2))
        total += n1 * n2
    assert count_C_triples(qy) == total
    with pytest.raises(DomainError):
        count_C_triples(qy.replace(R1=7))


def test_sieve_lemma_reports():
    ctx = FieldCtx(3, 1, 4)
    F = RationalFn.make(ctx, (1, 1))
    base = TripleCountQuery(ctx, F, 1, 2, 1, 1, 1, 1)
    rep = verify_sieve_lemma_ineq(base)
    assert rep.lhs == rep.rhs == rep.core
    rep = verify_sieve_lemma_ineq(base, primes1=(2,))
    assert rep.holds and rep.terms == 1
    assert rep.lhs == rep.refined[0]
    rep = verify_sieve_lemma_ineq(base, primes1=(2,), primes2=(5,), polys1=(0,))
    assert rep.holds and rep.terms == 3
    ctx16 = FieldCtx(2, 1, 4)
    base16 = TripleCountQuery(ctx16, RationalFn.identity(ctx16), 1, 1, 1, 1, 1, 1)
    rep = verify_sieve_lemma_ineq(base16, polys2=(0,))
    assert rep.holds
    with pytest.raises(DomainError):
        verify_sieve_lemma_ineq(base, primes1=(7,))
    with pytest.raises(DomainError):
        verify_sieve_lemma_ineq(base, primes1=(2, 2))
    i = poly_index(ctx, factor_xn_minus_1(ctx).factors[1][0])
    assert i == 1
