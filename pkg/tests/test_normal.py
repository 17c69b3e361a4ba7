import itertools

import numpy as np
import pytest

from rkpairs.errors import DomainError
from rkpairs.ffield import FieldCtx
from rkpairs.fqpoly import Poly, factor_xn_minus_1
from rkpairs.normal import (
    as_exponents,
    fq_order_elem,
    is_g_free,
    is_g_free_bruteforce,
    is_k_normal,
    is_normal,
    linearized_apply,
    normality_degree,
    normality_degree_via_order,
    order_exponents_all,
)


def test_linearized_action_basics():
    ctx = FieldCtx(3, 1, 4)
    for e in (0, 1, 5, 40, 79):
        assert linearized_apply(ctx, (0, 1), e) == ctx.frobenius_q(e)
        assert linearized_apply(ctx, (1,), e) == e
    for c in range(3):
        assert linearized_apply(ctx, (2, 1), ctx.embed(c)) == 0


def test_order_examples():
    ctx = FieldCtx(3, 1, 2)
    assert fq_order_elem(ctx, 0) == Poly.const(ctx.base, 1)
    assert fq_order_elem(ctx, 1) == Poly(ctx.base, (2, 1))
    normals = [e for e in range(9) if is_normal(ctx, e)]
    assert len(normals) == 4
    for e in normals:
        assert fq_order_elem(ctx, e) == Poly(ctx.base, (2, 0, 1))


def test_normality_degree_examples():
    ctx = FieldCtx(13, 1, 4)
    assert normality_degree(ctx, 1) == 3
    assert normality_degree(ctx, 0) == 4
    assert is_k_normal(ctx, 1, 3) and not is_k_normal(ctx, 0, 3)
    with pytest.raises(DomainError):
        is_k_normal(ctx, 1, 5)


def test_g_free_examples():
    ctx = FieldCtx(3, 1, 4)
    xn = factor_xn_minus_1(ctx)
    one, full = tuple(0 for _ in xn.factors), xn.full()
    e_norm = next(e for e in range(81) if is_normal(ctx, e))
    assert all(is_g_free(ctx, e, one) for e in range(0, 81, 9))
    assert is_g_free(ctx, e_norm, full)
    first = tuple(int(i == 0) for i in range(len(xn.factors)))
    assert not is_g_free(ctx, 0, first)
    with pytest.raises(DomainError):
        as_exponents(ctx, Poly(ctx.base, (1, 1, 1)))


FIELDS = [(2, 1, 4), (2, 1, 6), (3, 1, 3), (3, 1, 4), (2, 2, 3), (5, 1, 4), (7, 1, 3), (13, 1, 2), (3, 2, 2), (2, 1, 8)]


@pytest.mark.parametrize("p,k,n", FIELDS)
def test_order_and_degree_identities(p, k, n):
    ctx = FieldCtx(p, k, n)
    xn = factor_xn_minus_1(ctx)
    orders = order_exponents_all(ctx)
    rows = [tuple(r) for r in orders.tolist()]
    sample = range(1, ctx.size, max(1, ctx.size // 40))
    for e in sample:
        assert normality_degree(ctx, e) + fq_order_elem(ctx, e).deg == n
        assert normality_degree(ctx, e) == normality_degree_via_order(ctx, e)
        assert rows[e] == tuple(xn.exponents(fq_order_elem(ctx, e)))
    counts = {}
    for r in rows:
        counts[r] = counts.get(r, 0) + 1
    for g in xn.divisors():
        assert counts.get(tuple(g), 0) == xn.phi_of(g)
    degs = np.array([n - xn.degree_of(r) for r in rows])
    degs[0] = n
    for kk in range(n):
        expect = sum(xn.phi_of(g) for g in xn.divisors() if xn.degree_of(g) == n - kk)
        assert int((degs == kk).sum()) == expect


@pytest.mark.parametrize("p,k,n", FIELDS)
def test_g_free_closed_form_matches_definition(p, k, n):
    ctx = FieldCtx(p, k, n)
    xn = factor_xn_minus_1(ctx)
    divs = list(xn.divisors())
    elems = range(ctx.size) if ctx.size <= 256 else range(0, ctx.size, 7)
    for g in divs:
        free = [e for e in elems if is_g_free(ctx, e, g)]
        assert free == [e for e in elems if is_g_free_bruteforce(ctx, e, g)]
        if ctx.size <= 256:
            q_deg = ctx.q ** (n - xn.degree_of(g))
            assert len(free) == q_deg * xn.phi_of(g)


def test_full_free_iff_normal():
    ctx = FieldCtx(2, 1, 6)
    full = factor_xn_minus_1(ctx).full()
    for e in range(64):
        assert is_g_free(ctx, e, full) == is_normal(ctx, e)


def test_g_free_exhaustive_up_to_1e4():
    for p, k, n in [(3, 1, 8), (2, 1, 12), (13, 1, 3)]:
        ctx = FieldCtx(p, k, n)
        xn = factor_xn_minus_1(ctx)
        for g in itertools.islice(xn.divisors(), 1, 6):
            for e in range(1, ctx.size, 97):
                assert is_g_free(ctx, e, g) == is_g_free_bruteforce(ctx, e, g)
