import pytest
from hypothesis import given, settings, strategies as st

from rkpairs.errors import DomainError
from rkpairs.ffield import FieldCtx
from rkpairs.fqpoly import Poly
from rkpairs.ratfn import POLE, POLE_CODE, RationalFn, eval_at, eval_many, lambda_membership, zeros_poles, zeros_poles_scan

F13, F3 = FieldCtx(13), FieldCtx(3)


def test_eval_examples():
    x = RationalFn.identity(F13)
    assert all(eval_at(x, e) == e for e in range(13))
    assert eval_at(RationalFn.make(F13, (1,), (0, 1)), 0) is POLE
    F = RationalFn.make(F13, (1, 0, 1), (0, 1))
    assert eval_at(F, 5) == 0


def test_normalization_and_invariants():
    F = RationalFn.make(F13, (12, 0, 1), (2, 2))  # (x^2-1)/(2x+2) = (x-1)/2
    assert F.den.deg == 0 and F.den.is_monic()
    assert eval_at(F, 3) == F13.div(2, 2)
    with pytest.raises(DomainError):
        RationalFn.make(F13, (1,), (0,))
    with pytest.raises(DomainError):
        RationalFn(F13, Poly(F13, (1,)), Poly(F13, (0, 2)))


def test_parse_format_roundtrip():
    F = RationalFn.parse(F13, "num:1,0,1;den:0,1")
    assert RationalFn.parse(F13, F.format()) == F
    with pytest.raises(DomainError):
        RationalFn.parse(F13, "den:1")
    with pytest.raises(DomainError):
        RationalFn.parse(F13, "num:a")


def test_lambda_membership_examples():
    m = lambda_membership(RationalFn.make(F3, (1, 0, 1)), 2, 0, 3)
    assert m.member and m.certificate == (Poly(F3, (1, 0, 1)), 1)
    assert not lambda_membership(RationalFn.make(F3, (0, 0, 0, 1)), 3, 0, 3).member
    assert not lambda_membership(RationalFn.make(F13, (0, 0, 0, 1)), 3, 0, 13).member
    sq = RationalFn.make(F3, (1, 2, 1))
    assert not lambda_membership(sq, 2, 0, 3).member
    assert lambda_membership(sq, 2, 0, 4).member  # gcd(2, 3) = 1
    assert not lambda_membership(RationalFn.make(F13, (1, 0, 1), (0, 1)), 1, 1, 13).member


def test_membership_depends_on_Q():
    F81 = FieldCtx(3, 1, 4)
    F = RationalFn.make(F81, (1, 1, 1))  # x^2 + x + 1 = (x - 1)^2 in characteristic 3
    assert not lambda_membership(F, 2, 0, 3).member
    assert not lambda_membership(F, 2, 0, 81).member
    G = RationalFn.make(F81, Poly(F81, (1, 1)) ** 3)
    assert lambda_membership(G, 3, 0, 3).member and not lambda_membership(G, 3, 0, 4).member


def test_zeros_poles_examples():
    assert zeros_poles(RationalFn.identity(F13)) == {0}
    assert zeros_poles(RationalFn.make(F13, (12, 1), (1, 1))) == {1, 12}
    assert zeros_poles(RationalFn.make(F13, (1, 0, 1), (0, 1))) == {0, 5, 8}


@pytest.mark.parametrize("p,k,n", [(3, 1, 4), (2, 1, 6), (13, 1, 2)])
def test_zeros_poles_against_scan(p, k, n):
    ctx = FieldCtx(p, k, n)
    T = ctx.tables()
    for num, den in [((1, 0, 1), (0, 1)), ((5, 3, 0, 1), (1, 1, 1)), ((2, 7), (1,))]:
        F = RationalFn.make(ctx, [c % ctx.size for c in num], [c % ctx.size for c in den])
        assert zeros_poles(F) == zeros_poles_scan(F, T)
        vals = eval_many(F, T, T.elements())
        for e in range(0, ctx.size, 5):
            v = eval_at(F, e)
            assert (vals[e] == POLE_CODE) if v is POLE else vals[e] == v


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=1, max_size=5), st.lists(st.integers(0, 12), min_size=1, max_size=4),
       st.integers(1, 12), st.integers(1, 12))
def test_membership_scale_invariant(num, den, c1, c2):
    N, D = Poly(F13, num), Poly(F13, den)
    if N.is_zero() or D.is_zero():
        return
    a = lambda_membership(RationalFn.make(F13, N, D), 5, 4, 13).member
    b = lambda_membership(RationalFn.make(F13, N * c1, D * c2), 5, 4, 13).member
    assert a == b
    F = RationalFn.make(F13, N, D)
    for e in range(13):
        if F.den(e) != 0:
            assert eval_at(F, e) is not POLE
