import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rkpairs.errors import CapabilityError, DomainError
from rkpairs.ffield import FieldCtx, is_irreducible_fp, smallest_irreducible


def test_modulus_choice():
    assert FieldCtx(2, 1, 2).modulus == (1, 1, 1)
    assert FieldCtx(3, 1, 2).modulus == (1, 0, 1)
    assert FieldCtx(13, 1, 1).modulus == (0, 1)


def test_smallest_irreducible_is_first_in_order():
    from itertools import product

    for p, m in ((2, 3), (3, 3), (5, 2), (2, 4)):
        first = None
        for c0 in range(p):
            for rest in product(range(p), repeat=m - 1):
                f = [c0] + list(rest) + [1]
                if is_irreducible_fp(f, p):
                    first = tuple(f)
                    break
            if first:
                break
        assert smallest_irreducible(p, m) == first


def test_rejects_non_prime():
    with pytest.raises(DomainError):
        FieldCtx(12, 1, 2)


def test_basic_arithmetic():
    F = FieldCtx(13)
    assert F.mul(5, 8) == 1
    assert F.inv(2) == 7
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    F9 = FieldCtx(3, 1, 2)  # modulus x^2 + 1; the class of x is encoded as 3
    assert F9.mul(3, 3) == F9.neg(1)


def test_trace_examples():
    F9 = FieldCtx(3, 1, 2)
    assert F9.trace(3) == 0
    assert F9.trace(1) == 2
    F81 = FieldCtx(3, 1, 4)
    for e in range(0, 81, 7):
        t = F81.trace_to_base(e)
        assert F81.pow(t, 3) == t


def test_orders():
    assert FieldCtx(7).mult_order(3) == 6
    assert FieldCtx(7).mult_order(1) == 1
    assert FieldCtx(13).mult_order(5) == 4
    with pytest.raises(DomainError):
        FieldCtx(13).mult_order(0)


def test_r_primitive():
    F = FieldCtx(13)
    assert F.is_r_primitive(5, 3)
    assert not F.is_r_primitive(1, 1)
    assert F.is_r_primitive(1, 12)
    with pytest.raises(DomainError):
        F.is_r_primitive(2, 5)


@pytest.mark.parametrize("p,k,n", [(2, 1, 6), (3, 1, 4), (2, 2, 3), (5, 1, 3), (3, 2, 2)])
def test_exhaustive_field_properties(p, k, n):
    ctx = FieldCtx(p, k, n)
    T = ctx.tables()
    elems = T.elements()
    fixed = [e for e in range(ctx.size) if ctx.frobenius_q(e) == e]
    assert len(fixed) == ctx.q
    counts = np.bincount(T.traces(), minlength=ctx.q)
    assert (counts == ctx.q ** (n - 1)).all()
    assert (T.pow(elems[1:], ctx.big_order) == 1).all()
    for a in range(1, ctx.size, max(1, ctx.size // 17)):
        for b in range(0, ctx.size, max(1, ctx.size // 13)):
            assert ctx.frobenius_q(ctx.mul(a, b)) == ctx.mul(ctx.frobenius_q(a), ctx.frobenius_q(b))
            assert ctx.frobenius_q(ctx.add(a, b)) == ctx.add(ctx.frobenius_q(a), ctx.frobenius_q(b))


def test_embed_roundtrip_in_tower():
    ctx = FieldCtx(3, 2, 2)
    for c in range(ctx.q):
        e = ctx.embed(c)
        assert ctx.in_subfield(e)
        assert ctx.to_base(e) == c
    outside = next(e for e in range(ctx.size) if not ctx.in_subfield(e))
    with pytest.raises(DomainError):
        ctx.to_base(outside)


def test_table_cap():
    with pytest.raises(CapabilityError):
        FieldCtx(2, 1, 30).tables(cap=1000)


def test_element_serialization():
    ctx = FieldCtx(3, 1, 4)
    for e in (0, 1, 40, 80):
        assert ctx.parse_element(ctx.format_element(e)) == e


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(1, 80))
def test_field_axioms_f81(a, b, c):
    F = FieldCtx(3, 1, 4)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.div(a, c), c) == a
    assert F.pow(c, 80) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**12 - 1), st.integers(0, 3))
def test_trace_is_linear_over_base(e, c):
    F = FieldCtx(2, 2, 6)
    ce = F.embed(c)
    assert F.trace_to_base(F.mul(ce, e)) == F.mul(ce, F.trace_to_base(e))
