import numpy as np
import pytest

from rkpairs.chars import CharTable, is_Rr_free, verify_identities
from rkpairs.errors import CapabilityError, DomainError
from rkpairs.ffield import FieldCtx
from rkpairs.fqpoly import factor_xn_minus_1
from rkpairs.normal import is_normal, linear_map_matrix


@pytest.mark.parametrize("p,k,n", [(3, 1, 4), (2, 1, 6), (2, 2, 2), (13, 1, 2), (5, 1, 3)])
def test_verify_identities(p, k, n):
    rep = verify_identities(FieldCtx(p, k, n))
    assert rep["ok"], rep
    assert rep["char_order_counts_ok"]


def test_single_evaluations():
    ctx = FieldCtx(3, 1, 4)
    C = CharTable(ctx)
    assert C.eval_I0(0) == pytest.approx(1, abs=1e-9)
    assert C.eval_I0(7) == pytest.approx(0, abs=1e-9)
    e = 11
    assert C.eval_tau(e, int(C.tr[e])) == pytest.approx(1, abs=1e-9)
    assert C.eval_tau(e, (int(C.tr[e]) + 1) % 3) == pytest.approx(0, abs=1e-9)
    xn = factor_xn_minus_1(ctx)
    one = tuple(0 for _ in xn.factors)
    assert C.eval_omega_g(5, one) == pytest.approx(1, abs=1e-9)
    nrm = next(x for x in range(81) if is_normal(ctx, x))
    assert C.eval_omega_g(nrm, xn.full()) == pytest.approx(1, abs=1e-9)
    assert C.eval_I_Rr(1, 80, 1) == pytest.approx(0, abs=1e-9)
    assert C.eval_I_Rr(C.generator, 80, 1) == pytest.approx(1, abs=1e-9)


def test_sums_over_field():
    ctx = FieldCtx(3, 1, 4)
    C = CharTable(ctx)
    elems = C.T.elements()
    assert C.eval_tau(elems, 2).sum() == pytest.approx(27, abs=1e-6)
    assert C.eval_I0(elems).sum() == pytest.approx(1, abs=1e-6)
    assert C.eval_I_Rr(elems, 5, 2).sum() == pytest.approx(0.8 * 40, abs=1e-6)


def test_character_action_commutes():
    ctx = FieldCtx(3, 1, 4)
    C = CharTable(ctx)
    T = C.T
    elems = T.elements()
    for f in [(1, 1), (2, 0, 1), (0, 1, 2, 1)]:
        M = linear_map_matrix(ctx, f)
        Md = linear_map_matrix(ctx, f, dual=True)
        fe = T.apply_linear(elems, M)
        for w in (1, 4, 33, 70):
            fw = int(T.apply_linear(np.array([w]), Md)[0])
            assert np.allclose(C.psi(fw, elems), C.psi(w, fe))


def test_chars_of_order_counts():
    C = CharTable(FieldCtx(13))
    assert len(C.chars_of_order(12)) == 4
    with pytest.raises(DomainError):
        C.chars_of_order(5)


def test_rr_free_errors_and_cap():
    ctx = FieldCtx(13)
    assert is_Rr_free(ctx, 2, 12, 1)
    assert not is_Rr_free(ctx, 0, 1, 1)
    with pytest.raises(DomainError):
        is_Rr_free(ctx, 2, 5, 1)
    with pytest.raises(CapabilityError):
        CharTable(FieldCtx(2, 1, 20))
