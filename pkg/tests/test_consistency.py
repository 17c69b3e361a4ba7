"""Main-inequality verdicts against exhaustive triple counts on small fields."""
import pytest

from instances import partial_main_survey, trace_obstructed
from rkpairs.ffield import FieldCtx
from rkpairs.fqpoly import factor_xn_minus_1
from rkpairs.oracle import field_scan


@pytest.mark.parametrize("n", range(2, 13))
def test_one_normal_elements_of_binary_fields_have_trace_zero(n):
    # over F_2 the only degree-1 divisor of x^n - 1 is x + 1 = x - 1
    S = field_scan(FieldCtx(2, 1, n))
    one_normal = S.normality == 1
    assert one_normal.any()
    assert not (one_normal & (S.traces == 1)).any()


def test_two_normal_elements_of_f13_22_are_trace_zero_by_degrees():
    xn = factor_xn_minus_1(FieldCtx(13, 1, 22))
    divs = list(xn.divisors_of_degree(2))
    assert len(divs) == 1 and xn.build(divs[0]).coeffs == (12, 0, 1)


def test_positive_control_nonzero_trace_possible():
    S = field_scan(FieldCtx(3, 1, 4))
    assert ((S.normality == 1) & (S.traces != 0)).any()


def test_every_zero_count_is_a_trace_obstruction():
    fired, zeros = partial_main_survey()
    assert fired
    unexplained = [(z[0], z[1], z[2].format(), z[3], z[4]) for z in zeros
                   if not trace_obstructed(z[0], z[7], z[2], z[3], z[5], z[6])]
    assert not unexplained, unexplained[:5]


@pytest.mark.xfail(strict=True, reason="when x-1 divides f1 (or f2 with F affine) the trace condition cannot "
                                       "be met, so C = 0 although the R = g = 1 inequality holds")
def test_main_inequality_implies_positive_count():
    fired, zeros = partial_main_survey()
    assert fired and not zeros
