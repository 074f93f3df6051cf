import math

import pytest

from hyperdixon.errors import CoefficientPoleError, ConfigError, DomainError, PoleError, UnsupportedPairError
from hyperdixon.series import SeriesStatus, pfq
from hyperdixon.transform import (
    LIMITING_CASES,
    SPECIAL_CASES,
    GeneralTransformSpec,
    TransformPoint,
    exton_general_lhs,
    exton_general_rhs,
    exton_lhs_theorem,
    exton_prefactor,
    exton_rhs_theorem,
    limiting_case,
    quadratic_argument,
    reduction_2_2_rhs,
    special_case,
    srivastava_identity_check,
)

# Left-hand sides frozen from a 30-digit mpmath evaluation of
# prefactor * 3F2[b, d-1/2, 2d-1-i; d+1/2, 2d-b+j; -x/(1+sqrt(1-x))^2].
LHS_REFERENCE = {
    (0.4, 1.1, 0, 0, 0.5): 1.1896352169728503,
    (0.4, 1.1, -2, 1, 0.3): 1.0914379727414664,
    (0.4, 1.1, 2, 1, -0.5): 0.8762156567726814,
    (0.4, 1.1, 1, 1, 0.5): 1.2070963827590407,
}


def rel(x, ref):
    return abs(x - ref) / max(1.0, abs(ref))


def test_quadratic_argument():
    assert quadratic_argument(0.0) == 0.0
    assert quadratic_argument(0.75) == pytest.approx(-1 / 3, rel=1e-15)
    assert quadratic_argument(-0.6) > 0
    with pytest.raises(DomainError):
        quadratic_argument(-3)
    with pytest.raises(DomainError):
        quadratic_argument(1.0)


def test_prefactor():
    assert exton_prefactor(2.7, 0.0) == 1.0
    assert exton_prefactor(0.5, 0.63) == 1.0
    assert exton_prefactor(1.0, 0.75) == pytest.approx(4 / 3, rel=1e-15)
    with pytest.raises(DomainError):
        exton_prefactor(1.0, 1.5)


def test_srivastava_examples():
    pair = srivastava_identity_check(1.0, 0.75)
    assert pair.lhs.value == pytest.approx(4 / 3, rel=1e-15)
    assert pair.rhs.value == pytest.approx(4 / 3, rel=1e-12)
    assert pair.rel_residual <= 1e-12
    pair = srivastava_identity_check(0.5, -0.4)
    assert pair.lhs.value == 1.0 and pair.rhs.value == 1.0
    pair = srivastava_identity_check(1.7, 0.0)
    assert pair.lhs.value == 1.0 and pair.rhs.value == 1.0


@pytest.mark.parametrize("a", [0.6, 1.0, 1.8])
@pytest.mark.parametrize("x", [-0.6, -0.2, 0.2, 0.6, 0.9])
def test_srivastava_grid(a, x):
    assert srivastava_identity_check(a, x).rel_residual <= 1e-11


def test_general_trivial():
    spec = GeneralTransformSpec([0.7, 1.3], [2.1], 1.4, 0.6, 0.0)
    assert exton_general_lhs(spec).value == pytest.approx(exton_prefactor(1.4, 0.6), rel=1e-15)
    assert rel(exton_general_rhs(spec).value, exton_prefactor(1.4, 0.6)) <= 1e-12
    spec = GeneralTransformSpec([0.7, 1.3], [2.1], 1.4, 0.0, 0.5)
    assert exton_general_lhs(spec).value == 1.0
    assert exton_general_rhs(spec).value == 1.0


def test_general_matches_theorem_substitution():
    b, d, i, j, x = 0.4, 1.1, 1, 1, 0.5
    spec = GeneralTransformSpec([2 * d - 1 - i, b], [2 * d - b + j], d, x, 1.0)
    pt = TransformPoint(b, d, i, j, x)
    lhs = exton_general_lhs(spec)
    assert rel(lhs.value, exton_lhs_theorem(pt).value) <= 1e-14
    assert rel(lhs.value, exton_general_rhs(spec).value) <= 1e-9
    assert rel(lhs.value, LHS_REFERENCE[b, d, i, j, x]) <= 1e-12


def test_general_domain():
    with pytest.raises(DomainError):
        exton_general_lhs(GeneralTransformSpec([1.0], [], 1.0, 0.9, 1.2))
    with pytest.raises(DomainError):
        exton_general_rhs(GeneralTransformSpec([1.0], [], -1.0, 0.5, 1.0))


def test_reduction_examples():
    pt = TransformPoint(0.4, 1.1, 0, 0, 0.0)
    assert reduction_2_2_rhs(pt).value == 1.0
    pt = TransformPoint(0.4, 1.1, 0, 0, 0.5)
    assert rel(reduction_2_2_rhs(pt).value, exton_lhs_theorem(pt).value) <= 1e-9
    pt = TransformPoint(0.4, 1.1, 2, 1, -0.5)
    assert rel(reduction_2_2_rhs(pt).value, exton_rhs_theorem(pt).value) <= 1e-9


@pytest.mark.parametrize("key", sorted(LHS_REFERENCE))
def test_lhs_reference(key):
    assert rel(exton_lhs_theorem(TransformPoint(*key)).value, LHS_REFERENCE[key]) <= 1e-12


def test_lhs_trivial():
    assert exton_lhs_theorem(TransformPoint(0.4, 1.1, 1, 2, 0.0)).value == 1.0
    pt = TransformPoint(0.0, 1.1, 1, 2, 0.6)
    assert exton_lhs_theorem(pt).value == exton_prefactor(1.1, 0.6)


def test_lhs_classical_cell_is_3f2_in_x():
    b, d, x = 0.4, 1.1, 0.5
    direct = pfq([d - 0.5, d, d - b + 0.5], [2 * d - b, d + 0.5], x).value
    assert rel(exton_lhs_theorem(TransformPoint(b, d, 0, 0, x)).value, direct) <= 1e-12
    assert rel(exton_rhs_theorem(TransformPoint(b, d, 0, 0, x)).value, direct) <= 1e-12


def test_rhs_at_zero():
    for i, j in [(0, 0), (1, 1), (-3, 2), (2, 2), (-1, 3)]:
        assert exton_rhs_theorem(TransformPoint(0.3, 1.7, i, j, 0.0)).value == pytest.approx(1.0, abs=1e-12)


def test_rhs_negative_i_example():
    pt = TransformPoint(0.4, 1.1, -2, 1, 0.3)
    assert rel(exton_rhs_theorem(pt).value, exton_lhs_theorem(pt).value) <= 1e-8
    assert rel(exton_rhs_theorem(pt).value, LHS_REFERENCE[0.4, 1.1, -2, 1, 0.3]) <= 1e-10


def test_point_validation():
    with pytest.raises(UnsupportedPairError):
        exton_rhs_theorem(TransformPoint(0.4, 1.1, 3, 1, 0.5))
    with pytest.raises(DomainError):
        exton_lhs_theorem(TransformPoint(0.4, 1.1, 0, 0, 1.5))
    with pytest.raises(DomainError):
        exton_lhs_theorem(TransformPoint(0.4, -1.1, 0, 0, 0.5))
    with pytest.raises(PoleError):
        exton_lhs_theorem(TransformPoint(3.2, 1.1, 0, 1, 0.5))  # 2d - b + j = 0


def test_rhs_prefactor_pole():
    # Gamma(b - (i+j+|i+j|)/2) = Gamma(1.0 - 2) sits on a pole
    with pytest.raises(PoleError):
        exton_rhs_theorem(TransformPoint(1.0, 1.1, 1, 1, 0.5))


def test_special_e31():
    pair = special_case("E31", 0.4, 1.1, 0.5)
    assert pair.rel_residual <= 1e-9


def test_special_e35_at_zero():
    pair = special_case("E35", 0.4, 1.1, 0.0)
    assert pair.lhs.value == 1.0
    assert pair.rhs.value == 1.0


def test_special_e34():
    pair = special_case("E34", 0.4, 1.3, 0.6)
    assert pair.rel_residual <= 1e-8
    assert rel(pair.lhs.value, 1.3738811521605802) <= 1e-12


@pytest.mark.parametrize("case_id", sorted(SPECIAL_CASES))
@pytest.mark.parametrize("b, d, x", [(0.3, 0.6, -0.5), (0.8, 1.7, 0.75), (1.6, 2.35, 0.2), (-0.35, 1.25, -0.9)])
def test_special_cases(case_id, b, d, x):
    pair = special_case(case_id, b, d, x)
    assert pair.usable
    assert pair.rel_residual <= 1e-8


@pytest.mark.parametrize("case_id, b", [("E32", 1.0), ("E33", 1.0), ("E34", 1.0), ("E34", 2.0)])
def test_special_coefficient_poles(case_id, b):
    with pytest.raises(CoefficientPoleError):
        special_case(case_id, b, 1.1, 0.5)


def test_e37_precondition():
    with pytest.raises(PoleError):
        special_case("E37", 1.6, 1.1, 0.5)  # 2d - 2b = -1


def test_unknown_cases():
    with pytest.raises(ConfigError):
        special_case("E38", 0.4, 1.1, 0.5)
    with pytest.raises(ConfigError):
        limiting_case("E45", 1.1, 0.5)


def test_limiting_examples():
    pair = limiting_case("E41", 1.3, 0.0)
    assert pair.lhs.value == 1.0 and pair.rhs.value == 1.0
    pair = limiting_case("E43", 1.2, 0.5)
    assert pair.rel_residual <= 1e-9
    assert rel(pair.lhs.value, 1.5074052503198302) <= 1e-12
    pair = limiting_case("E41", 0.9, -0.7)
    assert pair.rel_residual <= 1e-9
    assert rel(pair.lhs.value, 0.8678178836784824) <= 1e-12


@pytest.mark.parametrize("case_id", LIMITING_CASES)
@pytest.mark.parametrize("d, x", [(0.6, -0.9), (1.1, 0.5), (2.35, 0.75), (1.7, -0.2)])
def test_limiting_cases(case_id, d, x):
    pair = limiting_case(case_id, d, x)
    assert pair.usable
    assert pair.rel_residual <= 1e-8


def test_limit_trend():
    d, x = 1.1, 0.5
    target = limiting_case("E41", d, x).lhs.value
    gaps = [abs(special_case("E31", 10.0 ** k, d, x).lhs.value - target) for k in (2, 3, 4)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_identity_pair_status():
    pair = limiting_case("E41", 1.1, 0.5)
    assert pair.lhs.status is SeriesStatus.CONVERGED
    assert math.isfinite(pair.rel_residual)
