import math
import random

import pytest

from hyperdixon.dixon import (
    GAP_PAIRS,
    SUPPORTED_PAIRS,
    SYMMETRY_PAIRS,
    TABLE_B,
    DixonCase,
    Polynomial,
    coeff_A,
    coeff_B,
    coefficients,
    dixon_general,
    dixon_oracle,
    dixon_sum,
    symmetry_extend,
    table_records,
)
from hyperdixon.errors import UnsupportedPairError
from hyperdixon.series import SeriesControl, SeriesStatus
from hyperdixon.verify import sample_dixon_case

ORACLE = SeriesControl(rel_tol=1e-16)

# Direct-series values of two 3F2(1) sums, frozen from a 30-digit mpmath evaluation.
V = 1.0630052046696248  # 3F2[1.2, 0.3, 0.4; 1.9, 1.8; 1]
W = 1.0114867043691642  # 3F2[1.2, 0.3, 0.4; 2.9, 4.8; 1]


def rel(x, ref):
    return abs(x - ref) / max(1.0, abs(ref))


# -- coefficient tables -------------------------------------------------------

def test_cell_counts():
    assert len(SUPPORTED_PAIRS) == 23
    assert len(GAP_PAIRS) == 5
    assert SUPPORTED_PAIRS | GAP_PAIRS == {(i, j) for i in range(-3, 4) for j in range(4)}
    assert len(SYMMETRY_PAIRS) == 16
    assert all(j < 0 for _, j in SYMMETRY_PAIRS)


def test_coefficient_examples():
    assert coeff_A(0, 0, 0.3, 1.7, -2.2) == 1
    assert coeff_A(0, 1, 0.3, 1.7, -2.2) == -1
    assert coeff_A(1, 1, 2, 1, 4) == 1
    assert coeff_B(0, 0, 0.3, 1.7, -2.2) == 0
    assert coeff_B(2, 0, 0.3, 1.7, -2.2) == -2
    assert coeff_B(1, 1, 1, 1, 1) == 1
    assert coeff_B(1, 0, 5, 6, 7) == -1


def test_coefficient_a02():
    a, b, c = 0.7, 1.3, -0.4
    expected = 0.5 * ((a - b - c + 1) ** 2 + (c - 1) * (c - 3) - b ** 2 + a)
    assert coeff_A(0, 2, a, b, c) == pytest.approx(expected, rel=1e-14)


def test_classical_cell_coefficients():
    rng = random.Random(1)
    for _ in range(20):
        a, b, c = (rng.uniform(-5, 5) for _ in range(3))
        assert coefficients(0, 0, a, b, c).A == 1
        assert coefficients(0, 0, a, b, c).B == 0


@pytest.mark.parametrize("pair", sorted(GAP_PAIRS) + [(4, 0), (0, 4), (-4, 1), (0, -1)])
def test_unsupported_cells(pair):
    with pytest.raises(UnsupportedPairError):
        coeff_A(*pair, 1.0, 1.0, 1.0)
    with pytest.raises(UnsupportedPairError):
        coeff_B(*pair, 1.0, 1.0, 1.0)


def test_table_records():
    records = table_records()
    assert len(records) == 28
    polys = [(r["A"], r["B"]) for r in records if r["A"] != "unsupported"]
    assert len(polys) * 2 + 2 * len(GAP_PAIRS) == 56
    assert len(polys) == 23
    by_cell = {tuple(r["cell"]): r for r in records}
    assert (by_cell[0, 0]["A"], by_cell[0, 0]["B"]) == ("1", "0")
    assert by_cell[3, 1]["A"] == "unsupported"
    assert by_cell[-1, 3]["notes"]


def test_polynomial_is_sandboxed():
    with pytest.raises(NameError):
        Polynomial("__import__('os')")(1, 2, 3)


# -- closed form vs series ----------------------------------------------------

def test_terminating_example():
    assert dixon_general(DixonCase(2, -1, 0.5, 0, 0)) == pytest.approx(0.9, rel=1e-14)


def test_value_v():
    case = DixonCase(1.2, 0.3, 0.4, 0, 0)
    # terms decay only like n**-2.8, so the direct sum is a partial sum
    oracle = dixon_oracle(case, ORACLE)
    assert rel(dixon_general(case), oracle.value) <= 1e-10
    assert rel(dixon_general(case), V) <= 1e-12


def test_value_w():
    case = DixonCase(1.2, 0.3, 0.4, 1, 2)
    assert case.series_params().denominator == pytest.approx((2.9, 4.8))
    assert rel(dixon_oracle(case, ORACLE).value, W) <= 1e-12
    assert rel(dixon_general(case), W) <= 1e-9


def _textbook_dixon(a, b, c):
    g = math.gamma
    return (
        g(1 + a / 2) * g(1 + a - b) * g(1 + a - c) * g(1 + a / 2 - b - c)
        / (g(1 + a) * g(1 + a / 2 - b) * g(1 + a / 2 - c) * g(1 + a - b - c))
    )


@pytest.mark.parametrize(
    "a, b, c",
    [(1.2, 0.3, 0.4), (2.5, 0.7, -0.3), (0.9, -0.45, 0.15), (3.3, 1.1, 0.6), (1.0, 0.25, 0.25)],
)
def test_classical_dixon(a, b, c):
    assert rel(dixon_general(DixonCase(a, b, c, 0, 0)), _textbook_dixon(a, b, c)) <= 1e-12


@pytest.mark.parametrize("pair", sorted(SUPPORTED_PAIRS))
def test_oracle_equivalence(pair):
    rng = random.Random(hash(pair) & 0xFFFF)
    for _ in range(50):
        case = sample_dixon_case(rng, *pair, terminating=False)
        assert case.margin >= 0.5
        oracle = dixon_oracle(case, ORACLE)
        assert oracle.status is SeriesStatus.CONVERGED
        assert rel(dixon_general(case), oracle.value) <= 1e-9, case


@pytest.mark.parametrize("pair", sorted(SUPPORTED_PAIRS))
def test_terminating_equivalence(pair):
    rng = random.Random(1000 + (hash(pair) & 0xFFFF))
    for _ in range(30):
        case = sample_dixon_case(rng, *pair, terminating=True)
        oracle = dixon_oracle(case)
        assert oracle.status is SeriesStatus.TERMINATED
        assert rel(dixon_general(case), oracle.value) <= 1e-11, case


def test_branch_with_denominator_pole_contributes_zero():
    # Gamma(a/2) in the B branch sits on a pole at a = -2
    case = DixonCase(-2.0, -1.0, 0.3, 1, 1)
    assert coeff_B(1, 1, -2.0, -1.0, 0.3) != 0
    assert rel(dixon_general(case), dixon_oracle(case).value) <= 1e-12


def test_minus_one_three_reading():
    # The (-1, 3) B cell, read with (c-1)(c-2), reproduces the series; the
    # literal "c - 1*(c - 2)" reading does not.
    rng = random.Random(4)
    literal = Polynomial("c - 1*(c - 2) + b*(a - 2*b - c + 1)")
    worst_literal = 0.0
    for _ in range(20):
        case = sample_dixon_case(rng, -1, 3, terminating=False)
        oracle = dixon_oracle(case, ORACLE).value
        assert rel(dixon_general(case), oracle) <= 1e-9
        a, b, c = case.a, case.b, case.c
        assert TABLE_B[-1, 3](a, b, c) == pytest.approx((c - 1) * (c - 2) + b * (a - 2 * b - c + 1))
        assert literal(a, b, c) != pytest.approx(TABLE_B[-1, 3](a, b, c))
    original = TABLE_B[-1, 3]
    try:
        TABLE_B[-1, 3] = literal
        for _ in range(20):
            case = sample_dixon_case(rng, -1, 3, terminating=False)
            worst_literal = max(worst_literal, rel(dixon_general(case), dixon_oracle(case, ORACLE).value))
    finally:
        TABLE_B[-1, 3] = original
    assert worst_literal > 1e-3


# -- symmetry -----------------------------------------------------------------

def test_symmetry_examples():
    assert symmetry_extend(DixonCase(1.0, 2.0, 3.0, 0, -1)) == DixonCase(1.0, 3.0, 2.0, -1, 1)
    assert symmetry_extend(DixonCase(1.0, 2.0, 3.0, 2, -2)) == DixonCase(1.0, 3.0, 2.0, 0, 2)
    assert symmetry_extend(DixonCase(1.0, 2.0, 3.0, 3, -3)) == DixonCase(1.0, 3.0, 2.0, 0, 3)


def test_symmetry_to_gap_cell():
    # (4, -1) would map to (3, 1), a gap cell
    with pytest.raises(UnsupportedPairError):
        symmetry_extend(DixonCase(1.0, 2.0, 3.0, 4, -1))
    with pytest.raises(UnsupportedPairError):
        symmetry_extend(DixonCase(1.0, 2.0, 3.0, 0, 1))


def test_symmetry_pairs_are_reachable():
    for i, j in SYMMETRY_PAIRS:
        assert (i + j, -j) in SUPPORTED_PAIRS


@pytest.mark.parametrize("pair", sorted(SYMMETRY_PAIRS))
def test_symmetry_round_trip(pair):
    i, j = pair
    rng = random.Random(77 + i * 10 + j)
    for _ in range(10):
        image = sample_dixon_case(rng, i + j, -j, terminating=False)
        # the original case addresses the same series with b and c swapped
        case = DixonCase(image.a, image.c, image.b, i, j)
        oracle = dixon_oracle(case, ORACLE)
        assert oracle.usable
        assert rel(dixon_sum(case), oracle.value) <= 1e-9


def test_validity():
    assert DixonCase(1.2, 0.3, 0.4, 0, 0).is_valid()
    assert not DixonCase(0.1, 1.5, 1.5, 0, 0).is_valid()
    assert DixonCase(0.1, -3.0, 1.5, 0, 0).is_valid()
    assert not DixonCase(5.0, 0.1, 0.1, 3, 1).is_valid()
