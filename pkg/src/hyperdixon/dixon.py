"""Generalized Dixon sum of a 3F2 at unit argument.

Closed form for

    3F2[a, b, c; 1+a-b+i, 1+a-c+i+j; 1],   -3 <= i <= 3,  0 <= j <= 3,

as a power of two times a Gamma quotient times ``A*Q_A + B*Q_B``, where
``A = A_{i,j}(a, b, c)`` and ``B = B_{i,j}(a, b, c)`` are tabulated
polynomials and ``Q_A``, ``Q_B`` are fixed Gamma quotients. Cells with
``j < 0`` are reached through ``f_{i,j}(a, b, c) = f_{i+j,-j}(a, c, b)``.

Each polynomial is stored once, as text, and compiled from that text so the
table dump and the evaluator can never disagree.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedPairError
from .scalar import DEFAULT_GUARD, PoleGuard, gamma_shift_ratio, labelled_gamma_ratio
from .series import (
    DEFAULT_CONTROL,
    PFQParams,
    SeriesControl,
    SeriesResult,
    SeriesStatus,
    eval_pfq,
    eval_pfq_terminating,
)

__all__ = [
    "Polynomial",
    "TABLE_A",
    "TABLE_B",
    "SUPPORTED_PAIRS",
    "GAP_PAIRS",
    "SYMMETRY_PAIRS",
    "DixonCase",
    "DixonCoefficients",
    "coeff_A",
    "coeff_B",
    "coefficients",
    "dixon_general",
    "symmetry_extend",
    "dixon_sum",
    "dixon_oracle",
    "table_records",
]


@dataclass(frozen=True)
class Polynomial:
    """A coefficient polynomial in (a, b, c), with any transcription note."""

    text: str
    note: str = ""

    def __post_init__(self):
        fn = eval(f"lambda a, b, c: {self.text}", {"__builtins__": {}})  # noqa: S307
        object.__setattr__(self, "_fn", fn)

    def __call__(self, a: float, b: float, c: float) -> float:
        return self._fn(a, b, c)

    @property
    def is_zero(self) -> bool:
        return self.text.strip() == "0"


_P = Polynomial

TABLE_A: dict[tuple[int, int], Polynomial] = {
    (3, 0): _P("5*a - b**2 + (a + 1)**2 - (2*a - b + 1)*(b + c)"),
    (2, 0): _P("(a - 1)*(a - 4)/2 - (b**2 - 5*a + 1) - (a - b + 1)*(b + c)"),
    (2, 1): _P("(b - 1)*(b - 2) - (a - b + 1)*(a - b - c + 3)"),
    (2, 2): _P(
        "(a - c + 2)*(a - 2*b - c + 5)*((a - c + 2)*(a - 2*b + 2) - a*(c - 3))/2"
        " - (b - 1)*(b - 2)*(c - 2)*(c - 3)"
    ),
    (1, 0): _P("1"),
    (1, 1): _P("c - a - 1"),
    (1, 2): _P("a*(a - 1) + (b + c - 3)*(c - 2*a - 1)"),
    (0, 0): _P("1"),
    (0, 1): _P("-1"),
    (0, 2): _P("((a - b - c + 1)**2 + (c - 1)*(c - 3) - b**2 + a)/2"),
    (0, 3): _P("c*(a - b - c + 4) - (a + 1)*(a + 2) - (a - 1)*(b - 1) + 3*a*b"),
    (-1, 0): _P("1"),
    (-1, 1): _P("1"),
    (-1, 2): _P("b + c - 1"),
    (-1, 3): _P("(c - 1)*(c - 2) - b*(a - c + 1)"),
    (-2, 0): _P("(a - 1)*(a - 2*b - 2)/2 - c*(a - b - 1)"),
    (-2, 1): _P("a - b - 1"),
    (-2, 2): _P("(a - 1)*(a - 2*b - 2*c)/2 + b*(b + c)"),
    (-2, 3): _P("(a - b - 1)*(c - 1) - b*(b + 1)"),
    (-3, 0): _P("(a - 1)*(a - 2*b - 2*c - 4) + b*c"),
    (-3, 1): _P("(a - b - 2)*(a - c - 1) - a*c"),
    (-3, 2): _P("(a - b - 1)*(a - b - 2*c - 2) - b*c"),
    (-3, 3): _P("b*(b + 1) + (a - 1)*(a - b) - c*(2*a - b - 2)"),
}

TABLE_B: dict[tuple[int, int], Polynomial] = {
    (3, 0): _P("-a + 3*b**2 - (a + 3)**2 + (2*a - 3*b + 5)*(b + c)"),
    (2, 0): _P("-2"),
    (2, 1): _P("(a - b - 2*c + 5)*(a - b - c + 3) - (b - 1)*(b - 2)"),
    (2, 2): _P("-2*(a - c + 2)*(a - 2*b - c + 5)"),
    (1, 0): _P("-1"),
    (1, 1): _P("a - 2*b - c + 3"),
    (1, 2): _P("(b - 1)*(b - c + 1) - (a - b - c + 2)*(a - b - c + 3)"),
    (0, 0): _P("0"),
    (0, 1): _P("1"),
    (0, 2): _P("-2"),
    (0, 3): _P("(a + 2)*(a + 4) - b*(2*a + 5) - 3*c*(a - b - c + 4) + 3"),
    (-1, 0): _P("1"),
    (-1, 1): _P("1"),
    (-1, 2): _P("-(b - c + 1)"),
    (-1, 3): _P(
        "(c - 1)*(c - 2) + b*(a - 2*b - c + 1)",
        note="printed as '(c-1(c-2) + b(a-2b-c+1)' with an unbalanced parenthesis; "
        "read as (c-1)(c-2), which matches the direct series sum",
    ),
    (-2, 0): _P("2"),
    (-2, 1): _P("a - b - 2*c - 1"),
    (-2, 2): _P("2"),
    (-2, 3): _P("b*(a - 2*c + 2) - (b - c + 1)*(a - b - 2*c + 1)"),
    (-3, 0): _P("(a - 2)*(a - 2*b - 2*c - 3) + 3*b*c"),
    (-3, 1): _P("(a - b - 2)*(a - 2*b - 2*c - 3) + b*c"),
    (-3, 2): _P("(a - b - 2)*(a - b - 2*c - 1) + b*c"),
    (-3, 3): _P("(a - 1)*(a - 2) - 3*b*(a - b - 2) - c*(2*a - 3*b - 4)"),
}

GAP_PAIRS = frozenset({(3, 1), (3, 2), (3, 3), (2, 3), (1, 3)})
SUPPORTED_PAIRS = frozenset(TABLE_A)
# j < 0 cells whose symmetry image (i + j, -j) is a printed cell
SYMMETRY_PAIRS = frozenset((i + j, -j) for (i, j) in SUPPORTED_PAIRS if j > 0)

assert set(TABLE_A) == set(TABLE_B)
assert SUPPORTED_PAIRS | GAP_PAIRS == {(i, j) for i in range(-3, 4) for j in range(4)}


def _check_pair(i: int, j: int) -> None:
    if (i, j) not in SUPPORTED_PAIRS:
        what = "has no table entry" if (i, j) in GAP_PAIRS else "is out of range"
        raise UnsupportedPairError(f"coefficient cell (i={i}, j={j}) {what}")


def coeff_A(i: int, j: int, a: float, b: float, c: float) -> float:
    _check_pair(i, j)
    return TABLE_A[i, j](a, b, c)


def coeff_B(i: int, j: int, a: float, b: float, c: float) -> float:
    _check_pair(i, j)
    return TABLE_B[i, j](a, b, c)


@dataclass(frozen=True)
class DixonCoefficients:
    A: float
    B: float


def coefficients(i: int, j: int, a: float, b: float, c: float) -> DixonCoefficients:
    return DixonCoefficients(coeff_A(i, j, a, b, c), coeff_B(i, j, a, b, c))


@dataclass(frozen=True)
class DixonCase:
    """Parameters addressing ``3F2[a, b, c; 1+a-b+i, 1+a-c+i+j; 1]``."""

    a: float
    b: float
    c: float
    i: int
    j: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)

    def series_params(self) -> PFQParams:
        a, b, c, i, j = self.a, self.b, self.c, self.i, self.j
        return PFQParams((a, b, c), (1 + a - b + i, 1 + a - c + i + j))

    @property
    def margin(self) -> float:
        """``(a - 2b - 2c) - (-2 - 2i - j)``; the series converges iff positive."""
        return self.a - 2 * self.b - 2 * self.c + 2 + 2 * self.i + self.j

    @property
    def terminating(self) -> bool:
        return self.series_params().termination_order() is not None

    def is_valid(self) -> bool:
        supported = self.pair in SUPPORTED_PAIRS or self.pair in SYMMETRY_PAIRS
        return supported and (self.margin > 0 or self.terminating)

    def gamma_arguments(self) -> list[float]:
        """Every Gamma argument the closed form touches (j >= 0 cells).

        The shifted pairs Gamma(b - k)/Gamma(b) and Gamma(c - k)/Gamma(c) are
        left out for a parameter that is a non-positive integer, since those
        are evaluated as a finite limit.
        """
        a, b, c, i, j = self.a, self.b, self.c, self.i, self.j
        fh = _floor_half
        args = [
            1 + a - b + i, 1 + a - c + i + j, a - 2 * c + i + j + 1, a - b - c + i + j + 1,
            a / 2 - c + 0.5 + fh(i + j + 1), a / 2 - b - c + 1 + i + fh(j + 1),
            a / 2 + 0.5, a / 2 - b + 1 + fh(i),
            a / 2 - c + 1 + fh(i + j), a / 2 - b - c + 1.5 + i + fh(j),
            a / 2, a / 2 - b + 0.5 + fh(i + 1),
        ]
        for x, k in ((b, (i + abs(i)) // 2), (c, (i + j + abs(i + j)) // 2)):
            if not (x <= 0 and float(x).is_integer()):
                args += [x, x - k]
        return args


def _floor_half(m: int) -> int:
    return m // 2


def dixon_general(case: DixonCase, guard: PoleGuard = DEFAULT_GUARD) -> float:
    """Closed-form value of the 3F2 addressed by ``case`` (requires j >= 0).

    A branch whose denominator Gamma sits on a pole contributes exactly 0, and
    a branch with a zero table coefficient is not evaluated at all.
    """
    a, b, c, i, j = case.a, case.b, case.c, case.i, case.j
    _check_pair(i, j)

    k_b = (i + abs(i)) // 2
    k_c = (i + j + abs(i + j)) // 2
    prefactor = (
        2.0 ** (-2 * c + i + j)
        * gamma_shift_ratio(b, k_b, guard, "b - (i+|i|)/2")
        * gamma_shift_ratio(c, k_c, guard, "c - (i+j+|i+j|)/2")
        * labelled_gamma_ratio(
            [("1+a-b+i", 1 + a - b + i), ("1+a-c+i+j", 1 + a - c + i + j)],
            [("a-2c+i+j+1", a - 2 * c + i + j + 1), ("a-b-c+i+j+1", a - b - c + i + j + 1)],
            guard,
        )
    )

    total = 0.0
    coef_a = TABLE_A[i, j](a, b, c)
    if coef_a != 0:
        total += coef_a * labelled_gamma_ratio(
            [
                ("a/2-c+1/2+[(i+j+1)/2]", a / 2 - c + 0.5 + _floor_half(i + j + 1)),
                ("a/2-b-c+1+i+[(j+1)/2]", a / 2 - b - c + 1 + i + _floor_half(j + 1)),
            ],
            [("a/2+1/2", a / 2 + 0.5), ("a/2-b+1+[i/2]", a / 2 - b + 1 + _floor_half(i))],
            guard,
        )
    coef_b = TABLE_B[i, j](a, b, c)
    if coef_b != 0:
        total += coef_b * labelled_gamma_ratio(
            [
                ("a/2-c+1+[(i+j)/2]", a / 2 - c + 1 + _floor_half(i + j)),
                ("a/2-b-c+3/2+i+[j/2]", a / 2 - b - c + 1.5 + i + _floor_half(j)),
            ],
            [("a/2", a / 2), ("a/2-b+1/2+[(i+1)/2]", a / 2 - b + 0.5 + _floor_half(i + 1))],
            guard,
        )
    if prefactor == 0.0:
        return 0.0
    return prefactor * total


def symmetry_extend(case: DixonCase) -> DixonCase:
    """Map a j < 0 case onto its printed image ``(i + j, -j)`` with b, c swapped."""
    if case.j not in (-1, -2, -3):
        raise UnsupportedPairError(f"symmetry extension needs j in {{-1,-2,-3}}, got j={case.j}")
    image = (case.i + case.j, -case.j)
    if image not in SUPPORTED_PAIRS:
        raise UnsupportedPairError(
            f"cell (i={case.i}, j={case.j}) maps to {image}, which has no table entry"
        )
    return DixonCase(case.a, case.c, case.b, image[0], image[1])


def dixon_sum(case: DixonCase, guard: PoleGuard = DEFAULT_GUARD) -> float:
    """``dixon_general`` for any reachable cell, routing j < 0 through the symmetry."""
    if case.j < 0:
        case = symmetry_extend(case)
    return dixon_general(case, guard)


def dixon_oracle(case: DixonCase, control: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    """Direct series value of the 3F2 addressed by ``case``."""
    params = case.series_params()
    m = params.termination_order()
    if m is not None:
        return SeriesResult(eval_pfq_terminating(params, 1.0), m + 1, SeriesStatus.TERMINATED)
    return eval_pfq(params, 1.0, control)


def table_records() -> list[dict]:
    """One record per (i, j) cell with i in -3..3, j in 0..3, gaps included."""
    records = []
    for i in range(3, -4, -1):
        for j in range(4):
            if (i, j) in GAP_PAIRS:
                records.append({"cell": [i, j], "A": "unsupported", "B": "unsupported", "notes": []})
                continue
            pa, pb = TABLE_A[i, j], TABLE_B[i, j]
            notes = [f"{name}: {p.note}" for name, p in (("A", pa), ("B", pb)) if p.note]
            records.append({"cell": [i, j], "A": pa.text, "B": pb.text, "notes": notes})
    return records

