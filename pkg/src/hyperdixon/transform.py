"""Quadratic transformations built on the generalized Dixon sum.

Covers the prefactor identity

    ((1 + sqrt(1-x)) / 2)**(1-2a) = 2F1[a-1/2, a; 2a; x],

the general Bailey-type transform with arbitrary parameter lists (a), (h),
its specialization to an inner terminating 3F2 at unit argument, the closed
form for every supported (i, j) offset, and the printed special (E31-E37)
and limiting (E41-E44) cases.

Each side of every identity is evaluated by an independent path, so an
``IdentityPair`` residual is a genuine numerical check.
"""
from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .dixon import SUPPORTED_PAIRS, TABLE_A, TABLE_B
from .errors import CoefficientPoleError, ConfigError, DomainError, PoleError, UnsupportedPairError
from .scalar import (
    DEFAULT_GUARD,
    CompensatedSum,
    PoleGuard,
    gamma_shift_ratio,
    labelled_gamma_ratio,
    pochhammer,
)
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
    "TransformPoint",
    "GeneralTransformSpec",
    "IdentityPair",
    "quadratic_argument",
    "exton_prefactor",
    "srivastava_identity_check",
    "exton_general_lhs",
    "exton_general_rhs",
    "reduction_2_2_rhs",
    "exton_lhs_theorem",
    "exton_rhs_theorem",
    "SPECIAL_CASES",
    "LIMITING_CASES",
    "special_case",
    "limiting_case",
]


def _check_x(x: float) -> None:
    if not (math.isfinite(x) and -1.0 < x < 1.0):
        raise DomainError(f"x must lie in (-1, 1), got {x!r}")


def quadratic_argument(x: float) -> float:
    """``-x / (1 + sqrt(1-x))**2``; same magnitude bound as x, opposite sign."""
    _check_x(x)
    return -x / (1.0 + math.sqrt(1.0 - x)) ** 2


def exton_prefactor(d: float, x: float) -> float:
    _check_x(x)
    return (0.5 + 0.5 * math.sqrt(1.0 - x)) ** (1.0 - 2.0 * d)


@dataclass(frozen=True)
class TransformPoint:
    b: float
    d: float
    i: int
    j: int
    x: float

    def validate(self, guard: PoleGuard = DEFAULT_GUARD) -> None:
        _check_x(self.x)
        if (self.i, self.j) not in SUPPORTED_PAIRS:
            raise UnsupportedPairError(f"no transform for cell (i={self.i}, j={self.j})")
        if not self.d > 0:
            raise DomainError(f"d must be positive, got {self.d!r}")
        den = 2 * self.d - self.b + self.j
        if guard.is_pole(den):
            raise PoleError(f"2d-b+j = {den!r} is a non-positive integer", argument=den, label="2d-b+j")


@dataclass(frozen=True)
class GeneralTransformSpec:
    """Inputs of the general transform: parameter lists (a), (h) and d, x, y."""

    a_list: tuple[float, ...]
    h_list: tuple[float, ...]
    d: float
    x: float
    y: float

    def __init__(self, a_list: Sequence[float], h_list: Sequence[float], d: float, x: float, y: float):
        object.__setattr__(self, "a_list", tuple(float(v) for v in a_list))
        object.__setattr__(self, "h_list", tuple(float(v) for v in h_list))
        object.__setattr__(self, "d", float(d))
        object.__setattr__(self, "x", float(x))
        object.__setattr__(self, "y", float(y))

    def validate(self) -> None:
        _check_x(self.x)
        if not abs(self.x * self.y) < 1:
            raise DomainError(f"|x*y| must be below 1, got {self.x * self.y!r}")
        if not self.d > 0:
            raise DomainError(f"d must be positive, got {self.d!r}")


@dataclass(frozen=True)
class IdentityPair:
    lhs: SeriesResult
    rhs: SeriesResult
    rel_residual: float = field(init=False)

    def __post_init__(self):
        r = abs(self.lhs.value - self.rhs.value) / max(1.0, abs(self.rhs.value))
        object.__setattr__(self, "rel_residual", r)

    @property
    def usable(self) -> bool:
        return self.lhs.usable and self.rhs.usable


def _exact(value: float) -> SeriesResult:
    return SeriesResult(value, 0, SeriesStatus.CONVERGED)


def _combine(parts: Sequence[tuple[float, SeriesResult]]) -> SeriesResult:
    """Linear combination of series results; the worst status wins."""
    acc = CompensatedSum()
    for coef, r in parts:
        acc.add(coef * r.value)
    statuses = {r.status for _, r in parts}
    if SeriesStatus.MAX_TERMS in statuses:
        status = SeriesStatus.MAX_TERMS
    elif statuses == {SeriesStatus.TERMINATED}:
        status = SeriesStatus.TERMINATED
    else:
        status = SeriesStatus.CONVERGED
    return SeriesResult(acc.value, sum(r.terms_used for _, r in parts), status)


def _scaled(factor: float, r: SeriesResult) -> SeriesResult:
    return SeriesResult(factor * r.value, r.terms_used, r.status)


def _pfq(num, den, z, control) -> SeriesResult:
    return eval_pfq(PFQParams(num, den), z, control)


def srivastava_identity_check(
    a: float, x: float, control: SeriesControl = DEFAULT_CONTROL
) -> IdentityPair:
    """Prefactor ``((1+sqrt(1-x))/2)**(1-2a)`` against ``2F1[a-1/2, a; 2a; x]``."""
    _check_x(x)
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    return IdentityPair(_exact(exton_prefactor(a, x)), _pfq((a - 0.5, a), (2 * a,), x, control))


def exton_general_lhs(spec: GeneralTransformSpec, control: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    spec.validate()
    d = spec.d
    z = spec.y * quadratic_argument(spec.x)
    series = _pfq(spec.a_list + (d - 0.5,), spec.h_list + (d + 0.5,), z, control)
    return _scaled(exton_prefactor(d, spec.x), series)


def exton_general_rhs(spec: GeneralTransformSpec, control: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    """Outer power series in x whose m-th coefficient is a terminating
    ``F[(a), -m; (h), 2d+m; y]``."""
    spec.validate()
    d, x, y = spec.d, spec.x, spec.y
    acc = CompensatedSum()
    coef = 1.0
    small = 0
    m = 0
    while True:
        inner = eval_pfq_terminating(PFQParams(spec.a_list + (-m,), spec.h_list + (2 * d + m,)), y)
        term = coef * inner
        acc.add(term)
        used = m + 1
        if abs(term) <= control.rel_tol * max(1.0, abs(acc.value)):
            small += 1
            if small >= control.consecutive_small:
                return SeriesResult(acc.value, used, SeriesStatus.CONVERGED)
        else:
            small = 0
        if used >= control.max_terms:
            return SeriesResult(acc.value, used, SeriesStatus.MAX_TERMS)
        coef *= (d - 0.5 + m) * (d + m) / (2 * d + m) * x / (m + 1)
        m += 1


def reduction_2_2_rhs(pt: TransformPoint, control: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    """General transform with (a) = (2d-1-i, b), (h) = (2d-b+j) and y = 1,
    i.e. the outer series over inner ``3F2[2d-1-i, b, -n; 2d-b+j, 2d+n; 1]``."""
    pt.validate()
    spec = GeneralTransformSpec((2 * pt.d - 1 - pt.i, pt.b), (2 * pt.d - pt.b + pt.j,), pt.d, pt.x, 1.0)
    return exton_general_rhs(spec, control)


def exton_lhs_theorem(pt: TransformPoint, control: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    pt.validate()
    b, d, i, j, x = pt.b, pt.d, pt.i, pt.j, pt.x
    series = _pfq((b, d - 0.5, 2 * d - 1 - i), (d + 0.5, 2 * d - b + j), quadratic_argument(x), control)
    return _scaled(exton_prefactor(d, x), series)


def _fh(m: int) -> int:
    # greatest integer <= m/2
    return m // 2


def exton_rhs_theorem(
    pt: TransformPoint,
    control: SeriesControl = DEFAULT_CONTROL,
    guard: PoleGuard = DEFAULT_GUARD,
) -> SeriesResult:
    """Closed-form side of the extended transform for cell (i, j).

    The n-th term carries the table coefficients evaluated at
    ``a = 2d-1-i, b = -n, c = b``, so both brace coefficients are recomputed
    for every n.
    """
    pt.validate(guard)
    b, d, i, j, x = pt.b, pt.d, pt.i, pt.j, pt.x
    k = (i + abs(i)) // 2
    kk = (i + j + abs(i + j)) // 2

    prefactor = (2.0**i) * (-1 if k % 2 else 1)
    prefactor *= gamma_shift_ratio(b, kk, guard, "b-(i+j+|i+j|)/2")
    prefactor *= labelled_gamma_ratio(
        [("d", d), ("d+1/2", d + 0.5)],
        [("d-b+j/2", d - b + j / 2), ("d-b+j/2+1/2", d - b + j / 2 + 0.5)],
        guard,
    )

    poly_a, poly_b = TABLE_A[i, j], TABLE_B[i, j]
    p_a = d - b + i / 2 + 0.5 + _fh(j + 1)
    q_a = d + 0.5 - i / 2 + _fh(i)
    p_b = d - b + i / 2 + 1 + _fh(j)
    q_b = d - i / 2 + _fh(i + 1)
    const_a = 0.0 if poly_a.is_zero else labelled_gamma_ratio(
        [("d-b-i/2+[(i+j+1)/2]", d - b - i / 2 + _fh(i + j + 1)), ("d-b+i/2+1/2+[(j+1)/2]", p_a)],
        [("d-i/2", d - i / 2), ("d+1/2-i/2+[i/2]", q_a)],
        guard,
    )
    const_b = 0.0 if poly_b.is_zero else labelled_gamma_ratio(
        [("d-b+1/2-i/2+[(i+j)/2]", d - b + 0.5 - i / 2 + _fh(i + j)), ("d-b+i/2+1+[j/2]", p_b)],
        [("d-i/2-1/2", d - i / 2 - 0.5), ("d-i/2+[(i+1)/2]", q_b)],
        guard,
    )

    a_sub = 2 * d - 1 - i
    den = 2 * d - b + j
    acc = CompensatedSum()
    base = 1.0  # (d)_n (d-1/2)_n / (2d-b+j)_n * x**n / n!
    run_a = 1.0  # (p_a)_n / (q_a)_n
    run_b = 1.0  # (p_b)_n / (q_b)_n
    small = 0
    n = 0
    while True:
        brace = 0.0
        if const_a:
            brace += poly_a(a_sub, -n, b) * const_a * run_a
        if const_b:
            brace += poly_b(a_sub, -n, b) * const_b * run_b
        term = prefactor * base * brace / pochhammer(n + 1, k)
        acc.add(term)
        used = n + 1
        if abs(term) <= control.rel_tol * max(1.0, abs(acc.value)):
            small += 1
            if small >= control.consecutive_small:
                return SeriesResult(acc.value, used, SeriesStatus.CONVERGED)
        else:
            small = 0
        if used >= control.max_terms:
            return SeriesResult(acc.value, used, SeriesStatus.MAX_TERMS)
        base *= (d + n) * (d - 0.5 + n) / (den + n) * x / (n + 1)
        run_a *= (p_a + n) / (q_a + n)
        run_b *= (p_b + n) / (q_b + n)
        n += 1


# -- special and limiting cases ------------------------------------------------

def _near(value: float, target: float, guard: PoleGuard) -> bool:
    return abs(value - target) <= guard.tolerance


def _rhs_e31(b, d, x, c):
    return _pfq((d - 0.5, d, d - b + 0.5), (2 * d - b, d + 0.5), x, c)


def _rhs_e32(b, d, x, c):
    return _combine([
        ((2 * d - 2 * b + 1) / (2 * (1 - b)), _pfq((d - 0.5, d, d - b + 1.5), (2 * d - b + 1, d + 0.5), x, c)),
        (-(2 * d - 1) / (2 * (1 - b)), _pfq((d - 0.5, d - b + 1), (2 * d - b + 1,), x, c)),
    ])


def _rhs_e33(b, d, x, c):
    return _combine([
        ((2 * d - 1) * (d - b) / (1 - b), _pfq((d - 0.5, d - b + 1, 1), (2 * d - b, 2), x, c)),
        (
            -(d - 1) * (2 * d - 2 * b + 1) / (1 - b),
            _pfq((d, d - 0.5, d - b + 1.5, 1), (2 * d - b, d + 0.5, 2), x, c),
        ),
    ])


def _rhs_e34(b, d, x, c):
    scale = (b - 1) * (b - 2)
    return _combine([
        (
            (2 * d - 1) * (d - b + 1) * (2 * d - b - 1) / scale,
            _pfq((d - 0.5, d - b + 2, 1), (2 * d - b + 1, 2), x, c),
        ),
        (
            -(d - 1) * (2 * d - b + 1) * (2 * d - 2 * b + 1) / scale,
            _pfq(
                (d - 0.5, d, d - b + 1.5, d - b / 2 + 1.5, 1),
                (2 * d - b + 1, d + 0.5, d - b / 2 + 0.5, 2),
                x,
                c,
            ),
        ),
    ])


def _rhs_e35(b, d, x, c):
    return _combine([
        (0.5, _pfq((d - 0.5, d - b), (2 * d - b,), x, c)),
        (0.5, _pfq((d, d - 0.5, d - b + 0.5), (2 * d - b, d + 0.5), x, c)),
    ])


def _rhs_e36(b, d, x, c):
    return _combine([
        (0.5, _pfq((d - 0.5, d - b + 1), (2 * d - b + 1,), x, c)),
        (0.5, _pfq((d, d - 0.5, d - b + 0.5), (2 * d - b + 1, d + 0.5), x, c)),
    ])


def _rhs_e37(b, d, x, c):
    return _combine([
        (0.5, _pfq((d, d - 0.5, 2 * d + 1, d - b + 0.5), (2 * d, d + 0.5, 2 * d - b + 1), x, c)),
        (0.5, _pfq((d - b, d - 0.5, 2 * d - 2 * b + 1), (2 * d - b + 1, 2 * d - 2 * b), x, c)),
    ])


@dataclass(frozen=True)
class _SpecialCase:
    i: int
    j: int
    rhs: Callable[[float, float, float, SeriesControl], SeriesResult]
    coefficient_poles: tuple[float, ...] = ()


SPECIAL_CASES: dict[str, _SpecialCase] = {
    "E31": _SpecialCase(0, 0, _rhs_e31),
    "E32": _SpecialCase(0, 1, _rhs_e32, (1.0,)),
    "E33": _SpecialCase(1, 0, _rhs_e33, (1.0,)),
    "E34": _SpecialCase(1, 1, _rhs_e34, (1.0, 2.0)),
    "E35": _SpecialCase(-1, 0, _rhs_e35),
    "E36": _SpecialCase(-1, 1, _rhs_e36),
    "E37": _SpecialCase(-2, 1, _rhs_e37),
}


def special_case(
    case_id: str,
    b: float,
    d: float,
    x: float,
    control: SeriesControl = DEFAULT_CONTROL,
    guard: PoleGuard = DEFAULT_GUARD,
) -> IdentityPair:
    """Evaluate both sides of special case ``case_id`` (one of E31..E37)."""
    try:
        case = SPECIAL_CASES[case_id]
    except KeyError:
        raise ConfigError(f"unknown special case {case_id!r}") from None
    _check_x(x)
    for pole in case.coefficient_poles:
        if _near(b, pole, guard):
            raise CoefficientPoleError(
                f"{case_id}: rational coefficient has a zero denominator at b={b!r}", argument=b, label="b"
            )
    if case_id == "E37" and guard.is_pole(2 * d - 2 * b):
        raise PoleError(
            f"E37: denominator parameter 2d-2b = {2 * d - 2 * b!r} is a non-positive integer",
            argument=2 * d - 2 * b,
            label="2d-2b",
        )
    lhs = exton_lhs_theorem(TransformPoint(b, d, case.i, case.j, x), control)
    return IdentityPair(lhs, case.rhs(b, d, x, control))


_LIMIT_LHS_NUMERATOR = {"E41": -1.0, "E42": -2.0, "E43": 0.0, "E44": 1.0}


def _limit_rhs(case_id: str, d: float, x: float, c: SeriesControl) -> SeriesResult:
    if case_id == "E41":
        return _pfq((d - 0.5, d), (d + 0.5,), x, c)
    if case_id == "E42":
        return _combine([
            (2 * d - 1, _pfq((d - 0.5, 1), (2,), x, c)),
            (-2 * (d - 1), _pfq((d - 0.5, d, 1), (d + 0.5, 2), x, c)),
        ])
    binomial = _pfq((d - 0.5,), (), x, c)
    if case_id == "E43":
        return _combine([(0.5, binomial), (0.5, _pfq((d - 0.5, d), (d + 0.5,), x, c))])
    return _combine([(0.5, binomial), (0.5, _pfq((d - 0.5, d, 2 * d + 1), (d + 0.5, 2 * d), x, c))])


LIMITING_CASES = tuple(_LIMIT_LHS_NUMERATOR)


def limiting_case(
    case_id: str, d: float, x: float, control: SeriesControl = DEFAULT_CONTROL
) -> IdentityPair:
    """Both sides of limiting case ``case_id`` (E41..E44).

    The left-hand 2F1 is evaluated at ``+x / (1 + sqrt(1-x))**2``.
    """
    if case_id not in _LIMIT_LHS_NUMERATOR:
        raise ConfigError(f"unknown limiting case {case_id!r}")
    _check_x(x)
    if not d > 0:
        raise DomainError(f"d must be positive, got {d!r}")
    first = 2 * d + _LIMIT_LHS_NUMERATOR[case_id]
    series = _pfq((first, d - 0.5), (d + 0.5,), -quadratic_argument(x), control)
    lhs = _scaled(exton_prefactor(d, x), series)
    return IdentityPair(lhs, _limit_rhs(case_id, d, x, control))
