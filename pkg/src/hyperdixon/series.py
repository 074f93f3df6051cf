"""Term-by-term evaluation of the generalized hypergeometric series pFq.

This is the brute-force engine every closed form in the package is checked
against, so it stays deliberately plain: a running term ratio, compensated
accumulation and an explicit convergence status.
"""
from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import DivisionByZeroError, DomainError, NotTerminatingError
from .scalar import CompensatedSum

__all__ = [
    "SeriesStatus",
    "PFQParams",
    "SeriesResult",
    "SeriesControl",
    "DEFAULT_CONTROL",
    "eval_pfq",
    "eval_pfq_terminating",
    "pfq",
]


class SeriesStatus(str, enum.Enum):
    CONVERGED = "Converged"
    TERMINATED = "Terminated"
    MAX_TERMS = "MaxTermsExceeded"


def _nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


@dataclass(frozen=True)
class PFQParams:
    numerator: tuple[float, ...]
    denominator: tuple[float, ...]

    def __init__(self, numerator: Sequence[float], denominator: Sequence[float]):
        object.__setattr__(self, "numerator", tuple(float(a) for a in numerator))
        object.__setattr__(self, "denominator", tuple(float(b) for b in denominator))

    @property
    def p(self) -> int:
        return len(self.numerator)

    @property
    def q(self) -> int:
        return len(self.denominator)

    def termination_order(self) -> int | None:
        """Degree m of the polynomial when some numerator equals -m, else None.

        Uses an exact integer test: callers pass terminating parameters as
        integers, and near-integers are treated as genuinely non-terminating.
        """
        orders = [int(-a) for a in self.numerator if _nonpositive_integer(a)]
        return min(orders) if orders else None

    def check_denominators(self) -> None:
        m = self.termination_order()
        for b in self.denominator:
            if _nonpositive_integer(b) and (m is None or m > -b):
                raise DivisionByZeroError(
                    f"denominator parameter {b!r} vanishes in (b)_n before the series terminates"
                )

    def __str__(self) -> str:
        num = ", ".join(repr(a) for a in self.numerator) or "-"
        den = ", ".join(repr(b) for b in self.denominator) or "-"
        return f"{self.p}F{self.q}[{num}; {den}]"


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    status: SeriesStatus

    @property
    def usable(self) -> bool:
        """False when the value is only a partial sum."""
        return self.status is not SeriesStatus.MAX_TERMS


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-13
    max_terms: int = 200_000
    consecutive_small: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if self.consecutive_small < 1:
            raise ValueError("consecutive_small must be at least 1")


DEFAULT_CONTROL = SeriesControl()


def _check_domain(params: PFQParams, z: float) -> None:
    if not math.isfinite(z):
        raise DomainError(f"series argument must be finite, got {z!r}")
    if params.termination_order() is not None or z == 0:
        return
    p, q = params.p, params.q
    if p > q + 1:
        raise DomainError(f"{p}F{q} diverges for every z != 0 unless it terminates")
    if p == q + 1:
        if abs(z) > 1:
            raise DomainError(f"{p}F{q} needs |z| < 1, got z={z!r}")
        if abs(z) == 1:
            # On the unit circle the series converges absolutely iff
            # sum(denominators) - sum(numerators) > 0.
            excess = math.fsum(params.denominator) - math.fsum(params.numerator)
            if excess <= 0:
                raise DomainError(
                    f"{p}F{q} at |z|=1 needs sum(den) - sum(num) > 0, got {excess!r}"
                )


def _ratio(params: PFQParams, n: int, z: float) -> float:
    r = z / (n + 1)
    for a in params.numerator:
        r *= a + n
    for b in params.denominator:
        r /= b + n
    return r


def eval_pfq(
    params: PFQParams, z: float, control: SeriesControl = DEFAULT_CONTROL
) -> SeriesResult:
    """Sum ``sum_n prod (a_k)_n / prod (b_k)_n * z**n / n!`` directly.

    A terminating series is summed through its last non-zero term. Otherwise
    summation stops once ``control.consecutive_small`` successive terms are
    below ``rel_tol * max(1, |partial sum|)``, or gives up at
    ``control.max_terms`` with status ``MaxTermsExceeded``.

    Raises:
        DomainError: ``z`` lies outside the region of convergence.
        DivisionByZeroError: a denominator ``(b)_n`` hits zero first.
    """
    _check_domain(params, z)
    params.check_denominators()
    m = params.termination_order()

    acc = CompensatedSum()
    term = 1.0
    small = 0
    n = 0
    while True:
        acc.add(term)
        used = n + 1
        if m is not None:
            if n == m:
                return SeriesResult(acc.value, used, SeriesStatus.TERMINATED)
        else:
            if abs(term) <= control.rel_tol * max(1.0, abs(acc.value)):
                small += 1
                if small >= control.consecutive_small:
                    return SeriesResult(acc.value, used, SeriesStatus.CONVERGED)
            else:
                small = 0
        if used >= control.max_terms:
            return SeriesResult(acc.value, used, SeriesStatus.MAX_TERMS)
        term *= _ratio(params, n, z)
        n += 1


def eval_pfq_terminating(params: PFQParams, z: float) -> float:
    """Exact-length sum of a terminating series (m + 1 terms, no tolerance)."""
    m = params.termination_order()
    if m is None:
        raise NotTerminatingError(f"{params} has no non-positive integer numerator parameter")
    if not math.isfinite(z):
        raise DomainError(f"series argument must be finite, got {z!r}")
    params.check_denominators()
    acc = CompensatedSum()
    term = 1.0
    acc.add(term)
    for n in range(m):
        term *= _ratio(params, n, z)
        acc.add(term)
    return acc.value


def pfq(
    numerator: Sequence[float],
    denominator: Sequence[float],
    z: float,
    control: SeriesControl = DEFAULT_CONTROL,
) -> SeriesResult:
    """Shorthand for ``eval_pfq(PFQParams(numerator, denominator), z, control)``."""
    return eval_pfq(PFQParams(numerator, denominator), z, control)
