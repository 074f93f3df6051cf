"""Real-arithmetic kernels: signed log-gamma, Gamma quotients, Pochhammer
symbols and compensated summation.

Everything downstream is expressed through these primitives, so they
are kept small and free of hidden state.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import DomainError, IndeterminateError, PoleError

__all__ = [
    "PoleGuard",
    "DEFAULT_GUARD",
    "SignedLogGamma",
    "log_gamma_signed",
    "gamma_ratio",
    "gamma_shift_ratio",
    "labelled_gamma_ratio",
    "pochhammer",
    "CompensatedSum",
    "compensated_sum",
]

_LOG_PI = math.log(math.pi)
_DIRECT_GAMMA_LIMIT = 30.0


@dataclass(frozen=True)
class PoleGuard:
    """Distance below which an argument counts as a non-positive integer."""

    tolerance: float = 1e-9

    def __post_init__(self):
        if not (0.0 < self.tolerance < 0.5):
            raise ValueError(f"pole tolerance must lie in (0, 0.5), got {self.tolerance!r}")

    def is_pole(self, x: float) -> bool:
        if x > self.tolerance:
            return False
        k = round(x)
        return k <= 0 and abs(x - k) <= self.tolerance


DEFAULT_GUARD = PoleGuard()


@dataclass(frozen=True)
class SignedLogGamma:
    log_abs: float
    sign: int

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log_abs)


def _sinpi(x: float) -> float:
    # fmod is exact, and r - 1.0, r - 2.0 are exact on the ranges used.
    r = math.fmod(abs(x), 2.0)
    if r < 0.5:
        v = math.sin(math.pi * r)
    elif r < 1.5:
        v = -math.sin(math.pi * (r - 1.0))
    else:
        v = math.sin(math.pi * (r - 2.0))
    return v if x >= 0 else -v


def log_gamma_signed(x: float, guard: PoleGuard = DEFAULT_GUARD) -> SignedLogGamma:
    """Return ``log|Gamma(x)|`` together with the sign of ``Gamma(x)``.

    Negative arguments go through the reflection formula
    ``Gamma(x) Gamma(1-x) = pi / sin(pi x)``; the sign is that of
    ``sin(pi x)`` because ``Gamma(1-x) > 0`` there.

    Raises:
        PoleError: ``x`` is within ``guard.tolerance`` of a non-positive integer.
        DomainError: ``x`` is not finite.
    """
    if not math.isfinite(x):
        raise DomainError(f"log_gamma_signed needs a finite argument, got {x!r}")
    if guard.is_pole(x):
        raise PoleError(f"Gamma has a pole at {x!r}", argument=x)
    if x > 0:
        return SignedLogGamma(math.lgamma(x), 1)
    s = _sinpi(x)
    log_abs = _LOG_PI - math.log(abs(s)) - math.lgamma(1.0 - x)
    return SignedLogGamma(log_abs, 1 if s > 0 else -1)


def gamma_ratio(
    numerators: Sequence[float],
    denominators: Sequence[float],
    guard: PoleGuard = DEFAULT_GUARD,
) -> float:
    """``prod Gamma(numerators) / prod Gamma(denominators)``.

    A pole in a denominator Gamma sends the quotient to exactly 0. A pole in
    a numerator raises :class:`PoleError`, or :class:`IndeterminateError` when
    a denominator pole is present as well (no limits are taken here).
    """
    num_poles = [x for x in numerators if guard.is_pole(x)]
    den_poles = [x for x in denominators if guard.is_pole(x)]
    if num_poles and den_poles:
        raise IndeterminateError(
            f"0/0 Gamma quotient: numerator pole at {num_poles[0]!r}, "
            f"denominator pole at {den_poles[0]!r}"
        )
    if num_poles:
        raise PoleError(f"numerator Gamma has a pole at {num_poles[0]!r}", argument=num_poles[0])
    if den_poles:
        return 0.0

    if all(abs(x) <= _DIRECT_GAMMA_LIMIT for x in (*numerators, *denominators)):
        # math.gamma is several times more accurate than exp(lgamma), and
        # with |x| <= 30 no product of a handful of factors can overflow.
        r = 1.0
        for x in numerators:
            r *= math.gamma(x)
        for x in denominators:
            r /= math.gamma(x)
        if r != 0.0 and math.isfinite(r):
            return r

    sign = 1
    logs = []
    for x in numerators:
        g = log_gamma_signed(x, guard)
        sign *= g.sign
        logs.append(g.log_abs)
    for x in denominators:
        g = log_gamma_signed(x, guard)
        sign *= g.sign
        logs.append(-g.log_abs)
    try:
        return sign * math.exp(math.fsum(logs))
    except OverflowError:
        return sign * math.inf


def labelled_gamma_ratio(
    numerators: Sequence[tuple[str, float]],
    denominators: Sequence[tuple[str, float]],
    guard: PoleGuard = DEFAULT_GUARD,
) -> float:
    """:func:`gamma_ratio` over ``(label, argument)`` pairs.

    A numerator pole is re-raised with the label of the offending argument.
    """
    try:
        return gamma_ratio([v for _, v in numerators], [v for _, v in denominators], guard)
    except PoleError as exc:
        label = next((name for name, v in numerators if v == exc.argument), "")
        raise PoleError(
            f"Gamma({label}) has a pole at {exc.argument!r}", argument=exc.argument, label=label
        ) from None


def gamma_shift_ratio(
    x: float, k: int, guard: PoleGuard = DEFAULT_GUARD, label: str = ""
) -> float:
    """``Gamma(x - k) / Gamma(x)`` for integer ``k >= 0``, as ``1 / (x - k)_k``.

    The Pochhammer form is also the limit when ``x`` is itself a non-positive
    integer, which is what terminating sums (``x = -n``) need.
    """
    if k == 0:
        return 1.0
    if guard.is_pole(x - k) and not guard.is_pole(x):
        name = label or f"{x!r} - {k}"
        raise PoleError(f"Gamma({name}) has a pole at {x - k!r}", argument=x - k, label=label)
    return 1.0 / pochhammer(x - k, k)


def pochhammer(alpha: float, n: int) -> float:
    """Rising factorial ``alpha (alpha+1) ... (alpha+n-1)``; 1 when n == 0.

    Computed as a plain left-to-right product so that a non-positive integer
    ``alpha`` gives an exact zero once ``n > -alpha``.
    """
    if n < 0:
        raise ValueError(f"pochhammer needs n >= 0, got {n}")
    p = 1.0
    for k in range(n):
        p *= alpha + k
    return p


class CompensatedSum:
    """Running Neumaier (improved Kahan) sum."""

    __slots__ = ("_s", "_c")

    def __init__(self):
        self._s = 0.0
        self._c = 0.0

    def add(self, x: float) -> None:
        s = self._s
        t = s + x
        if abs(s) >= abs(x):
            self._c += (s - t) + x
        else:
            self._c += (x - t) + s
        self._s = t

    @property
    def value(self) -> float:
        return self._s + self._c


def compensated_sum(terms: Iterable[float]) -> float:
    acc = CompensatedSum()
    for x in terms:
        acc.add(x)
    return acc.value
