"""Precision management: working-precision contexts, tagged reals, Bernoulli numbers.

Everything downstream computes through a PrecisionContext, which fixes the
working precision (target digits plus guard digits) and caches the handful of
constants the evaluators keep reaching for.  Bernoulli numbers are exact
rationals obtained from the tangent-number triangle, an integer-only
recurrence, so the series coefficients derived from them carry no rounding
error of their own.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp
from mpmath.libmp import dps_to_prec

from .exceptions import ConfigurationError, DomainError

MIN_TARGET_DIGITS = 10
MAX_TARGET_DIGITS = 10_000_000
DEFAULT_GUARD_DIGITS = 20
MIN_GUARD_DIGITS = 10

Number = Union[int, float, str, Fraction, mpmath.mpf, "Real"]


def _tangent_numbers(m: int) -> list[int]:
    """Tangent numbers T_1..T_m via the integer triangle recurrence.

    T_1, T_2, T_3, ... = 1, 2, 16, 272, ...; exact, no divisions.
    """
    t = [0] * (m + 1)
    t[1] = 1
    for k in range(2, m + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, m + 1):
        for j in range(k, m + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t


class BernoulliCache:
    """Process-wide exact cache of tangent numbers and derived rationals.

    Grows on demand and behaves as if computed eagerly: the fill is idempotent
    and guarded by a lock, so concurrent readers never observe torn state.
    All stored data is precision-independent (plain integers / Fractions).
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._tangent: list[int] = [0, 1]
        # q[n] = zeta(2n)/(2 pi)^(2n) = |B_2n| / (2 (2n)!) as an unreduced
        # integer pair; q[0] unused.
        self._q: list[tuple[int, int]] = [(0, 1)]
        self._fact2n = 1  # (2n)! for n = len(self._q) - 1

    def _ensure(self, n: int) -> None:
        if n < len(self._q) and n < len(self._tangent):
            return
        with self._lock:
            if n < len(self._q) and n < len(self._tangent):
                return
            m = max(2 * (len(self._tangent) - 1), n + 16)
            self._tangent = _tangent_numbers(m)
            k = len(self._q)
            fact = self._fact2n
            while k <= m:
                fact *= (2 * k) * (2 * k - 1)
                den = (fact * ((1 << (2 * k)) - 1)) << (2 * k)
                self._q.append((k * self._tangent[k], den))
                k += 1
            self._fact2n = fact

    def tangent(self, n: int) -> int:
        self._ensure(n)
        return self._tangent[n]

    def zeta_even_pair(self, n: int) -> tuple[int, int]:
        """Integer pair (p, q) with p/q = zeta(2n)/(2 pi)^(2n), exact."""
        self._ensure(n)
        return self._q[n]

    def bernoulli(self, n: int) -> Fraction:
        """Exact B_n for n = 0, 1, or even n >= 2 (B_1 = -1/2)."""
        if n == 0:
            return Fraction(1)
        if n == 1:
            return Fraction(-1, 2)
        k = n // 2
        self._ensure(k)
        sign = 1 if k % 2 == 1 else -1
        return Fraction(sign * n * self._tangent[k], ((1 << (2 * k)) - 1) << (2 * k))


_SHARED_BERNOULLI = BernoulliCache()


class Real:
    """An arbitrary-precision value tagged with the precision it was produced at.

    Arithmetic between two Reals propagates the weaker tag; exact operands
    (int, Fraction) leave the tag unchanged.
    """

    __slots__ = ("value", "produced_at_digits")

    def __init__(self, value, produced_at_digits: int) -> None:
        self.value = mpmath.mpf(value) if not isinstance(value, mpmath.mpf) else value
        self.produced_at_digits = int(produced_at_digits)

    @staticmethod
    def _split(other):
        """Return (mpf-compatible value, digits-or-None) for an operand."""
        if isinstance(other, Real):
            return other.value, other.produced_at_digits
        if isinstance(other, Fraction):
            return other, None
        return other, None

    def _binop(self, other, op, swap=False):
        ov, od = self._split(other)
        digits = self.produced_at_digits if od is None else min(self.produced_at_digits, od)
        # compute with guard digits beyond the tag so chained arithmetic does
        # not erode accuracy the operands actually carry
        with mp.workprec(dps_to_prec(digits + DEFAULT_GUARD_DIGITS) + 10):
            if isinstance(ov, Fraction):
                ov = mpmath.mpf(ov.numerator) / ov.denominator
            res = op(ov, self.value) if swap else op(self.value, ov)
        return Real(res, digits)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: a - b, swap=True)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: a / b, swap=True)

    def __neg__(self):
        # sign flips are exact; mpf unary minus would round to ambient precision
        return Real(mpmath.fneg(self.value, exact=True), self.produced_at_digits)

    def __abs__(self):
        if self.value < 0:
            return Real(mpmath.fneg(self.value, exact=True), self.produced_at_digits)
        return Real(self.value, self.produced_at_digits)

    def _cmp_value(self, other):
        return other.value if isinstance(other, Real) else other

    def __eq__(self, other):
        return self.value == self._cmp_value(other)

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __hash__(self):
        return hash(self.value)

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return mpmath.nstr(self.value, self.produced_at_digits)

    def __repr__(self):
        return f"Real({mpmath.nstr(self.value, min(self.produced_at_digits, 20))!r}, digits={self.produced_at_digits})"

    def decimal(self, places: int | None = None) -> str:
        """Fixed-point decimal string with exactly `places` digits after the point."""
        places = self.produced_at_digits if places is None else int(places)
        with mp.workprec(dps_to_prec(places) + max(mpmath.mag(self.value), 0) + 20):
            scaled = mpmath.nint(self.value * mpmath.mpf(10) ** places)
        n = int(scaled)
        sign = "-" if n < 0 else ""
        digits = str(abs(n)).rjust(places + 1, "0")
        if places == 0:
            return sign + digits
        return f"{sign}{digits[:-places]}.{digits[-places:]}"


class PrecisionContext:
    """Working-precision configuration plus cached constants.

    Immutable after construction apart from internal lazily grown coefficient
    caches, which fill idempotently and are safe to share across threads.
    Construct through :func:`make_context`.
    """

    def __init__(self, target_digits: int, guard_digits: int) -> None:
        self.target_digits = target_digits
        self.guard_digits = guard_digits
        self.working_digits = target_digits + guard_digits
        self.prec = dps_to_prec(self.working_digits)
        with mp.workprec(self.prec):
            self.pi = +mp.pi
            self.ln2 = +mp.ln2
            self.sqrt3 = mpmath.sqrt(3)
            self.sqrt7 = mpmath.sqrt(7)
            self.phi7 = mpmath.atan(self.sqrt7)
        self.bernoulli_cache = _SHARED_BERNOULLI
        self._lock = threading.Lock()
        self._cl2_sin: list = []   # coefficients of the ascending log-sine series
        self._cl2_cos: list = []   # coefficients of the companion log-cosine series
        self._em_coeffs: list = []  # B_{2k}/(2k)! for Euler-Maclaurin corrections
        self._memo: dict = {}      # cross-call memo for expensive pure results

    def workprec(self):
        """Context manager setting mpmath precision to this context's working bits."""
        return mp.workprec(self.prec)

    def mpf(self, x: Number) -> mpmath.mpf:
        """Convert x to an mpf at working precision (Fractions stay exact)."""
        with mp.workprec(self.prec):
            if isinstance(x, Real):
                return +x.value
            if isinstance(x, Fraction):
                return mpmath.mpf(x.numerator) / x.denominator
            return mpmath.mpf(x)

    def real(self, x: Number) -> Real:
        """Wrap x as a Real tagged with this context's target digits."""
        return Real(self.mpf(x), self.target_digits)

    def eps(self) -> mpmath.mpf:
        """10^(-working_digits), the context-level rounding floor."""
        with mp.workprec(self.prec):
            return mpmath.mpf(10) ** (-self.working_digits)

    def __repr__(self):
        return (f"PrecisionContext(target_digits={self.target_digits}, "
                f"guard_digits={self.guard_digits})")


def make_context(target_digits: int, guard_digits: int = DEFAULT_GUARD_DIGITS) -> PrecisionContext:
    """Build a PrecisionContext with constants populated at working precision.

    Deterministic: the same arguments always yield bit-identical constants.
    """
    if not isinstance(target_digits, int) or isinstance(target_digits, bool):
        raise ConfigurationError(f"target_digits must be an integer, got {target_digits!r}")
    if target_digits < MIN_TARGET_DIGITS:
        raise ConfigurationError(
            f"target_digits must be >= {MIN_TARGET_DIGITS}, got {target_digits}")
    if target_digits > MAX_TARGET_DIGITS:
        raise ConfigurationError(
            f"target_digits must be <= {MAX_TARGET_DIGITS}, got {target_digits}")
    if not isinstance(guard_digits, int) or guard_digits < MIN_GUARD_DIGITS:
        raise ConfigurationError(
            f"guard_digits must be an integer >= {MIN_GUARD_DIGITS}, got {guard_digits!r}")
    return PrecisionContext(target_digits, guard_digits)


def bernoulli(n: int, ctx: PrecisionContext | None = None) -> Fraction:
    """Exact Bernoulli number B_n for n = 0, 1, or even n.

    Odd n >= 3 (where B_n = 0 trivially) is rejected: callers never need it,
    and asking for it usually signals an index bug.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError(f"Bernoulli index must be a non-negative integer, got {n!r}")
    if n % 2 == 1 and n >= 3:
        raise DomainError(f"Bernoulli index must be even (or 0, 1), got {n}")
    cache = ctx.bernoulli_cache if ctx is not None else _SHARED_BERNOULLI
    return cache.bernoulli(n)


def zeta_even(n: int, ctx: PrecisionContext) -> Real:
    """zeta(2n)/(2 pi)^(2n) = |B_2n| / (2 (2n)!) at working precision.

    These are the coefficients feeding the Clausen series; they are derived
    from the exact rational pair, so the only error is the final rounding.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"zeta_even index must be a positive integer, got {n!r}")
    p, q = ctx.bernoulli_cache.zeta_even_pair(n)
    with ctx.workprec():
        return Real(mpmath.mpf(p) / q, ctx.target_digits)
