"""Special functions: Clausen Cl2, Hurwitz zeta, Kronecker symbol, L-series, Zagier A.

Cl2 is evaluated from exact-rational series coefficients after symmetry
reduction of the argument to [0, pi]:

    Cl2(x)      = x - x ln x + sum_{n>=1} q_n x^(2n+1) / (n (2n+1)),   x <= 2 pi/3
    Cl2(pi - y) = y ln 2 - sum_{n>=1} (4^n - 1) q_n y^(2n+1) / (n (2n+1)),  otherwise

with q_n = zeta(2n)/(2 pi)^(2n) exact.  The split at 2 pi/3 equalizes the two
convergence ratios at (1/3)^2, just under one decimal digit per term.

The Hurwitz zeta function uses Euler-Maclaurin summation with the shift N
sized so the Bernoulli correction terms reach the working rounding floor; the
truncation error is bounded by the first omitted correction term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp

from .exceptions import DomainError
from .mpcontext import Number, PrecisionContext, Real


# --------------------------------------------------------------------------
# Domain types
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Discriminant:
    """A non-square integer d = 0 or 1 (mod 4), the modulus of a quadratic character."""

    d: int

    def __post_init__(self):
        d = self.d
        if not isinstance(d, int) or isinstance(d, bool) or d == 0:
            raise DomainError(f"discriminant must be a non-zero integer, got {d!r}")
        if d % 4 not in (0, 1):
            raise DomainError(f"discriminant must be 0 or 1 mod 4, got {d}")
        if d > 0 and math.isqrt(d) ** 2 == d:
            raise DomainError(f"discriminant must not be a perfect square, got {d}")


@dataclass(frozen=True)
class LSeriesPoint:
    """An (d, s) evaluation point with s inside the convergence half-plane s > 1."""

    d: Discriminant
    s: Number

    def __post_init__(self):
        s = self.s
        threshold = Fraction(1) if isinstance(s, Fraction) else 1
        if not (s > threshold):
            raise DomainError(f"L-series point needs s > 1, got s={s}")


# --------------------------------------------------------------------------
# Kronecker symbol
# --------------------------------------------------------------------------

def _jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd m >= 1, by quadratic reciprocity."""
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def kronecker(d: Union[int, Discriminant], n: int) -> int:
    """Kronecker symbol (d/n) for an admissible discriminant d and n >= 1.

    Completely multiplicative in n, periodic with period |d|, values in
    {-1, 0, 1}.  The factor of 2 is peeled off with the +-1 mod 8 rule; the
    odd part goes through the Jacobi-symbol reciprocity loop, so no
    factorization of n is needed.
    """
    d = d.d if isinstance(d, Discriminant) else Discriminant(d).d
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"kronecker needs a positive integer n, got {n!r}")
    e = (n & -n).bit_length() - 1
    m = n >> e
    if e == 0:
        r2 = 1
    elif d % 2 == 0:
        return 0
    else:
        k2 = 1 if d % 8 in (1, 7) else -1
        r2 = 1 if e % 2 == 0 else k2
    return r2 * _jacobi(d % m, m) if m > 1 else r2


# --------------------------------------------------------------------------
# Clausen function
# --------------------------------------------------------------------------

def _ensure_cl2_coeffs(ctx: PrecisionContext, n: int) -> None:
    """Fill the per-context mpf coefficient lists up to index n (idempotent)."""
    if n < len(ctx._cl2_sin):
        return
    with ctx._lock:
        if n < len(ctx._cl2_sin):
            return
        top = max(n + 16, 2 * len(ctx._cl2_sin))
        cache = ctx.bernoulli_cache
        cache.zeta_even_pair(top)  # one triangle growth instead of many
        start = len(ctx._cl2_sin)
        if start == 0:
            ctx._cl2_sin.append(mpmath.mpf(0))
            ctx._cl2_cos.append(mpmath.mpf(0))
            start = 1
        sin_new, cos_new = [], []
        with mp.workprec(ctx.prec + 32):
            for k in range(start, top + 1):
                p, q = cache.zeta_even_pair(k)
                den = q * k * (2 * k + 1)
                sin_new.append(mpmath.mpf(p) / den)
                cos_new.append(mpmath.mpf(p * ((1 << (2 * k)) - 1)) / den)
        ctx._cl2_sin.extend(sin_new)
        ctx._cl2_cos.extend(cos_new)


def _cl2_reduce(theta, wp: int, snap_prec: int):
    """Map theta to (sign, x) with Cl2(theta) = sign * Cl2(x), x in (0, pi).

    Returns (sign, None) when theta is an integer multiple of pi to within a
    few ulps of the snap precision (the value is then exactly 0).
    """
    pi = +mp.pi
    two_pi = 2 * pi
    sign = 1
    x = theta
    if x < 0:
        x, sign = -x, -sign
    if x >= two_pi:
        x = mpmath.fmod(x, two_pi)
    if x > pi:
        x, sign = two_pi - x, -sign
    snap = pi * mpmath.mpf(2) ** (-(snap_prec - 4))
    if x < snap or pi - x < snap:
        return sign, None
    return sign, x


def _clausen2_raw(theta, ctx: PrecisionContext):
    """Cl2 as a bare mpf at (slightly above) working precision."""
    if isinstance(theta, Real):
        theta = theta.value
    with mp.workprec(ctx.prec + 32):
        if isinstance(theta, Fraction):
            theta = mpmath.mpf(theta.numerator) / theta.denominator
        else:
            theta = mpmath.mpf(theta)
    magbits = mpmath.mag(theta) if theta else 0
    wp = ctx.prec + max(magbits, 0) + 16
    with mp.workprec(wp):
        sign, x = _cl2_reduce(theta, wp, ctx.prec)
    if x is None:
        return mpmath.mpf(0)
    with mp.workprec(ctx.prec + 16):
        pi = +mp.pi
        eps = mpmath.mpf(2) ** (-(ctx.prec + 8))
        if 3 * x <= 2 * pi:
            ratio = x / (2 * pi)
            est = int(-(ctx.working_digits + 6) * mp.ln(10) / (2 * mpmath.ln(ratio))) + 8
            _ensure_cl2_coeffs(ctx, est)
            coeffs = ctx._cl2_sin
            xsq = x * x
            acc = mpmath.mpf(0)
            power = xsq
            n = 1
            while True:
                if n >= len(coeffs):
                    _ensure_cl2_coeffs(ctx, n)
                    coeffs = ctx._cl2_sin
                term = coeffs[n] * power
                acc += term
                if term < eps:
                    break
                power *= xsq
                n += 1
            value = x - x * mpmath.ln(x) + x * acc
        else:
            y = pi - x
            ratio = y / pi
            est = int(-(ctx.working_digits + 6) * mp.ln(10) / (2 * mpmath.ln(ratio))) + 8
            _ensure_cl2_coeffs(ctx, est)
            coeffs = ctx._cl2_cos
            ysq = y * y
            acc = mpmath.mpf(0)
            power = ysq
            n = 1
            while True:
                if n >= len(coeffs):
                    _ensure_cl2_coeffs(ctx, n)
                    coeffs = ctx._cl2_cos
                term = coeffs[n] * power
                acc += term
                if term < eps:
                    break
                power *= ysq
                n += 1
            value = y * mp.ln2 - y * acc
        return value if sign > 0 else -value


def clausen2(theta: Number, ctx: PrecisionContext) -> Real:
    """Clausen function Cl2(theta) = sum_{m>=1} sin(m theta)/m^2.

    Total on the reals; odd and 2 pi-periodic by construction of the argument
    reduction, with Cl2(m pi) = 0 exactly.
    """
    value = _clausen2_raw(theta, ctx)
    with ctx.workprec():
        return Real(+value, ctx.target_digits)


def clausen2_integral(theta: Number, ctx: PrecisionContext,
                      target_digits: int | None = None, *,
                      workers: int = 1) -> Real:
    """Cl2(theta) as the log-sine integral -int_0^theta ln|2 sin(t/2)| dt.

    Evaluated by tanh-sinh quadrature; an independent route used to
    cross-check the series evaluator.  Requires 0 <= theta <= 2 pi.  For
    theta > pi the tail is folded back by the symmetry of the integrand about
    pi, so every piece has its singularity at the origin.
    """
    from .quadrature import tanh_sinh

    target = ctx.target_digits if target_digits is None else int(target_digits)
    with ctx.workprec():
        th = ctx.mpf(theta)
        if th < 0 or th > 2 * ctx.pi:
            raise DomainError(f"clausen2_integral needs 0 <= theta <= 2 pi, got {th}")

    def neg_log_2sin_half(t):
        return -mpmath.ln(2 * mpmath.sin(t / 2))

    def piece(c):
        if c == 0:
            return mpmath.mpf(0)
        return tanh_sinh(neg_log_2sin_half, mpmath.mpf(0), c, ctx,
                         target + 2, workers=workers).value.value

    with ctx.workprec():
        if th <= ctx.pi:
            value = piece(th)
        else:
            value = 2 * piece(+ctx.pi) - piece(2 * ctx.pi - th)
    return Real(value, target)


# --------------------------------------------------------------------------
# Hurwitz zeta and Dirichlet L-series
# --------------------------------------------------------------------------

def _ensure_em_coeffs(ctx: PrecisionContext, k: int) -> None:
    """B_{2k}/(2k)! = (-1)^(k+1) 2 q_k as mpfs, cached per context."""
    if k < len(ctx._em_coeffs):
        return
    with ctx._lock:
        if k < len(ctx._em_coeffs):
            return
        top = max(k + 16, 2 * len(ctx._em_coeffs))
        cache = ctx.bernoulli_cache
        cache.zeta_even_pair(top)
        start = len(ctx._em_coeffs)
        if start == 0:
            ctx._em_coeffs.append(mpmath.mpf(0))
            start = 1
        new = []
        with mp.workprec(ctx.prec + 32):
            for j in range(start, top + 1):
                p, q = cache.zeta_even_pair(j)
                c = mpmath.mpf(2 * p) / q
                new.append(c if j % 2 == 1 else -c)
        ctx._em_coeffs.extend(new)


def hurwitz_zeta(s: Number, a: Number, ctx: PrecisionContext) -> Real:
    """Hurwitz zeta zeta(s, a) = sum_{m>=0} (m + a)^(-s) for s > 1, 0 < a <= 1.

    Euler-Maclaurin: a direct sum of N terms, the integral and half-term
    corrections, then Bernoulli corrections added until the next one would
    fall below the working rounding floor.  The truncation error is bounded
    in magnitude by the first omitted correction term.
    """
    with ctx.workprec():
        s_v = ctx.mpf(s)
        a_v = ctx.mpf(a)
        if not s_v > 1:
            raise DomainError(f"hurwitz_zeta needs s > 1, got s={s_v}")
        if not (0 < a_v <= 1):
            raise DomainError(f"hurwitz_zeta needs 0 < a <= 1, got a={a_v}")
    wd = ctx.working_digits
    N = int(wd * 0.3665 * 1.3) + 8
    _ensure_em_coeffs(ctx, int(wd * 0.95) + 16)
    with mp.workprec(ctx.prec + 16):
        is_two = s_v == 2
        total = mpmath.mpf(0)
        for m in range(N):
            base = m + a_v
            total += 1 / (base * base) if is_two else base ** (-s_v)
        na = N + a_v
        total += na ** (1 - s_v) / (s_v - 1)
        inv_na = 1 / na
        power = inv_na * inv_na if is_two else na ** (-s_v)
        total += power / 2
        # correction terms: em_k * (s)_{2k-1} * na^{-(s + 2k - 1)}
        eps = mpmath.mpf(10) ** (-wd) * max(1, abs(total))
        em = ctx._em_coeffs
        poch = s_v
        power *= inv_na
        inv_na2 = inv_na * inv_na
        k = 1
        while True:
            if k >= len(em):
                _ensure_em_coeffs(ctx, k)
                em = ctx._em_coeffs
            term = em[k] * poch * power
            total += term
            if abs(term) < eps:
                break
            poch *= (s_v + 2 * k - 1) * (s_v + 2 * k)
            power *= inv_na2
            k += 1
            if k > 8 * wd + 64:
                raise ArithmeticError(
                    "Euler-Maclaurin corrections failed to reach the rounding floor; "
                    f"N={N} too small for s={s_v}")
        return Real(+total, ctx.target_digits)


def dirichlet_L(d: Union[int, Discriminant], s: Number, ctx: PrecisionContext) -> Real:
    """L_d(s) = sum_{n>=1} (d/n) n^(-s), for s > 1.

    Evaluated through the period-|d| decomposition
    L_d(s) = |d|^(-s) * sum_{l=1}^{|d|-1} (d/l) zeta(s, l/|d|),
    which converges at any admissible d and real s > 1.
    """
    disc = d if isinstance(d, Discriminant) else Discriminant(d)
    point = LSeriesPoint(disc, s)
    ad = abs(disc.d)
    terms = []
    for ell in range(1, ad):
        chi = kronecker(disc, ell)
        if chi:
            z = hurwitz_zeta(point.s, Fraction(ell, ad), ctx)
            terms.append((chi, z.value))
    with ctx.workprec():
        total = mpmath.mpf(0)
        for chi, z in terms:
            total = total + z if chi > 0 else total - z
        total *= ctx.mpf(ad) ** (-ctx.mpf(point.s))
        return Real(total, ctx.target_digits)


def dirichlet_L_clausen(d: Union[int, Discriminant], ctx: PrecisionContext) -> Real:
    """L_d(2) for d < 0 through the Clausen route.

    The character's finite sine expansion (valid for negative discriminants)
    turns the series into
    L_d(2) = (1/sqrt|d|) * sum_{l=1}^{|d|-1} (d/l) Cl2(2 pi l / |d|),
    an evaluation fully independent of the Hurwitz-zeta machinery.
    """
    disc = d if isinstance(d, Discriminant) else Discriminant(d)
    if disc.d > 0:
        raise DomainError(
            f"the sine expansion needs a negative discriminant, got d={disc.d}")
    ad = abs(disc.d)
    values = []
    for ell in range(1, ad):
        chi = kronecker(disc, ell)
        if chi:
            with ctx.workprec():
                angle = 2 * ctx.pi * ell / ad
            values.append((chi, _clausen2_raw(angle, ctx)))
    with ctx.workprec():
        total = mpmath.mpf(0)
        for chi, v in values:
            total = total + v if chi > 0 else total - v
        total /= mpmath.sqrt(ad)
        return Real(+total, ctx.target_digits)


# --------------------------------------------------------------------------
# Zagier's A
# --------------------------------------------------------------------------

def arccot(x: Number, ctx: PrecisionContext) -> Real:
    """arccot(x) = pi/2 - arctan(x) for x >= 0, with values in (0, pi/2]."""
    with ctx.workprec():
        xv = ctx.mpf(x)
        if xv < 0:
            raise DomainError(f"arccot branch here is defined for x >= 0, got {xv}")
        return Real(ctx.pi / 2 - mpmath.atan(xv), ctx.target_digits)


def zagier_A(x: Number, ctx: PrecisionContext) -> Real:
    """A(x) = int_0^x (1+t^2)^(-1) ln(4/(1+t^2)) dt = Cl2(2 arccot x), for x >= 0."""
    with ctx.workprec():
        xv = ctx.mpf(x)
        if xv < 0:
            raise DomainError(f"zagier_A is defined for x >= 0, got {xv}")
        angle = 2 * (ctx.pi / 2 - mpmath.atan(xv))
    return clausen2(angle, ctx)


def zagier_A_quadrature(x: Number, ctx: PrecisionContext,
                        target_digits: int | None = None, *,
                        workers: int = 1) -> Real:
    """A(x) by direct tanh-sinh quadrature of its defining integral.

    Independent cross-check for zagier_A: shares no code with the Clausen
    series route.
    """
    from .quadrature import tanh_sinh

    target = ctx.target_digits if target_digits is None else int(target_digits)
    with ctx.workprec():
        xv = ctx.mpf(x)
        if xv < 0:
            raise DomainError(f"zagier_A_quadrature is defined for x >= 0, got {xv}")
        if xv == 0:
            return Real(mpmath.mpf(0), target)

    def f(t):
        opp = 1 + t * t
        return mpmath.ln(4 / opp) / opp

    res = tanh_sinh(f, mpmath.mpf(0), xv, ctx, target, workers=workers)
    return Real(res.value.value, target)
