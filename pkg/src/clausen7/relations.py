"""Integer-relation detection by PSLQ over high-precision reals.

Standard full-precision PSLQ: Hermite reduction of the lower-trapezoidal
matrix built from the input vector, then bounded swap/corner/reduce rounds.
At any point 1/max_j |H_jj| is a lower bound on the Euclidean norm of every
remaining relation, which is what lets a run certify "no relation below the
requested bound" rather than merely give up.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
from mpmath import mp
from mpmath.libmp import dps_to_prec

from .exceptions import DomainError, PrecisionError, RelationNotFoundError
from .mpcontext import PrecisionContext, Real, make_context

DETECTION_SAFETY_DIGITS = 10


@dataclass(frozen=True)
class IntegerRelation:
    """A detected relation sum_i c_i x_i = 0 (to working precision).

    coefficients are normalized: gcd 1, first non-zero entry positive.
    residual is |sum c_i x_i| recomputed at the input precision; norm_bound
    the search bound that was in force; precision_used the common input
    precision in digits.
    """

    coefficients: tuple[int, ...]
    residual: Real
    norm_bound: int
    precision_used: int
    iterations: int


def _normalize(coeffs: list[int]) -> tuple[int, ...]:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    if g > 1:
        coeffs = [c // g for c in coeffs]
    for c in coeffs:
        if c:
            if c < 0:
                coeffs = [-v for v in coeffs]
            break
    return tuple(coeffs)


def pslq(values, ctx: PrecisionContext | None = None, *,
         norm_bound: int = 100,
         max_iterations: int | None = None) -> IntegerRelation | None:
    """Search for small integer coefficients with sum_i c_i values_i = 0.

    Returns a normalized IntegerRelation, or None when the run certifies that
    no relation with Euclidean norm below norm_bound exists at this precision
    (or when the iteration cap trips, which is reported as a warning).

    The inputs must carry enough precision for the requested bound:
    at least 2 n log10(norm_bound) + 20 digits.
    """
    values = list(values)
    n = len(values)
    if n < 2:
        raise DomainError(f"pslq needs at least two values, got {n}")
    digits = min(v.produced_at_digits if isinstance(v, Real)
                 else (ctx.target_digits if ctx is not None else mp.dps)
                 for v in values)
    required = math.ceil(2 * n * math.log10(max(norm_bound, 2))) + 20
    if digits < required:
        raise PrecisionError(
            f"pslq with n={n}, norm_bound={norm_bound} needs inputs at "
            f">= {required} digits, got {digits}",
            min_digits=required)
    if max_iterations is None:
        max_iterations = max(1000, 8 * n * n * digits)

    prec = dps_to_prec(digits)
    with mp.workprec(prec):
        x = [v.value if isinstance(v, Real) else mpmath.mpf(v) for v in values]
        if any(not mpmath.isfinite(v) for v in x):
            raise DomainError("pslq inputs must be finite")
        eps = mpmath.mpf(10) ** (-(digits - DETECTION_SAFETY_DIGITS))
        gamma = mpmath.sqrt(mpmath.mpf(4) / 3)

        s = [mpmath.mpf(0)] * n
        t = mpmath.mpf(0)
        for k in range(n - 1, -1, -1):
            t += x[k] * x[k]
            s[k] = mpmath.sqrt(t)
        norm = s[0]
        if norm == 0:
            raise DomainError("pslq inputs must not all be zero")
        y = [v / norm for v in x]
        s = [v / norm for v in s]
        H = [[mpmath.mpf(0)] * (n - 1) for _ in range(n)]
        for i in range(n):
            if i < n - 1:
                H[i][i] = s[i + 1] / s[i]
            for j in range(i):
                H[i][j] = -y[i] * y[j] / (s[j] * s[j + 1])
        B = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

        def reduce_row(i: int, jtop: int) -> None:
            for j in range(jtop, -1, -1):
                if H[j][j] == 0:
                    continue
                q = int(mpmath.nint(H[i][j] / H[j][j]))
                if q == 0:
                    continue
                y[j] += q * y[i]
                for k in range(j + 1):
                    H[i][k] -= q * H[j][k]
                for k in range(n):
                    B[k][j] += q * B[k][i]

        for i in range(1, n):
            reduce_row(i, i - 1)

        iteration = 0
        while iteration < max_iterations:
            iteration += 1
            m, best = 0, mpmath.mpf(0)
            g = mpmath.mpf(1)
            for i in range(n - 1):
                g *= gamma
                v = g * abs(H[i][i])
                if v > best:
                    best, m = v, i
            y[m], y[m + 1] = y[m + 1], y[m]
            H[m], H[m + 1] = H[m + 1], H[m]
            for k in range(n):
                B[k][m], B[k][m + 1] = B[k][m + 1], B[k][m]
            if m < n - 2:
                t0 = mpmath.hypot(H[m][m], H[m][m + 1])
                c, sn = H[m][m] / t0, H[m][m + 1] / t0
                for i in range(m, n):
                    a, b = H[i][m], H[i][m + 1]
                    H[i][m] = a * c + b * sn
                    H[i][m + 1] = b * c - a * sn
            for i in range(max(1, m), n):
                reduce_row(i, min(i - 1, m + 1))

            ymin, imin = abs(y[0]), 0
            for i in range(1, n):
                if abs(y[i]) < ymin:
                    ymin, imin = abs(y[i]), i
            if ymin < eps:
                coeffs = _normalize([B[k][imin] for k in range(n)])
                if max(abs(c) for c in coeffs) > norm_bound:
                    warnings.warn(
                        f"pslq found a relation with coefficients above "
                        f"norm_bound={norm_bound}; treating as not found",
                        stacklevel=2)
                    return None
                residual = abs(mpmath.fsum(c * v for c, v in zip(coeffs, x)))
                return IntegerRelation(
                    coefficients=coeffs,
                    residual=Real(residual, digits),
                    norm_bound=norm_bound,
                    precision_used=digits,
                    iterations=iteration)
            max_hjj = max(abs(H[j][j]) for j in range(n - 1))
            if max_hjj > 0 and 1 / max_hjj > norm_bound:
                return None        # certified: no relation below norm_bound
        warnings.warn(
            f"pslq hit the iteration cap ({max_iterations}) without a decision",
            stacklevel=2)
        return None


EQ6_COEFFICIENTS = (6, -6, 2, -7, -7, 7)


def rediscover_eq6(digits: int = 200, ctx: PrecisionContext | None = None, *,
                   norm_bound: int = 100) -> IntegerRelation:
    """Recover the six-term Clausen relation from raw numerics.

    Computes the six Clausen values at 2 phi7, 4 phi7, 6 phi7, 2 pi/7,
    4 pi/7, 6 pi/7 and runs pslq over them; the normalized result must come
    out as (6, -6, 2, -7, -7, 7).
    """
    from .specfun import clausen2

    if digits < 100:
        raise DomainError(
            f"rediscover_eq6 needs at least 100 digits, got {digits}")
    if ctx is None:
        ctx = make_context(digits)
    with ctx.workprec():
        angles = [2 * ctx.phi7, 4 * ctx.phi7, 6 * ctx.phi7,
                  2 * ctx.pi / 7, 4 * ctx.pi / 7, 6 * ctx.pi / 7]
    values = [clausen2(a, ctx) for a in angles]
    relation = pslq(values, ctx, norm_bound=norm_bound)
    if relation is None or relation.coefficients != EQ6_COEFFICIENTS:
        raise RelationNotFoundError(
            f"six-term relation not recovered at {digits} digits "
            f"(norm_bound={norm_bound}); got "
            f"{relation.coefficients if relation else None}",
            precision=digits, norm_bound=norm_bound)
    return relation
