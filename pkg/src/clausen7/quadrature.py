"""Tanh-sinh (double-exponential) quadrature and the split singular integral.

The engine applies the transform x = tanh((pi/2) sinh t) to a finite interval
and refines a trapezoid grid in t, halving the step per level.  Weights decay
double-exponentially, so integrable logarithmic endpoint singularities are
harmless.  Interior singularities are the caller's job: split the interval so
the singular point sits at an endpoint, and shift coordinates so that endpoint
is 0 (offsets from 0 are exact in floating point, offsets from a general
endpoint are not).

Node offsets from the near endpoint are generated stably as
1 - tanh(u) = 2/(e^{2u} + 1), never by subtraction from 1.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import mpmath
from mpmath import mp
from mpmath.libmp import dps_to_prec, prec_to_dps

from .exceptions import DomainError, IntegrandError, NonConvergenceError
from .mpcontext import PrecisionContext, Real

DEFAULT_MAX_LEVELS = 12

_NODE_LOCK = threading.Lock()
_NODE_CACHE: dict[tuple[int, int], list] = {}


def _t_max(prec: int):
    """Cutoff in t beyond which weights are below the rounding floor."""
    digits = prec_to_dps(prec)
    return mpmath.asinh((digits + 6) * mp.ln(10) / mp.pi) + mpmath.mpf(1) / 2


def _level_nodes(prec: int, level: int) -> list:
    """Nodes (c, w) for one refinement level at the given precision.

    c = 1 - tanh(u) is the offset of the abscissa from the near endpoint in
    [-1, 1] coordinates; w the tanh-sinh weight.  Level 0 holds t = 0, 1, 2,
    ...; level k > 0 holds the odd multiples of 2^-k.  The t = 0 node is the
    first entry of level 0 and is the only single-sided node.
    """
    key = (prec, level)
    nodes = _NODE_CACHE.get(key)
    if nodes is not None:
        return nodes
    with _NODE_LOCK:
        nodes = _NODE_CACHE.get(key)
        if nodes is not None:
            return nodes
        with mp.workprec(prec + 20):
            tmax = _t_max(prec)
            h = mpmath.mpf(1) / (1 << level)
            pi_half = mp.pi / 2
            out = []
            k = 0 if level == 0 else 1
            step = 1 if level == 0 else 2
            while True:
                t = k * h
                if t > tmax:
                    break
                u = pi_half * mpmath.sinh(t)
                c = 2 / (mpmath.exp(2 * u) + 1)
                w = pi_half * mpmath.cosh(t) / mpmath.cosh(u) ** 2
                out.append((c, w))
                k += step
        _NODE_CACHE[key] = out
        return out


@dataclass
class QuadratureResult:
    """Converged integral with its level diagnostics."""

    value: Real
    error_estimate: Real
    levels_used: int
    evaluations: int


def _eval_points(f: Callable, points: list, workers: int) -> list:
    """Evaluate f at each point; order of results matches order of points.

    Results are reduced serially in index order afterwards, so the outcome is
    bit-identical for any worker count.
    """
    def one(x):
        v = f(x)
        if isinstance(v, mpmath.mpc) or not mpmath.isfinite(v):
            raise IntegrandError(
                f"integrand returned non-finite or non-real value at "
                f"x = {mpmath.nstr(x, 12)}", abscissa=x)
        return v

    if workers <= 1 or len(points) < 4:
        return [one(x) for x in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, points, chunksize=max(1, len(points) // (4 * workers))))


def tanh_sinh(f: Callable, a, b, ctx: PrecisionContext,
              target_digits: int | None = None, *,
              max_levels: int = DEFAULT_MAX_LEVELS,
              workers: int = 1) -> QuadratureResult:
    """Integrate f over (a, b) to target_digits by tanh-sinh refinement.

    Converges when two successive levels agree to the target, with one
    confirming extra level.  Raises NonConvergenceError with the last two
    level values if the budget runs out, and IntegrandError if f returns a
    non-finite value at an interior abscissa.

    Endpoint singularities are fine; put them at an endpoint whose coordinate
    is exactly 0 if f needs accurate offsets (see module docstring).
    """
    target = ctx.target_digits if target_digits is None else int(target_digits)
    wp = max(ctx.prec, dps_to_prec(target + 10))
    with mp.workprec(wp):
        a = ctx.mpf(a) if not isinstance(a, mpmath.mpf) else a
        b = ctx.mpf(b) if not isinstance(b, mpmath.mpf) else b
        if a == b:
            zero = Real(mpmath.mpf(0), target)
            return QuadratureResult(zero, zero, 0, 0)
        if a > b:
            res = tanh_sinh(f, b, a, ctx, target, max_levels=max_levels, workers=workers)
            return QuadratureResult(-res.value, res.error_estimate,
                                    res.levels_used, res.evaluations)

        hw = (b - a) / 2
        tol = mpmath.mpf(10) ** (-target)
        total = mpmath.mpf(0)
        prev_value = None
        value = None
        evaluations = 0
        awaiting_confirm = False
        diff = None
        for level in range(max_levels + 1):
            nodes = _level_nodes(wp, level)
            points = []
            for i, (c, w) in enumerate(nodes):
                d = hw * c
                if level == 0 and i == 0:
                    points.append(a + d)        # t = 0: the midpoint, once
                else:
                    points.append(a + d)
                    points.append(b - d)
            values = _eval_points(f, points, workers)
            evaluations += len(points)
            s = mpmath.mpf(0)
            vi = 0
            for i, (c, w) in enumerate(nodes):
                if level == 0 and i == 0:
                    s += w * values[vi]
                    vi += 1
                else:
                    s += w * (values[vi] + values[vi + 1])
                    vi += 2
            h = mpmath.mpf(1) / (1 << level)
            total = h * s if level == 0 else total / 2 + h * s
            prev_value, value = value, total * hw
            if prev_value is None:
                continue
            diff = abs(value - prev_value)
            if diff < tol:
                if awaiting_confirm:
                    return QuadratureResult(Real(value, target), Real(diff, target),
                                            level, evaluations)
                awaiting_confirm = True
            else:
                awaiting_confirm = False
        raise NonConvergenceError(
            f"tanh-sinh did not converge to {target} digits within "
            f"{max_levels} levels (last diff ~ 10^{mpmath.mag(diff) if diff else '?'})",
            levels=max_levels,
            last_two=(prev_value, value))


def log_tan_ratio_integral(phi, lo, hi, ctx: PrecisionContext,
                           target_digits: int | None = None, *,
                           workers: int = 1,
                           max_levels: int = DEFAULT_MAX_LEVELS) -> QuadratureResult:
    """Integral of ln|(tan(theta) + tan(phi)) / (tan(theta) - tan(phi))| over (lo, hi).

    The interval must lie on one side of the logarithmic singularity at
    theta = phi (either endpoint may touch it).  Internally the integrand is
    rewritten as ln sin(theta + phi) - ln|sin(theta - phi)| and shifted so the
    singular point is the origin, which keeps evaluation stable for abscissas
    exponentially close to phi and avoids the tan pole at pi/2 entirely.
    """
    with ctx.workprec():
        phi = ctx.mpf(phi)
        lo = ctx.mpf(lo)
        hi = ctx.mpf(hi)
        if not (lo < hi):
            raise DomainError(f"need lo < hi, got lo={lo}, hi={hi}")
        if lo >= phi:                       # singularity at (or below) the left end
            delta_lo, delta_hi = lo - phi, hi - phi
            two_phi = 2 * phi

            def f(d):
                return mpmath.ln(mpmath.sin(two_phi + d)) - mpmath.ln(mpmath.sin(d))
        elif hi <= phi:                     # singularity at (or above) the right end
            delta_lo, delta_hi = phi - hi, phi - lo
            two_phi = 2 * phi

            def f(d):
                return mpmath.ln(mpmath.sin(two_phi - d)) - mpmath.ln(mpmath.sin(d))
        else:
            raise DomainError(
                f"interval ({lo}, {hi}) straddles the singular point phi={phi}; "
                "split it there first")
    return tanh_sinh(f, delta_lo, delta_hi, ctx, target_digits,
                     max_levels=max_levels, workers=workers)


def integrate_i7_pieces(ctx: PrecisionContext, target_digits: int | None = None, *,
                        workers: int = 1) -> tuple[QuadratureResult, QuadratureResult]:
    """The two halves of the i7 integral, split at the interior singularity.

    Piece 1 runs from pi/3 up to the singular angle, piece 2 from there to
    pi/2; each is evaluated with the singularity at an endpoint.
    """
    target = ctx.target_digits if target_digits is None else int(target_digits)
    piece_digits = target + 2
    with ctx.workprec():
        lo = ctx.pi / 3
        hi = ctx.pi / 2
    p1 = log_tan_ratio_integral(ctx.phi7, lo, ctx.phi7, ctx,
                                piece_digits, workers=workers)
    p2 = log_tan_ratio_integral(ctx.phi7, ctx.phi7, hi, ctx,
                                piece_digits, workers=workers)
    return p1, p2


def integrate_i7(ctx: PrecisionContext, target_digits: int | None = None, *,
                 workers: int = 1) -> Real:
    """Value of the split log-tan integral over (pi/3, pi/2), scaled by 24/(7 sqrt 7).

    Pure function of (ctx, target_digits); the result is memoized on the
    context, so repeated identity checks at the same precision reuse it.
    """
    target = ctx.target_digits if target_digits is None else int(target_digits)
    key = ("i7", target)
    cached = ctx._memo.get(key)
    if cached is not None:
        return cached
    p1, p2 = integrate_i7_pieces(ctx, target, workers=workers)
    with ctx.workprec():
        value = 24 / (7 * ctx.sqrt7) * (p1.value.value + p2.value.value)
    result = Real(value, target)
    with ctx._lock:
        ctx._memo.setdefault(key, result)
    return ctx._memo[key]


def lemma3_closed_form(x, phi, part: str, ctx: PrecisionContext) -> Real:
    """Clausen closed form for the one-sided log-tan integrals.

    part "a" (phi < x <= pi/2):  integral over (phi, x) equals
        Cl2(4 phi)/2 - Cl2(2x + 2 phi)/2 + Cl2(2x - 2 phi)/2
    part "b" (0 <= x < phi):     integral over (x, phi) equals the negation
        -Cl2(4 phi)/2 + Cl2(2x + 2 phi)/2 - Cl2(2x - 2 phi)/2
    """
    from .specfun import clausen2

    with ctx.workprec():
        x = ctx.mpf(x)
        phi = ctx.mpf(phi)
        if not (0 < phi < ctx.pi / 2):
            raise DomainError(f"phi must lie in (0, pi/2), got {phi}")
        if part == "a":
            if not (phi < x <= ctx.pi / 2):
                raise DomainError(f"part (a) needs phi < x <= pi/2, got x={x}, phi={phi}")
        elif part == "b":
            # x == phi is the degenerate empty interval; the form collapses to 0
            if not (0 <= x <= phi):
                raise DomainError(f"part (b) needs 0 <= x <= phi, got x={x}, phi={phi}")
        else:
            raise DomainError(f"part must be 'a' or 'b', got {part!r}")
        a1 = 4 * phi
        a2 = 2 * x + 2 * phi
        a3 = 2 * x - 2 * phi
    c1 = clausen2(a1, ctx)
    c2 = clausen2(a2, ctx)
    c3 = clausen2(a3, ctx)
    with ctx.workprec():
        half = (c1.value - c2.value + c3.value) / 2
        if part == "b":
            half = -half
    return Real(half, ctx.target_digits)
