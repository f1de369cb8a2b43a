"""Registry of verifiable identities with digit-agreement reporting.

Each entry pairs two evaluators that reach the same quantity through
different machinery (quadrature vs. Hurwitz zeta vs. Clausen series ...), so
a shared bug cannot certify itself.  verify() runs one entry at a chosen
precision and reports how many digits the two sides share.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import mpmath
from mpmath import mp

from .exceptions import ConfigurationError, UnknownIdentityError
from .mpcontext import PrecisionContext, Real, make_context
from .quadrature import integrate_i7, lemma3_closed_form, log_tan_ratio_integral
from .specfun import (arccot, clausen2, clausen2_integral, dirichlet_L,
                      dirichlet_L_clausen, zagier_A, zagier_A_quadrature)

DEFAULT_SEED = 1


@dataclass
class EvalEnv:
    """What an identity evaluator gets to work with."""

    ctx: PrecisionContext
    params: dict = field(default_factory=dict)
    workers: int = 1


@dataclass(frozen=True)
class IdentitySpec:
    """One registry entry: id, two independent evaluators, optional sampler."""

    id: str
    description: str
    lhs: Callable[[EvalEnv], Real]
    rhs: Callable[[EvalEnv], Real]
    sample: Optional[Callable[[random.Random], dict]] = None
    default_digits: int = 50


@dataclass
class IdentityReport:
    """Outcome of one verification run."""

    id: str
    lhs_value: Optional[Real]
    rhs_value: Optional[Real]
    agree_digits: int
    threshold: int
    passed: bool
    elapsed: float
    seed: int
    params: Optional[str] = None
    error: Optional[str] = None

    def to_dict(self) -> dict:
        """Stable machine-readable form; high-precision values as decimal strings."""
        return {
            "id": self.id,
            "lhs_value": str(self.lhs_value) if self.lhs_value is not None else None,
            "rhs_value": str(self.rhs_value) if self.rhs_value is not None else None,
            "agree_digits": self.agree_digits,
            "threshold": self.threshold,
            "passed": self.passed,
            "elapsed_seconds": f"{self.elapsed:.3f}",
            "seed": self.seed,
            "params": self.params,
            "error": self.error,
        }


# --------------------------------------------------------------------------
# Evaluator helpers
# --------------------------------------------------------------------------

def _L7_hurwitz(env: EvalEnv) -> Real:
    return dirichlet_L(-7, 2, env.ctx)


def _i7_quadrature(env: EvalEnv) -> Real:
    return integrate_i7(env.ctx, workers=env.workers)


def _phi7_angles(ctx: PrecisionContext):
    """2 phi7, 4 phi7, 6 phi7 at working precision."""
    with ctx.workprec():
        return 2 * ctx.phi7, 4 * ctx.phi7, 6 * ctx.phi7


def _cl2_i7_combo(env: EvalEnv) -> Real:
    """(4/(7 sqrt 7)) [3 Cl2(2 phi7) - 3 Cl2(4 phi7) + Cl2(6 phi7)], series route."""
    ctx = env.ctx
    a2, a4, a6 = _phi7_angles(ctx)
    c2 = clausen2(a2, ctx)
    c4 = clausen2(a4, ctx)
    c6 = clausen2(a6, ctx)
    with ctx.workprec():
        v = 4 / (7 * ctx.sqrt7) * (3 * c2.value - 3 * c4.value + c6.value)
        return Real(v, ctx.target_digits)


def _pi7_angles(ctx: PrecisionContext):
    """2 pi/7, 4 pi/7, 6 pi/7 at working precision."""
    with ctx.workprec():
        base = 2 * ctx.pi / 7
        return base, 2 * base, 3 * base


def _cl2_pi7_combo(env: EvalEnv) -> Real:
    """(2/sqrt 7) [Cl2(2 pi/7) + Cl2(4 pi/7) - Cl2(6 pi/7)], series route."""
    ctx = env.ctx
    b1, b2, b3 = _pi7_angles(ctx)
    s1 = clausen2(b1, ctx)
    s2 = clausen2(b2, ctx)
    s3 = clausen2(b3, ctx)
    with ctx.workprec():
        v = 2 / ctx.sqrt7 * (s1.value + s2.value - s3.value)
        return Real(v, ctx.target_digits)


def _A_signed(x, ctx: PrecisionContext) -> Real:
    """Odd extension of zagier_A: the defining integrand is even in t."""
    if x >= 0:
        return zagier_A(x, ctx)
    with ctx.workprec():
        flipped = -x
    return -zagier_A(flipped, ctx)


# --------------------------------------------------------------------------
# The registry
# --------------------------------------------------------------------------

def _build_registry() -> tuple[IdentitySpec, ...]:
    specs: list[IdentitySpec] = []

    def add(identity_id, description, lhs, rhs, sample=None):
        specs.append(IdentitySpec(identity_id, description, lhs, rhs, sample))

    add("eq2",
        "split log-tan integral (tanh-sinh) equals the d=-7 L-value at s=2 (Hurwitz route)",
        _i7_quadrature, _L7_hurwitz)

    add("eq4",
        "split log-tan integral equals its three-term Clausen closed form at 2,4,6 phi7",
        _i7_quadrature, _cl2_i7_combo)

    add("eq5",
        "d=-7 L-value at s=2 (Hurwitz route) equals the three-term Clausen sum at 2,4,6 pi/7",
        _L7_hurwitz, _cl2_pi7_combo)

    def eq6_lhs(env):
        ctx = env.ctx
        a2, a4, a6 = _phi7_angles(ctx)
        c2 = clausen2(a2, ctx)
        c4 = clausen2(a4, ctx)
        c6 = clausen2(a6, ctx)
        with ctx.workprec():
            return Real(2 * (3 * c2.value - 3 * c4.value + c6.value), ctx.target_digits)

    def eq6_rhs(env):
        ctx = env.ctx
        b1, b2, b3 = _pi7_angles(ctx)
        s1 = clausen2(b1, ctx)
        s2 = clausen2(b2, ctx)
        s3 = clausen2(b3, ctx)
        with ctx.workprec():
            return Real(7 * (s1.value + s2.value - s3.value), ctx.target_digits)

    add("eq6",
        "six-term Clausen relation: 2[3Cl2(2phi7)-3Cl2(4phi7)+Cl2(6phi7)] = "
        "7[Cl2(2pi/7)+Cl2(4pi/7)-Cl2(6pi/7)]",
        eq6_lhs, eq6_rhs)

    def eq9_lhs(env):
        ctx = env.ctx
        i7 = integrate_i7(ctx, workers=env.workers)
        with ctx.workprec():
            return Real(7 * ctx.sqrt7 / 24 * i7.value, ctx.target_digits)

    def eq9_rhs(env):
        ctx = env.ctx
        with ctx.workprec():
            shifted = ctx.pi + 2 * ctx.phi7
            third = 2 * ctx.pi / 3
            hi = 2 * ctx.phi7 + third
            lo = 2 * ctx.phi7 - third
        a = clausen2(shifted, ctx)
        b = clausen2(hi, ctx)
        c = clausen2(lo, ctx)
        with ctx.workprec():
            return Real(-a.value + (b.value + c.value) / 2, ctx.target_digits)

    add("eq9",
        "scaled log-tan integral equals -Cl2(pi+2phi7) + [Cl2(2phi7+2pi/3)+Cl2(2phi7-2pi/3)]/2",
        eq9_lhs, eq9_rhs)

    def eq10a_lhs(env):
        ctx = env.ctx
        with ctx.workprec():
            cots = [mpmath.cot(ctx.pi / 7), mpmath.cot(2 * ctx.pi / 7),
                    mpmath.cot(4 * ctx.pi / 7)]
        parts = [_A_signed(c, ctx) for c in cots]
        with ctx.workprec():
            v = 2 / ctx.sqrt7 * (parts[0].value + parts[1].value + parts[2].value)
            return Real(v, ctx.target_digits)

    add("eq10a",
        "cotangent three-term combination of A reproduces the d=-7 L-value at s=2",
        eq10a_lhs, _L7_hurwitz)

    def eq10b_lhs(env):
        ctx = env.ctx
        with ctx.workprec():
            args = [ctx.sqrt7, ctx.sqrt7 + 2 * ctx.sqrt3, ctx.sqrt7 - 2 * ctx.sqrt3]
        parts = [_A_signed(a, ctx) for a in args]
        with ctx.workprec():
            v = 12 / (7 * ctx.sqrt7) * (2 * parts[0].value + parts[1].value + parts[2].value)
            return Real(v, ctx.target_digits)

    add("eq10b",
        "sqrt7-based three-term combination of A reproduces the d=-7 L-value at s=2",
        eq10b_lhs, _L7_hurwitz)

    add("eq11",
        "A(sqrt 7) via the Clausen route equals direct quadrature of its defining integral",
        lambda env: zagier_A(env.ctx.sqrt7, env.ctx),
        lambda env: zagier_A_quadrature(env.ctx.sqrt7, env.ctx, workers=env.workers))

    add("eq12",
        "d=-7 L-value at s=2 (Hurwitz route) equals the Clausen closed form at 2,4,6 phi7",
        _L7_hurwitz, _cl2_i7_combo)

    add("lemma1a",
        "oddness: Cl2(-theta) = -Cl2(theta), series vs. log-sine quadrature",
        lambda env: clausen2(-env.params["theta"], env.ctx),
        lambda env: -clausen2_integral(env.params["theta"], env.ctx,
                                       workers=env.workers),
        sample=lambda rng: {"theta": rng.uniform(0.2, 2 * math.pi - 0.2)})

    def lemma1b_lhs(env):
        ctx = env.ctx
        with ctx.workprec():
            shifted = ctx.mpf(env.params["theta"]) + 2 * env.params["m"] * ctx.pi
        return clausen2(shifted, ctx)

    add("lemma1b",
        "periodicity: Cl2(theta + 2 m pi) = Cl2(theta), series vs. quadrature",
        lemma1b_lhs,
        lambda env: clausen2_integral(env.params["theta"], env.ctx,
                                      workers=env.workers),
        sample=lambda rng: {"theta": rng.uniform(0.2, 2 * math.pi - 0.2),
                            "m": rng.choice([-2, -1, 1, 2])})

    def lemma1c_lhs(env):
        ctx = env.ctx
        with ctx.workprec():
            arg = ctx.pi + ctx.mpf(env.params["theta"])
        return clausen2(arg, ctx)

    def lemma1c_rhs(env):
        ctx = env.ctx
        with ctx.workprec():
            arg = ctx.pi - ctx.mpf(env.params["theta"])
        return -clausen2_integral(arg, ctx, workers=env.workers)

    add("lemma1c",
        "reflection: Cl2(pi + theta) = -Cl2(pi - theta), series vs. quadrature",
        lemma1c_lhs, lemma1c_rhs,
        sample=lambda rng: {"theta": rng.uniform(0.1, math.pi - 0.1)})

    def lemma1d_lhs(env):
        ctx = env.ctx
        total = ctx.real(0)
        for m in range(-3, 4):
            with ctx.workprec():
                arg = m * ctx.pi
            total = total + abs(clausen2(arg, ctx))
        return total

    add("lemma1d",
        "zeros: Cl2(m pi) = 0 for m in -3..3 (sum of absolute values vanishes)",
        lemma1d_lhs, lambda env: env.ctx.real(0))

    def lemma2_lhs(env):
        ctx = env.ctx
        with ctx.workprec():
            arg = env.params["m"] * ctx.mpf(env.params["theta"])
        return clausen2(arg, ctx)

    def lemma2_rhs(env):
        ctx = env.ctx
        m = env.params["m"]
        theta = ctx.mpf(env.params["theta"])
        values = []
        for ell in range(m):
            with ctx.workprec():
                arg = theta + 2 * ctx.pi * ell / m
            values.append(clausen2(arg, ctx).value)
        with ctx.workprec():
            return Real(m * mpmath.fsum(values), ctx.target_digits)

    add("lemma2",
        "multiplication formula: Cl2(m theta) = m sum_l Cl2(theta + 2 pi l / m)",
        lemma2_lhs, lemma2_rhs,
        sample=lambda rng: {"m": rng.choice([2, 3, 4, 5, 7]),
                            "theta": rng.uniform(-3.0, 3.0)})

    def lemma3a_sample(rng):
        phi = rng.uniform(0.15, 1.2)
        return {"phi": phi, "x": rng.uniform(phi + 0.05, math.pi / 2 - 0.01)}

    add("lemma3a",
        "one-sided log-tan integral over (phi, x) matches its Clausen closed form",
        lambda env: Real(
            log_tan_ratio_integral(env.ctx.mpf(env.params["phi"]),
                                   env.ctx.mpf(env.params["phi"]),
                                   env.ctx.mpf(env.params["x"]),
                                   env.ctx, workers=env.workers).value.value,
            env.ctx.target_digits),
        lambda env: lemma3_closed_form(env.params["x"], env.params["phi"], "a", env.ctx),
        sample=lemma3a_sample)

    def lemma3b_sample(rng):
        phi = rng.uniform(0.3, 1.45)
        return {"phi": phi, "x": rng.uniform(0.02, phi - 0.05)}

    add("lemma3b",
        "one-sided log-tan integral over (x, phi) matches its Clausen closed form",
        lambda env: Real(
            log_tan_ratio_integral(env.ctx.mpf(env.params["phi"]),
                                   env.ctx.mpf(env.params["x"]),
                                   env.ctx.mpf(env.params["phi"]),
                                   env.ctx, workers=env.workers).value.value,
            env.ctx.target_digits),
        lambda env: lemma3_closed_form(env.params["x"], env.params["phi"], "b", env.ctx),
        sample=lemma3b_sample)

    def lemma4a_lhs(env):
        ctx = env.ctx
        with ctx.workprec():
            return Real(mpmath.atan(1 / ctx.sqrt7), ctx.target_digits)

    add("lemma4a",
        "arccot(sqrt 7) = pi/2 - arctan(sqrt 7): reciprocal-arctan route vs. complement route",
        lemma4a_lhs, lambda env: arccot(env.ctx.sqrt7, env.ctx))

    def lemma4b_lhs(env):
        ctx = env.ctx
        with ctx.workprec():
            return Real(mpmath.atan(1 / (ctx.sqrt7 + 2 * ctx.sqrt3)), ctx.target_digits)

    def lemma4b_rhs(env):
        ctx = env.ctx
        with ctx.workprec():
            return Real(ctx.phi7 - ctx.pi / 3, ctx.target_digits)

    add("lemma4b",
        "arccot(sqrt7 + 2 sqrt3) = arctan(sqrt 7) - pi/3",
        lemma4b_lhs, lemma4b_rhs)

    def lemma4c_lhs(env):
        ctx = env.ctx
        with ctx.workprec():
            return Real(-mpmath.atan(1 / (2 * ctx.sqrt3 - ctx.sqrt7)), ctx.target_digits)

    def lemma4c_rhs(env):
        ctx = env.ctx
        with ctx.workprec():
            return Real(ctx.phi7 - 2 * ctx.pi / 3, ctx.target_digits)

    add("lemma4c",
        "arccot(sqrt7 - 2 sqrt3) = arctan(sqrt 7) - 2 pi/3 (odd-branch arccot)",
        lemma4c_lhs, lemma4c_rhs)

    add("hurwitz_route",
        "period-|d| Hurwitz decomposition agrees with the Clausen route at d=-4",
        lambda env: dirichlet_L(-4, 2, env.ctx),
        lambda env: dirichlet_L_clausen(-4, env.ctx))

    return tuple(specs)


_REGISTRY: tuple[IdentitySpec, ...] = _build_registry()
_REGISTRY_BY_ID = {spec.id: spec for spec in _REGISTRY}


def registry() -> tuple[IdentitySpec, ...]:
    """All identity specs, in stable order."""
    return _REGISTRY


def identity_ids() -> tuple[str, ...]:
    return tuple(spec.id for spec in _REGISTRY)


def _agree_digits(lhs: Real, rhs: Real, ctx: PrecisionContext) -> int:
    """floor(-log10 |lhs - rhs|); working_digits when the difference is exactly 0."""
    with mp.workprec(ctx.prec + 10):
        diff = abs(lhs.value - rhs.value)
        if diff == 0:
            return ctx.working_digits
        return int(mpmath.floor(-mpmath.log10(diff)))


def verify(identity_id: str, target_digits: int | None = None,
           ctx: PrecisionContext | None = None, *,
           seed: int = DEFAULT_SEED, workers: int = 1,
           threshold: int | None = None) -> IdentityReport:
    """Evaluate both sides of one identity and report digits of agreement.

    Parameterized identities draw their arguments from a deterministic
    per-identity generator seeded with `seed`; the draw is recorded in the
    report.  The default passing threshold is target_digits minus half the
    guard digits.
    """
    spec = _REGISTRY_BY_ID.get(identity_id)
    if spec is None:
        raise UnknownIdentityError(identity_id, identity_ids())
    if ctx is None:
        digits = target_digits if target_digits is not None else spec.default_digits
        ctx = make_context(digits)
    else:
        digits = target_digits if target_digits is not None else ctx.target_digits
        if ctx.target_digits < digits:
            raise ConfigurationError(
                f"context carries {ctx.target_digits} digits, "
                f"cannot verify at {digits}")
    if threshold is None:
        threshold = digits - ctx.guard_digits // 2
    rng = random.Random(f"{seed}:{identity_id}")
    params = spec.sample(rng) if spec.sample is not None else {}
    params_str = ", ".join(f"{k}={v!r}" for k, v in params.items()) or None
    env = EvalEnv(ctx=ctx, params=params, workers=workers)
    start = time.perf_counter()
    try:
        lhs = spec.lhs(env)
        rhs = spec.rhs(env)
    except Exception as exc:          # deliberate: failures become failed reports
        return IdentityReport(
            id=identity_id, lhs_value=None, rhs_value=None,
            agree_digits=-1, threshold=threshold, passed=False,
            elapsed=time.perf_counter() - start, seed=seed,
            params=params_str, error=f"{type(exc).__name__}: {exc}")
    agree = _agree_digits(lhs, rhs, ctx)
    return IdentityReport(
        id=identity_id, lhs_value=lhs, rhs_value=rhs,
        agree_digits=agree, threshold=threshold,
        passed=agree >= threshold,
        elapsed=time.perf_counter() - start, seed=seed,
        params=params_str)


def verify_all(target_digits: int | None = None,
               ctx: PrecisionContext | None = None, *,
               seed: int = DEFAULT_SEED, workers: int = 1) -> list[IdentityReport]:
    """Run every registry entry (sharing one context) in registry order.

    Individual failures do not abort the sweep; they come back as failed
    reports with the error recorded.
    """
    if ctx is None:
        ctx = make_context(target_digits if target_digits is not None else 50)
    return [verify(spec.id, target_digits, ctx, seed=seed, workers=workers)
            for spec in _REGISTRY]
