import random

import mpmath
import pytest
from mpmath import mp
from mpmath.libmp import dps_to_prec

from clausen7 import (DomainError, EQ6_COEFFICIENTS, PrecisionError, Real,
                      RelationNotFoundError, clausen2, make_context, pslq,
                      rediscover_eq6)


def reals_at(digits, raw_values):
    with mp.workprec(dps_to_prec(digits + 10)):
        return [Real(+v, digits) for v in raw_values]


class TestPslq:
    def test_ln2_ln4(self):
        ctx = make_context(50)
        with ctx.workprec():
            vals = reals_at(50, [mp.ln2, mpmath.ln(4)])
        rel = pslq(vals, ctx, norm_bound=100)
        assert rel.coefficients == (2, -1)
        assert rel.residual.value < mpmath.mpf(10) ** (-40)

    def test_normalization_gcd_and_sign(self):
        # 2x - 2y = 0 with x = y: gcd reduced, leading coefficient positive
        ctx = make_context(60)
        with ctx.workprec():
            x = mpmath.sqrt(2)
            vals = reals_at(60, [2 * x, x])
        rel = pslq(vals, ctx, norm_bound=100)
        assert rel.coefficients == (1, -2)

    def test_negative_control_certifies_none(self):
        ctx = make_context(120)
        with ctx.workprec():
            vals = reals_at(120, [mpmath.mpf(1), +mp.pi, mpmath.e])
        assert pslq(vals, ctx, norm_bound=10 ** 4) is None

    def test_random_reals_no_false_positive(self):
        # full-precision random mantissas; 53-bit floats would be dyadic
        # rationals and genuinely carry small integer relations
        rng = random.Random(9)
        ctx = make_context(100)
        with ctx.workprec():
            vals = reals_at(100, [mpmath.mpf(rng.getrandbits(340)) / 2 ** 340
                                  for _ in range(5)])
        assert pslq(vals, ctx, norm_bound=10 ** 4) is None

    def test_precision_refusal_carries_hint(self):
        ctx = make_context(50)
        with ctx.workprec():
            vals = reals_at(50, [mpmath.mpf(1), +mp.pi, mpmath.e])
        with pytest.raises(PrecisionError) as err:
            pslq(vals, ctx, norm_bound=10 ** 6)
        assert err.value.min_digits == 56
        assert "56" in str(err.value)

    def test_too_few_values(self):
        ctx = make_context(50)
        with pytest.raises(DomainError):
            pslq(reals_at(50, [mpmath.mpf(1)]), ctx)

    def test_scale_invariance(self):
        ctx = make_context(80)
        with ctx.workprec():
            base = [mpmath.ln(2), mpmath.ln(8), mpmath.ln(4)]
            scaled = [v * 3 / 2 for v in base]
        r1 = pslq(reals_at(80, base), ctx, norm_bound=100)
        r2 = pslq(reals_at(80, scaled), ctx, norm_bound=100)
        assert r1.coefficients == r2.coefficients

    def test_soundness_at_double_precision(self):
        # recomputing the combination at twice the precision keeps the
        # residual below the detection threshold
        digits = 120
        ctx = make_context(digits)
        with ctx.workprec():
            angles = [2 * ctx.phi7, 4 * ctx.phi7, 6 * ctx.phi7,
                      2 * ctx.pi / 7, 4 * ctx.pi / 7, 6 * ctx.pi / 7]
        vals = [clausen2(a, ctx) for a in angles]
        rel = pslq(vals, ctx, norm_bound=100)
        assert rel is not None
        ctx2 = make_context(2 * digits)
        with ctx2.workprec():
            angles2 = [2 * ctx2.phi7, 4 * ctx2.phi7, 6 * ctx2.phi7,
                       2 * ctx2.pi / 7, 4 * ctx2.pi / 7, 6 * ctx2.pi / 7]
        vals2 = [clausen2(a, ctx2) for a in angles2]
        with ctx2.workprec():
            resid = abs(mpmath.fsum(c * v.value
                                    for c, v in zip(rel.coefficients, vals2)))
            assert resid < mpmath.mpf(10) ** (-(digits - 10))


class TestRediscovery:
    def test_coefficients_at_100_and_200(self):
        r100 = rediscover_eq6(100)
        r200 = rediscover_eq6(200)
        assert r100.coefficients == EQ6_COEFFICIENTS
        assert r200.coefficients == EQ6_COEFFICIENTS
        assert r200.residual.value < mpmath.mpf(10) ** (-180)

    def test_residual_monotone_in_precision(self):
        r200 = rediscover_eq6(200)
        r400 = rediscover_eq6(400)
        assert r400.residual.value < r200.residual.value

    def test_refuses_low_precision(self):
        with pytest.raises(DomainError):
            rediscover_eq6(80)

    def test_metadata(self):
        rel = rediscover_eq6(120)
        assert rel.precision_used == 120
        assert rel.norm_bound == 100
        assert rel.iterations > 0
