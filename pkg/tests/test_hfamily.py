"""H_z family: level-sum identity, splits, continuity, derivatives."""

import math

import pytest

from magnetogas.errors import DomainError, ThresholdError
from magnetogas.hfamily import (
    HValue,
    h_derivative_identity_check,
    h_z,
    landau_sum,
    landau_sum_inverse_sqrt,
)


def test_landau_sum_small_cases():
    # q_e = 0.5, z = 1/2: single level
    assert landau_sum(0.5, 0.5) == pytest.approx(1.0 / math.sqrt(0.5), rel=1e-15)
    # q_e = 2.25: three levels, the zeroth half-weighted
    ref = 1.0 / math.sqrt(2.25) + 2.0 / math.sqrt(1.25) + 2.0 / math.sqrt(0.25)
    assert landau_sum(0.5, 2.25) == pytest.approx(ref, rel=1e-15)
    assert ref == pytest.approx(6.455521, abs=5e-7)


def test_landau_sum_equals_twice_h():
    for z in (0.5, -0.5, -1.5):
        for q in (0.3, 2.25, 7.3, 19.99, 40.6):
            s = landau_sum(z, q)
            t = 2.0 * h_z(z, q).total
            assert abs(s - t) <= 1e-10 * max(1.0, abs(s)), (z, q)


def test_split_reassembles():
    v = h_z(-0.5, 7.3)
    assert v.total == pytest.approx(v.monotonic + v.oscillatory, abs=1e-14)


def test_oscillatory_is_periodic():
    # q chosen so q - floor(q) is binary-exact and equal for both
    a = h_z(-0.5, 3.25).oscillatory
    b = h_z(-0.5, 9.25).oscillatory
    assert a == b  # same {q} means the same engine call


def test_threshold_errors():
    with pytest.raises(ThresholdError):
        h_z(0.5, 3.0)
    with pytest.raises(ThresholdError):
        landau_sum(0.5, 3.0)
    with pytest.raises(DomainError):
        h_z(-0.5, -1.0)
    # z < 0 is fine on thresholds: the top term vanishes
    assert math.isfinite(h_z(-0.5, 3.0).total)
    assert math.isfinite(landau_sum(-0.5, 3.0))


def test_continuity_across_integer_q():
    # for z < 0 the oscillation has no jump at integer q: from the left
    # zeta(z, {q}) -> zeta(z, 1), which is exactly the continuation value
    # zeta(z, 0) used at the snap. Approaching from the right adds the
    # known singular piece d^(-z) (a vertical tangent when -1 < z < 0),
    # which is subtracted before comparing.
    d = 1e-10
    for z in (-0.5, -1.5, -2.5):
        for n in (1.0, 2.0, 3.0):
            at = h_z(z, n).oscillatory
            lo = h_z(z, n - d).oscillatory
            hi = h_z(z, n + d).oscillatory
            assert abs(lo - at) < 1e-9, (z, n)
            assert abs(hi - at - d ** (-z)) < 1e-9, (z, n)


def test_derivative_continuity_across_integer_q():
    # for z < -1 the slope is continuous too. One-sided second-order
    # stencils from each side must agree. z stays away from -3/2 (and
    # other half-integers above -2), where the stencil converges only
    # like sqrt(h); the step is larger at more negative z because the
    # engine's absolute rounding grows with |z| and the division by h
    # amplifies it.
    for z, h in ((-2.2, 1e-5), (-2.5, 1e-5), (-3.5, 1e-4)):
        for n in (1.0, 3.0):
            f = lambda q: h_z(z, q).total
            right = (-3.0 * f(n) + 4.0 * f(n + h) - f(n + 2.0 * h)) / (2.0 * h)
            left = (3.0 * f(n) - 4.0 * f(n - h) + f(n - 2.0 * h)) / (2.0 * h)
            assert abs(right - left) < 1e-6, (z, n)


def test_derivative_identities():
    # H_{1/2} = 2 H'_{-1/2} and H_{-1/2} = (2/3) H'_{-3/2}
    for q in (0.4, 3.7, 12.2):
        h_step = 1e-6 * max(1.0, q)
        d_half = (h_z(-0.5, q + h_step).total - h_z(-0.5, q - h_step).total) / (2.0 * h_step)
        assert abs(h_z(0.5, q).total - 2.0 * d_half) < 1e-6, q
        d_mhalf = (h_z(-1.5, q + h_step).total - h_z(-1.5, q - h_step).total) / (2.0 * h_step)
        assert abs(h_z(-0.5, q).total - (2.0 / 3.0) * d_mhalf) < 1e-6, q


def test_h_minus_half_positive():
    q = 0.05
    while q <= 100.0:
        assert h_z(-0.5, q).total > 0.0, q
        q += 0.83


def test_large_q_structure():
    # monotonic part tracks (2/3) q^(3/2) growth for z = -1/2
    v = h_z(-0.5, 400.0)
    lead = (2.0 / 3.0) * 400.0 ** 1.5
    assert abs(v.monotonic - lead) / lead < 1e-3
    assert abs(v.oscillatory) < 0.21  # bounded by the zeta extremes


def test_q_zero():
    assert h_z(-0.5, 0.0).total == pytest.approx(0.0, abs=1e-15)
    assert landau_sum(-0.5, 0.0) == 0.0


class TestLandauSumInverseSqrt:
    def test_matches_generic_sum(self):
        for q_e in [0.5, 2.25, 7.3, 31.9]:
            assert landau_sum_inverse_sqrt(q_e) == landau_sum(0.5, q_e)

    def test_single_level(self):
        assert landau_sum_inverse_sqrt(0.5) == pytest.approx(1.0 / math.sqrt(0.5), rel=1e-15)

    def test_central_identity(self):
        # the identity the whole family rests on: sum = 2 H_{1/2}
        for q_e in [0.5, 2.25, 7.3, 19.07, 49.6]:
            lhs = landau_sum_inverse_sqrt(q_e)
            rhs = 2.0 * h_z(0.5, q_e).total
            assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_threshold_rejected(self):
        with pytest.raises(ThresholdError):
            landau_sum_inverse_sqrt(3.0)


class TestDerivativeIdentityCheck:
    def test_half_from_minus_half(self):
        for q in [0.4, 3.7, 12.2]:
            assert h_derivative_identity_check(q, "half_from_minus_half") < 1e-6

    def test_minus_half_from_minus_three_half(self):
        for q in [0.4, 3.7, 12.2]:
            assert h_derivative_identity_check(q, "minus_half_from_minus_three_half") < 1e-6

    def test_rejects_near_integer(self):
        with pytest.raises(DomainError):
            h_derivative_identity_check(4.0 + 1e-7, "half_from_minus_half")

    def test_rejects_unknown_identity(self):
        with pytest.raises(DomainError):
            h_derivative_identity_check(2.5, "no_such_ladder")
