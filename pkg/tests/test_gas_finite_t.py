"""Thermal layer: convolution, Sommerfeld, damped series, envelopes.

The sinh-damped series are checked against literal term loops written
out in the tests, against the convolution machinery they approximate,
and against their analytic T -> 0 resummations.
"""

import math
import random
import warnings

import pytest

from magnetogas.errors import (
    CapacityError,
    DegeneracyWarning,
    DomainError,
    InputError,
    TruncationError,
)
from magnetogas.gas_finite_t import (
    GasPointT,
    OscSeriesSpec,
    convolve_from_t0,
    hump,
    hump_moment,
    i_z_fourier,
    magnetization_finite_t,
    magnetization_nonrel_landau,
    omega_monotonic_derivs,
    omega_osc_finite_t,
    oscillation_envelope_t,
    self_magnetization_solve,
    sommerfeld_expansion,
)
from magnetogas.gas_zero_t import E_CHARGE, GasPointT0, grand_potential
from magnetogas.hurwitz import hurwitz_zeta
from magnetogas.numerics import QuadratureSpec, integrate

ZETA_3_2 = 2.6123753486854883433

QUAD = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-12, max_subdivisions=8000)


def small_b_monotonic_derivs(b, h=0.02):
    # five-point stencils on the expansion's smooth part; matched in
    # truncation order to the finite-T magnetization formula
    def derivs(mu):
        f = [
            grand_potential(GasPointT0(mu + k * h, b), "small_b_expansion").monotonic
            for k in (-2, -1, 0, 1, 2)
        ]
        d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
        d4 = (f[0] - 4 * f[1] + 6 * f[2] - 4 * f[3] + f[4]) / h ** 4
        return f[2], d2, d4

    return derivs


class TestHump:
    def test_center_value(self):
        assert hump(0.0) == 0.25

    def test_even_and_overflow_safe(self):
        assert hump(50.0) == hump(-50.0)
        assert hump(2000.0) == 0.0
        assert hump(-2000.0) == 0.0

    def test_normalization(self):
        v, _ = integrate(hump, -60.0, 60.0, QUAD)
        assert abs(v - 1.0) < 1e-12

    def test_moments_closed_forms(self):
        assert hump_moment(0) == pytest.approx(1.0, rel=1e-15)
        assert hump_moment(1) == pytest.approx(math.pi ** 2 / 3.0, rel=1e-14)
        assert hump_moment(2) == pytest.approx(7.0 * math.pi ** 4 / 15.0, rel=1e-14)

    def test_third_moment_against_quadrature(self):
        v, _ = integrate(lambda x: x ** 6 * hump(x), -80.0, 80.0, QUAD)
        assert abs(v - hump_moment(3)) < 1e-9
        assert hump_moment(3) == pytest.approx(31.0 * math.pi ** 6 / 21.0, rel=1e-14)

    def test_moment_index_validation(self):
        with pytest.raises(InputError):
            hump_moment(-1)
        with pytest.raises(InputError):
            hump_moment(1.5)

    def test_kernel_identity(self):
        # the hump's Fourier transform underlies every damping factor
        for a in (0.1, 1.0, 5.0):
            v, _ = integrate(lambda x: math.cos(a * x) * hump(x), -80.0, 80.0, QUAD)
            ref = math.pi * a / math.sinh(math.pi * a)
            assert abs(v - ref) < 1e-10


class TestGasPointT:
    def test_validation(self):
        with pytest.raises(InputError):
            GasPointT(0.9, 0.01, 1.0)
        with pytest.raises(InputError):
            GasPointT(2.0, -0.01, 1.0)
        with pytest.raises(InputError):
            GasPointT(2.0, 0.01, 0.0)
        with pytest.raises(InputError):
            GasPointT(math.inf, 0.01, 1.0)

    def test_zero_temperature_allowed(self):
        pt = GasPointT(2.0, 0.0, 1.0)
        assert pt.is_degenerate
        assert pt.damping == 0.0

    def test_degeneracy_flag(self):
        assert GasPointT(1.5, 0.49, 1.0).is_degenerate
        assert not GasPointT(1.5, 0.51, 1.0).is_degenerate

    def test_series_spec_validation(self):
        with pytest.raises(InputError):
            OscSeriesSpec(n_max=0)
        with pytest.raises(InputError):
            OscSeriesSpec(tail_tol=0.0)


class TestConvolve:
    def test_constant_passthrough(self):
        pt = GasPointT(2.0, 1e-3, 0.5)
        v = convolve_from_t0(lambda e: 3.7, pt, level_breakpoints=False)
        assert abs(v - 3.7) < 1e-10

    def test_linearity(self):
        pt = GasPointT(1.8, 2e-3, 0.4)
        f = lambda e: math.sin(3.0 * e)
        g = lambda e: e * e
        lhs = convolve_from_t0(lambda e: 2.5 * f(e) + g(e), pt, level_breakpoints=False)
        rhs = 2.5 * convolve_from_t0(f, pt, level_breakpoints=False) + convolve_from_t0(
            g, pt, level_breakpoints=False
        )
        assert abs(lhs - rhs) < 1e-9 * (1.0 + abs(lhs))

    def test_quadratic_temperature_approach(self):
        # mu chosen off-threshold so the smeared grand potential returns
        # to the cold value like T^2
        mu, b = 2.03, 0.5
        cold = grand_potential(GasPointT0(mu, b), "small_b_expansion").value
        q0 = lambda e: grand_potential(GasPointT0(e, b), "small_b_expansion").value
        devs = []
        for T in (3e-3, 6e-3):
            v = convolve_from_t0(q0, GasPointT(mu, T, b))
            devs.append(abs(v - cold))
        assert 3.0 < devs[1] / devs[0] < 5.2

    def test_nondegenerate_flagged(self):
        pt = GasPointT(1.3, 0.5, 0.5)
        with pytest.warns(DegeneracyWarning):
            convolve_from_t0(lambda e: 1.0, pt, level_breakpoints=False)

    def test_zero_temperature_rejected(self):
        with pytest.raises(InputError):
            convolve_from_t0(lambda e: 1.0, GasPointT(2.0, 0.0, 0.5))


class TestSommerfeld:
    def test_coefficients_from_moments(self):
        assert hump_moment(1) / math.factorial(2) == pytest.approx(
            math.pi ** 2 / 6.0, rel=1e-14
        )
        assert hump_moment(2) / math.factorial(4) == pytest.approx(
            7.0 * math.pi ** 4 / 360.0, rel=1e-14
        )

    def test_zero_temperature_is_identity(self):
        pt = GasPointT(2.0, 0.0, 0.3)
        v = sommerfeld_expansion(lambda mu: (1.23, 4.0, 5.0), pt)
        assert v == 1.23

    def test_matches_convolution_to_sixth_order(self):
        mu, b = 2.0, 0.3
        derivs = small_b_monotonic_derivs(b)
        q0 = lambda e: grand_potential(GasPointT0(e, b), "small_b_expansion").monotonic
        devs = []
        for T in (0.02, 0.04):
            pt = GasPointT(mu, T, b)
            conv = convolve_from_t0(q0, pt, level_breakpoints=False)
            somm = sommerfeld_expansion(derivs, pt)
            devs.append(abs(conv - somm))
        assert devs[0] < 1e-8
        # the first neglected term carries T^6
        assert 25.0 < devs[1] / devs[0] < 160.0


class TestIzFourier:
    def test_against_defining_quadrature(self):
        z, alpha, beta = -1.5, 0.37, 0.8
        ser = i_z_fourier(z, alpha, beta)
        cuts = []
        k = math.floor(alpha - 40.0 * beta)
        while True:
            x = (k - alpha) / beta
            if x > 40.0:
                break
            if -40.0 < x:
                cuts.append(x)
            k += 1
        spec = QuadratureSpec(
            abs_tol=1e-12, rel_tol=1e-10, max_subdivisions=40000, breakpoints=tuple(cuts)
        )

        def f(x):
            q = math.fmod(alpha + beta * x, 1.0)
            if q <= 0.0:
                q += 1.0
            return hurwitz_zeta(z, q).value * hump(x)

        quad, _ = integrate(f, -40.0, 40.0, spec)
        assert abs(ser - quad) < 1e-6

    def test_periodic_in_alpha(self):
        a = i_z_fourier(-2.5, 0.21, 0.6)
        b = i_z_fourier(-2.5, 1.21, 0.6)
        assert a == pytest.approx(b, rel=1e-13)

    def test_strong_damping_limit(self):
        assert abs(i_z_fourier(-1.5, 0.37, 40.0)) < 1e-200

    def test_validation(self):
        with pytest.raises(InputError):
            i_z_fourier(0.5, 0.3, 1.0)
        with pytest.raises(InputError):
            i_z_fourier(-1.5, 0.3, -1.0)

    def test_truncation_guard(self):
        with pytest.raises(TruncationError):
            i_z_fourier(-1.5, 0.37, 1e-3, OscSeriesSpec(n_max=5, tail_tol=1e-12))


class TestOmegaOscSeries:
    def test_literal_term_loop(self):
        mu, T, b = 10.0, 0.02, 0.7
        pt = GasPointT(mu, T, b)
        c = pt.damping
        P = (mu * mu - 1.0) / b
        s = sum(
            math.cos(2.0 * math.pi * n * P - 0.25 * math.pi)
            / (n ** 1.5 * math.sinh(c * n))
            for n in range(1, 60)
        )
        ref = b ** 1.5 / math.sqrt(2.0) * T * s / (4.0 * math.pi ** 2)
        assert omega_osc_finite_t(pt) == pytest.approx(ref, rel=1e-12)

    def test_zero_temperature_limit(self):
        # the resummed T=0 value is the leading oscillatory term of the
        # cold expansion; they differ by its b^(7/2) correction
        mu, b = 4.0, 0.37
        v0 = omega_osc_finite_t(GasPointT(mu, 0.0, b))
        cold = grand_potential(GasPointT0(mu, b), "small_b_expansion").oscillatory
        assert v0 == pytest.approx(cold, rel=5e-3)

    def test_matches_convolved_cold_oscillation(self):
        # smearing the cold oscillatory term reproduces the series; the
        # gap is the dropped quadratic phase term, well under 1% here
        mu, T, b = 10.0, 0.01, 1.0
        pt = GasPointT(mu, T, b)

        def q0_osc(e):
            q = (e * e - 1.0) / b
            frac = q - math.floor(q)
            zv = hurwitz_zeta(-1.5, frac if frac > 0.0 else 1.0).value
            return -(2.0 / 3.0) * (b ** 2.5 / e) * zv / (4.0 * math.pi ** 2)

        conv = convolve_from_t0(q0_osc, pt)
        ser = omega_osc_finite_t(pt)
        assert ser == pytest.approx(conv, rel=1e-2)

    def test_damping_strictly_decreasing(self):
        # aligned phase: P integral makes every harmonic carry the same
        # cos(-pi/4), so the signed sum cannot cancel
        mu = 10.0
        b = 99.0 / 140.0
        vals = [omega_osc_finite_t(GasPointT(mu, T, b)) for T in (0.002, 0.004, 0.008, 0.016)]
        assert all(v > 0.0 for v in vals)
        assert all(a > b_ for a, b_ in zip(vals, vals[1:]))


class TestMagnetizationFiniteT:
    def test_monotonic_zero_t_limit(self):
        mu, b = 7.0, 0.8
        r = magnetization_finite_t(GasPointT(mu, 0.0, b))
        lead = E_CHARGE / (2.0 * math.pi ** 2) * (b / 6.0) * math.acosh(mu)
        assert r.monotonic == pytest.approx(lead, rel=1e-14)

    def test_oscillatory_zero_t_limit(self):
        # resummation lands on the zeta form of the cold leading term
        mu, b = 100.0, 0.5
        r = magnetization_finite_t(GasPointT(mu, 0.0, b))
        p2 = mu * mu - 1.0
        frac = math.fmod(p2 / b, 1.0)
        ref = (
            -E_CHARGE
            / (2.0 * math.pi ** 2)
            * math.sqrt(b)
            * (p2 / mu)
            * hurwitz_zeta(-0.5, frac if frac > 0.0 else 1.0).value
        )
        assert r.oscillatory == pytest.approx(ref, rel=1e-12)

    def test_temperature_coefficients_against_sommerfeld(self):
        # -2e d/db of the Sommerfeld-expanded smooth grand potential
        # must reproduce the quoted T^2 and T^4 terms
        mu, T, b = 10.0, 0.05, 1.0
        db = 5e-5

        def somm(bb):
            return sommerfeld_expansion(
                small_b_monotonic_derivs(bb), GasPointT(mu, T, bb)
            )

        fd = -2.0 * E_CHARGE * (somm(b + db) - somm(b - db)) / (2.0 * db)
        mon = magnetization_finite_t(GasPointT(mu, T, b)).monotonic
        assert fd == pytest.approx(mon, rel=1e-5)

    def test_total_against_field_derivative(self):
        # matched-order check: the formula is the -2e b-derivative of
        # [Sommerfeld smooth part + damped oscillation series]
        mu, T, b = 10.0, 0.02, 1.0
        db = 5e-5

        def omega_matched(bb):
            pt = GasPointT(mu, T, bb)
            return sommerfeld_expansion(
                small_b_monotonic_derivs(bb), pt
            ) + omega_osc_finite_t(pt)

        fd = -2.0 * E_CHARGE * (omega_matched(b + db) - omega_matched(b - db)) / (2.0 * db)
        r = magnetization_finite_t(GasPointT(mu, T, b))
        assert abs(fd - r.value) < 1e-2 * abs(r.value)

    def test_result_split(self):
        r = magnetization_finite_t(GasPointT(5.0, 0.01, 0.6))
        assert r.method == "large_filling_expansion"
        assert abs(r.value - (r.monotonic + r.oscillatory)) <= r.abs_error_estimate


class TestNonRelativisticLandau:
    def test_limit_agreement(self):
        pt = GasPointT(1.0005, 1e-5, 1e-3)
        m_rel = magnetization_finite_t(pt).oscillatory
        m_nr = magnetization_nonrel_landau(pt)
        assert abs(m_rel / m_nr - 1.0) < 1e-3

    def test_damping_ratio_is_mu(self):
        # the two series differ only through mu in the sinh argument,
        # so pushing mu to 1 collapses the difference
        pt = GasPointT(1.0 + 1e-10, 1e-6, 1e-4)
        m_rel = magnetization_finite_t(pt).oscillatory
        m_nr = magnetization_nonrel_landau(pt)
        assert abs(m_rel / m_nr - 1.0) < 1e-9


class TestEnvelope:
    def test_brackets_oscillation(self):
        rng = random.Random(5)
        for _ in range(200):
            mu = 5.0 + 15.0 * rng.random()
            b = 0.3 + 1.7 * rng.random()
            T = 10 ** (-4.0 + 2.0 * rng.random())
            pt = GasPointT(mu, T, b)
            assert oscillation_envelope_t(pt) >= abs(
                magnetization_finite_t(pt).oscillatory
            )

    def test_zero_temperature_value(self):
        mu, b = 100.0, 1.0
        v = oscillation_envelope_t(GasPointT(mu, 0.0, b))
        p2 = mu * mu - 1.0
        ref = (
            E_CHARGE
            * p2
            * math.sqrt(b)
            * ZETA_3_2
            / (math.sqrt(2.0) * 4.0 * math.pi ** 3 * mu)
        )
        assert v == pytest.approx(ref, rel=1e-12)

    def test_monotone_decay_in_temperature(self):
        last = math.inf
        for T in (1e-6, 1e-5, 1e-4, 1e-3, 1e-2):
            v = oscillation_envelope_t(GasPointT(100.0, T, 1.0))
            assert v < last
            last = v

    def test_larger_field_larger_envelope(self):
        T = 1e-4
        lo = oscillation_envelope_t(GasPointT(100.0, T, 0.1))
        hi = oscillation_envelope_t(GasPointT(100.0, T, 10.0))
        assert hi > lo

    def test_literal_term_loop(self):
        mu, T, b = 10.0, 0.02, 0.7
        pt = GasPointT(mu, T, b)
        c = pt.damping
        s = sum(1.0 / (math.sqrt(n) * math.sinh(c * n)) for n in range(1, 60))
        ref = E_CHARGE / math.pi * ((mu * mu - 1.0) * T / math.sqrt(2.0 * b)) * s
        assert oscillation_envelope_t(pt) == pytest.approx(ref, rel=1e-12)


class TestSeriesGuards:
    def test_truncation_refusal(self):
        # moderate damping with a tiny cap: neither summation nor the
        # small-damping resummation applies
        with pytest.raises(TruncationError):
            omega_osc_finite_t(GasPointT(10.0, 0.001, 1.0), OscSeriesSpec(n_max=50))

    def test_small_damping_resummation_continuity(self):
        # across the cap boundary the series hands over to the closed
        # limit with only the documented O(sqrt(c)) model gap
        mu, b = 10.0, 1.0
        T_edge = 2.25e-5 / (4.0 * math.pi ** 2 * mu)
        hi = oscillation_envelope_t(GasPointT(mu, 1.05 * T_edge, b))
        lo = oscillation_envelope_t(GasPointT(mu, 0.95 * T_edge, b))
        assert abs(hi / lo - 1.0) < 5e-3


class TestSelfMagnetization:
    def test_envelope_crossing(self):
        gamma = 3.0 / (8.0 * math.pi)
        roots = self_magnetization_solve(
            100.0, 1e-7, gamma, (1.0, 10.0), use_envelope=True
        )
        assert len(roots) == 1
        (r,) = roots
        assert 4.9 < r < 5.5
        env = oscillation_envelope_t(GasPointT(100.0, 1e-7, r))
        assert env == pytest.approx(gamma * r / (2.0 * E_CHARGE), rel=1e-8)

    def test_warm_regime_empty(self):
        roots = self_magnetization_solve(2.0, 0.3, 3.0 / (8.0 * math.pi), (0.3, 1.0))
        assert roots == []

    def test_gamma_zero_finds_oscillation_nodes(self):
        roots = self_magnetization_solve(10.0, 0.003, 0.0, (0.95, 1.05))
        assert len(roots) >= 2
        for r in roots[:3]:
            m = magnetization_finite_t(GasPointT(10.0, 0.003, r)).value
            assert abs(m) < 1e-8

    def test_invalid_bracket(self):
        with pytest.raises(DomainError):
            self_magnetization_solve(10.0, 0.01, 0.1, (2.0, 1.0))
        with pytest.raises(DomainError):
            self_magnetization_solve(10.0, 0.01, 0.1, (-1.0, 1.0))

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            self_magnetization_solve(100.0, 1e-6, 0.1, (0.01, 10.0))
