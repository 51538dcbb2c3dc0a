"""Finite-temperature layer over the ground-state gas.

Temperature enters in two interchangeable ways.  Thermal averages of any
zero-temperature quantity follow from a convolution with the Fermi-Dirac
hump h(x) = e^x/(e^x+1)^2; for smooth parts this collapses to the
Sommerfeld expansion, whose coefficients are the even moments of h.
Oscillatory parts instead get summed as sinh-damped harmonic series: the
n-th harmonic of the de Haas-van Alphen oscillation is suppressed by
1/sinh(4 pi^2 n mu T / b), so warming the gas kills the wiggles long
before it touches the monotonic background.

Series here share one summation engine with three regimes.  When the
damping argument c = 4 pi^2 mu T / b is of order one, plain term-by-term
summation terminates in a few dozen terms.  When c is small the series
is split into its exact c -> 0 limit, which resums into a Hurwitz zeta
of the oscillation phase, plus a correction weighted by
1/sinh(y) - 1/y; the correction is summed numerically.  Below
c ~ 2e-5 the correction is dropped entirely: it is O(sqrt(c)) relative
and the plain limit is kept, which for the envelope errs on the safe
(upper) side.  Temperature T = 0 is accepted and routed through the
exact limit, so the T -> 0 values reproduce the ground-state formulas
to machine precision.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta as _riemann_zeta

from .errors import (
    CapacityError,
    DegeneracyWarning,
    DomainError,
    InputError,
    TruncationError,
)
from .gas_zero_t import E_CHARGE, GasPointT0, ThermoResult, grand_potential
from .hurwitz import bernoulli_number, hurwitz_zeta
from .numerics import QuadratureSpec, RootSpec, find_roots_scan, integrate

_PI2 = math.pi ** 2
_ZETA_3_2 = float(_riemann_zeta(1.5))

_CHUNK = 1 << 19


@dataclass(frozen=True)
class GasPointT:
    """State point (mu, T, b), all in electron mass units.

    T = 0 is allowed and means the degenerate limit; ops that need a
    finite thermal width reject it individually.
    """

    mu: float
    T: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu > 1.0):
            raise InputError(f"mu must be finite and > 1, got {self.mu}")
        if not (math.isfinite(self.T) and self.T >= 0.0):
            raise InputError(f"T must be finite and >= 0, got {self.T}")
        if not (math.isfinite(self.b) and self.b > 0.0):
            raise InputError(f"b must be finite and positive, got {self.b}")

    @property
    def p_f(self):
        return math.sqrt(self.mu ** 2 - 1.0)

    @property
    def is_degenerate(self):
        return self.T < self.mu - 1.0

    @property
    def damping(self):
        # c in the harmonic suppression factor 1/sinh(c n)
        return 4.0 * _PI2 * self.mu * self.T / self.b


@dataclass(frozen=True)
class OscSeriesSpec:
    n_max: int = 2_000_000
    tail_tol: float = 1e-12

    def __post_init__(self):
        if not (isinstance(self.n_max, int) and self.n_max >= 1):
            raise InputError(f"n_max must be a positive integer, got {self.n_max}")
        if not (math.isfinite(self.tail_tol) and self.tail_tol > 0.0):
            raise InputError(f"tail_tol must be positive, got {self.tail_tol}")


_DEFAULT_SPEC = OscSeriesSpec()


def hump(x):
    """Fermi-Dirac hump e^x/(e^x+1)^2, written to survive large |x|."""
    if abs(x) > 1400.0:
        return 0.0
    return 0.25 / math.cosh(0.5 * x) ** 2


def hump_moment(n):
    """Even moment integral x^(2n) against the hump over the real line.

    Closed form pi^(2n) |(2^(2n) - 2) B_(2n)|; odd-power moments vanish
    by symmetry and are not indexed here.  Dividing by (2n)! gives the
    Sommerfeld coefficients.
    """
    if not (isinstance(n, int) and n >= 0):
        raise InputError(f"moment index must be a non-negative integer, got {n}")
    return math.pi ** (2 * n) * abs((4 ** n - 2) * bernoulli_number(2 * n))


def _thermal_window(tail_tol):
    # h(X) < tail_tol once X > 2 ln(2/tail_tol)
    return 2.0 * math.log(2.0 / tail_tol)


def convolve_from_t0(q0, pt, tail_tol=1e-12, level_breakpoints=True, quad_spec=None):
    """Thermal average of a ground-state quantity q0(mu').

    Integrates q0(mu + T x) h(x) over x down to the rest-mass edge
    x = -(mu-1)/T.  For a degenerate point the edge lies far in the
    exponentially dead tail; otherwise the clipped window is flagged.
    Level crossings of (mu + T x) inside the window are registered as
    quadrature breakpoints unless level_breakpoints is disabled.
    """
    if pt.T <= 0.0:
        raise InputError("convolution needs T > 0")
    if not pt.is_degenerate:
        warnings.warn(
            "point is not degenerate; convolution window clipped at the rest-mass edge",
            DegeneracyWarning,
        )
    window = _thermal_window(tail_tol)
    lower = max(-window, -(pt.mu - 1.0) / pt.T)
    upper = window

    breakpoints = []
    if level_breakpoints:
        def filling(x):
            e = pt.mu + pt.T * x
            return (e * e - 1.0) / pt.b

        j_lo = math.floor(filling(lower)) + 1
        j_hi = math.floor(filling(upper))
        if j_hi - j_lo > 5000:
            raise CapacityError(
                f"{j_hi - j_lo} level crossings inside the thermal window; "
                "narrow the window or drop level_breakpoints"
            )
        for j in range(j_lo, j_hi + 1):
            e_j = math.sqrt(1.0 + pt.b * j)
            x_j = (e_j - pt.mu) / pt.T
            if lower < x_j < upper:
                breakpoints.append(x_j)

    if quad_spec is None:
        # the integrand is often itself a quadrature with its own noise
        # floor; chasing much below 1e-8 here just stalls on that noise
        quad_spec = QuadratureSpec(
            abs_tol=1e-12,
            rel_tol=1e-8,
            max_subdivisions=max(4000, 40 * (len(breakpoints) + 1)),
            breakpoints=tuple(breakpoints),
        )
    elif breakpoints and not quad_spec.breakpoints:
        quad_spec = QuadratureSpec(
            abs_tol=quad_spec.abs_tol,
            rel_tol=quad_spec.rel_tol,
            max_subdivisions=quad_spec.max_subdivisions,
            breakpoints=tuple(breakpoints),
        )

    value, _ = integrate(
        lambda x: q0(pt.mu + pt.T * x) * hump(x), lower, upper, quad_spec
    )
    return value


def sommerfeld_expansion(q0_derivs, pt):
    """Three-term low-T expansion from a (q0, q0'', q0'''') provider.

    Valid for the smooth part only; the oscillatory part has structure
    on the scale b/(2 mu) that the expansion cannot see.
    """
    q0, d2, d4 = q0_derivs(pt.mu)
    c2 = hump_moment(1) / math.factorial(2)
    c4 = hump_moment(2) / math.factorial(4)
    return q0 + c2 * pt.T ** 2 * d2 + c4 * pt.T ** 4 * d4


def omega_monotonic_derivs(b, h=0.02):
    """FD provider of the smooth grand potential and its mu-derivatives.

    Central five-point stencils; h must keep the whole stencil clear of
    level thresholds, which the caller is responsible for.
    """

    def derivs(mu):
        f = [
            grand_potential(GasPointT0(mu + k * h, b)).monotonic
            for k in (-2, -1, 0, 1, 2)
        ]
        q0 = f[2]
        d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
        d4 = (f[0] - 4 * f[1] + 6 * f[2] - 4 * f[3] + f[4]) / h ** 4
        return q0, d2, d4

    return derivs


def _phase_weights(n, r, kind):
    # sin/cos of 2 pi n r - pi/4 with the integer part of the phase
    # already removed; r is the fractional oscillation phase
    if kind == "abs":
        return np.ones_like(n)
    arg = 2.0 * math.pi * np.mod(n * r, 1.0) - 0.25 * math.pi
    return np.sin(arg) if kind == "sin" else np.cos(arg)


def _closed_limit(s, r, kind):
    # exact c->0 resummation of sum n^-s w_n; the trig series fold back
    # into Hurwitz zetas of the phase through the reflection formula
    if kind == "abs":
        return _ZETA_3_2
    q = r if r > 0.0 else 1.0
    if kind == "sin":
        # sum n^(-3/2) sin(2 pi n q - pi/4) over n >= 1
        if s != 0.5:
            raise InputError("sin closure only tabulated for s = 1/2")
        return 2.0 * math.sqrt(2.0) * math.pi * hurwitz_zeta(-0.5, q).value
    if kind == "cos":
        if s != 1.5:
            raise InputError("cos closure only tabulated for s = 3/2")
        return -(8.0 * math.sqrt(2.0) * _PI2 / 3.0) * hurwitz_zeta(-1.5, q).value
    raise InputError(f"unknown series kind {kind!r}")


def _sum_direct(s, c, r, kind, spec):
    # plain summation; past c n = 45 the sinh kills terms outright, so
    # the cut tail is truly exponential, not a power law
    n_stop = min(spec.n_max, int(math.ceil(45.0 / c)) + 3)
    n_stop = max(n_stop, 3)
    total = 0.0
    scale = 0.0
    with np.errstate(over="ignore"):
        for start in range(1, n_stop + 1, _CHUNK):
            n = np.arange(start, min(start + _CHUNK, n_stop + 1), dtype=float)
            t = _phase_weights(n, r, kind) / (n ** s * np.sinh(c * n))
            t = np.where(np.isfinite(t), t, 0.0)
            total += float(np.sum(t))
            scale += float(np.sum(np.abs(t)))
    bound = 2.0 * math.exp(-c * n_stop) / math.sqrt(n_stop)
    if bound > spec.tail_tol * max(scale, 1e-300) and n_stop == spec.n_max:
        raise TruncationError(
            f"series tail bound {bound:.3e} above tolerance after {n_stop} terms"
        )
    return total


def _scaled_series(s, c, r, kind, t_times, pt_scale, spec):
    """Return T * sum_n w_n / (n^s sinh(c n)) without forming 0*inf.

    t_times is the temperature multiplying the series; pt_scale is the
    analytic value of T/c so that the closed limit survives T = 0.
    Direct summation covers every c for which 45/c terms fit the cap;
    below c ~ 2e-5 the exact c -> 0 resummation stands in, with
    relative error O(sqrt(c)) that vanishes together with c, erring
    high for the envelope kind.  In between, a cap too small for the
    damping is refused rather than silently degraded.
    """
    if c > 0.0:
        if 45.0 / c <= spec.n_max:
            return t_times * _sum_direct(s, c, r, kind, spec)
        if c > 2.25e-5:
            raise TruncationError(
                f"n_max={spec.n_max} too small for damping c={c:.3e}; "
                f"need about {int(45.0 / c)} terms"
            )
    return pt_scale * _closed_limit(s, r, kind)


def i_z_fourier(z, alpha, beta, spec=_DEFAULT_SPEC):
    """Hump-weighted average of the periodic zeta, summed in harmonics.

    Equals the closed series (2 pi)^(z+1) Gamma(1-z) beta
    sum n^z sin(2 pi n alpha + z pi/2) / sinh(2 pi^2 beta n),
    which must agree with direct quadrature of the defining average
    of zeta(z, {alpha + beta x}) against the hump.
    """
    if not z < 0.0:
        raise InputError(f"z must be negative, got {z}")
    if not (math.isfinite(beta) and beta > 0.0):
        raise InputError(f"beta must be finite and positive, got {beta}")
    c = 2.0 * _PI2 * beta
    r = math.fmod(alpha, 1.0)
    if r < 0.0:
        r += 1.0
    pref = (2.0 * math.pi) ** (z + 1.0) * math.gamma(1.0 - z) * beta
    half_pi_z = 0.5 * math.pi * z
    total = 0.0
    scale = 0.0
    n = 1
    while True:
        y = c * n
        if y > 700.0:
            break
        term = n ** z * math.sin(2.0 * math.pi * ((n * r) % 1.0) + half_pi_z) / math.sinh(y)
        total += term
        scale += abs(term)
        bound = 2.0 * math.exp(-y) * n ** z
        if n >= 3 and bound <= spec.tail_tol * max(scale, 1e-300):
            break
        if n >= spec.n_max:
            raise TruncationError(
                f"harmonic tail bound {bound:.3e} above tolerance after {n} terms"
            )
        n += 1
    return pref * total


def omega_osc_finite_t(pt, spec=_DEFAULT_SPEC):
    """Oscillatory grand potential at finite temperature.

    b^(3/2) (T/sqrt(2)) sum cos(2 pi n P - pi/4)/(n^(3/2) sinh(c n))
    over 4 pi^2, with P = p_F^2/b and c the damping ratio.  The
    T^2 x^2 piece dropped from the phase on the way to this series is
    O((T/mu)^2) model error on top of the numerical one.
    """
    p2 = pt.mu ** 2 - 1.0
    P = p2 / pt.b
    r = math.fmod(P, 1.0)
    c = pt.damping
    t_over_c = pt.b / (4.0 * _PI2 * pt.mu)
    series_t = _scaled_series(1.5, c, r, "cos", pt.T, t_over_c, spec)
    return pt.b ** 1.5 / math.sqrt(2.0) * series_t / (4.0 * _PI2)


def magnetization_finite_t(pt, spec=_DEFAULT_SPEC):
    """Magnetization with thermal smearing, smooth plus oscillatory.

    Assumes many occupied levels.  The smooth part carries the T^2 and
    T^4 Sommerfeld corrections of the b-linear term; the oscillatory
    part is the sinh-damped harmonic series.
    """
    mu, T, b = pt.mu, pt.T, pt.b
    p2 = mu * mu - 1.0
    p = math.sqrt(p2)
    chi = math.acosh(mu)

    t2 = -(_PI2 / 6.0) * (mu / p ** 3) * T ** 2
    t4 = -(7.0 * math.pi ** 4 / 60.0) * mu * (mu * mu + 1.5) / p ** 7 * T ** 4
    mon = E_CHARGE / (2.0 * _PI2) * (b / 6.0) * (chi + t2 + t4)

    P = p2 / b
    r = math.fmod(P, 1.0)
    c = pt.damping
    t_over_c = b / (4.0 * _PI2 * mu)
    series_t = _scaled_series(0.5, c, r, "sin", T, t_over_c, spec)
    osc = -(E_CHARGE / math.pi) * (p2 / math.sqrt(2.0 * b)) * series_t

    # next Sommerfeld order and the dropped phase correction
    err = (
        E_CHARGE / (2.0 * _PI2) * (b / 6.0) * abs(t4) * (math.pi * T * mu / p2) ** 2 * 40.0
        + abs(osc) * (T / mu) ** 2
        + 1e-16 * (abs(mon) + abs(osc))
    )
    return ThermoResult(mon + osc, mon, osc, err, "large_filling_expansion")


def magnetization_nonrel_landau(pt, spec=_DEFAULT_SPEC):
    """Landau's weak-field oscillation series for slow electrons.

    Same harmonic structure with the damping argument 4 pi^2 n T / b,
    no chemical-potential factor in the sinh.  The non-relativistic
    chemical potential is the kinetic one, mu_nr = p_F^2/2, so
    2 mu_nr/b is the same oscillation phase as in the relativistic
    series and the comparison isolates the mu-dependence of the
    thermal damping.
    """
    p2 = pt.mu ** 2 - 1.0
    P = p2 / pt.b
    r = math.fmod(P, 1.0)
    c = 4.0 * _PI2 * pt.T / pt.b
    t_over_c = pt.b / (4.0 * _PI2)
    series_t = _scaled_series(0.5, c, r, "sin", pt.T, t_over_c, spec)
    return -(E_CHARGE / math.pi) * (p2 / math.sqrt(2.0 * pt.b)) * series_t


def oscillation_envelope_t(pt, spec=_DEFAULT_SPEC):
    """Upper envelope of the oscillatory magnetization.

    Every sine replaced by one; as T -> 0 each term tends to the finite
    limit T/sinh(c n) -> b/(4 pi^2 mu n) and the series resums to
    zeta(3/2), so the envelope stays finite instead of diverging.
    """
    p2 = pt.mu ** 2 - 1.0
    c = pt.damping
    t_over_c = pt.b / (4.0 * _PI2 * pt.mu)
    series_t = _scaled_series(0.5, c, 0.0, "abs", pt.T, t_over_c, spec)
    return (E_CHARGE / math.pi) * (p2 / math.sqrt(2.0 * pt.b)) * series_t


def self_magnetization_solve(mu, T, gamma, b_bracket, use_envelope=False,
                             spec=_DEFAULT_SPEC, n_scan=None):
    """Fields where the gas magnetizes itself: M(b) = gamma B(b).

    B(b) = b/(2e) in these units.  Scans the bracket densely enough to
    see every oscillation, then bisects each sign change.  Without
    oscillations the smooth magnetization is far too small to reach the
    line, so an empty list is the generic warm-regime answer.  With
    use_envelope the oscillation envelope stands in for M, which is how
    the existence region is usually drawn.
    """
    lo, hi = b_bracket
    if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 < lo < hi):
        raise DomainError(f"bracket must satisfy 0 < lo < hi, got {b_bracket}")

    p2 = mu * mu - 1.0

    def f(b):
        pt = GasPointT(mu, T, b)
        if use_envelope:
            m = oscillation_envelope_t(pt, spec)
        else:
            m = magnetization_finite_t(pt, spec).value
        return m - gamma * b / (2.0 * E_CHARGE)

    if n_scan is None:
        if use_envelope:
            n_scan = 400
        else:
            periods = p2 * (1.0 / lo - 1.0 / hi)
            n_scan = int(math.ceil(8.0 * periods)) + 16
            if n_scan > 20000:
                raise CapacityError(
                    f"{periods:.0f} oscillation periods in bracket; "
                    "narrow it or use the envelope"
                )
    root_spec = RootSpec(bracket=(lo, hi), tol=1e-12, max_iter=200)
    return find_roots_scan(f, (lo, hi), n_scan, root_spec)
