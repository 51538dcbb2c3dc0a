"""Ground-state thermodynamics of the magnetized electron gas.

Everything here is a function of two dimensionless numbers: the Fermi
energy eps_f in electron masses and the field b = 2eB/m^2 (b = 1 is about
2.2e13 Gauss). The whole module is a thin layer over the identity

    omega_0 = -(m^4/4pi^2) b^(5/2) integral_0^P H_{-1/2}(q) / sqrt(1+bq) dq,

with P = p_F^2/b the filling. Splitting H into its smooth and periodic
parts propagates a monotonic/oscillatory split through every quantity,
which is what isolates the de Haas-van Alphen oscillations.

Outputs carry their natural prefactors numerically (m = 1 and
e = sqrt(4 pi alpha)): particle densities include the 1/2pi^2,
energy-like densities the 1/4pi^2, magnetization the e/2pi^2. That makes
identities such as u = omega + eps_f n hold between returned values with
no bookkeeping.
"""

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, InputError, ThresholdWarning
from .hfamily import HValue, h_z
from .hurwitz import hurwitz_zeta, subtracted_zeta
from .numerics import QuadratureSpec, central_difference, integrate

FINE_STRUCTURE = 1.0 / 137.035999
E_CHARGE = math.sqrt(4.0 * math.pi * FINE_STRUCTURE)

# b = 1 in Gauss; the natural field strength m^2/(2e) of the problem.
B0_GAUSS = 2.2e13

_PI2 = math.pi * math.pi
_EPS = 2.0 ** -52

THERMO_METHODS = (
    "quadrature",
    "small_b_expansion",
    "large_filling_expansion",
    "brute_force",
    "nonrelativistic",
)


def field_gauss(b):
    """Magnetic field in Gauss for a given dimensionless b."""
    return b * B0_GAUSS


def b_from_gauss(field):
    """Dimensionless b for a field given in Gauss."""
    return field / B0_GAUSS


@dataclass(frozen=True)
class GasPointT0:
    """A ground-state gas: Fermi energy eps_f > 1 (mass units), field b > 0."""

    eps_f: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.eps_f) and self.eps_f > 1.0):
            raise InputError(f"eps_f must be finite and > 1, got {self.eps_f}")
        if not (math.isfinite(self.b) and self.b > 0.0):
            raise InputError(f"b must be finite and > 0, got {self.b}")

    @property
    def p_f(self):
        return math.sqrt(self.eps_f * self.eps_f - 1.0)

    @property
    def filling(self):
        """p_F^2/b; its integer part is the highest occupied level."""
        return (self.eps_f * self.eps_f - 1.0) / self.b


@dataclass(frozen=True)
class ThermoResult:
    """A thermodynamic value with its monotonic/oscillatory split.

    value = monotonic + oscillatory within abs_error_estimate; method
    records which evaluation path produced it. Methods without a natural
    split (the brute-force level sums) report everything as monotonic.
    """

    value: float
    monotonic: float
    oscillatory: float
    abs_error_estimate: float
    method: str

    def __post_init__(self):
        if self.method not in THERMO_METHODS:
            raise InputError(f"unknown method {self.method!r}")
        if self.abs_error_estimate < 0.0:
            raise InputError("abs_error_estimate must be non-negative")
        gap = abs(self.value - (self.monotonic + self.oscillatory))
        slack = self.abs_error_estimate + 1e-15 * (1.0 + abs(self.value))
        if gap > slack:
            raise InputError(
                f"split violates value = monotonic + oscillatory: gap {gap}"
            )


@dataclass(frozen=True)
class RegimeLabel:
    regime: str
    landau_spacing: float


def _h_floor(z, q):
    # Absolute rounding floor of an H_z evaluation. The engine shifts q up
    # to ~16 and cancels parts of size (q+17)^(1-z) back down to O(1), so
    # the surviving noise scales with the largest intermediate.
    return 6.0 * _EPS * ((q + 17.0) ** (1.0 - z) + 1.0)


def density_of_states(E, pt_b):
    """States per unit volume and energy at energy E (mass units), m^3 units.

    Diverges like an inverse square root each time E crosses a Landau
    threshold, which h_z signals as a ThresholdError.
    """
    if not (math.isfinite(E) and E > 1.0):
        raise DomainError(f"E must be finite and > 1, got {E}")
    q_e = (E * E - 1.0) / pt_b
    return math.sqrt(pt_b) / (2.0 * _PI2) * E * h_z(0.5, q_e).total


def cumulative_states(pt):
    """Total states per unit volume below the Fermi surface, m^3 units.

    Continuous in eps_f straight through level thresholds; the inverse
    square root divergences of the density of states integrate away.
    """
    return pt.b ** 1.5 / (2.0 * _PI2) * h_z(-0.5, pt.filling).total


def number_density(pt, method="quadrature"):
    """Particle density, units m^3 (the 1/2pi^2 prefactor included).

    quadrature is exact (closed form in H_{-1/2}); small_b_expansion keeps
    through b^2 with O(b^4) model error; brute_force sums occupied levels
    literally and serves as the oracle.
    """
    c = pt.b ** 1.5 / (2.0 * _PI2)
    if method == "quadrature":
        hv = h_z(-0.5, pt.filling)
        return ThermoResult(
            value=c * hv.total,
            monotonic=c * hv.monotonic,
            oscillatory=c * hv.oscillatory,
            abs_error_estimate=c * _h_floor(-0.5, pt.filling),
            method="quadrature",
        )
    if method == "small_b_expansion":
        p = pt.p_f
        b = pt.b
        frac = pt.filling - math.floor(pt.filling)
        osc = b ** 1.5 * hurwitz_zeta(-0.5, frac).value / (2.0 * _PI2)
        mon = (2.0 / 3.0 * p ** 3 + b * b / (24.0 * p)) / (2.0 * _PI2)
        # next omitted order is b^4/(1920 p_F^5), from the q^(-5/2) term of
        # the large-q behavior of H_{-1/2}
        err = b ** 4 / (480.0 * p ** 5) / (2.0 * _PI2) + 1e-15 * abs(mon)
        return ThermoResult(
            value=math.fsum([mon, osc]),
            monotonic=mon,
            oscillatory=osc,
            abs_error_estimate=err,
            method="small_b_expansion",
        )
    if method == "brute_force":
        value = _density_level_sum(pt) / (2.0 * _PI2)
        return ThermoResult(
            value=value,
            monotonic=value,
            oscillatory=0.0,
            abs_error_estimate=1e-14 * (1.0 + abs(value)),
            method="brute_force",
        )
    raise InputError(f"number_density does not support method {method!r}")


def _density_level_sum(pt):
    # (b/2) sum g_j p_j over occupied levels, p_j the top momentum of level j
    p2 = pt.p_f ** 2
    terms = []
    for j in range(int(math.floor(pt.filling)) + 1):
        g = 1.0 if j == 0 else 2.0
        terms.append(g * math.sqrt(max(p2 - pt.b * j, 0.0)))
    return 0.5 * pt.b * math.fsum(terms)


# Large-filling constants; both depend only on b, so sweeps over eps_f at
# fixed field reuse them. Write-once caches, safe for concurrent readers.
_RESIDUAL_TAIL_CACHE = {}
_OSC_CONST_CACHE = {}


def _residual_integral(b, upper):
    """integral_0^upper of the three-term-subtracted zeta over sqrt(1+bq)."""
    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-12, max_subdivisions=8000)

    def f(q):
        return subtracted_zeta(3, -0.5, q + 1.0) / math.sqrt(1.0 + b * q)

    return integrate(f, 0.0, upper, spec)


def _residual_tail(b):
    if b not in _RESIDUAL_TAIL_CACHE:
        _RESIDUAL_TAIL_CACHE[b] = _residual_integral(b, math.inf)
    return _RESIDUAL_TAIL_CACHE[b]


def _osc_unit_constant(b):
    # integral_0^1 zeta(-1/2,q) zeta(1/2,q+1/b) dq, the filling-independent
    # piece the oscillatory tail leaves behind at large filling
    if b not in _OSC_CONST_CACHE:
        spec = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11, max_subdivisions=8000)

        def f(q):
            return hurwitz_zeta(-0.5, q).value * hurwitz_zeta(0.5, q + 1.0 / b).value

        _OSC_CONST_CACHE[b] = integrate(f, 0.0, 1.0, spec)
    return _OSC_CONST_CACHE[b]


def _omega_explicit_terms(pt):
    # The closed terms left after subtracting three asymptotic orders from
    # the zeta under the integral and integrating them in elementary form.
    eps, b = pt.eps_f, pt.b
    p2 = pt.p_f ** 2
    root = math.sqrt(b + p2)
    return [
        0.5 * (1.0 - b + b * b / 6.0) * math.log((eps + root) / (1.0 + math.sqrt(b))),
        -0.5 * (root * eps - math.sqrt(b)),
        (root ** 3 * eps - b ** 1.5) / 3.0,
        0.5 * b * (math.acosh(eps) - pt.p_f * eps),
    ]


def _omega_osc_quadrature(pt):
    """Oscillatory grand potential by the period-folded double integral."""
    b = pt.b
    filling = pt.filling
    frac = filling - math.floor(filling)
    whole = math.floor(filling)
    spec = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11, max_subdivisions=8000)

    if frac > 0.0:
        shift = 1.0 / b + whole

        def head(q):
            return hurwitz_zeta(-0.5, q).value / math.sqrt(q + shift)

        i_head, e_head = integrate(head, 0.0, frac, spec)
    else:
        i_head, e_head = 0.0, 0.0

    if whole >= 1.0:
        lo = 1.0 / b
        hi = 1.0 / b + whole

        def body(q):
            inner = hurwitz_zeta(0.5, q + lo).value - hurwitz_zeta(0.5, q + hi).value
            return hurwitz_zeta(-0.5, q).value * inner

        i_body, e_body = integrate(body, 0.0, 1.0, spec)
    else:
        i_body, e_body = 0.0, 0.0

    value = -b * b * (i_head + i_body)
    return value, b * b * (e_head + e_body)


def grand_potential(pt, method="quadrature"):
    """Grand potential density, units m^4 (the -1/4pi^2 prefactor included).

    quadrature evaluates the exact split: the monotonic part from the
    subtracted closed form plus a residual integral, the oscillatory part
    from the period-folded double integral. brute_force does the level sum
    with the per-level antiderivative and is the oracle. small_b_expansion
    carries through b^(7/2); large_filling_expansion replaces the two
    filling-dependent integrals by their b-only limits (cached per b) and
    is good whenever many levels are filled, regardless of b.
    """
    eps, b = pt.eps_f, pt.b
    c = 1.0 / (4.0 * _PI2)
    if method == "quadrature":
        residual, r_err = _residual_integral(b, pt.filling)
        mon = -c * math.fsum(_omega_explicit_terms(pt) + [-(b ** 2.5) * residual])
        osc_hat, o_err = _omega_osc_quadrature(pt)
        osc = c * osc_hat
        err = c * (b ** 2.5 * r_err + o_err + 8.0 * _EPS * (1.0 + eps ** 4))
        return ThermoResult(
            value=math.fsum([mon, osc]),
            monotonic=mon,
            oscillatory=osc,
            abs_error_estimate=err,
            method="quadrature",
        )
    if method == "brute_force":
        value = c * _grand_potential_level_sum(pt)
        return ThermoResult(
            value=value,
            monotonic=value,
            oscillatory=0.0,
            abs_error_estimate=5e-14 * (1.0 + abs(value)) * (1.0 + pt.filling ** 0.5),
            method="brute_force",
        )
    if method == "small_b_expansion":
        chi = math.acosh(eps)
        p = pt.p_f
        frac = pt.filling - math.floor(pt.filling)
        z32 = hurwitz_zeta(-1.5, frac).value
        z52 = hurwitz_zeta(-2.5, frac).value
        mon = -c * math.fsum(
            [
                0.5 * chi,
                eps * p ** 3 / 3.0,
                -0.5 * eps * p,
                b * b / 12.0 * chi,
            ]
        )
        osc = -c * math.fsum(
            [
                2.0 / 3.0 * b ** 2.5 / eps * z32,
                2.0 / 15.0 * b ** 3.5 / eps ** 3 * z52,
            ]
        )
        # next order is b^4; its coefficient is not printed, so scale the
        # estimate off the last kept analytic term
        err = c * b ** 4 * (chi / 6.0 + 1.0 / (120.0 * p ** 3))
        return ThermoResult(
            value=math.fsum([mon, osc]),
            monotonic=mon,
            oscillatory=osc,
            abs_error_estimate=err,
            method="small_b_expansion",
        )
    if method == "large_filling_expansion":
        tail, t_err = _residual_tail(b)
        unit_const, u_err = _osc_unit_constant(b)
        frac = pt.filling - math.floor(pt.filling)
        z32 = hurwitz_zeta(-1.5, frac).value
        z52 = hurwitz_zeta(-2.5, frac).value
        mon = -c * math.fsum(
            _omega_explicit_terms(pt)
            + [-(b ** 2.5) * tail, b ** 4 / (3840.0 * eps ** 4)]
        )
        osc = -c * math.fsum(
            [
                2.0 / 3.0 * b ** 2.5 / eps * z32,
                2.0 / 15.0 * b ** 3.5 / eps ** 3 * z52,
                b * b * unit_const,
            ]
        )
        err = c * (
            b ** 2.5 * t_err
            + b * b * u_err
            + b ** 4.5 / eps ** 5
            + 8.0 * _EPS * (1.0 + eps ** 4)
        )
        return ThermoResult(
            value=math.fsum([mon, osc]),
            monotonic=mon,
            oscillatory=osc,
            abs_error_estimate=err,
            method="large_filling_expansion",
        )
    raise InputError(f"grand_potential does not support method {method!r}")


def _grand_potential_level_sum(pt):
    # per level: 2 integral_0^pj (E(p) - eps_f) dp has the closed form
    # M_j^2 ln((p_j + eps_f)/M_j) - eps_f p_j, since sqrt(p_j^2+M_j^2) = eps_f
    eps, b = pt.eps_f, pt.b
    p2 = pt.p_f ** 2
    terms = []
    for j in range(int(math.floor(pt.filling)) + 1):
        g = 1.0 if j == 0 else 2.0
        m2 = 1.0 + b * j
        pj = math.sqrt(max(p2 - b * j, 0.0))
        terms.append(g * (0.5 * m2 * math.log((pj + eps) / math.sqrt(m2)) - 0.5 * eps * pj))
    return b * math.fsum(terms)


def energy_density(pt, method="quadrature"):
    """Ground-state energy density, units m^4 (1/4pi^2 included).

    Built from u = omega + eps_f n, which is exact at T = 0; the split
    and the error estimate inherit from the two pieces. The small-b
    expansion is assembled from the same identity, so the printed form
    of its b^2 term (eps_f/p_F, not eps_f/p_F^2) follows automatically.
    """
    if method in ("quadrature", "brute_force", "small_b_expansion"):
        om = grand_potential(pt, method)
        nn = number_density(pt, method)
        eps = pt.eps_f
        return ThermoResult(
            value=math.fsum([om.value, eps * nn.value]),
            monotonic=math.fsum([om.monotonic, eps * nn.monotonic]),
            oscillatory=math.fsum([om.oscillatory, eps * nn.oscillatory]),
            abs_error_estimate=om.abs_error_estimate + eps * nn.abs_error_estimate,
            method=method,
        )
    raise InputError(f"energy_density does not support method {method!r}")


def _warn_threshold(pt):
    warnings.warn(
        f"filling {pt.filling} is integral; evaluating the limit from below",
        ThresholdWarning,
        stacklevel=3,
    )


def magnetization(pt, method="quadrature"):
    """Magnetization density, units e m^2 (the e/2pi^2 prefactor included).

    quadrature differentiates the grand potential analytically under the
    integral sign; brute_force central-differences grand_potential in b
    with step 1e-6 b. At integral filling the oscillatory zeta is
    evaluated at {q} = 0, which equals the limit from below; a
    ThresholdWarning flags that this happened.
    """
    eps, b = pt.eps_f, pt.b
    p2 = pt.p_f ** 2
    filling = pt.filling
    frac = filling - math.floor(filling)
    c = E_CHARGE / (2.0 * _PI2)
    if method == "quadrature":
        if frac == 0.0:
            _warn_threshold(pt)
        spec_mon = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-10, max_subdivisions=8000)
        whole = int(math.floor(filling))
        # the periodic factor has a vertical tangent on the right of every
        # integer, so those are mandatory panel edges
        spec_osc = QuadratureSpec(
            abs_tol=1e-11,
            rel_tol=1e-9,
            max_subdivisions=60000,
            breakpoints=tuple(float(k) for k in range(1, whole + 1)),
        )

        def kernel(q):
            w = 1.0 + b * q
            return 2.0 / math.sqrt(w) + 0.5 * w ** -1.5

        def f_mon(q):
            hv = h_z(-0.5, q)
            return hv.monotonic * kernel(q)

        def f_osc(q):
            return hurwitz_zeta(-0.5, q - math.floor(q)).value * kernel(q)

        i_mon, e_mon = integrate(f_mon, 0.0, filling, spec_mon)
        i_osc, e_osc = integrate(f_osc, 0.0, filling, spec_osc)
        hv_end = h_z(-0.5, filling)
        boundary = math.sqrt(b) * p2 / eps
        mon = c * math.fsum([b ** 1.5 * i_mon, -boundary * hv_end.monotonic])
        osc = c * math.fsum([b ** 1.5 * i_osc, -boundary * hv_end.oscillatory])
        err = c * (
            b ** 1.5 * (e_mon + e_osc)
            + boundary * _h_floor(-0.5, filling)
            + 1e-13 * (1.0 + abs(mon))
        )
        return ThermoResult(
            value=math.fsum([mon, osc]),
            monotonic=mon,
            oscillatory=osc,
            abs_error_estimate=err,
            method="quadrature",
        )
    if method == "small_b_expansion":
        if frac == 0.0:
            _warn_threshold(pt)
        z12 = hurwitz_zeta(-0.5, frac).value
        z32 = hurwitz_zeta(-1.5, frac).value
        z52 = hurwitz_zeta(-2.5, frac).value
        mon = c * b / 6.0 * math.acosh(eps)
        osc = c * math.fsum(
            [
                -math.sqrt(b) * p2 / eps * z12,
                b ** 1.5 / 3.0 * (4.0 * eps * eps + 1.0) / eps ** 3 * z32,
                b ** 2.5 / 15.0 * (4.0 * eps * eps + 3.0) / eps ** 5 * z52,
            ]
        )
        err = c * b ** 3 * (math.acosh(eps) + 1.0 / eps)
        return ThermoResult(
            value=math.fsum([mon, osc]),
            monotonic=mon,
            oscillatory=osc,
            abs_error_estimate=err,
            method="small_b_expansion",
        )
    if method == "brute_force":
        db = 1e-6 * b

        def omega_of_b(bb):
            return grand_potential(GasPointT0(eps, bb), "quadrature").value

        if frac == 0.0:
            # at integral filling the derivative has a one-sided inverse
            # square root kink on the lower-b side; difference on the
            # smooth side only, matching the limit-from-below convention
            _warn_threshold(pt)
            slope = (
                -3.0 * omega_of_b(b)
                + 4.0 * omega_of_b(b + db)
                - omega_of_b(b + 2.0 * db)
            ) / (2.0 * db)
        else:
            slope = central_difference(omega_of_b, b, db, order=1)
        value = -2.0 * E_CHARGE * slope
        return ThermoResult(
            value=value,
            monotonic=value,
            oscillatory=0.0,
            abs_error_estimate=1e-5 * abs(value) + 1e-12,
            method="brute_force",
        )
    raise InputError(f"magnetization does not support method {method!r}")


# Extrema of zeta(-1/2, x) on [0, 1], filled on first use by scan plus
# local refinement. The minimum sits at both endpoints (value zeta(-1/2)),
# the maximum in the interior where zeta(1/2, x) crosses zero.
_OSC_FACTOR_RANGE = []


def _osc_factor_range():
    if not _OSC_FACTOR_RANGE:
        from scipy.optimize import minimize_scalar

        xs = [i / 400.0 for i in range(401)]
        vals = [hurwitz_zeta(-0.5, x).value for x in xs]
        i_max = max(range(len(xs)), key=lambda i: vals[i])
        lo = xs[max(i_max - 1, 0)]
        hi = xs[min(i_max + 1, len(xs) - 1)]
        top = minimize_scalar(
            lambda x: -hurwitz_zeta(-0.5, x).value,
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12},
        )
        _OSC_FACTOR_RANGE.append((min(vals), -top.fun))
    return _OSC_FACTOR_RANGE[0]


def magnetization_envelope_t0(eps_f, b):
    """(lower, upper) envelope of the leading magnetization oscillation.

    The leading oscillatory term is -sqrt(b) (p_F^2/eps_F) zeta(-1/2, x)
    with x the fractional filling; sweeping x over one period and adding
    the monotonic (b/6) acosh term gives the band the oscillation lives
    in, up to O(b^(3/2)) corrections.
    """
    pt = GasPointT0(eps_f, b)
    z_min, z_max = _osc_factor_range()
    c = E_CHARGE / (2.0 * _PI2)
    mon = c * b / 6.0 * math.acosh(eps_f)
    amp = c * math.sqrt(b) * pt.p_f ** 2 / eps_f
    return (mon - amp * z_max, mon - amp * z_min)


def fermi_energy_from_density(n, b):
    """Invert number_density at fixed b by bracketing bisection.

    n is in the same units number_density reports (m^3, prefactor
    included). The density is strictly increasing in eps_f but has
    vertical tangents at level thresholds; if rounding stalls the
    bracket on a riser before the relative residual reaches 1e-10, the
    lower bracketing energy is returned with a ThresholdWarning.
    """
    if not (math.isfinite(n) and n > 0.0):
        raise DomainError(f"n must be finite and > 0, got {n}")

    def shortfall(eps):
        return number_density(GasPointT0(eps, b)).value - n

    # free-gas guess for the upper bracket, then grow geometrically
    p_guess = (3.0 * _PI2 * n) ** (1.0 / 3.0)
    hi = math.sqrt(1.0 + (2.0 * p_guess) ** 2) + 1e-9
    lo = 1.0 + 1e-13
    while shortfall(hi) < 0.0:
        hi = 1.0 + 2.0 * (hi - 1.0)
        if hi > 1e9:
            raise DomainError(f"no Fermi energy below 1e9 reaches density {n}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if shortfall(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if abs(shortfall(lo)) <= 1e-10 * n:
            return lo
        if abs(shortfall(hi)) <= 1e-10 * n:
            return hi
    if abs(shortfall(lo)) > 1e-10 * n:
        warnings.warn(
            f"density {n} sits on a level riser; returning the lower bracket",
            ThresholdWarning,
            stacklevel=2,
        )
    return lo


def nonrelativistic_grand_potential(mu_nr, b):
    """Grand potential of the non-relativistic gas, units m^4.

    mu_nr is the kinetic chemical potential, so p_F^2 = 2 mu_nr.
    This is the closed form that reduces to Landau's result; the full
    grand_potential approaches it as p_F -> 0.
    """
    if not (math.isfinite(mu_nr) and mu_nr > 0.0):
        raise DomainError(f"mu_nr must be finite and > 0, got {mu_nr}")
    if not (math.isfinite(b) and b > 0.0):
        raise DomainError(f"b must be finite and > 0, got {b}")
    return -(b ** 2.5) / (6.0 * _PI2) * h_z(-1.5, 2.0 * mu_nr / b).total


def effective_action_series_check(pt, l_max):
    """The binomial-series form of the grand potential, for cross-checking.

    Valid only for p_F^2 < 1 where the square root under the defining
    integral can be expanded over the whole range. Agreement with
    grand_potential is up to an overall sign, so compare magnitudes.
    Units m^4, all prefactors included.
    """
    if l_max < 0:
        raise InputError("l_max must be non-negative")
    eps, b = pt.eps_f, pt.b
    p2 = pt.p_f ** 2
    if p2 >= 1.0:
        raise DomainError(f"series requires p_F^2 < 1, got {p2}")
    filling = pt.filling
    frac = filling - math.floor(filling)
    head = b / (8.0 * _PI2) * (eps * pt.p_f - math.log(eps + pt.p_f))
    terms = []
    for l in range(l_max + 1):
        z = -(l + 1.5)
        weight = (b / (eps * eps)) ** (l + 0.5) / ((2 * l + 1) * (2 * l + 3))
        terms.append(
            weight * (hurwitz_zeta(z, frac).value - hurwitz_zeta(z, filling).value)
        )
    return head + b * b / (2.0 * _PI2) * math.fsum(terms)


def regime_classify(pt, T, ratio_threshold=0.1):
    """Label the gas cold, cold_small_field, warm, or nondegenerate.

    The two scales are the degeneracy range T_F = eps_f - 1 and the level
    spacing at the Fermi surface b/(2 eps_f); ratio_threshold says how
    much smaller "much smaller" has to be.
    """
    if T < 0.0 or not math.isfinite(T):
        raise DomainError(f"T must be finite and >= 0, got {T}")
    if not 0.0 < ratio_threshold < 1.0:
        raise InputError(f"ratio_threshold must be in (0,1), got {ratio_threshold}")
    spacing = pt.b / (2.0 * pt.eps_f)
    t_f = pt.eps_f - 1.0
    if T >= ratio_threshold * t_f:
        regime = "nondegenerate"
    elif T <= ratio_threshold * spacing:
        if spacing <= ratio_threshold * t_f:
            regime = "cold_small_field"
        else:
            regime = "cold"
    else:
        regime = "warm"
    return RegimeLabel(regime=regime, landau_spacing=spacing)
