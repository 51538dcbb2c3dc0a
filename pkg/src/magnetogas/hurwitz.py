"""Hurwitz zeta engine for real order and non-negative argument.

The engine proper (`hurwitz_zeta`) dispatches between an exact Bernoulli
polynomial for non-positive integer order and a recurrence shift followed
by the Euler-Maclaurin asymptotic series. Independent evaluators (Hermite
integral, conditionally convergent Fourier series, direct summation) are
kept separate so they can cross-check the engine rather than feed it.
All large-argument representations share `_leading_terms`, so the two
dominant pieces are bit-identical doubles across strategies and their
rounding cancels in comparisons.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityError, DomainError, PoleError, ToleranceError, TruncationError
from .numerics import QuadratureSpec, integrate

_TABLE_ORDER = 62
_EPS = 2.0 ** -52


class BernoulliTable:
    """Bernoulli numbers B_0..B_order as exact Fractions, with B_1 = -1/2.

    Built once by the defining recurrence sum_{k<=n} C(n+1,k) B_k = 0 and
    stored immutably; indexing past the table raises CapacityError instead
    of silently extending.
    """

    def __init__(self, order=_TABLE_ORDER):
        if order < 1:
            raise DomainError("table order must be at least 1")
        vals = [Fraction(1)]
        for n in range(1, order + 1):
            acc = Fraction(0)
            for k in range(n):
                acc += math.comb(n + 1, k) * vals[k]
            vals.append(-acc / (n + 1))
        self._vals = tuple(vals)

    @property
    def order(self):
        return len(self._vals) - 1

    def __len__(self):
        return len(self._vals)

    def number(self, n):
        if n < 0:
            raise DomainError("Bernoulli index must be non-negative")
        if n >= len(self._vals):
            raise CapacityError(f"table holds B_0..B_{self.order}, asked for B_{n}")
        return self._vals[n]


TABLE = BernoulliTable()

# B_{2j}/(2j)! for the Euler-Maclaurin correction terms, j = 1..31
_EM_COEF = {j: float(TABLE.number(2 * j) / math.factorial(2 * j))
            for j in range(1, _TABLE_ORDER // 2 + 1)}


def bernoulli_number(n):
    """Exact B_n as a Fraction (B_1 = -1/2)."""
    return TABLE.number(n)


def _bernoulli_poly_exact(n, x):
    # Horner over sum_k C(n,k) B_k x^(n-k), exact rational throughout
    acc = Fraction(0)
    for k in range(n + 1):
        acc = acc * x + math.comb(n, k) * TABLE.number(k)
    return acc


def bernoulli_polynomial(n, x):
    """B_n(x), computed in exact rational arithmetic and rounded once."""
    if n < 0:
        raise DomainError("polynomial degree must be non-negative")
    return float(_bernoulli_poly_exact(n, Fraction(x)))


def pochhammer(z, m):
    """Rising factorial z (z+1) ... (z+m-1); m = 0 gives 1."""
    if m < 0:
        raise DomainError("pochhammer length must be non-negative")
    out = 1.0
    for i in range(m):
        out *= z + i
    return out


@dataclass(frozen=True)
class ZetaEngineConfig:
    shift_target: float = 16.0
    asymptotic_terms: int = 20
    quadrature_abs_tol: float = 1e-12
    quadrature_rel_tol: float = 1e-10

    def __post_init__(self):
        if self.shift_target < 2.0:
            raise DomainError("shift_target must be at least 2")
        if self.asymptotic_terms < 3:
            raise DomainError("asymptotic_terms must be at least 3")
        if self.quadrature_abs_tol <= 0.0 or self.quadrature_rel_tol <= 0.0:
            raise DomainError("quadrature tolerances must be positive")


@dataclass(frozen=True)
class ZetaValue:
    value: float
    abs_error_estimate: float
    strategy_used: str

    def __post_init__(self):
        if self.abs_error_estimate < 0.0:
            raise DomainError("error estimate cannot be negative")


DEFAULT_CONFIG = ZetaEngineConfig()


def _validate_zq(z, q):
    if math.isnan(z) or math.isinf(z) or math.isnan(q) or math.isinf(q):
        raise DomainError("z and q must be finite")
    if z == 1.0:
        raise PoleError("z = 1 is the pole of the Hurwitz zeta")
    if q < 0.0:
        raise DomainError("q must be non-negative")
    if q == 0.0 and z > 0.0:
        raise DomainError("q = 0 requires z < 0")


def _leading_terms(z, q):
    # q^(1-z)/(z-1) + q^(-z)/2; shared verbatim by every large-q
    # representation so cross-checks compare identical doubles
    return q ** (1.0 - z) / (z - 1.0), 0.5 * q ** (-z)


def _asymptotic_tail(z, q, j_max):
    """Correction terms B_2j/(2j)! (z)_{2j-1} q^(1-z-2j) from j = 1.

    Truncates at the smallest term or after j_max terms, whichever comes
    first; returns (terms, bound) with bound the first omitted magnitude.
    """
    terms = []
    prev = math.inf
    poch = z
    qpow = q ** (-z - 1.0)
    inv_q2 = 1.0 / (q * q)
    for j in range(1, _TABLE_ORDER // 2 + 1):
        t = _EM_COEF[j] * poch * qpow
        if abs(t) >= prev or len(terms) >= j_max:
            return terms, abs(t)
        terms.append(t)
        prev = abs(t)
        poch *= (z + 2.0 * j - 1.0) * (z + 2.0 * j)
        qpow *= inv_q2
    return terms, prev


def hurwitz_zeta(z, q, config=None):
    """Evaluate zeta(z, q) = sum_{n>=0} (q+n)^(-z), analytically continued.

    Non-positive integer z goes through the exact Bernoulli polynomial,
    zeta(-m, q) = -B_{m+1}(q)/(m+1), evaluated in rational arithmetic.
    Everything else shifts q up to config.shift_target by the recurrence
    zeta(z, q) = q^(-z) + zeta(z, q+1) and sums the asymptotic series at
    the shifted argument, assembling every contribution in one
    compensated sum. q = 0 is accepted only where the n = 0 term
    vanishes (z < 0).

    Returns a ZetaValue; raises PoleError at z = 1, DomainError off the
    domain, CapacityError past the Bernoulli table.
    """
    cfg = config if config is not None else DEFAULT_CONFIG
    _validate_zq(z, q)
    if z <= 0.0 and float(z).is_integer():
        m = int(-z)
        if m + 1 > _TABLE_ORDER:
            raise CapacityError(f"needs B_{m + 1}, table stops at B_{_TABLE_ORDER}")
        val = float(-_bernoulli_poly_exact(m + 1, Fraction(q)) / (m + 1))
        return ZetaValue(val, _EPS * abs(val), "bernoulli_polynomial")

    if cfg.asymptotic_terms > _TABLE_ORDER // 2:
        raise CapacityError(
            f"asymptotic_terms capped at {_TABLE_ORDER // 2} by the Bernoulli table")
    k = int(math.ceil(cfg.shift_target - q)) if q < cfg.shift_target else 0
    big_q = q + k
    lead1, lead2 = _leading_terms(z, big_q)
    tail, trunc = _asymptotic_tail(z, big_q, cfg.asymptotic_terms)
    parts = [(q + i) ** (-z) for i in range(k)]
    parts.append(lead1)
    parts.append(lead2)
    parts.extend(tail)
    value = math.fsum(parts)
    err = trunc + _EPS * math.fsum(abs(p) for p in parts)
    return ZetaValue(value, err, "recurrence_asymptotic")


def hurwitz_zeta_hermite(z, q, config=None):
    """zeta(z, q) from the Hermite integral representation, for q > 0.

    zeta(z,q) = q^(1-z)/(z-1) + q^(-z)/2
              + 2 q^(1-z) int_0^inf sin(z arctan t) /
                          ((1+t^2)^(z/2) (e^(2 pi q t) - 1)) dt

    The integral is split at t = 1/2 and the tail is mapped onto [0, 1)
    by t = 1/2 + u/(1-u). Tolerances are tightened so the integral's
    absolute error stays meaningful after multiplication by 2 q^(1-z);
    when that target is uncertifiable the best quadrature estimate is
    used and reported in the error field.
    """
    cfg = config if config is not None else DEFAULT_CONFIG
    _validate_zq(z, q)
    if q == 0.0:
        raise DomainError("the integral representation needs q > 0")

    lead1, lead2 = _leading_terms(z, q)
    pref = 2.0 * q ** (1.0 - z)
    two_pi_q = 2.0 * math.pi * q

    def f(t):
        w = two_pi_q * t
        if w > 700.0:
            return 0.0  # factor below e^-700, and exp would overflow
        return math.sin(z * math.atan(t)) / ((1.0 + t * t) ** (0.5 * z) * math.expm1(w))

    def g(u):
        s = 1.0 - u
        return f(0.5 + u / s) / (s * s)

    spec = QuadratureSpec(
        abs_tol=0.5 * cfg.quadrature_abs_tol / max(1.0, abs(pref)),
        rel_tol=min(cfg.quadrature_rel_tol, 1e-13),
        max_subdivisions=4000,
    )

    def run(fn, a, b):
        try:
            return integrate(fn, a, b, spec)
        except ToleranceError as e:
            return e.best_estimate, e.error_estimate

    i1, e1 = run(f, 0.0, 0.5)
    i2, e2 = run(g, 0.0, 1.0)
    value = math.fsum([lead1, lead2, pref * i1, pref * i2])
    err = abs(pref) * (e1 + e2) + _EPS * (abs(lead1) + abs(lead2)
                                          + abs(pref) * (abs(i1) + abs(i2)))
    return ZetaValue(value, err, "hermite_quadrature")


def hurwitz_zeta_fourier(z, q, tol=1e-10):
    """zeta(z, q) from its Fourier (Hurwitz formula) series; z < 0, 0 < q < 1.

    zeta(z,q) = 2 Gamma(1-z) (2 pi)^(z-1) [ sin(pi z/2) sum cos(2 pi n q) n^(z-1)
                                          + cos(pi z/2) sum sin(2 pi n q) n^(z-1) ]

    The sums converge only conditionally; summation stops once an Abel
    tail bound (partial sums of the phases against the monotone n^(z-1))
    falls below tol. Returns a plain float.
    """
    if math.isnan(z) or math.isnan(q):
        raise DomainError("z and q must be finite")
    if z >= 0.0:
        raise DomainError("the series representation needs z < 0")
    if not 0.0 < q < 1.0:
        raise DomainError("the series representation needs 0 < q < 1")
    if tol <= 0.0:
        raise DomainError("tol must be positive")

    pref = 2.0 * math.gamma(1.0 - z) * (2.0 * math.pi) ** (z - 1.0)
    cos_half = math.cos(0.5 * math.pi * z)
    sin_half = math.sin(0.5 * math.pi * z)
    sin_pi_q = abs(math.sin(math.pi * q))
    target = tol / max(abs(pref), 1.0)

    total_c = 0.0
    total_s = 0.0
    n0 = 1
    chunk = 4096
    while True:
        n = np.arange(n0, n0 + chunk, dtype=np.float64)
        npow = n ** (z - 1.0)
        ang = (2.0 * math.pi * q) * n
        total_c += float(np.sum(np.cos(ang) * npow))
        total_s += float(np.sum(np.sin(ang) * npow))
        n0 += chunk
        bound = 2.0 * n0 ** (z - 1.0) / sin_pi_q
        if bound < target:
            break
        if n0 > 100_000_000:
            raise TruncationError(
                "Fourier tail bound stalled; q is too close to an integer",
                best_estimate=pref * (sin_half * total_c + cos_half * total_s),
                error_estimate=abs(pref) * bound,
            )
        chunk = min(2 * chunk, 1 << 20)
    return pref * (sin_half * total_c + cos_half * total_s)


def hurwitz_zeta_direct(z, q, tol=1e-8, n_cap=200000):
    """Term-by-term sum of (q+n)^(-z) with an integral tail bound; z > 1.

    Impractically slow as z -> 1 (the bound decays like n^(1-z)); meant
    as a cross-check in the comfortably convergent region.
    """
    if math.isnan(z) or math.isinf(z):
        raise DomainError("z must be finite")
    if z <= 1.0:
        raise DomainError("direct summation converges only for z > 1")
    if q <= 0.0:
        raise DomainError("q must be positive")
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    terms = []
    n = 0
    while True:
        terms.append((q + n) ** (-z))
        bound = (q + n) ** (1.0 - z) / (z - 1.0)  # integral over the omitted range
        if bound < tol:
            break
        n += 1
        if n >= n_cap:
            raise TruncationError(
                f"tail bound never fell below {tol:.3e} within {n_cap} terms",
                best_estimate=math.fsum(terms),
                error_estimate=bound,
            )
    value = math.fsum(terms)
    err = bound + _EPS * math.fsum(terms)
    return ZetaValue(value, err, "direct_series")


def subtracted_zeta(n_terms, z, q, config=None):
    """zeta(z, q) with its n_terms leading large-q pieces removed.

    n_terms = 3 removes q^(1-z)/(z-1) + q^(-z)/2 + (z/12) q^(-z-1),
    leaving a remainder that falls off like q^(-z-3); n_terms = 4 also
    removes the next correction (z)_3 B_4/4! q^(-z-3), leaving
    q^(-z-5). The subtraction happens inside one compensated sum, so
    small q does not lose the remainder to cancellation.
    """
    cfg = config if config is not None else DEFAULT_CONFIG
    if n_terms not in (3, 4):
        raise DomainError("n_terms must be 3 or 4")
    _validate_zq(z, q)
    if q == 0.0:
        raise DomainError("q must be positive")
    j_sub = n_terms - 2  # correction terms removed alongside the two leads

    lead1, lead2 = _leading_terms(z, q)
    subs = []
    poch = z
    qpow = q ** (-z - 1.0)
    for j in range(1, j_sub + 1):
        subs.append(_EM_COEF[j] * poch * qpow)
        poch *= (z + 2.0 * j - 1.0) * (z + 2.0 * j)
        qpow /= q * q

    if z <= 0.0 and float(z).is_integer():
        zv = hurwitz_zeta(z, q, cfg)
        return math.fsum([zv.value, -lead1, -lead2] + [-s for s in subs])

    if q >= cfg.shift_target:
        # heads cancel exactly; what is left is the rest of the series
        terms, _ = _asymptotic_tail(z, q, cfg.asymptotic_terms)
        return math.fsum(terms[j_sub:])

    k = int(math.ceil(cfg.shift_target - q))
    big_q = q + k
    lead1_big, lead2_big = _leading_terms(z, big_q)
    tail, _ = _asymptotic_tail(z, big_q, cfg.asymptotic_terms)
    parts = [(q + i) ** (-z) for i in range(k)]
    parts += [lead1_big, lead2_big]
    parts += tail
    parts += [-lead1, -lead2]
    parts += [-s for s in subs]
    return math.fsum(parts)


def hurwitz_q_derivative(z, q, order=1):
    """d^order/dq^order zeta(z, q) = (-1)^order (z)_order zeta(z+order, q).

    The prefactor is formed first; a zero coefficient (z a non-positive
    integer above -order) short-circuits to exactly 0.0 before the
    shifted zeta is evaluated, so arguments whose shifted order lands on
    the pole return the formal product instead of raising. Note this is
    the contract, not the analytic limit: at z = 0, order = 1 the true
    derivative of zeta(0, q) = 1/2 - q is -1, but the formal coefficient
    -z annihilates the expression and 0.0 is returned.
    """
    if order != int(order) or order < 1:
        raise DomainError("order must be a positive integer")
    order = int(order)
    coeff = (-1.0) ** order * pochhammer(z, order)
    if coeff == 0.0:
        return 0.0
    return coeff * hurwitz_zeta(z + order, q).value
