"""The remainder family H_z built from the zeta engine.

H_z(q) = zeta(z, {q}) - zeta(z, q+1) - q^(-z)/2, with {q} the fractional
part. Twice H_z equals the half-weighted sum over occupied levels,
sum_{j=0}^{floor(q)} g_j (q-j)^(-z) with g_0 = 1 and g_j = 2 otherwise,
which is the shape every filled-Landau-level sum takes. The value is kept
split into a smooth part (no structure at integer q) and the purely
periodic zeta(z, {q}), because the physics downstream wants the de
Haas-van Alphen oscillation isolated from the monotonic background.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, ThresholdError
from .hurwitz import hurwitz_zeta


@dataclass(frozen=True)
class HValue:
    total: float
    monotonic: float
    oscillatory: float


def h_z(z, q, config=None):
    """H_z(q), split into monotonic and oscillatory parts.

    oscillatory = zeta(z, {q}) is periodic with unit period (for z < 0 it
    is also continuous across integers, where {q} snaps from 1 to 0);
    monotonic = -zeta(z, q+1) - q^(-z)/2 carries no level structure.
    total is their compensated sum. For z > 0 an integer q sits on a
    level threshold where the z-th inverse power of the vanishing top
    momentum diverges: ThresholdError.
    """
    if math.isnan(q) or math.isinf(q):
        raise DomainError("q must be finite")
    if q < 0.0:
        raise DomainError("q must be non-negative")
    frac = q - math.floor(q)
    if z > 0.0 and frac == 0.0:
        raise ThresholdError(f"H_z with z > 0 diverges at integer q = {q}")
    osc = hurwitz_zeta(z, frac, config).value
    smooth = hurwitz_zeta(z, q + 1.0, config).value
    half = 0.5 * q ** (-z)
    return HValue(
        total=math.fsum([osc, -smooth, -half]),
        monotonic=math.fsum([-smooth, -half]),
        oscillatory=osc,
    )


def landau_sum(z, q_e):
    """sum_{j=0}^{floor(q_e)} g_j (q_e - j)^(-z), g_0 = 1, g_j = 2 (j >= 1).

    Evaluated literally, term by term; equals 2 h_z(z, q_e).total, which
    is the non-obvious identity the tests lean on. For z < 0 an integer
    q_e contributes a vanishing top term; for z > 0 it diverges there
    (ThresholdError).
    """
    if math.isnan(q_e) or math.isinf(q_e):
        raise DomainError("q_e must be finite")
    if q_e < 0.0:
        raise DomainError("q_e must be non-negative")
    if z > 0.0 and q_e - math.floor(q_e) == 0.0:
        raise ThresholdError(f"top level has zero momentum at integer q_e = {q_e}")
    terms = []
    for j in range(int(math.floor(q_e)) + 1):
        g = 1.0 if j == 0 else 2.0
        terms.append(g * (q_e - j) ** (-z))
    return math.fsum(terms)


def landau_sum_inverse_sqrt(q_e):
    """The occupied-level sum at z = 1/2, the density-of-states case.

    This is the sum whose closed form started the whole H_z business:
    sum g_j / sqrt(q_e - j) = 2 h_z(1/2, q_e).total.
    """
    return landau_sum(0.5, q_e)


# (z of the left side, z of the differentiated side, prefactor on the
# derivative). Both identities are instances of d/dq zeta(z,q) = -z zeta(z+1,q)
# filtered through the H_z split.
_DERIVATIVE_LADDER = {
    "half_from_minus_half": (0.5, -0.5, 2.0),
    "minus_half_from_minus_three_half": (-0.5, -1.5, 2.0 / 3.0),
}


def h_derivative_identity_check(q, which):
    """Residual of a d/dq ladder identity between adjacent H_z.

    which = "half_from_minus_half" checks |H_{1/2}(q) - 2 H'_{-1/2}(q)|;
    "minus_half_from_minus_three_half" checks
    |H_{-1/2}(q) - (2/3) H'_{-3/2}(q)|. The derivative is a central
    difference with step h = 1e-6 max(1, q); q must sit at least 10h
    from an integer so the stencil never straddles a level threshold.
    Returns the absolute deviation.
    """
    try:
        z_value, z_deriv, factor = _DERIVATIVE_LADDER[which]
    except KeyError:
        raise DomainError(f"unknown identity {which!r}") from None
    if math.isnan(q) or q <= 0.0:
        raise DomainError("q must be positive")
    h = 1e-6 * max(1.0, q)
    if abs(q - round(q)) < 10.0 * h:
        raise DomainError(f"q = {q} is within 10 steps of an integer threshold")
    value = h_z(z_value, q).total
    derivative = (h_z(z_deriv, q + h).total - h_z(z_deriv, q - h).total) / (2.0 * h)
    return abs(value - factor * derivative)
