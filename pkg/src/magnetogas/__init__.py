"""Magnetized relativistic electron gas: Hurwitz zeta engine and thermodynamics."""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    DegeneracyWarning,
    DomainError,
    InputError,
    MagnetogasError,
    PoleError,
    ThresholdError,
    ThresholdWarning,
    ToleranceError,
    TruncationError,
)
from .numerics import (
    QuadratureSpec,
    RootSpec,
    central_difference,
    find_roots_scan,
    integrate,
    sum_with_bound,
)
from .hurwitz import (
    BernoulliTable,
    ZetaEngineConfig,
    ZetaValue,
    bernoulli_number,
    bernoulli_polynomial,
    hurwitz_q_derivative,
    hurwitz_zeta,
    subtracted_zeta,
)
from .hfamily import HValue, h_z, landau_sum, landau_sum_inverse_sqrt
from .gas_zero_t import (
    B0_GAUSS,
    E_CHARGE,
    FINE_STRUCTURE,
    GasPointT0,
    RegimeLabel,
    ThermoResult,
    b_from_gauss,
    cumulative_states,
    density_of_states,
    energy_density,
    fermi_energy_from_density,
    field_gauss,
    grand_potential,
    magnetization,
    magnetization_envelope_t0,
    number_density,
    regime_classify,
)
from .gas_finite_t import (
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
