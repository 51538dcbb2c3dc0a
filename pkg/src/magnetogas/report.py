"""Table rows and delimited output behind the command-line tools.

A row is a dict in fixed column order. Zero temperature reads the energy
argument as the Fermi energy and dispatches to the exact machinery;
finite temperature reads it as the chemical potential and offers the
convolution (quadrature), the smooth Sommerfeld expansion, or the
Sommerfeld plus damped-oscillation series. Pressure is written as the
negated grand potential in the same breath, so P = -omega holds exactly
in every row.
"""

import csv
import json
import math
import warnings

from . import __version__
from .errors import DegeneracyWarning, InputError, ThresholdWarning
from .gas_finite_t import (
    GasPointT,
    OscSeriesSpec,
    convolve_from_t0,
    hump_moment,
    magnetization_finite_t,
    omega_monotonic_derivs,
    omega_osc_finite_t,
    sommerfeld_expansion,
)
from .gas_zero_t import (
    E_CHARGE,
    GasPointT0,
    energy_density,
    grand_potential,
    magnetization,
    number_density,
    regime_classify,
)

CLI_METHODS = (
    "auto",
    "quadrature",
    "small-b",
    "large-filling",
    "brute",
    "sommerfeld",
    "series",
)

_T0_LIB_METHOD = {
    "quadrature": "quadrature",
    "small-b": "small_b_expansion",
    "large-filling": "large_filling_expansion",
    "brute": "brute_force",
}

UNITS_NOTE = (
    "m = 1; energies in electron-mass units; b = 2 e B / m^2 with "
    "e = sqrt(4 pi alpha); n in m^3, omega/P/u in m^4, M in e m^2"
)


def _stencil_provider(of_mu, h=0.02):
    # five-point stencil on a smooth-in-mu quantity; the monotonic parts
    # are analytic across level thresholds so h needs no special care
    def derivs(mu):
        f = [of_mu(mu + k * h) for k in (-2, -1, 0, 1, 2)]
        d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
        d4 = (f[0] - 4 * f[1] + 6 * f[2] - 4 * f[3] + f[4]) / h ** 4
        return f[2], d2, d4

    return derivs


def _smooth_value_and_tail(derivs, pt):
    triple = derivs(pt.mu)
    value = sommerfeld_expansion(lambda _mu: triple, pt)
    t4 = hump_moment(2) / 24.0 * pt.T ** 4 * triple[2]
    # the first dropped term is T^6; score it by the T^4 term times
    # another thermal-window factor
    return value, abs(t4) * (2.0 * math.pi * pt.T) ** 2


def _row_t0(eps_f, b, method):
    pt = GasPointT0(eps_f, b)
    lib = _T0_LIB_METHOD[method]

    nn = number_density(pt, lib if lib != "large_filling_expansion" else "quadrature")
    om = grand_potential(pt, lib)
    if lib == "large_filling_expansion":
        u_value = om.value + eps_f * nn.value
        u_err = om.abs_error_estimate + eps_f * nn.abs_error_estimate
        mm = magnetization_finite_t(GasPointT(eps_f, 0.0, b))
    else:
        uu = energy_density(pt, lib)
        u_value, u_err = uu.value, uu.abs_error_estimate
        mm = magnetization(pt, lib)

    return {
        "eps_f": eps_f,
        "T": 0.0,
        "b": b,
        "n": nn.value,
        "omega": om.value,
        "pressure": -om.value,
        "u": u_value,
        "m_total": mm.value,
        "m_mon": mm.monotonic,
        "m_osc": mm.oscillatory,
        "regime": regime_classify(pt, 0.0).regime,
        "n_err": nn.abs_error_estimate,
        "omega_err": om.abs_error_estimate,
        "u_err": u_err,
        "m_err": mm.abs_error_estimate,
    }


def _row_convolved(mu, T, b):
    pt = GasPointT(mu, T, b)

    def n0(e):
        return number_density(GasPointT0(e, b)).value

    def om0(e):
        return grand_potential(GasPointT0(e, b)).value

    def u0(e):
        return energy_density(GasPointT0(e, b)).value

    cache = {}

    def m0(e, part):
        if e not in cache:
            with warnings.catch_warnings():
                # interior nodes can land on a level edge; the limit from
                # below is the defined value there
                warnings.simplefilter("ignore", ThresholdWarning)
                cache[e] = magnetization(GasPointT0(e, b))
        return getattr(cache[e], part)

    n = convolve_from_t0(n0, pt)
    om = convolve_from_t0(om0, pt)
    u = convolve_from_t0(u0, pt)
    m_mon = convolve_from_t0(lambda e: m0(e, "monotonic"), pt)
    m_osc = convolve_from_t0(lambda e: m0(e, "oscillatory"), pt)

    center_n = number_density(GasPointT0(mu, b))
    center_om = grand_potential(GasPointT0(mu, b))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ThresholdWarning)
        center_m = magnetization(GasPointT0(mu, b))

    def err(v, center):
        return 1e-8 * abs(v) + center.abs_error_estimate

    return {
        "mu": mu,
        "T": T,
        "b": b,
        "n": n,
        "omega": om,
        "pressure": -om,
        "u": u,
        "m_total": m_mon + m_osc,
        "m_mon": m_mon,
        "m_osc": m_osc,
        "regime": regime_classify(GasPointT0(mu, b), T).regime,
        "n_err": err(n, center_n),
        "omega_err": err(om, center_om),
        "u_err": err(u, center_n) + mu * err(n, center_n),
        "m_err": err(m_mon + m_osc, center_m),
    }


def _row_expanded(mu, T, b, with_oscillation, series_spec):
    pt = GasPointT(mu, T, b)
    if not pt.is_degenerate:
        warnings.warn(
            "point is not degenerate; the low-temperature expansion is "
            "outside its domain",
            DegeneracyWarning,
            stacklevel=3,
        )
    p2 = mu * mu - 1.0

    om_mon, om_tail = _smooth_value_and_tail(omega_monotonic_derivs(b), pt)
    n_mon, n_tail = _smooth_value_and_tail(
        _stencil_provider(lambda m: number_density(GasPointT0(m, b)).monotonic), pt
    )
    u_mon, u_tail = _smooth_value_and_tail(
        _stencil_provider(lambda m: energy_density(GasPointT0(m, b)).monotonic), pt
    )

    kwargs = {} if series_spec is None else {"spec": series_spec}
    mm = magnetization_finite_t(pt, **kwargs)

    if with_oscillation:
        om_osc = omega_osc_finite_t(pt, **kwargs)
        # the leading phase derivative ties the density oscillation to
        # the magnetization one: d(phase)/dmu = 2 mu/b per harmonic
        n_osc = -mm.oscillatory * mu * b / (E_CHARGE * p2)
        u_osc = om_osc + mu * n_osc
        m_total, m_osc = mm.value, mm.oscillatory
        # quadratic phase term dropped from every oscillation series
        model = min(1.0, 2.0 * math.pi ** 3 * T * T / b)
    else:
        om_osc = n_osc = u_osc = 0.0
        m_total, m_osc = mm.monotonic, 0.0
        model = 0.0

    return {
        "mu": mu,
        "T": T,
        "b": b,
        "n": n_mon + n_osc,
        "omega": om_mon + om_osc,
        "pressure": -(om_mon + om_osc),
        "u": u_mon + u_osc,
        "m_total": m_total,
        "m_mon": mm.monotonic,
        "m_osc": m_osc,
        "regime": regime_classify(GasPointT0(mu, b), T).regime,
        "n_err": n_tail + abs(n_osc) * model,
        "omega_err": om_tail + abs(om_osc) * model,
        "u_err": u_tail + abs(u_osc) * model,
        "m_err": mm.abs_error_estimate + abs(m_osc) * model,
    }


def eos_row(energy, T, b, method="auto", n_max=None):
    """One equation-of-state row at the given point.

    energy is the Fermi energy at T = 0 and the chemical potential at
    T > 0; the row carries the matching column name. method "auto"
    picks quadrature in the cold case and the damped series otherwise.
    """
    if method not in CLI_METHODS:
        raise InputError(f"unknown method {method!r}")
    series_spec = None if n_max is None else OscSeriesSpec(n_max=n_max)

    if T == 0.0:
        m = method
        if m == "auto":
            m = "quadrature"
        if m == "series":
            return _row_expanded(energy, 0.0, b, True, series_spec)
        if m == "sommerfeld":
            return _row_expanded(energy, 0.0, b, False, series_spec)
        return _row_t0(energy, b, m)

    m = method
    if m == "auto":
        m = "series"
    if m == "quadrature":
        return _row_convolved(energy, T, b)
    if m == "series":
        return _row_expanded(energy, T, b, True, series_spec)
    if m == "sommerfeld":
        return _row_expanded(energy, T, b, False, series_spec)
    raise InputError(f"method {m!r} applies at T = 0 only")


def run_metadata(columns, extra=None):
    meta = {
        "generator": f"magnetogas {__version__}",
        "units": UNITS_NOTE,
        "pressure_convention": "P = -omega exactly, row-wise",
        "columns": ",".join(columns),
    }
    if extra:
        meta.update(extra)
    return meta


def format_cell(v):
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def write_csv(stream, metadata, columns, rows):
    for key, val in metadata.items():
        stream.write(f"# {key} = {val}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(row[c]) for c in columns])


def write_json(stream, metadata, columns, rows):
    doc = {
        "metadata": dict(metadata),
        "rows": [{c: row[c] for c in columns} for row in rows],
    }
    json.dump(doc, stream, indent=2)
    stream.write("\n")


def write_table(stream, fmt, metadata, columns, rows):
    if fmt == "csv":
        write_csv(stream, metadata, columns, rows)
    elif fmt == "json":
        write_json(stream, metadata, columns, rows)
    else:
        raise InputError(f"unknown format {fmt!r}")
