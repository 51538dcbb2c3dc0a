"""Data series behind the six standard plots, plus a PNG renderer.

Each builder returns (metadata, columns, rows). The source material
prints no tick values on these plots, so the spans here are choices;
they are recorded in the metadata and the regression tests assert only
scale-free structure (orderings, periods, monotone segments).
"""

import math
import warnings

from .errors import InputError, ThresholdWarning
from .gas_finite_t import GasPointT, oscillation_envelope_t
from .gas_zero_t import (
    E_CHARGE,
    GasPointT0,
    magnetization,
    magnetization_envelope_t0,
    number_density,
)
from .hurwitz import hurwitz_zeta

SPHERE_GAMMA = 3.0 / (8.0 * math.pi)


def _linspace(a, b, n):
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def _logspace(a, b, n):
    la, lb = math.log10(a), math.log10(b)
    return [10.0 ** (la + (lb - la) * i / (n - 1)) for i in range(n)]


def _figure_1():
    eps_grid = _linspace(1.001, 2.2, 800)
    columns = ["eps_f", "n_b_0.1", "n_b_0.5"]
    rows = []
    for eps in eps_grid:
        rows.append(
            {
                "eps_f": eps,
                "n_b_0.1": number_density(GasPointT0(eps, 0.1)).value,
                "n_b_0.5": number_density(GasPointT0(eps, 0.5)).value,
            }
        )
    meta = {
        "figure": "1",
        "content": "particle density at T = 0 against Fermi energy",
        "parameters": "b = 0.1 (smooth), b = 0.5 (bumpy)",
        "span": "eps_f in [1.001, 2.2], 800 points, linear",
    }
    return meta, columns, rows


def _figure_2():
    b_grid = _linspace(0.052, 1.2, 2400)
    columns = ["b", "n_eps_1.3", "n_eps_1.5"]
    rows = []
    for b in b_grid:
        rows.append(
            {
                "b": b,
                "n_eps_1.3": number_density(GasPointT0(1.3, b)).value,
                "n_eps_1.5": number_density(GasPointT0(1.5, b)).value,
            }
        )
    meta = {
        "figure": "2",
        "content": "particle density at T = 0 against magnetic field",
        "parameters": "eps_f = 1.3 (lower), eps_f = 1.5 (upper)",
        "span": "b in [0.052, 1.2], 2400 points, linear",
    }
    return meta, columns, rows


def _figure_3():
    b_grid = _linspace(1.0, 16.0, 1500)
    columns = [
        "b",
        "m",
        "m_env_lower",
        "m_env_upper",
        "m_env_upper_eps_8",
        "m_env_upper_eps_16",
    ]
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ThresholdWarning)
        for b in b_grid:
            lo4, hi4 = magnetization_envelope_t0(4.0, b)
            rows.append(
                {
                    "b": b,
                    "m": magnetization(GasPointT0(4.0, b), "small_b_expansion").value,
                    "m_env_lower": lo4,
                    "m_env_upper": hi4,
                    "m_env_upper_eps_8": magnetization_envelope_t0(8.0, b)[1],
                    "m_env_upper_eps_16": magnetization_envelope_t0(16.0, b)[1],
                }
            )
    meta = {
        "figure": "3",
        "content": "oscillating magnetization at T = 0 with envelopes",
        "parameters": "eps_f = 4 curve and band; upper envelopes for eps_f = 8, 16",
        "span": "b in [1, 16], 1500 points, linear",
    }
    return meta, columns, rows


def _figure_4():
    t_grid = _logspace(1e-7, 1e-4, 300)
    columns = ["T", "env_b_0.1", "env_b_1", "env_b_10"]
    rows = []
    for T in t_grid:
        rows.append(
            {
                "T": T,
                "env_b_0.1": oscillation_envelope_t(GasPointT(100.0, T, 0.1)),
                "env_b_1": oscillation_envelope_t(GasPointT(100.0, T, 1.0)),
                "env_b_10": oscillation_envelope_t(GasPointT(100.0, T, 10.0)),
            }
        )
    meta = {
        "figure": "4",
        "content": "upper envelope of the magnetization against temperature",
        "parameters": "mu = 100; b = 0.1 (lower), 1 (middle), 10 (upper)",
        "span": "T in [1e-7, 1e-4], 300 points, logarithmic",
    }
    return meta, columns, rows


def _figure_5():
    b_grid = _logspace(0.5, 10.0, 400)
    columns = ["b", "env_T_1e-05", "env_T_1e-07", "m_sphere"]
    rows = []
    for b in b_grid:
        rows.append(
            {
                "b": b,
                "env_T_1e-05": oscillation_envelope_t(GasPointT(100.0, 1e-5, b)),
                "env_T_1e-07": oscillation_envelope_t(GasPointT(100.0, 1e-7, b)),
                "m_sphere": SPHERE_GAMMA * b / (2.0 * E_CHARGE),
            }
        )
    meta = {
        "figure": "5",
        "content": "upper envelope of the magnetization against field",
        "parameters": (
            "mu = 100; T = 1e-5 (lower), 1e-7 (upper); dashed line "
            "M = (3/8 pi) B for a uniformly magnetized sphere"
        ),
        "span": "b in [0.5, 10], 400 points, logarithmic",
    }
    return meta, columns, rows


def _figure_6():
    q_grid = _linspace(0.0, 4.0, 801)
    columns = ["q", "zeta_-0.5", "zeta_-1.5", "zeta_-2.5"]
    rows = []
    for q in q_grid:
        frac = q - math.floor(q)
        rows.append(
            {
                "q": q,
                "zeta_-0.5": hurwitz_zeta(-0.5, frac).value,
                "zeta_-1.5": hurwitz_zeta(-1.5, frac).value,
                "zeta_-2.5": hurwitz_zeta(-2.5, frac).value,
            }
        )
    meta = {
        "figure": "6",
        "content": "zeta(z, {q}) against q",
        "parameters": "z = -1/2 (large), -3/2 (medium), -5/2 (small amplitude)",
        "span": "q in [0, 4], 801 points, linear",
    }
    return meta, columns, rows


_BUILDERS = {
    1: _figure_1,
    2: _figure_2,
    3: _figure_3,
    4: _figure_4,
    5: _figure_5,
    6: _figure_6,
}

_AXES = {
    1: ("eps_f", "n", "linear", "linear"),
    2: ("b", "n", "linear", "linear"),
    3: ("b", "M", "linear", "linear"),
    4: ("T", "envelope of M", "log", "log"),
    5: ("b", "envelope of M", "log", "log"),
    6: ("q", "zeta(z, {q})", "linear", "linear"),
}


def figure_data(n):
    """Build the data behind plot n (1..6)."""
    if n not in _BUILDERS:
        raise InputError(f"figure number must be 1..6, got {n}")
    return _BUILDERS[n]()


def render_png(path, n, columns, rows):
    """Draw the data series to a PNG next to the emitted table."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xlabel, ylabel, xscale, yscale = _AXES[n]
    x = [row[columns[0]] for row in rows]
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for name in columns[1:]:
        style = "--" if name == "m_sphere" else "-"
        ax.plot(x, [row[name] for row in rows], style, label=name, linewidth=1.0)
    ax.set_xscale(xscale)
    ax.set_yscale(yscale)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
