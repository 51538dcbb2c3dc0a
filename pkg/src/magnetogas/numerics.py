"""Shared numerical kernels.

Deterministic adaptive quadrature (fixed Gauss 7/15 pair per panel, caller
breakpoints, semi-infinite map), a bracketing root scan, series summation
with an explicit tail bound, and central-difference stencils. Everything is
pure and order-deterministic: identical inputs give bit-identical results.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ToleranceError, TruncationError

# Panel rule: 15-point Gauss value, |G15 - G7| as the error estimate.
# leggauss is deterministic, so the abscissae are identical on every run.
# Both rules are open: panel endpoints are never evaluated, which is what
# lets declared integrable endpoint singularities through.
_X7, _W7 = np.polynomial.legendre.leggauss(7)
_X15, _W15 = np.polynomial.legendre.leggauss(15)
_X7 = tuple(float(x) for x in _X7)
_W7 = tuple(float(w) for w in _W7)
_X15 = tuple(float(x) for x in _X15)
_W15 = tuple(float(w) for w in _W15)


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 4000
    breakpoints: tuple = ()

    def __post_init__(self):
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")


DEFAULT_QUADRATURE = QuadratureSpec()


@dataclass(frozen=True)
class RootSpec:
    bracket: tuple = (0.0, 1.0)
    tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if self.tol <= 0.0 or self.max_iter < 1:
            raise DomainError("root tolerance and iteration cap must be positive")


def _eval_panel(f, a, b):
    """One 7/15 panel on [a, b]: returns (value, error_estimate).

    The raw |G15 - G7| difference systematically undershoots on panels
    holding an integrable singularity (both rules err the same way), so it
    is rescaled against the mean absolute deviation of the integrand, the
    same guard QUADPACK applies.
    """
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fv = [f(mid + half * x) for x in _X15]
    g15 = half * math.fsum(w * v for v, w in zip(fv, _W15))
    g7 = half * math.fsum(w * f(mid + half * x) for x, w in zip(_X7, _W7))
    diff = abs(g15 - g7)
    mean = g15 / (b - a)
    resasc = half * math.fsum(w * abs(v - mean) for v, w in zip(fv, _W15))
    if resasc != 0.0 and diff != 0.0:
        return g15, resasc * min(1.0, (200.0 * diff / resasc) ** 1.5)
    return g15, diff


def integrate(f, a, b, spec=None):
    """Adaptively integrate f over [a, b]; b may be math.inf.

    Returns (value, err). spec.breakpoints force panel edges, which is how
    integrand kinks and declared integrable endpoint singularities get
    isolated; breakpoints outside (a, b) are ignored. The semi-infinite
    range maps through u = 1/(1 + (x - a)). A ToleranceError carrying the
    best estimate is raised when max(abs_tol, rel_tol*|value|) is still not
    met after max_subdivisions panel splits.
    """
    spec = spec if spec is not None else DEFAULT_QUADRATURE
    if math.isnan(a) or math.isnan(b) or math.isinf(a):
        raise DomainError("lower limit must be finite")
    if a == b:
        return 0.0, 0.0
    if b < a:
        raise DomainError("integration range is reversed")

    if math.isinf(b):
        # x = a + (1-u)/u, dx = -du/u^2; u runs over (0, 1], integrated
        # ascending. u = 0 is an endpoint and never evaluated.
        mapped = tuple(sorted(1.0 / (1.0 + (x - a)) for x in spec.breakpoints if x > a))

        def g(u):
            return f(a + (1.0 - u) / u) / (u * u)

        inner = QuadratureSpec(spec.abs_tol, spec.rel_tol, spec.max_subdivisions, mapped)
        return integrate(g, 0.0, 1.0, inner)

    edges = [a]
    for x in sorted(set(spec.breakpoints)):
        if a < x < b:
            edges.append(x)
    edges.append(b)

    # Heap of (-err, seq, left, right, value, err); seq breaks ties so the
    # refinement order is fully deterministic.
    heap = []
    seq = 0
    for left, right in zip(edges[:-1], edges[1:]):
        val, err = _eval_panel(f, left, right)
        heapq.heappush(heap, (-err, seq, left, right, val, err))
        seq += 1

    done = []  # panels too narrow to split further
    splits = 0
    while True:
        vals = [p[4] for p in heap] + [p[4] for p in done]
        errs = [p[5] for p in heap] + [p[5] for p in done]
        value = math.fsum(vals)
        err = math.fsum(errs)
        if err <= max(spec.abs_tol, spec.rel_tol * abs(value)):
            break
        if splits >= spec.max_subdivisions or not heap:
            raise ToleranceError(
                f"quadrature stalled at estimated error {err:.3e} after {splits} splits",
                best_estimate=value,
                error_estimate=err,
            )
        _, _, left, right, val, err_i = heapq.heappop(heap)
        mid = 0.5 * (left + right)
        if not left < mid < right:
            # no representable midpoint: park the panel but keep its error
            # charged, so an unreachable tolerance still surfaces as failure
            done.append((0.0, 0, left, right, val, err_i))
            continue
        for lo, hi in ((left, mid), (mid, right)):
            val, err_i = _eval_panel(f, lo, hi)
            heapq.heappush(heap, (-err_i, seq, lo, hi, val, err_i))
            seq += 1
        splits += 1

    panels = sorted(heap + done, key=lambda p: p[2])
    value = math.fsum(p[4] for p in panels)
    err = math.fsum(p[5] for p in panels)
    return value, err


def find_roots_scan(f, bracket, n_scan, spec=None):
    """Sign-change scan on a uniform grid, then bisection per change.

    Returns roots in ascending order (possibly empty). A jump
    discontinuity through zero converges to the jump location, i.e. the
    lower edge of a staircase riser, which the density inversion relies on.
    """
    spec = spec if spec is not None else RootSpec(bracket=tuple(bracket))
    lo, hi = bracket if bracket is not None else spec.bracket
    if not lo < hi:
        raise DomainError("bracket must satisfy lo < hi")
    if n_scan < 2:
        raise DomainError("n_scan must be at least 2")

    xs = [lo + (hi - lo) * i / n_scan for i in range(n_scan + 1)]
    fs = [f(x) for x in xs]
    roots = []
    for i in range(n_scan):
        f0, f1 = fs[i], fs[i + 1]
        if f0 == 0.0:
            roots.append(xs[i])
            continue
        if f0 * f1 < 0.0:
            x0, x1 = xs[i], xs[i + 1]
            for _ in range(spec.max_iter):
                mid = 0.5 * (x0 + x1)
                if x1 - x0 <= spec.tol * max(1.0, abs(mid)):
                    break
                fm = f(mid)
                if fm == 0.0:
                    x0 = x1 = mid
                    break
                if f0 * fm < 0.0:
                    x1 = mid
                else:
                    x0, f0 = mid, fm
            roots.append(0.5 * (x0 + x1))
    if fs[-1] == 0.0:
        roots.append(xs[-1])

    deduped = []
    for r in roots:
        if not deduped or r - deduped[-1] > 2.0 * spec.tol * max(1.0, abs(r)):
            deduped.append(r)
    return deduped


def sum_with_bound(term, bound, tail_tol, n_start=1, n_cap=200000, min_terms=3):
    """Sum term(n) from n_start upward until bound(n+1) < tail_tol.

    bound(n) must dominate |term(m)| for m >= n eventually; every omitted
    term then has bound below tail_tol. At least min_terms terms are always
    taken. Hitting n_cap first raises TruncationError carrying the partial
    sum.
    """
    if tail_tol <= 0.0:
        raise DomainError("tail_tol must be positive")
    total = 0.0
    n = n_start
    taken = 0
    while True:
        total += term(n)
        taken += 1
        if taken >= min_terms and bound(n + 1) < tail_tol:
            return total
        if taken >= n_cap:
            raise TruncationError(
                f"series bound never fell below {tail_tol:.3e} within {n_cap} terms",
                best_estimate=total,
                error_estimate=bound(n + 1),
            )
        n += 1


def central_difference(f, x, h, order=1):
    """Central finite-difference derivative of order 1, 2 or 4 at x."""
    if h <= 0.0:
        raise DomainError("step must be positive")
    if order == 1:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if order == 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    if order == 4:
        return (f(x + 2.0 * h) - 4.0 * f(x + h) + 6.0 * f(x)
                - 4.0 * f(x - h) + f(x - 2.0 * h)) / h**4
    raise DomainError("order must be 1, 2 or 4")
