"""Independent optimality certificates.

Three checks that never reuse the solvers' case analysis:

* check_maximality: a solved branch must minimize
  h_t(u) = t^{d-2} p(u) + lambda u pointwise in u for almost every
  radius t; sampled over a (t, u) grid.
* brute_force: dynamic program over monotone step profiles on an exact
  height grid (no convexity assumed); its best value can only sit above
  the analytic optimum by discretization slack.
* resistance_quadrature: evaluates the resistance functional on
  arbitrary profiles (exact on flat/straight spans, Simpson on arcs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .body import Flat, Linear, ParamArc, Profile, ProblemSpec
from .criticals import critical_values, relaxed_p
from .errors import InfeasibleGrid, InvalidParameter, QuadratureFailure
from .pressure import PressureModel


def _branch_model(spec: ProblemSpec, branch: str) -> PressureModel:
    if branch == "front":
        return spec.p_plus
    if branch == "rear":
        return spec.p_minus
    raise InvalidParameter(f"branch must be 'front' or 'rear', got {branch!r}")


@dataclass(frozen=True)
class MaximalityReport:
    lam: float
    worst_violation: float
    witness_t: float
    witness_u: float
    scale: float
    passed: bool


def check_maximality(spec: ProblemSpec, branch: str, profile: Profile,
                     lam: float, n_t: int = 64, n_u: int = 256,
                     u_max: float | None = None) -> MaximalityReport:
    """Sampled Pontryagin check of one branch against its multiplier.

    For each sampled radius t in (0, T], the profile's slope must
    minimize h_t(u) = t^{d-2} p(u) + lam u over the slope grid.  The
    reported violation is max_t [h_t(slope(t)) - min_u h_t(u)], and the
    pass threshold is 1e-8 * scale with scale = 1 + max |h_t| over the
    scan (h_t carries no natural unit of its own, so the grid maximum
    provides one).
    """
    if not (math.isfinite(lam) and lam > 0.0):
        raise InvalidParameter(f"multiplier must be positive, got {lam}")
    if n_t < 2 or n_u < 8:
        raise InvalidParameter("need n_t >= 2 and n_u >= 8")
    model = _branch_model(spec, branch)
    T, d = spec.T, spec.d
    if u_max is None:
        u_max = 4.0 * max(1.0, profile.max_slope())

    u_grid = np.concatenate(([0.0], np.geomspace(u_max * 1e-6, u_max,
                                                 n_u - 1)))
    p_vals = np.array([model.p(float(u)) for u in u_grid])
    t_grid = T * (np.arange(1, n_t + 1) / n_t)

    worst = -math.inf
    wit_t = wit_u = 0.0
    scale = 1.0
    for t in t_grid:
        t = float(t)
        w = t ** (d - 2)
        h_grid = w * p_vals + lam * u_grid
        scale = max(scale, 1.0 + float(np.max(np.abs(h_grid))))
        k = int(np.argmin(h_grid))
        slope = profile.slope_at(t)
        h_prof = w * model.p(slope) + lam * slope
        violation = h_prof - float(h_grid[k])
        if violation > worst:
            worst = violation
            wit_t, wit_u = t, float(u_grid[k])
    return MaximalityReport(lam=lam, worst_violation=worst,
                            witness_t=wit_t, witness_u=wit_u, scale=scale,
                            passed=worst <= 1e-8 * scale)


@dataclass(frozen=True)
class BruteForceResult:
    n_cells: int
    n_heights: int
    u_cap: float
    best_value: float
    best_profile: tuple  # slope per radial cell
    analytic_value: float
    gap: float  # best_value - analytic_value


def _analytic_branch_value(spec: ProblemSpec, branch: str,
                           beta: float) -> float:
    """Optimal branch resistance, solved independently of the DP."""
    model = _branch_model(spec, branch)
    T, d = spec.T, spec.d
    factor = spec.resistance_factor
    if model.is_zero:
        return 0.0
    if d == 2:
        cv = critical_values(model)
        return factor * T * relaxed_p(model, cv, beta / T)
    from .spatial import GTable, resistance_branch, solve_height_for_U
    cv = critical_values(model)
    gt = GTable(model, cv, d)
    ex = solve_height_for_U(gt, beta / T, T)
    return factor * resistance_branch(gt, ex, T, d)


def brute_force(spec: ProblemSpec, branch: str, beta: float,
                n_cells: int = 200, n_heights: int = 400,
                u_cap: float | None = None) -> BruteForceResult:
    """Exact DP over monotone step profiles on the (cells x heights) grid.

    Profiles are nondecreasing with x(T) = beta hit exactly on the
    height grid; convexity is not enforced.  The value is the true
    minimum of the discretized class, so gap >= 0 up to roundoff and
    shrinks as the grid refines.
    """
    if branch not in ("front", "rear"):
        raise InvalidParameter(f"branch must be 'front' or 'rear', got {branch!r}")
    if not (1 <= n_cells <= 2000 and 1 <= n_heights <= 2000):
        raise InvalidParameter("grid dimensions must be in [1, 2000]")
    if beta < 0.0 or not math.isfinite(beta):
        raise InvalidParameter(f"beta must be nonnegative finite, got {beta}")
    model = _branch_model(spec, branch)
    T, d = spec.T, spec.d
    factor = spec.resistance_factor
    analytic = _analytic_branch_value(spec, branch, beta)

    dt = T / n_cells
    edges = np.arange(n_cells + 1) * dt
    weights = edges[1:] ** (d - 1) - edges[:-1] ** (d - 1)

    if beta == 0.0:
        value = factor * model.p(0.0) * T ** (d - 1)
        return BruteForceResult(n_cells=n_cells, n_heights=n_heights,
                                u_cap=u_cap if u_cap is not None else 0.0,
                                best_value=value,
                                best_profile=(0.0,) * n_cells,
                                analytic_value=analytic,
                                gap=value - analytic)

    if u_cap is None:
        # wide enough for every slope the analytic solution can use:
        # flat-cap corners sit at u0 and steep branches at ~beta/T
        u0 = 0.0 if model.is_zero else critical_values(model).u0
        u_cap = 4.0 * max(1.0, beta / T, u0)
    dx = beta / n_heights
    m_max = min(n_heights, int(u_cap * dt / dx * (1.0 + 1e-12)))
    if m_max < 1 or m_max * n_cells < n_heights:
        raise InfeasibleGrid(
            f"slope cap {u_cap} cannot reach beta={beta} on this grid")

    steps = np.arange(m_max + 1)
    p_step = np.array([model.p(float(m * dx / dt)) for m in steps])

    K = n_heights + 1
    idx = np.subtract.outer(np.arange(K), np.arange(K))  # k' - k
    valid = (idx >= 0) & (idx <= m_max)
    p_mat = np.where(valid, p_step[np.clip(idx, 0, m_max)], np.inf)

    J = np.full(K, np.inf)
    J[0] = 0.0
    choices = np.empty((n_cells, K), dtype=np.int32)
    for i in range(n_cells):
        cand = J[np.newaxis, :] + weights[i] * p_mat
        choices[i] = np.argmin(cand, axis=1)
        J = cand[np.arange(K), choices[i]]
    best = float(J[n_heights])
    if not math.isfinite(best):
        raise InfeasibleGrid("no admissible step profile on this grid")

    slopes = []
    k = n_heights
    for i in range(n_cells - 1, -1, -1):
        k_prev = int(choices[i][k])
        slopes.append((k - k_prev) * dx / dt)
        k = k_prev
    slopes.reverse()

    best *= factor
    return BruteForceResult(n_cells=n_cells, n_heights=n_heights, u_cap=u_cap,
                            best_value=best, best_profile=tuple(slopes),
                            analytic_value=analytic, gap=best - analytic)


def _arc_quadrature(model: PressureModel, arc: ParamArc, d: int,
                    stride: int = 1) -> float:
    """Integral of p(u(t)) d(t^{d-1}) over the arc's stored samples.

    Quadratic through consecutive sample triples (non-uniform Simpson);
    u is exact at samples so the only error is the quadrature rule's.
    """
    pts = arc.samples[::stride]
    if pts[-1] != arc.samples[-1]:
        pts = tuple(pts) + (arc.samples[-1],)
    if len(pts) < 3:
        raise QuadratureFailure("arc needs at least 3 samples")
    ts = np.array([p[0] for p in pts])
    fs = np.array([model.p(p[2]) * (d - 1) * p[0] ** (d - 2) for p in pts])
    total = 0.0
    i = 0
    n = len(pts) - 1  # intervals
    while i < n:
        if i + 2 <= n:
            t0, t1, t2 = ts[i], ts[i + 1], ts[i + 2]
            f0, f1, f2 = fs[i], fs[i + 1], fs[i + 2]
            h0, h1 = t1 - t0, t2 - t1
            if h0 <= 0.0 or h1 <= 0.0:
                i += 1
                continue
            total += ((h0 + h1) / 6.0
                      * ((2.0 - h1 / h0) * f0
                         + (h0 + h1) ** 2 / (h0 * h1) * f1
                         + (2.0 - h0 / h1) * f2))
            i += 2
        else:
            # single leftover interval: quadratic through the last triple
            t0, t1, t2 = ts[i - 1], ts[i], ts[i + 1]
            f0, f1, f2 = fs[i - 1], fs[i], fs[i + 1]
            total += _quad_segment(t0, t1, t2, f0, f1, f2, t1, t2)
            i += 1
    return total


def _quad_segment(t0, t1, t2, f0, f1, f2, a, b) -> float:
    """Integral over [a, b] of the quadratic through three nodes."""
    denom0 = (t0 - t1) * (t0 - t2)
    denom1 = (t1 - t0) * (t1 - t2)
    denom2 = (t2 - t0) * (t2 - t1)

    def antiderivative(x):
        total = 0.0
        for f, c, o1, o2 in ((f0, denom0, t1, t2), (f1, denom1, t0, t2),
                             (f2, denom2, t0, t1)):
            total += f / c * (x ** 3 / 3.0 - (o1 + o2) * x * x / 2.0
                              + o1 * o2 * x)
        return total

    return antiderivative(b) - antiderivative(a)


def resistance_quadrature(spec: ProblemSpec, branch: str,
                          profile: Profile) -> float:
    """Resistance of one branch of an arbitrary admissible profile.

    Exact segment sums on flat/straight spans.  On arcs, a coarse/fine
    Richardson estimate certifies 1e-9*(1+|value|); denser arc samples
    buy more accuracy.
    """
    model = _branch_model(spec, branch)
    if model.is_zero:
        return 0.0
    d = spec.d
    total = 0.0
    for seg in profile.segments:
        if isinstance(seg, ParamArc):
            fine = _arc_quadrature(model, seg, d, stride=1)
            coarse = _arc_quadrature(model, seg, d, stride=2)
            est = abs(fine - coarse) / 15.0
            if est > 1e-9 * (1.0 + abs(fine)):
                raise QuadratureFailure(
                    f"arc quadrature error estimate {est:g} too large; "
                    "sample the arc more densely")
            total += fine
        else:
            slope = seg.slope if isinstance(seg, Linear) else 0.0
            total += model.p(slope) * (seg.t_to ** (d - 1)
                                       - seg.t_from ** (d - 1))
    return spec.resistance_factor * total
