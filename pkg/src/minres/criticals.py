"""Critical slopes of a pressure law and of a front/rear pair.

For a single law: u_bar is where p' turns from decreasing to
increasing, u0 maximizes the pressure drop per unit slope
(p(0) - p(u))/u, and B is that maximal drop rate (= -p'(u0)).  Any
optimal profile uses slopes 0 or >= u0 only, so the effective law is
the relaxed one: linear with slope -B up to u0, then p itself.

For a pair: u_star is the front slope at which the front's marginal
drop equals the rear's best drop rate (p_plus'(u_star) = -B_minus);
above it the rear surface starts carrying height.  h_star (d >= 3) is
the aspect ratio at which that transition happens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolated, InvalidParameter, NoConvergence, NotUnimodal
from .numerics import bracket_root, golden_section_max, grow_bracket_upper
from .pressure import PressureModel


@dataclass(frozen=True)
class CriticalValues:
    u_bar: float
    u0: float
    B: float


def _scan_peaks(f, u_max: float):
    """Geometric scan of f on (0, u_max]; returns (grid, values, peaks)."""
    us = []
    u = 1e-6
    while u <= u_max:
        us.append(u)
        u *= 2.0
    us.append(u_max)
    vals = [f(v) for v in us]
    peaks = [i for i in range(1, len(us) - 1)
             if vals[i - 1] < vals[i] >= vals[i + 1]]
    return us, vals, peaks


def critical_values(model: PressureModel, u_max: float = 1e6) -> CriticalValues:
    """Locate (u_bar, u0, B); raises NotUnimodal on multi-peaked laws."""
    if model.is_zero:
        raise InvalidParameter("critical values undefined for the zero law")
    p0 = model.p(0.0)

    def drop_rate(u: float) -> float:
        return (p0 - model.p(u)) / u

    us, vals, peaks = _scan_peaks(drop_rate, u_max)
    if not peaks:
        # maximum at the scan edge: law keeps improving toward 0 or u_max
        raise NotUnimodal("no interior maximum of the drop rate",
                          witnesses=(us[0], us[-1]))
    fmax = max(vals[i] for i in peaks)
    if len(peaks) > 1:
        # a secondary peak is real if the valley between drops below it
        for a, b in zip(peaks, peaks[1:]):
            valley = min(vals[a:b + 1])
            if min(vals[a], vals[b]) - valley > 1e-9 * abs(fmax):
                raise NotUnimodal(
                    "multiple local maxima of the drop rate",
                    witnesses=(us[a], us[b]))
    k = max(peaks, key=lambda i: vals[i])
    u_lo, u_hi = us[k - 1], us[k + 1]
    u_g, _ = golden_section_max(drop_rate, u_lo, u_hi)

    # golden section localizes an interior max only to ~sqrt(eps);
    # polish on the stationarity function s(u) = p(0) - p(u) + u p'(u),
    # which increases through u0.
    def stationarity(u: float) -> float:
        return p0 - model.p(u) + u * model.dp(u)

    width = max(1e-6 * max(1.0, u_g), 1e-9)
    lo, hi = max(u_g - width, 1e-12), u_g + width
    for _ in range(60):
        if stationarity(lo) < 0.0 < stationarity(hi):
            break
        width *= 2.0
        lo = max(lo - width, 1e-12)
        hi += width
    u0 = bracket_root(stationarity, lo, hi)
    B = (p0 - model.p(u0)) / u0

    residual = abs(-model.dp(u0) - B)
    if residual > 1e-9 * max(abs(B), 1e-12):
        raise NoConvergence("stationarity residual too large at u0",
                            bracket=(lo, hi), residual=residual)

    # u_bar: the curvature sign change below u0
    grid = np.geomspace(max(1e-9, u0 * 1e-6), u0, 128)
    d2 = np.array([model.d2p(float(v)) for v in grid])
    neg = np.flatnonzero(d2 < 0.0)
    pos = np.flatnonzero(d2 > 0.0)
    if not (neg.size and pos.size and neg[0] < pos[-1]):
        raise NotUnimodal("no curvature sign change below u0",
                          witnesses=(float(grid[0]), u0))
    last_neg = neg[-1]
    first_pos_after = pos[pos > last_neg][0]
    u_bar = bracket_root(lambda v: model.d2p(v),
                         float(grid[last_neg]), float(grid[first_pos_after]))
    if not u_bar < u0:
        raise NotUnimodal(f"turning point {u_bar} not below u0 {u0}")
    return CriticalValues(u_bar=u_bar, u0=u0, B=B)


def relaxed_p(model: PressureModel, cv: CriticalValues, u: float) -> float:
    """Convexified law: p(0) - B u below u0, p(u) at and above."""
    if u < 0.0:
        raise InvalidParameter(f"slope must be nonnegative, got {u}")
    if u <= cv.u0:
        return model.p(0.0) - cv.B * u
    return model.p(u)


def relaxed_dp(model: PressureModel, cv: CriticalValues, u: float) -> float:
    if u < 0.0:
        raise InvalidParameter(f"slope must be nonnegative, got {u}")
    if u <= cv.u0:
        return -cv.B
    return model.dp(u)


_ZERO_SENTINEL = CriticalValues(u_bar=0.0, u0=math.inf, B=0.0)


@dataclass(frozen=True)
class PairCriticals:
    plus: CriticalValues
    minus: CriticalValues
    u_star: float  # +inf when the rear law is zero
    h_star: float | None  # aspect threshold for a curved rear; d >= 3 only


def pair_criticals(p_plus: PressureModel, p_minus: PressureModel,
                   d: int) -> PairCriticals:
    """Criticals of a front/rear pair plus the shared thresholds.

    Enforces the standing assumptions: B_plus > B_minus and
    p_plus' < p_minus' for u > 0 (sampled).  The zero rear law gets the
    sentinel (u_bar=0, u0=inf, B=0), which makes its relaxed law
    identically zero and pushes u_star (and h_star) to infinity.
    """
    if not (isinstance(d, int) and d >= 2):
        raise InvalidParameter(f"dimension must be an integer >= 2, got {d}")
    if p_plus.is_zero:
        raise InvalidParameter("front pressure law must not be zero")
    plus = critical_values(p_plus)
    minus = _ZERO_SENTINEL if p_minus.is_zero else critical_values(p_minus)

    if not plus.B > minus.B:
        raise AssumptionViolated(
            f"front drop rate {plus.B} must exceed rear drop rate {minus.B}")
    if not p_minus.is_zero:
        # strictness holds only away from 0 (both derivatives vanish there)
        for u in np.geomspace(1e-6, 1e4, 128):
            u = float(u)
            dpp, dpm = p_plus.dp(u), p_minus.dp(u)
            if dpp >= dpm - 1e-14 * max(1.0, abs(dpp), abs(dpm)):
                raise AssumptionViolated(
                    f"p_plus'({u:g})={dpp:g} not below p_minus'({u:g})={dpm:g}",
                    witness=u)

    if minus.B == 0.0:
        u_star: float = math.inf
    else:
        def marginal(u: float) -> float:
            return p_plus.dp(u) + minus.B

        lo, hi = grow_bracket_upper(marginal, plus.u0, max(plus.u0, 1.0))
        u_star = bracket_root(marginal, lo, hi) if lo != hi else lo

    h_star: float | None = None
    if d >= 3:
        if math.isinf(u_star):
            h_star = math.inf
        else:
            from .spatial import GTable  # deferred: spatial depends on this module
            gt = GTable(p_plus, plus, d)
            h_star = u_star - minus.B ** gt.omega * gt.g(u_star)
    return PairCriticals(plus=plus, minus=minus, u_star=u_star, h_star=h_star)
