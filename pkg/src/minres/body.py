"""Problem description and the geometric data model for solutions.

A body of revolution with radius T and height H is described by two
monotone profiles on the radial interval [0, T]: the front surface
measured down from the top and the rear surface measured up from the
base.  Each profile is a tiling of flat spans, straight spans, and
sampled parametric arcs; x(0) = 0 and x(T) = beta is the height that
surface carries, with beta_front + beta_rear = H.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

from .errors import InvalidParameter
from .pressure import PressureModel

# case labels reported by the solvers
FLAT_DISK = "FlatDisk"
FRONT_TRAPEZIUM = "FrontTrapezium"
FRONT_TRIANGLE = "FrontTriangle"
TRIANGLE_OVER_TRAPEZIUM = "TriangleOverTrapezium"
DOUBLE_TRIANGLE = "DoubleTriangle"
SPATIAL = "Spatial"


def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball in R^n."""
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


@dataclass(frozen=True)
class ProblemSpec:
    d: int
    T: float
    H: float
    p_plus: PressureModel
    p_minus: PressureModel
    include_ball_volume: bool = False

    def __post_init__(self):
        if not (isinstance(self.d, int) and self.d >= 2):
            raise InvalidParameter(
                f"dimension must be an integer >= 2, got {self.d!r}")
        if not (isinstance(self.T, (int, float)) and math.isfinite(self.T)
                and self.T > 0.0):
            raise InvalidParameter(f"T must be positive finite, got {self.T!r}")
        if not (isinstance(self.H, (int, float)) and math.isfinite(self.H)
                and self.H >= 0.0):
            raise InvalidParameter(
                f"H must be nonnegative finite, got {self.H!r}")
        if self.p_plus.is_zero:
            raise InvalidParameter("front pressure law must not be zero")

    @property
    def resistance_factor(self) -> float:
        """Multiplier applied to all reported resistances."""
        return unit_ball_volume(self.d - 1) if self.include_ball_volume else 1.0


@dataclass(frozen=True)
class Flat:
    t_from: float
    t_to: float

    @property
    def slope(self) -> float:
        return 0.0


@dataclass(frozen=True)
class Linear:
    t_from: float
    t_to: float
    slope: float


@dataclass(frozen=True)
class ParamArc:
    """Sampled strictly convex span: (t, x, u) triples, t ascending.

    x values are absolute profile heights and u is the exact slope at
    each sample, so quadrature on an arc needs no re-derivation.
    """

    samples: tuple  # of (t, x, u)

    @property
    def t_from(self) -> float:
        return self.samples[0][0]

    @property
    def t_to(self) -> float:
        return self.samples[-1][0]


Segment = Flat | Linear | ParamArc

_TILE_TOL = 1e-9


@dataclass(frozen=True)
class Profile:
    """Monotone profile x(t) on [0, T] built from tiled segments."""

    T: float
    segments: tuple
    beta: float
    _starts: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if not self.segments:
            raise InvalidParameter("profile needs at least one segment")
        cursor = 0.0
        x = 0.0
        starts = []
        for seg in self.segments:
            if abs(seg.t_from - cursor) > _TILE_TOL * max(1.0, self.T):
                raise InvalidParameter(
                    f"segments do not tile [0, T]: gap at t={seg.t_from}")
            if seg.t_to < seg.t_from:
                raise InvalidParameter("segment runs backwards")
            starts.append(x)
            x += _segment_rise(seg)
            cursor = seg.t_to
        if abs(cursor - self.T) > _TILE_TOL * max(1.0, self.T):
            raise InvalidParameter(
                f"segments end at t={cursor}, expected T={self.T}")
        if abs(x - self.beta) > 1e-6 * max(1.0, abs(self.beta)):
            raise InvalidParameter(
                f"segment rises sum to {x}, expected beta={self.beta}")
        object.__setattr__(self, "_starts", tuple(starts))

    def _locate(self, t: float) -> int:
        if not (-_TILE_TOL <= t <= self.T * (1.0 + _TILE_TOL) + _TILE_TOL):
            raise InvalidParameter(f"t={t} outside [0, {self.T}]")
        # bisect_right on segment ends gives right-continuity at kinks
        ends = [seg.t_to for seg in self.segments]
        i = bisect.bisect_right(ends, t)
        return min(i, len(self.segments) - 1)

    def x_at(self, t: float) -> float:
        i = self._locate(t)
        seg = self.segments[i]
        x0 = self._starts[i]
        if isinstance(seg, Flat):
            return x0
        if isinstance(seg, Linear):
            return x0 + seg.slope * (t - seg.t_from)
        return _arc_interp(seg, t, 1)

    def slope_at(self, t: float) -> float:
        """Right-continuous slope (at T: the final slope)."""
        i = self._locate(t)
        seg = self.segments[i]
        if isinstance(seg, Flat):
            return 0.0
        if isinstance(seg, Linear):
            return seg.slope
        return _arc_interp(seg, t, 2)

    def slope_if_unambiguous(self, t: float) -> float | None:
        """As slope_at, but None at interior kinks (one-sided slopes differ)."""
        i = self._locate(t)
        seg = self.segments[i]
        eps = _TILE_TOL * max(1.0, self.T)
        if i > 0 and abs(t - seg.t_from) <= eps:
            prev = self.segments[i - 1]
            left = _segment_end_slope(prev)
            right = _segment_start_slope(seg)
            if abs(left - right) > 1e-9 * max(1.0, abs(left), abs(right)):
                return None
        return self.slope_at(t)

    def max_slope(self) -> float:
        worst = 0.0
        for seg in self.segments:
            if isinstance(seg, Linear):
                worst = max(worst, seg.slope)
            elif isinstance(seg, ParamArc):
                worst = max(worst, max(s[2] for s in seg.samples))
        return worst

    def is_convex(self, tol: float = 1e-9) -> bool:
        """Whether slopes are nondecreasing along the profile."""
        prev = -math.inf
        for seg in self.segments:
            if isinstance(seg, ParamArc):
                for _, _, u in seg.samples:
                    if u < prev - tol:
                        return False
                    prev = u
            else:
                s = seg.slope if isinstance(seg, Linear) else 0.0
                if s < prev - tol:
                    return False
                prev = s
        return True


def _segment_rise(seg: Segment) -> float:
    if isinstance(seg, Flat):
        return 0.0
    if isinstance(seg, Linear):
        return seg.slope * (seg.t_to - seg.t_from)
    return seg.samples[-1][1] - seg.samples[0][1]


def _segment_start_slope(seg: Segment) -> float:
    if isinstance(seg, Flat):
        return 0.0
    if isinstance(seg, Linear):
        return seg.slope
    return seg.samples[0][2]


def _segment_end_slope(seg: Segment) -> float:
    if isinstance(seg, Flat):
        return 0.0
    if isinstance(seg, Linear):
        return seg.slope
    return seg.samples[-1][2]


def _arc_interp(arc: ParamArc, t: float, col: int) -> float:
    pts = arc.samples
    if t <= pts[0][0]:
        return pts[0][col]
    if t >= pts[-1][0]:
        return pts[-1][col]
    ts = [s[0] for s in pts]
    j = bisect.bisect_right(ts, t)
    t0, t1 = pts[j - 1][0], pts[j][0]
    v0, v1 = pts[j - 1][col], pts[j][col]
    if t1 == t0:
        return v1
    w = (t - t0) / (t1 - t0)
    return v0 + w * (v1 - v0)


def flat_profile(T: float) -> Profile:
    return Profile(T=T, segments=(Flat(0.0, T),), beta=0.0)


@dataclass(frozen=True)
class BodySolution:
    spec: ProblemSpec
    case_label: str
    front: Profile
    rear: Profile
    beta_plus: float
    beta_minus: float
    lambda_plus: float | None
    lambda_minus: float | None
    R_plus: float
    R_minus: float
    R_total: float
    U_plus: float | None = None
    U_minus: float | None = None
