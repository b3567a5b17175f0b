"""Exact 2-D convex-polygon arithmetic for rate regions.

A region is stored by its vertex polygon: counterclockwise, first quadrant,
starting at the lexicographically smallest vertex (the origin whenever the
region is nonempty, since all regions here are downward closed).  Half-planes
are input-only.  Geometric tolerances: 1e-9 absolute for feasibility, 1e-12
for collinearity pruning; rates are O(10) bits so absolute tolerances are
safe at this scale.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

FEAS_TOL = 1e-9
COLLINEAR_TOL = 1e-12


class UnboundedRegionError(Exception):
    """The half-plane intersection is unbounded inside the first quadrant."""


class EmptyRegionError(Exception):
    """Operation requires a nonempty region."""


class RatePair(NamedTuple):
    r_a: float
    r_b: float


@dataclass(frozen=True)
class HalfPlane:
    """The inequality coef_a * R_a + coef_b * R_b <= rhs."""

    coef_a: float
    coef_b: float
    rhs: float

    def __post_init__(self) -> None:
        for name in ("coef_a", "coef_b", "rhs"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.coef_a == 0.0 and self.coef_b == 0.0:
            raise ValueError("half-plane normal must be nonzero")


@dataclass(frozen=True)
class RateRegion:
    """Convex polygon of achievable rate pairs; may be empty or degenerate."""

    vertices: Tuple[RatePair, ...]

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _dedupe(points: Sequence[Tuple[float, float]], tol: float) -> List[Tuple[float, float]]:
    out: List[Tuple[float, float]] = []
    for p in sorted(set(points)):
        # scan the whole trailing window within tol in x: near-duplicates
        # need not be adjacent in lexicographic order
        dup = False
        for q in reversed(out):
            if q[0] < p[0] - tol:
                break
            if abs(p[1] - q[1]) <= tol:
                dup = True
                break
        if not dup:
            out.append(p)
    return out


def _prune_collinear(hull: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    # drop vertices closer than COLLINEAR_TOL (perpendicular distance) to the
    # chord through their neighbors; distance-based so that ulp-length edges
    # cannot mask a genuine corner
    changed = True
    while changed and len(hull) > 2:
        changed = False
        for i in range(len(hull)):
            u = hull[i - 1]
            v = hull[i]
            w = hull[(i + 1) % len(hull)]
            chord = math.hypot(w[0] - u[0], w[1] - u[1])
            if chord <= COLLINEAR_TOL or abs(_cross(u, w, v)) / chord <= COLLINEAR_TOL:
                del hull[i]
                changed = True
                break
    return hull


def _hull(points: Sequence[Tuple[float, float]]) -> List[Tuple[float, float]]:
    """Andrew's monotone chain; CCW order starting at the lexicographic
    minimum, collinear vertices pruned by distance afterwards."""
    pts = _dedupe(points, FEAS_TOL)
    if len(pts) <= 2:
        return pts
    lower: List[Tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: List[Tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) <= 2:
        return hull
    pruned = _prune_collinear(hull)
    # rotation may change after pruning; restart at the lexicographic minimum
    start = min(range(len(pruned)), key=lambda i: pruned[i])
    return pruned[start:] + pruned[:start]


def _normalized(plane: HalfPlane) -> Tuple[float, float, float]:
    n = math.hypot(plane.coef_a, plane.coef_b)
    return plane.coef_a / n, plane.coef_b / n, plane.rhs / n


def _check_bounded(planes: Sequence[Tuple[float, float, float]]) -> None:
    # Unbounded iff the recession cone {d >= 0, coef . d <= 0 for all planes}
    # contains a nonzero direction; for a 2-D cone it suffices to test the
    # quadrant axes and each plane's boundary directions.
    candidates = [(1.0, 0.0), (0.0, 1.0)]
    for ca, cb, _ in planes:
        candidates.extend([(-cb, ca), (cb, -ca)])
    for dx, dy in candidates:
        norm = math.hypot(dx, dy)
        if norm <= 0.0:
            continue
        dx, dy = dx / norm, dy / norm
        if dx < -1e-12 or dy < -1e-12:
            continue
        if all(ca * dx + cb * dy <= FEAS_TOL for ca, cb, _ in planes):
            raise UnboundedRegionError(
                f"region is unbounded in direction ({dx:.6g}, {dy:.6g})"
            )


def region_from_halfplanes(planes: Sequence[HalfPlane]) -> RateRegion:
    """Vertex polygon of {(R_a, R_b) >= 0} intersected with all half-planes.

    Raises UnboundedRegionError when the intersection is unbounded; an empty
    interior yields the empty polygon (not an error).
    """
    if not planes:
        raise ValueError("need at least one half-plane")
    scaled = [_normalized(p) for p in planes]
    _check_bounded(scaled)
    # axis constraints -R_a <= 0, -R_b <= 0
    allp = scaled + [(-1.0, 0.0, 0.0), (0.0, -1.0, 0.0)]

    feasible: List[Tuple[float, float]] = []
    for i in range(len(allp)):
        ai, bi, ri = allp[i]
        for j in range(i + 1, len(allp)):
            aj, bj, rj = allp[j]
            det = ai * bj - aj * bi
            if abs(det) < 1e-12:
                continue
            x = (ri * bj - rj * bi) / det
            y = (ai * rj - aj * ri) / det
            if all(ca * x + cb * y <= rhs + FEAS_TOL for ca, cb, rhs in allp):
                feasible.append((max(x, 0.0) + 0.0, max(y, 0.0) + 0.0))
    if not feasible:
        return RateRegion(vertices=())
    hull = _hull(feasible)
    return RateRegion(vertices=tuple(RatePair(x, y) for x, y in hull))


def _point_segment_dist(p, a, b) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom <= 0.0:
        return math.hypot(px - ax, py - ay)
    t = max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / denom))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def contains(region: RateRegion, p: RatePair, tol: float = FEAS_TOL) -> bool:
    """True iff p satisfies every edge inequality of the region within tol
    (tol is an absolute distance)."""
    v = region.vertices
    if len(v) == 0:
        return False
    if len(v) == 1:
        return math.hypot(p[0] - v[0][0], p[1] - v[0][1]) <= tol
    if len(v) == 2:
        return _point_segment_dist(p, v[0], v[1]) <= tol
    for i in range(len(v)):
        a = v[i]
        b = v[(i + 1) % len(v)]
        edge = math.hypot(b[0] - a[0], b[1] - a[1])
        if _cross(a, b, p) / edge < -tol:
            return False
    return True


def hull_union(regions: Sequence[RateRegion]) -> RateRegion:
    """Convex hull of the union of regions (time-sharing between them)."""
    if not regions:
        raise ValueError("need at least one region")
    points = [tuple(v) for r in regions for v in r.vertices]
    if not points:
        return RateRegion(vertices=())
    hull = _hull(points)
    return RateRegion(vertices=tuple(RatePair(x, y) for x, y in hull))


def max_weighted_rate(region: RateRegion, mu: float) -> Tuple[float, RatePair]:
    """Maximize mu*R_a + (1-mu)*R_b over the region's vertices.

    Ties are broken toward larger R_a, then larger R_b.
    """
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must be in [0, 1], got {mu!r}")
    if region.is_empty:
        raise EmptyRegionError("cannot maximize over an empty region")
    best = max(region.vertices, key=lambda v: (mu * v.r_a + (1.0 - mu) * v.r_b, v.r_a, v.r_b))
    return mu * best.r_a + (1.0 - mu) * best.r_b, best


def exists_point_outside(
    a: RateRegion, b: RateRegion, tol: float = FEAS_TOL
) -> Optional[RatePair]:
    """First vertex of `a` (in vertex-list order) lying outside `b` by more
    than tol, or None; None implies a is contained in b, by convexity."""
    for v in a.vertices:
        if not contains(b, v, tol):
            return v
    return None


def region_to_csv(region: RateRegion) -> str:
    """CSV form: header r_a,r_b then one vertex per row, counterclockwise.
    Values carry 17 significant digits so the round trip is bit exact."""
    lines = ["r_a,r_b"]
    for v in region.vertices:
        lines.append(f"{v.r_a:.17g},{v.r_b:.17g}")
    return "\n".join(lines) + "\n"


def region_from_csv(text: str) -> RateRegion:
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != "r_a,r_b":
        raise ValueError("expected header 'r_a,r_b'")
    verts = []
    for ln in lines[1:]:
        ra, rb = ln.split(",")
        verts.append(RatePair(float(ra), float(rb)))
    return RateRegion(vertices=tuple(verts))


def region_to_json(region: RateRegion) -> str:
    return json.dumps([[v.r_a, v.r_b] for v in region.vertices])


def region_from_json(text: str) -> RateRegion:
    pairs = json.loads(text)
    return RateRegion(vertices=tuple(RatePair(float(a), float(b)) for a, b in pairs))
