"""Linear programming over phase durations.

A dense two-phase tableau simplex (Bland's anti-cycling rule, pivot
tolerance 1e-11) solves the joint maximization over (Delta, R_a, R_b); a
weighted-rate sweep over the objective recovers the optimized-schedule
region exactly at its vertices, since the feasible set is jointly linear in
(Delta, R) and projects to a convex polygon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .channel_model import MITable, Protocol
from .protocol_bounds import BoundKind, PhaseSchedule, build_constraints
from .rate_region import RatePair, RateRegion, hull_union

PIVOT_TOL = 1e-11
FEAS_TOL = 1e-9


@dataclass(frozen=True)
class LinearProgram:
    """max objective . x  s.t.  a_ub x <= b_ub,  a_eq x = b_eq,  x >= 0."""

    objective: Tuple[float, ...]
    a_ub: Tuple[Tuple[float, ...], ...]
    b_ub: Tuple[float, ...]
    a_eq: Tuple[Tuple[float, ...], ...]
    b_eq: Tuple[float, ...]

    def __post_init__(self) -> None:
        n = len(self.objective)
        for row in self.a_ub:
            if len(row) != n:
                raise ValueError("inequality row dimension mismatch")
        for row in self.a_eq:
            if len(row) != n:
                raise ValueError("equality row dimension mismatch")
        if len(self.a_ub) != len(self.b_ub) or len(self.a_eq) != len(self.b_eq):
            raise ValueError("constraint right-hand-side length mismatch")


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: float
    x: Tuple[float, ...]


def _pivot(t: np.ndarray, row: int, col: int) -> None:
    t[row] /= t[row, col]
    for i in range(t.shape[0]):
        if i != row and t[i, col] != 0.0:
            t[i] -= t[i, col] * t[row]


def _bland_iterate(t: np.ndarray, basis: List[int], ncols: int, allowed) -> str:
    """Run simplex pivots on tableau t (last row = z_j - c_j form, last
    column = rhs) until optimal or unbounded."""
    m = t.shape[0] - 1
    while True:
        enter = -1
        for j in range(ncols):
            if allowed[j] and t[-1, j] < -PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = math.inf
        for i in range(m):
            if t[i, enter] > PIVOT_TOL:
                ratio = t[i, -1] / t[i, enter]
                if ratio < best - PIVOT_TOL or (
                    abs(ratio - best) <= PIVOT_TOL
                    and (leave < 0 or basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(t, leave, enter)
        basis[leave] = enter


def simplex_solve(lp: LinearProgram) -> LpSolution:
    """Deterministic two-phase simplex; infeasible/unbounded are reported in
    the status, never raised."""
    n = len(lp.objective)
    rows: List[Tuple[np.ndarray, float, bool]] = []
    for a, b in zip(lp.a_ub, lp.b_ub):
        rows.append((np.asarray(a, dtype=float), float(b), False))
    for a, b in zip(lp.a_eq, lp.b_eq):
        rows.append((np.asarray(a, dtype=float), float(b), True))
    m = len(rows)

    n_slack = sum(1 for _, _, is_eq in rows if not is_eq)
    # artificials: equality rows and inequality rows with negative rhs
    art_rows = [i for i, (_, b, is_eq) in enumerate(rows) if is_eq or b < 0.0]
    n_art = len(art_rows)
    ncols = n + n_slack + n_art

    t = np.zeros((m + 1, ncols + 1))
    basis: List[int] = [0] * m
    slack_idx = 0
    art_idx = 0
    for i, (a, b, is_eq) in enumerate(rows):
        coeffs = a.copy()
        if b < 0.0:
            coeffs = -coeffs
            b = -b
            slack_sign = -1.0
        else:
            slack_sign = 1.0
        t[i, :n] = coeffs
        if not is_eq:
            t[i, n + slack_idx] = slack_sign
            if slack_sign > 0:
                basis[i] = n + slack_idx
            slack_idx += 1
        if i in art_rows:
            col = n + n_slack + art_idx
            t[i, col] = 1.0
            basis[i] = col
            art_idx += 1
        t[i, -1] = b

    allowed = [True] * ncols

    if n_art:
        # phase 1: minimize the artificial sum == maximize its negation;
        # in z_j - c_j form the objective row is minus the sum of the
        # artificial rows (artificial columns come out zero).
        for i in art_rows:
            t[-1] -= t[i]
        t[-1, n + n_slack:ncols] = 0.0
        status = _bland_iterate(t, basis, ncols, allowed)
        assert status == "optimal"  # phase-1 objective is bounded
        if t[-1, -1] < -FEAS_TOL:
            return LpSolution(status="infeasible", value=math.nan, x=())
        # drive any basic artificial out, or drop its (redundant) row
        for i in range(m):
            if basis[i] >= n + n_slack:
                for j in range(n + n_slack):
                    if abs(t[i, j]) > PIVOT_TOL:
                        _pivot(t, i, j)
                        basis[i] = j
                        break
        keep = [i for i in range(m) if basis[i] < n + n_slack]
        t = np.vstack([t[keep], np.zeros((1, t.shape[1]))])
        basis = [basis[i] for i in keep]
        m = len(keep)
        for j in range(n + n_slack, ncols):
            allowed[j] = False

    # phase 2 objective row in z_j - c_j form
    t[-1, :] = 0.0
    c = np.zeros(ncols)
    c[:n] = lp.objective
    t[-1, :ncols] = -c
    for i in range(m):
        if c[basis[i]] != 0.0:
            t[-1] += c[basis[i]] * t[i]
    status = _bland_iterate(t, basis, ncols, allowed)
    if status == "unbounded":
        return LpSolution(status="unbounded", value=math.inf, x=())
    x = np.zeros(ncols)
    for i in range(m):
        x[basis[i]] = t[i, -1]
    return LpSolution(status="optimal", value=float(t[-1, -1]), x=tuple(float(v) for v in x[:n]))


def build_lp(
    protocol: Protocol, bound: BoundKind, mi: MITable, mu: float
) -> LinearProgram:
    """LP over (Delta_1..Delta_k, R_a, R_b): maximize mu*R_a + (1-mu)*R_b
    subject to the protocol template plus the unit phase-duration budget."""
    cset = build_constraints(protocol, bound, mi)
    k = protocol.num_phases
    nvars = k + 2
    a_ub = []
    for c in cset.constraints:
        a_ub.append(tuple(c.delta_coefs) + (c.r_a_coef, c.r_b_coef))
    a_eq = (tuple([1.0] * k + [0.0, 0.0]),)
    objective = tuple([0.0] * k + [mu, 1.0 - mu])
    return LinearProgram(
        objective=objective,
        a_ub=tuple(a_ub),
        b_ub=tuple([0.0] * len(a_ub)),
        a_eq=a_eq,
        b_eq=(1.0,),
    )


def optimize_schedule(
    protocol: Protocol, bound: BoundKind, mi: MITable, mu: float
) -> Tuple[PhaseSchedule, RatePair, float]:
    """Jointly optimize phase durations and rates for the weighted objective
    mu*R_a + (1-mu)*R_b; mu = 1/2 maximizes the sum rate (scaled by 2)."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must be in [0, 1], got {mu!r}")
    lp = build_lp(protocol, bound, mi, mu)
    sol = simplex_solve(lp)
    if sol.status != "optimal":  # the feasible set is a nonempty polytope
        raise RuntimeError(f"schedule LP unexpectedly {sol.status}")
    k = protocol.num_phases
    deltas = [max(d, 0.0) for d in sol.x[:k]]
    total = sum(deltas)
    deltas = [d / total for d in deltas]
    sched = PhaseSchedule(protocol=protocol, durations=tuple(deltas))
    rates = RatePair(max(sol.x[k], 0.0), max(sol.x[k + 1], 0.0))
    return sched, rates, sol.value


def optimized_region(
    protocol: Protocol, bound: BoundKind, mi: MITable, mu_grid_size: int = 201
) -> RateRegion:
    """Optimized-schedule rate region traced by weighted-LP support points.

    The support points over a mu grid (the endpoints mu = 0, 1 always
    included), the axis feet and the origin are convex-hulled; the result
    contains every fixed-schedule region up to the grid resolution.
    """
    if mu_grid_size < 2:
        raise ValueError(f"mu_grid_size must be >= 2, got {mu_grid_size!r}")
    mus = {i / (mu_grid_size - 1) for i in range(mu_grid_size)}
    mus.update((0.0, 1.0))
    points = [RatePair(0.0, 0.0)]
    for mu in sorted(mus):
        _, rates, value = optimize_schedule(protocol, bound, mi, mu)
        points.append(rates)
        if mu == 1.0:
            points.append(RatePair(value, 0.0))  # axis foot at max R_a
        if mu == 0.0:
            points.append(RatePair(0.0, value))  # axis foot at max R_b
    return hull_union([RateRegion(vertices=tuple(points))])
