"""Independent oracles used by the test suite.

Everything here recomputes expected values along a different route than the
library under test: brute-force grids over the phase-duration simplex,
exhaustive vertex enumeration for linear programs, Monte Carlo estimation of
Gaussian mutual informations, and grid rasterization for polygon membership.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from numba import njit


# ---------------------------------------------------------------------------
# brute-force max sum rate over the Delta simplex (step 1/n)

def dt_grid_max(direct1: float, direct2: float, n: int = 1000) -> float:
    d1 = np.arange(n + 1) / n
    return float(np.max(d1 * direct1 + (1.0 - d1) * direct2))


def mabc_grid_max(
    ua: float, ub: float, mac: float, da: float, db: float,
    relay_free: bool = False, n: int = 1000,
) -> float:
    d1 = np.arange(n + 1) / n
    d2 = 1.0 - d1
    s = np.minimum(d1 * ua, d2 * db) + np.minimum(d1 * ub, d2 * da)
    if not relay_free:
        s = np.minimum(s, d1 * mac)
    return float(s.max())


def tdbc_grid_max(
    cap_a1: float, cap_a2_d1: float, cap_a2_d3: float,
    cap_b1: float, cap_b2_d2: float, cap_b2_d3: float,
    sum_d1: float = math.inf, sum_d2: float = math.inf,
    n: int = 1000,
) -> float:
    """Three-phase scan.  R_a <= min(d1*cap_a1, d1*cap_a2_d1 + d3*cap_a2_d3),
    R_b symmetric, optional sum constraint d1*sum_d1 + d2*sum_d2."""
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    mask = i + j <= n
    d1 = i[mask] / n
    d2 = j[mask] / n
    d3 = 1.0 - d1 - d2
    a = np.minimum(d1 * cap_a1, d1 * cap_a2_d1 + d3 * cap_a2_d3)
    b = np.minimum(d2 * cap_b1, d2 * cap_b2_d2 + d3 * cap_b2_d3)
    s = a + b
    if math.isfinite(sum_d1):
        s = np.minimum(s, d1 * sum_d1 + d2 * sum_d2)
    return float(s.max())


_PAIR_P = np.array([0, 0, 0, 0, 1, 1, 1, 2, 2, 3], dtype=np.int64)
_PAIR_Q = np.array([1, 2, 3, 4, 2, 3, 4, 3, 4, 4], dtype=np.int64)


@njit(cache=True)
def _eval_min5(alpha, beta, x):  # pragma: no cover
    v = alpha[0] + beta[0] * x
    for m in range(1, 5):
        w = alpha[m] + beta[m] * x
        if w < v:
            v = w
    return v


@njit(cache=True)
def _hbc_grid_max(ua, d, ub, ua3, ub3, mac, da4, db4, n):  # pragma: no cover
    # For fixed (d1, d2) the sum rate is a min of five functions linear in
    # d3 (with d4 = 1 - d1 - d2 - d3), hence concave in d3; the grid max
    # over d3 sits at the floor/ceil of a continuous breakpoint or at an
    # endpoint, so only those grid points need evaluation.  This equals the
    # full triple scan exactly, at ~1/n of the cost.
    best = 0.0
    alpha = np.empty(5)
    beta = np.empty(5)
    for i in range(n + 1):
        d1 = i / n
        for j in range(n + 1 - i):
            d2 = j / n
            rest = 1.0 - d1 - d2
            kmax = n - i - j
            # five lines f_m(d3) = alpha_m + beta_m * d3:
            # A1+B1, A1+B2, A2+B1, A2+B2, S with
            # A1 = d1*ua + d3*ua3 ; A2 = d1*d + d4*db4
            # B1 = d2*ub + d3*ub3 ; B2 = d2*d + d4*da4
            # S = d1*ua + d2*ub + d3*mac
            a1_0 = d1 * ua
            a2_0 = d1 * d + rest * db4
            b1_0 = d2 * ub
            b2_0 = d2 * d + rest * da4
            alpha[0] = a1_0 + b1_0
            beta[0] = ua3 + ub3
            alpha[1] = a1_0 + b2_0
            beta[1] = ua3 - da4
            alpha[2] = a2_0 + b1_0
            beta[2] = ub3 - db4
            alpha[3] = a2_0 + b2_0
            beta[3] = -da4 - db4
            alpha[4] = d1 * ua + d2 * ub
            beta[4] = mac
            v = _eval_min5(alpha, beta, 0.0)
            if v > best:
                best = v
            v = _eval_min5(alpha, beta, kmax / n)
            if v > best:
                best = v
            for c in range(10):
                p = _PAIR_P[c]
                q = _PAIR_Q[c]
                denom = beta[p] - beta[q]
                if denom == 0.0:
                    continue
                ks = (alpha[q] - alpha[p]) / denom * n
                if ks <= 0.0 or ks >= kmax:
                    continue
                k = int(math.floor(ks))
                v = _eval_min5(alpha, beta, k / n)
                if v > best:
                    best = v
                if k + 1 <= kmax:
                    v = _eval_min5(alpha, beta, (k + 1) / n)
                    if v > best:
                        best = v
    return best


def hbc_grid_max(
    ua: float, direct: float, ub: float, ua3: float, ub3: float,
    mac: float, da4: float, db4: float, n: int = 1000,
) -> float:
    return float(_hbc_grid_max(ua, direct, ub, ua3, ub3, mac, da4, db4, n))


# ---------------------------------------------------------------------------
# LP oracle: exhaustive vertex enumeration of {a_ub x <= b_ub, a_eq x = b_eq, x >= 0}

def lp_vertex_enumeration_max(objective, a_ub, b_ub, a_eq, b_eq, tol=1e-9):
    """Maximum of the objective over all basic feasible points, or None when
    the feasible set has no vertex."""
    c = np.asarray(objective, dtype=float)
    n = c.size
    rows = [(np.asarray(r, dtype=float), float(b)) for r, b in zip(a_ub, b_ub)]
    eqs = [(np.asarray(r, dtype=float), float(b)) for r, b in zip(a_eq, b_eq)]
    # equality rows are in every candidate basis; nonnegativity bounds count
    # as candidate active constraints too
    cands = rows + [(np.eye(n)[i], 0.0) for i in range(n)]
    need = n - len(eqs)
    best = None
    for combo in itertools.combinations(range(len(cands)), need):
        a = np.array([eq[0] for eq in eqs] + [cands[i][0] for i in combo])
        b = np.array([eq[1] for eq in eqs] + [cands[i][1] for i in combo])
        if abs(np.linalg.det(a)) < 1e-12:
            continue
        x = np.linalg.solve(a, b)
        if np.any(x < -tol):
            continue
        if any(r @ x > rb + tol for r, rb in rows):
            continue
        if any(abs(r @ x - rb) > tol for r, rb in eqs):
            continue
        val = float(c @ x)
        if best is None or val > best:
            best = val
    return best


# ---------------------------------------------------------------------------
# Monte Carlo Gaussian mutual information (complex AWGN, unit noise)

def mc_mi_point_to_point(power: float, gain: float, n: int, rng) -> float:
    """I(X; Y) for Y = h X + Z, X ~ CN(0, P), |h|^2 = gain, Z ~ CN(0, 1)."""
    h = math.sqrt(gain)
    x = rng.normal(size=n, scale=math.sqrt(power / 2)) + 1j * rng.normal(
        size=n, scale=math.sqrt(power / 2)
    )
    z = rng.normal(size=n, scale=math.sqrt(0.5)) + 1j * rng.normal(size=n, scale=math.sqrt(0.5))
    y = h * x + z
    var_y = gain * power + 1.0
    # log(p(y|x)/p(y)) with circularly symmetric complex Gaussian densities
    ll = -np.abs(y - h * x) ** 2 + np.abs(y) ** 2 / var_y + math.log(var_y)
    return float(np.mean(ll) / math.log(2))


def mc_mi_mac_sum(power: float, g1: float, g2: float, n: int, rng) -> float:
    """I(X1, X2; Y) for Y = h1 X1 + h2 X2 + Z with independent inputs."""
    h1, h2 = math.sqrt(g1), math.sqrt(g2)
    s = math.sqrt(power / 2)
    x1 = rng.normal(size=n, scale=s) + 1j * rng.normal(size=n, scale=s)
    x2 = rng.normal(size=n, scale=s) + 1j * rng.normal(size=n, scale=s)
    z = rng.normal(size=n, scale=math.sqrt(0.5)) + 1j * rng.normal(size=n, scale=math.sqrt(0.5))
    y = h1 * x1 + h2 * x2 + z
    var_y = power * (g1 + g2) + 1.0
    ll = -np.abs(y - h1 * x1 - h2 * x2) ** 2 + np.abs(y) ** 2 / var_y + math.log(var_y)
    return float(np.mean(ll) / math.log(2))


def mc_mi_joint_reception(power: float, g1: float, g2: float, n: int, rng) -> float:
    """I(X; Y1, Y2) for Y_i = h_i X + Z_i; the two receivers add their SNRs."""
    h1, h2 = math.sqrt(g1), math.sqrt(g2)
    s = math.sqrt(power / 2)
    x = rng.normal(size=n, scale=s) + 1j * rng.normal(size=n, scale=s)
    z1 = rng.normal(size=n, scale=math.sqrt(0.5)) + 1j * rng.normal(size=n, scale=math.sqrt(0.5))
    z2 = rng.normal(size=n, scale=math.sqrt(0.5)) + 1j * rng.normal(size=n, scale=math.sqrt(0.5))
    y1 = h1 * x + z1
    y2 = h2 * x + z2
    # p(y1,y2) is complex Gaussian with covariance I + P h h^H
    det = power * (g1 + g2) + 1.0
    # inverse via Sherman-Morrison: C^-1 = I - P h h^H / det
    quad = (
        np.abs(y1) ** 2
        + np.abs(y2) ** 2
        - power * np.abs(h1 * np.conj(y1) + h2 * np.conj(y2)) ** 2 / det
    )
    ll = -(np.abs(y1 - h1 * x) ** 2 + np.abs(y2 - h2 * x) ** 2) + quad + math.log(det)
    return float(np.mean(ll) / math.log(2))


# ---------------------------------------------------------------------------
# polygon membership via rasterized edge inequalities

def rasterize_contains(vertices, xs, ys, tol):
    """Membership of every (x, y) grid point in the CCW polygon, evaluated
    directly from the edge inequalities; returns (inside, boundary_band)."""
    v = np.asarray(vertices, dtype=float)
    px, py = np.meshgrid(xs, ys, indexing="ij")
    inside = np.ones(px.shape, dtype=bool)
    near = np.zeros(px.shape, dtype=bool)
    m = len(v)
    for i in range(m):
        ax, ay = v[i]
        bx, by = v[(i + 1) % m]
        edge = math.hypot(bx - ax, by - ay)
        dist = ((bx - ax) * (py - ay) - (by - ay) * (px - ax)) / edge
        inside &= dist >= -tol
        near |= np.abs(dist) <= 2 * tol
    return inside, near
