"""Exact (grid-approximated) two-phase MABC capacity regions for small
finite-alphabet half-duplex channels.

The channel is a phase-1 multiple access law W1(y_r | x_a, x_b) and a
phase-2 broadcast law W2(y_a, y_b | x_r).  Alphabets are stored augmented
with an explicit silence symbol; input distributions for region evaluation
live on the non-silent symbols (half-duplex: a transmitting node never
sends silence, a listening node never produces a non-silent input).
Time-sharing between input tuples is realized geometrically as a convex
hull, so the auxiliary time-sharing variable is never materialized.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Sequence, Tuple

import numpy as np

from .channel_model import (
    DOWNLINK_A,
    DOWNLINK_B,
    MAC_SUM,
    MITable,
    Protocol,
    UPLINK_A,
    UPLINK_B,
)
from .protocol_bounds import BoundKind, PhaseSchedule, fixed_delta_region
from .rate_region import RateRegion, hull_union

ROW_SUM_TOL = 1e-12
ENUMERATION_LIMIT = 10_000_000


class ResourceLimitError(Exception):
    """Grid enumeration would exceed the tuple-count guard rail."""


def _validate_dist(p: np.ndarray, name: str) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError(f"{name} must be a nonempty 1-D distribution")
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"{name} must be a probability distribution, got {p!r}")
    return np.clip(p, 0.0, None)


def _plogq(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    # p * log2(q) with the 0*log0 = 0 convention
    out = np.zeros_like(p)
    mask = p > 0
    out[mask] = p[mask] * np.log2(q[mask])
    return out


def mutual_information(px: Sequence[float], w: Sequence[Sequence[float]]) -> float:
    """I(X; Y) in bits for input distribution px and channel w[x, y]."""
    px = _validate_dist(px, "px")
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != px.size:
        raise ValueError(
            f"channel matrix shape {w.shape} does not match input size {px.size}"
        )
    joint = px[:, None] * w
    py = joint.sum(axis=0)
    mi = float(np.sum(_plogq(joint, joint)) - np.sum(_plogq(joint, px[:, None] * py[None, :])))
    return max(mi, 0.0)


class MacMutualInformation(NamedTuple):
    i_a_given_b: float  # I(X_a; Y | X_b)
    i_b_given_a: float  # I(X_b; Y | X_a)
    i_joint: float      # I(X_a, X_b; Y)


def mutual_information_cond(
    pxa: Sequence[float], pxb: Sequence[float], w1: Sequence
) -> MacMutualInformation:
    """Conditional and joint MAC mutual informations for independent inputs
    over the tensor w1[x_a, x_b, y]."""
    pxa = _validate_dist(pxa, "pxa")
    pxb = _validate_dist(pxb, "pxb")
    w1 = np.asarray(w1, dtype=float)
    if w1.ndim != 3 or w1.shape[0] != pxa.size or w1.shape[1] != pxb.size:
        raise ValueError(
            f"tensor shape {w1.shape} does not match input sizes "
            f"({pxa.size}, {pxb.size})"
        )
    na, nb, ny = w1.shape
    # I(X_a; Y | X_b) = sum_b p(b) I(X_a; Y | X_b = b)
    i_a = sum(pxb[b] * mutual_information(pxa, w1[:, b, :]) for b in range(nb) if pxb[b] > 0)
    i_b = sum(pxa[a] * mutual_information(pxb, w1[a, :, :]) for a in range(na) if pxa[a] > 0)
    pj = (pxa[:, None] * pxb[None, :]).reshape(na * nb)
    i_joint = mutual_information(pj, w1.reshape(na * nb, ny))
    return MacMutualInformation(float(i_a), float(i_b), float(i_joint))


@dataclass(frozen=True)
class DiscreteChannel:
    """Finite-alphabet two-phase half-duplex channel.

    Alphabets are symbol-name lists augmented with the silence symbol at the
    declared index.  ``uplink`` has shape (|Xa*|, |Xb*|, |Yr*|) and
    ``downlink`` (|Xr*|, |Ya*|, |Yb*|); every conditional row is stochastic.
    """

    alphabets: Dict[str, Tuple[str, ...]]
    silence_index: Dict[str, int]
    uplink: np.ndarray
    downlink: np.ndarray

    _NODES = ("x_a", "x_b", "x_r", "y_r", "y_a", "y_b")

    def __post_init__(self) -> None:
        for node in self._NODES:
            if node not in self.alphabets:
                raise ValueError(f"missing alphabet for {node}")
            if node not in self.silence_index:
                raise ValueError(f"missing silence index for {node}")
            idx = self.silence_index[node]
            if not 0 <= idx < len(self.alphabets[node]):
                raise ValueError(f"silence index {idx} out of range for {node}")
        object.__setattr__(self, "uplink", np.asarray(self.uplink, dtype=float))
        object.__setattr__(self, "downlink", np.asarray(self.downlink, dtype=float))
        sizes = {n: len(self.alphabets[n]) for n in self._NODES}
        if self.uplink.shape != (sizes["x_a"], sizes["x_b"], sizes["y_r"]):
            raise ValueError(
                f"uplink tensor shape {self.uplink.shape} does not match alphabets"
            )
        if self.downlink.shape != (sizes["x_r"], sizes["y_a"], sizes["y_b"]):
            raise ValueError(
                f"downlink tensor shape {self.downlink.shape} does not match alphabets"
            )
        for idx, (xa, xb) in enumerate(
            itertools.product(range(sizes["x_a"]), range(sizes["x_b"]))
        ):
            if abs(self.uplink[xa, xb].sum() - 1.0) > ROW_SUM_TOL:
                raise ValueError(f"uplink row {idx} (x_a={xa}, x_b={xb}) is not stochastic")
        for xr in range(sizes["x_r"]):
            if abs(self.downlink[xr].sum() - 1.0) > ROW_SUM_TOL:
                raise ValueError(f"downlink row {xr} is not stochastic")
        self._check_half_duplex()

    def _check_half_duplex(self) -> None:
        # while a node transmits an active symbol, listening outputs are
        # themselves active: no mass on the silence output symbol
        sy_r = self.silence_index["y_r"]
        for xa in self._active("x_a"):
            for xb in self._active("x_b"):
                if self.uplink[xa, xb, sy_r] > 0.0:
                    raise ValueError(
                        f"uplink puts mass on silent relay output for active "
                        f"inputs (x_a={xa}, x_b={xb})"
                    )
        sy_a = self.silence_index["y_a"]
        sy_b = self.silence_index["y_b"]
        for xr in self._active("x_r"):
            if self.downlink[xr, sy_a, :].sum() > 0.0 or self.downlink[xr, :, sy_b].sum() > 0.0:
                raise ValueError(
                    f"downlink puts mass on a silent terminal output for "
                    f"active relay input x_r={xr}"
                )

    def _active(self, node: str) -> List[int]:
        s = self.silence_index[node]
        return [i for i in range(len(self.alphabets[node])) if i != s]

    # active-input views used by the region computations
    def uplink_active(self) -> np.ndarray:
        return self.uplink[np.ix_(self._active("x_a"), self._active("x_b"))]

    def downlink_active(self) -> np.ndarray:
        return self.downlink[self._active("x_r")]

    @property
    def n_xa(self) -> int:
        return len(self.alphabets["x_a"]) - 1

    @property
    def n_xb(self) -> int:
        return len(self.alphabets["x_b"]) - 1

    @property
    def n_xr(self) -> int:
        return len(self.alphabets["x_r"]) - 1

    @classmethod
    def from_json(cls, text: str) -> "DiscreteChannel":
        obj = json.loads(text)
        try:
            alphabets = {k: tuple(v) for k, v in obj["alphabets"].items()}
            silence = {k: int(v) for k, v in obj["silence_index"].items()}
            uplink = np.asarray(obj["uplink"], dtype=float)
            downlink = np.asarray(obj["downlink"], dtype=float)
        except KeyError as exc:
            raise ValueError(f"channel JSON is missing field {exc}") from exc
        return cls(alphabets=alphabets, silence_index=silence, uplink=uplink, downlink=downlink)

    def to_json(self) -> str:
        return json.dumps(
            {
                "alphabets": {k: list(v) for k, v in self.alphabets.items()},
                "silence_index": dict(self.silence_index),
                "uplink": self.uplink.tolist(),
                "downlink": self.downlink.tolist(),
            }
        )


@dataclass(frozen=True)
class InputGrid:
    """Probability vectors with entries that are multiples of 1/K."""

    resolution: int

    def __post_init__(self) -> None:
        if self.resolution < 1:
            raise ValueError(f"resolution must be >= 1, got {self.resolution!r}")

    def count(self, n: int) -> int:
        return math.comb(self.resolution + n - 1, n - 1)

    def distributions(self, n: int) -> Iterator[np.ndarray]:
        """All length-n distributions on the grid (integer compositions of K)."""
        k = self.resolution
        for cuts in itertools.combinations(range(k + n - 1), n - 1):
            parts = []
            prev = -1
            for c in cuts:
                parts.append(c - prev - 1)
                prev = c
            parts.append(k + n - 2 - prev)
            yield np.asarray(parts, dtype=float) / k


def _mabc_table(
    ch: DiscreteChannel, pxa: np.ndarray, pxb: np.ndarray, pxr: np.ndarray
) -> MITable:
    mac = mutual_information_cond(pxa, pxb, ch.uplink_active())
    down = ch.downlink_active()
    mi_down_b = mutual_information(pxr, down.sum(axis=1))  # marginalize y_a
    mi_down_a = mutual_information(pxr, down.sum(axis=2))  # marginalize y_b
    return MITable(
        protocol=Protocol.MABC,
        entries={
            (1, UPLINK_A): mac.i_a_given_b,
            (1, UPLINK_B): mac.i_b_given_a,
            (1, MAC_SUM): mac.i_joint,
            (2, DOWNLINK_A): mi_down_a,
            (2, DOWNLINK_B): mi_down_b,
        },
    )


def mabc_fixed_inputs_region(
    ch: DiscreteChannel,
    pxa: Sequence[float],
    pxb: Sequence[float],
    pxr: Sequence[float],
    sched: PhaseSchedule,
) -> RateRegion:
    """MABC pentagon for fixed product input distributions on the non-silent
    alphabets."""
    pxa = _validate_dist(pxa, "pxa")
    pxb = _validate_dist(pxb, "pxb")
    pxr = _validate_dist(pxr, "pxr")
    if pxa.size != ch.n_xa or pxb.size != ch.n_xb or pxr.size != ch.n_xr:
        raise ValueError(
            "input distributions must live on the non-silent alphabets "
            f"({ch.n_xa}, {ch.n_xb}, {ch.n_xr})"
        )
    table = _mabc_table(ch, pxa, pxb, pxr)
    return fixed_delta_region(Protocol.MABC, BoundKind.INNER, table, sched)


def mabc_capacity_region(
    ch: DiscreteChannel, sched: PhaseSchedule, grid: InputGrid
) -> RateRegion:
    """Grid approximation of the MABC capacity region: the convex hull of
    the fixed-input pentagons over all grid input tuples."""
    total = grid.count(ch.n_xa) * grid.count(ch.n_xb) * grid.count(ch.n_xr)
    if total > ENUMERATION_LIMIT:
        raise ResourceLimitError(
            f"grid enumeration of {total} input tuples exceeds the limit of "
            f"{ENUMERATION_LIMIT}"
        )
    down = ch.downlink_active()
    down_b = down.sum(axis=1)
    down_a = down.sum(axis=2)
    up = ch.uplink_active()
    regions: List[RateRegion] = []
    downlink_pairs = [
        (mutual_information(pxr, down_a), mutual_information(pxr, down_b))
        for pxr in grid.distributions(ch.n_xr)
    ]
    for pxa in grid.distributions(ch.n_xa):
        for pxb in grid.distributions(ch.n_xb):
            mac = mutual_information_cond(pxa, pxb, up)
            for mi_down_a, mi_down_b in downlink_pairs:
                table = MITable(
                    protocol=Protocol.MABC,
                    entries={
                        (1, UPLINK_A): mac.i_a_given_b,
                        (1, UPLINK_B): mac.i_b_given_a,
                        (1, MAC_SUM): mac.i_joint,
                        (2, DOWNLINK_A): mi_down_a,
                        (2, DOWNLINK_B): mi_down_b,
                    },
                )
                regions.append(
                    fixed_delta_region(Protocol.MABC, BoundKind.INNER, table, sched)
                )
    return hull_union(regions)
