"""Constraint templates of the four protocols as linear inequalities over
(phase durations, R_a, R_b), and fixed-schedule rate regions.

Each template constraint has the form
    r_a_coef * R_a + r_b_coef * R_b + sum_l delta_coefs[l] * Delta_{l+1} <= 0
where every Delta coefficient is a nonpositive multiple of a
mutual-information table entry.  Inner regions and outer bounds are both
evaluated as closed sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from .channel_model import (
    DIRECT,
    DOWNLINK_A,
    DOWNLINK_B,
    JOINT_A,
    JOINT_B,
    MAC_SUM,
    MITable,
    Protocol,
    UPLINK_A,
    UPLINK_B,
)
from .rate_region import HalfPlane, RateRegion, region_from_halfplanes

SCHEDULE_SUM_TOL = 1e-12


class UnsupportedBoundError(Exception):
    """Requested bound kind has no tractable Gaussian evaluation."""


class BoundKind(str, Enum):
    INNER = "inner"
    OUTER = "outer"
    # outer bound valid when the relay need not decode both messages:
    # the sum-rate constraint is dropped.
    OUTER_RELAY_FREE = "outer_relay_free"


@dataclass(frozen=True)
class PhaseSchedule:
    """Relative phase durations of a protocol; nonnegative, summing to one."""

    protocol: Protocol
    durations: Tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "durations", tuple(float(d) for d in self.durations))
        n = self.protocol.num_phases
        if len(self.durations) != n:
            raise ValueError(
                f"{self.protocol.value} needs {n} phase durations, "
                f"got {len(self.durations)}"
            )
        for d in self.durations:
            if not (math.isfinite(d) and d >= 0):
                raise ValueError(f"phase durations must be finite and >= 0, got {d!r}")
        if abs(sum(self.durations) - 1.0) > SCHEDULE_SUM_TOL:
            raise ValueError(
                f"phase durations must sum to 1, got {sum(self.durations)!r}"
            )


@dataclass(frozen=True)
class LinearConstraint:
    """One inequality of a protocol template (see module docstring)."""

    name: str
    delta_coefs: Tuple[float, ...]
    r_a_coef: float
    r_b_coef: float


@dataclass(frozen=True)
class ConstraintSet:
    protocol: Protocol
    bound: BoundKind
    constraints: Tuple[LinearConstraint, ...]


def _require(mi: MITable, keys) -> None:
    missing = [k for k in keys if k not in mi.entries]
    if missing:
        raise ValueError(f"mutual-information table is missing entries {missing}")


def build_constraints(protocol: Protocol, bound: BoundKind, mi: MITable) -> ConstraintSet:
    """Instantiate a protocol/bound constraint template from an MI table.

    min{...} rate bounds are expanded into one inequality per branch.
    Raises UnsupportedBoundError for the HBC outer bounds (their Gaussian
    evaluation would require correlated inputs and is not attempted) and
    ValueError on protocol/table mismatch or bounds undefined for DT.
    """
    if mi.protocol != protocol:
        raise ValueError(
            f"table is for {mi.protocol.value}, constraints requested for {protocol.value}"
        )
    n = protocol.num_phases

    def con(name: str, terms: Dict[int, float], r_a: float = 0.0, r_b: float = 0.0):
        coefs = [0.0] * n
        for phase, value in terms.items():
            coefs[phase - 1] -= value
        return LinearConstraint(name=name, delta_coefs=tuple(coefs), r_a_coef=r_a, r_b_coef=r_b)

    cons: List[LinearConstraint] = []
    if protocol is Protocol.DT:
        if bound is not BoundKind.INNER:
            raise ValueError("only the exact (inner) region is defined for DT")
        _require(mi, [(1, DIRECT), (2, DIRECT)])
        cons.append(con("a_direct", {1: mi.get(1, DIRECT)}, r_a=1.0))
        cons.append(con("b_direct", {2: mi.get(2, DIRECT)}, r_b=1.0))

    elif protocol is Protocol.MABC:
        _require(
            mi,
            [(1, UPLINK_A), (1, UPLINK_B), (1, MAC_SUM), (2, DOWNLINK_A), (2, DOWNLINK_B)],
        )
        cons.append(con("a_relay_decode", {1: mi.get(1, UPLINK_A)}, r_a=1.0))
        cons.append(con("a_endpoint_decode", {2: mi.get(2, DOWNLINK_B)}, r_a=1.0))
        cons.append(con("b_relay_decode", {1: mi.get(1, UPLINK_B)}, r_b=1.0))
        cons.append(con("b_endpoint_decode", {2: mi.get(2, DOWNLINK_A)}, r_b=1.0))
        if bound is not BoundKind.OUTER_RELAY_FREE:
            cons.append(con("relay_sum_decode", {1: mi.get(1, MAC_SUM)}, r_a=1.0, r_b=1.0))

    elif protocol is Protocol.TDBC:
        if bound is BoundKind.INNER:
            _require(
                mi,
                [(1, UPLINK_A), (1, DIRECT), (2, UPLINK_B), (2, DIRECT),
                 (3, DOWNLINK_A), (3, DOWNLINK_B)],
            )
            cons.append(con("a_relay_decode", {1: mi.get(1, UPLINK_A)}, r_a=1.0))
            cons.append(
                con("a_endpoint_decode",
                    {1: mi.get(1, DIRECT), 3: mi.get(3, DOWNLINK_B)}, r_a=1.0)
            )
            cons.append(con("b_relay_decode", {2: mi.get(2, UPLINK_B)}, r_b=1.0))
            cons.append(
                con("b_endpoint_decode",
                    {2: mi.get(2, DIRECT), 3: mi.get(3, DOWNLINK_A)}, r_b=1.0)
            )
        else:
            _require(
                mi,
                [(1, JOINT_A), (1, DIRECT), (1, UPLINK_A), (2, JOINT_B), (2, DIRECT),
                 (2, UPLINK_B), (3, DOWNLINK_A), (3, DOWNLINK_B)],
            )
            cons.append(con("a_cut_joint", {1: mi.get(1, JOINT_A)}, r_a=1.0))
            cons.append(
                con("a_cut_endpoint",
                    {1: mi.get(1, DIRECT), 3: mi.get(3, DOWNLINK_B)}, r_a=1.0)
            )
            cons.append(con("b_cut_joint", {2: mi.get(2, JOINT_B)}, r_b=1.0))
            cons.append(
                con("b_cut_endpoint",
                    {2: mi.get(2, DIRECT), 3: mi.get(3, DOWNLINK_A)}, r_b=1.0)
            )
            if bound is not BoundKind.OUTER_RELAY_FREE:
                cons.append(
                    con("relay_sum_cut",
                        {1: mi.get(1, UPLINK_A), 2: mi.get(2, UPLINK_B)},
                        r_a=1.0, r_b=1.0)
                )

    elif protocol is Protocol.HBC:
        if bound is not BoundKind.INNER:
            raise UnsupportedBoundError(
                "the HBC outer bound is not evaluated for Gaussian channels: "
                "its optimizing input distribution may be correlated across "
                "the terminals and jointly Gaussian inputs are not known to "
                "be optimal"
            )
        _require(
            mi,
            [(1, UPLINK_A), (1, DIRECT), (2, UPLINK_B), (2, DIRECT), (3, UPLINK_A),
             (3, UPLINK_B), (3, MAC_SUM), (4, DOWNLINK_A), (4, DOWNLINK_B)],
        )
        cons.append(
            con("a_relay_decode", {1: mi.get(1, UPLINK_A), 3: mi.get(3, UPLINK_A)}, r_a=1.0)
        )
        cons.append(
            con("a_endpoint_decode",
                {1: mi.get(1, DIRECT), 4: mi.get(4, DOWNLINK_B)}, r_a=1.0)
        )
        cons.append(
            con("b_relay_decode", {2: mi.get(2, UPLINK_B), 3: mi.get(3, UPLINK_B)}, r_b=1.0)
        )
        cons.append(
            con("b_endpoint_decode",
                {2: mi.get(2, DIRECT), 4: mi.get(4, DOWNLINK_A)}, r_b=1.0)
        )
        cons.append(
            con("relay_sum_decode",
                {1: mi.get(1, UPLINK_A), 2: mi.get(2, UPLINK_B), 3: mi.get(3, MAC_SUM)},
                r_a=1.0, r_b=1.0)
        )
    else:  # pragma: no cover
        raise ValueError(f"unknown protocol {protocol!r}")

    return ConstraintSet(protocol=protocol, bound=bound, constraints=tuple(cons))


def fixed_delta_region(
    protocol: Protocol, bound: BoundKind, mi: MITable, sched: PhaseSchedule
) -> RateRegion:
    """Rate region for a fixed phase schedule: substitute the durations into
    the template and intersect the resulting half-planes."""
    if sched.protocol != protocol:
        raise ValueError(
            f"schedule is for {sched.protocol.value}, region requested for {protocol.value}"
        )
    cset = build_constraints(protocol, bound, mi)
    planes = []
    for c in cset.constraints:
        rhs = -sum(dc * d for dc, d in zip(c.delta_coefs, sched.durations))
        planes.append(HalfPlane(coef_a=c.r_a_coef, coef_b=c.r_b_coef, rhs=rhs))
    return region_from_halfplanes(planes)
