"""Gaussian channel parameterization and per-phase mutual-information tables.

All rates are in bits per channel use (log base 2).  Gains and powers are
stored linear; dB enters only at the CLI boundary.  Noise is unit power at
every receiver, and every node uses the same transmit power in every phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Mapping, Tuple


class Protocol(str, Enum):
    """The four half-duplex bi-directional relaying protocols."""

    DT = "dt"
    MABC = "mabc"
    TDBC = "tdbc"
    HBC = "hbc"

    @property
    def num_phases(self) -> int:
        return _NUM_PHASES[self]


_NUM_PHASES = {Protocol.DT: 2, Protocol.MABC: 2, Protocol.TDBC: 3, Protocol.HBC: 4}

# Link descriptors used as MITable keys.  Each names one distinct
# mutual-information term of a protocol's constraint template.
UPLINK_A = "uplink_a"        # a -> relay
UPLINK_B = "uplink_b"        # b -> relay
MAC_SUM = "mac_sum"          # (a, b) -> relay, sum term of the MAC
DOWNLINK_A = "downlink_a"    # relay -> a
DOWNLINK_B = "downlink_b"    # relay -> b
DIRECT = "direct"            # a <-> b direct link (reciprocal)
JOINT_A = "joint_a"          # a -> {relay, b} joint reception
JOINT_B = "joint_b"          # b -> {relay, a} joint reception

# Full descriptor set of each protocol, keyed (phase index, link).
PROTOCOL_ENTRIES: Dict[Protocol, FrozenSet[Tuple[int, str]]] = {
    Protocol.DT: frozenset({(1, DIRECT), (2, DIRECT)}),
    Protocol.MABC: frozenset(
        {(1, UPLINK_A), (1, UPLINK_B), (1, MAC_SUM), (2, DOWNLINK_A), (2, DOWNLINK_B)}
    ),
    Protocol.TDBC: frozenset(
        {
            (1, UPLINK_A),
            (1, DIRECT),
            (1, JOINT_A),
            (2, UPLINK_B),
            (2, DIRECT),
            (2, JOINT_B),
            (3, DOWNLINK_A),
            (3, DOWNLINK_B),
        }
    ),
    Protocol.HBC: frozenset(
        {
            (1, UPLINK_A),
            (1, DIRECT),
            (2, UPLINK_B),
            (2, DIRECT),
            (3, UPLINK_A),
            (3, UPLINK_B),
            (3, MAC_SUM),
            (4, DOWNLINK_A),
            (4, DOWNLINK_B),
        }
    ),
}


def db_to_linear(x_db: float) -> float:
    """Convert a dB quantity to its linear value, 10^(x/10)."""
    if not math.isfinite(x_db):
        raise ValueError(f"x_db must be finite, got {x_db!r}")
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    """Inverse of :func:`db_to_linear`; requires x > 0."""
    if not (math.isfinite(x) and x > 0):
        raise ValueError(f"x must be finite and > 0, got {x!r}")
    return 10.0 * math.log10(x)


def capacity_c(x: float) -> float:
    """Scalar capacity function log2(1 + x) in bits per channel use."""
    if not (math.isfinite(x) and x >= 0):
        raise ValueError(f"x must be finite and >= 0, got {x!r}")
    return math.log2(1.0 + x)


@dataclass(frozen=True)
class ChannelGains:
    """Linear power gains of the three node pairs plus common transmit power.

    Reciprocity is embodied by storing a single gain per pair.  ``ordered``
    reports whether the usual regime G_ab <= G_ar <= G_br holds; construction
    never fails on ordering.
    """

    g_ab_pow: float
    g_ar_pow: float
    g_br_pow: float
    power: float

    def __post_init__(self) -> None:
        for name in ("g_ab_pow", "g_ar_pow", "g_br_pow"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {v!r}")
        if not (math.isfinite(self.power) and self.power > 0):
            raise ValueError(f"power must be finite and > 0, got {self.power!r}")

    @property
    def ordered(self) -> bool:
        return self.g_ab_pow <= self.g_ar_pow <= self.g_br_pow


@dataclass(frozen=True)
class MITable:
    """Per-phase mutual-information constants (bits/channel use).

    Keys are (phase index, link descriptor) pairs drawn from the protocol's
    descriptor set; values feed every constraint downstream.
    """

    protocol: Protocol
    entries: Mapping[Tuple[int, str], float]

    def __post_init__(self) -> None:
        allowed = PROTOCOL_ENTRIES[self.protocol]
        extra = set(self.entries) - set(allowed)
        if extra:
            raise ValueError(
                f"entries {sorted(extra)} are not part of the "
                f"{self.protocol.value} template"
            )
        for key, v in self.entries.items():
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"entry {key} must be finite and >= 0, got {v!r}")
        object.__setattr__(self, "entries", dict(self.entries))

    def get(self, phase: int, link: str) -> float:
        return self.entries[(phase, link)]


def gaussian_mi_table(gains: ChannelGains, protocol: Protocol) -> MITable:
    """Evaluate a protocol's mutual-information terms for a Gaussian channel.

    Independent unit-variance complex Gaussian codebooks per phase, unit
    noise: a point-to-point link i->j gives C(P*G_ij); the two-user MAC at
    the relay gives individual terms C(P*G_ar), C(P*G_br) and the sum term
    C(P*(G_ar+G_br)); joint reception at two listening nodes adds the
    received powers, C(P*(G_ir+G_ij)).
    """
    p = gains.power
    up_a = capacity_c(p * gains.g_ar_pow)
    up_b = capacity_c(p * gains.g_br_pow)
    direct = capacity_c(p * gains.g_ab_pow)
    mac = capacity_c(p * (gains.g_ar_pow + gains.g_br_pow))
    joint_a = capacity_c(p * (gains.g_ar_pow + gains.g_ab_pow))
    joint_b = capacity_c(p * (gains.g_br_pow + gains.g_ab_pow))
    down_a = up_a  # reciprocity: relay->a uses G_ar
    down_b = up_b

    values = {
        UPLINK_A: up_a,
        UPLINK_B: up_b,
        MAC_SUM: mac,
        DOWNLINK_A: down_a,
        DOWNLINK_B: down_b,
        DIRECT: direct,
        JOINT_A: joint_a,
        JOINT_B: joint_b,
    }
    entries = {(phase, link): values[link] for (phase, link) in PROTOCOL_ENTRIES[protocol]}
    return MITable(protocol=protocol, entries=entries)
