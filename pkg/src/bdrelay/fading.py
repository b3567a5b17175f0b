"""Quasi-static fading sampling, sum-rate sweeps and Monte Carlo averages.

Gains combine distance path loss d^(-alpha) with an optional Rayleigh
(unit-mean exponential power) fading factor.  Samples are index addressed:
gain triple i is a pure function of (seed, i), so parallel evaluation and
sample ordering cannot change results.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from .channel_model import ChannelGains, Protocol, db_to_linear, gaussian_mi_table
from .lp_optimizer import optimize_schedule
from .protocol_bounds import BoundKind

# fixtures are regenerated, not ported, if the generator ever changes
RNG_ALGORITHM = "numpy-pcg64-seedsequence(seed,index)"

SWEEP_PARAMS = ("p_db", "g_ab_db", "g_ar_db", "g_br_db")
FADING_MODELS = ("none", "rayleigh")


@dataclass(frozen=True)
class FadingConfig:
    alpha: float
    d_ab: float
    d_ar: float
    d_br: float
    model: str
    power: float
    n_samples: int
    seed: int

    def __post_init__(self) -> None:
        for name in ("alpha", "d_ab", "d_ar", "d_br", "power"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
        if self.model not in FADING_MODELS:
            raise ValueError(f"model must be one of {FADING_MODELS}, got {self.model!r}")
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples!r}")


def sample_gains(cfg: FadingConfig, index: int) -> ChannelGains:
    """Deterministic gain triple for sample `index`: path loss times a
    per-link fading factor drawn from a (seed, index)-keyed generator."""
    base = [d ** (-cfg.alpha) for d in (cfg.d_ab, cfg.d_ar, cfg.d_br)]
    if cfg.model == "rayleigh":
        seq = np.random.SeedSequence([cfg.seed & 0xFFFFFFFFFFFFFFFF, int(index)])
        rng = np.random.default_rng(seq)
        fade = rng.exponential(1.0, size=3)  # draw order: ab, ar, br
        base = [b * f for b, f in zip(base, fade)]
    return ChannelGains(
        g_ab_pow=base[0], g_ar_pow=base[1], g_br_pow=base[2], power=cfg.power
    )


@dataclass(frozen=True)
class SweepSpec:
    """One swept dB parameter over [start, stop] with the others fixed."""

    param: str
    start_db: float
    stop_db: float
    step_db: float
    fixed_db: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.param not in SWEEP_PARAMS:
            raise ValueError(f"param must be one of {SWEEP_PARAMS}, got {self.param!r}")
        if not (math.isfinite(self.step_db) and self.step_db > 0):
            raise ValueError(f"step_db must be > 0, got {self.step_db!r}")
        if self.start_db > self.stop_db:
            raise ValueError(
                f"start_db {self.start_db!r} must be <= stop_db {self.stop_db!r}"
            )

    def values(self) -> List[float]:
        n = int(math.floor((self.stop_db - self.start_db) / self.step_db + 1e-9)) + 1
        return [self.start_db + i * self.step_db for i in range(n)]


class SweepRow(NamedTuple):
    sweep_value: float
    protocol: Protocol
    sum_rate: float
    durations: Tuple[float, ...]
    in_regime: bool  # whether G_ab <= G_ar <= G_br held at this point


def _gains_from_db(params: Dict[str, float]) -> ChannelGains:
    return ChannelGains(
        g_ab_pow=db_to_linear(params["g_ab_db"]),
        g_ar_pow=db_to_linear(params["g_ar_db"]),
        g_br_pow=db_to_linear(params["g_br_db"]),
        power=db_to_linear(params["p_db"]),
    )


def sweep_sum_rate(
    spec: SweepSpec, protocols: Sequence[Protocol], bound: BoundKind
) -> List[SweepRow]:
    """Optimal (mu = 1/2) sum rate per sweep point and protocol, rows sorted
    by sweep value then protocol name."""
    missing = [p for p in SWEEP_PARAMS if p != spec.param and p not in spec.fixed_db]
    if missing:
        raise ValueError(f"sweep fixed parameters are missing {missing}")
    rows: List[SweepRow] = []
    protos = sorted(set(protocols), key=lambda p: p.value)
    for value in spec.values():
        params = dict(spec.fixed_db)
        params[spec.param] = value
        gains = _gains_from_db(params)
        for proto in protos:
            mi = gaussian_mi_table(gains, proto)
            sched, rates, _ = optimize_schedule(proto, bound, mi, 0.5)
            rows.append(
                SweepRow(
                    sweep_value=value,
                    protocol=proto,
                    sum_rate=rates.r_a + rates.r_b,
                    durations=sched.durations,
                    in_regime=gains.ordered,
                )
            )
    return rows


def sweep_table_csv(rows: Sequence[SweepRow]) -> str:
    """Delimited sweep output; phase-duration columns a protocol does not
    use are left blank."""
    lines = ["sweep_value,protocol,sum_rate,delta_1,delta_2,delta_3,delta_4"]
    for row in rows:
        deltas = [f"{d:.17g}" for d in row.durations]
        deltas += [""] * (4 - len(deltas))
        lines.append(
            f"{row.sweep_value:.17g},{row.protocol.value},{row.sum_rate:.17g},"
            + ",".join(deltas)
        )
    return "\n".join(lines) + "\n"


class ProtocolStats(NamedTuple):
    mean: float
    stderr: float


def montecarlo_expected_rates(
    cfg: FadingConfig, protocols: Sequence[Protocol]
) -> Dict[Protocol, ProtocolStats]:
    """Mean and standard error of the optimal sum rate over fading samples."""
    protos = sorted(set(protocols), key=lambda p: p.value)
    samples: Dict[Protocol, List[float]] = {p: [] for p in protos}
    for index in range(cfg.n_samples):
        gains = sample_gains(cfg, index)
        for proto in protos:
            mi = gaussian_mi_table(gains, proto)
            _, rates, _ = optimize_schedule(proto, BoundKind.INNER, mi, 0.5)
            samples[proto].append(rates.r_a + rates.r_b)
    out = {}
    for proto in protos:
        vals = samples[proto]
        mean = sum(vals) / len(vals)
        stderr = statistics.stdev(vals) / math.sqrt(len(vals)) if len(vals) > 1 else 0.0
        out[proto] = ProtocolStats(mean=mean, stderr=stderr)
    return out


def montecarlo_stats_json_obj(
    cfg: FadingConfig, stats: Dict[Protocol, ProtocolStats]
) -> Dict:
    return {
        "seed": cfg.seed,
        "model": cfg.model,
        "n_samples": cfg.n_samples,
        "rng": RNG_ALGORITHM,
        "results": {
            proto.value: {"mean": st.mean, "stderr": st.stderr}
            for proto, st in stats.items()
        },
    }
