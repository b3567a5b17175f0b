"""Matplotlib rendering for the report path: rate-region overlays and
sum-rate sweep curves, written to image files next to the delimited data."""

from __future__ import annotations

from typing import Dict, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .fading import SweepRow
from .rate_region import RateRegion


def render_region_figure(regions: Dict[str, RateRegion], path: str, title: str = "") -> None:
    """Overlay the boundaries of several rate regions on one axis."""
    fig, ax = plt.subplots(figsize=(6, 5))
    for label, region in regions.items():
        if region.is_empty:
            continue
        xs = [v.r_a for v in region.vertices] + [region.vertices[0].r_a]
        ys = [v.r_b for v in region.vertices] + [region.vertices[0].r_b]
        ax.plot(xs, ys, label=label)
    ax.set_xlabel("$R_a$ (bits/channel use)")
    ax.set_ylabel("$R_b$ (bits/channel use)")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    ax.set_xlim(left=0)
    ax.set_ylim(bottom=0)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_sweep_figure(rows: Sequence[SweepRow], path: str, xlabel: str = "") -> None:
    """Sum-rate curves per protocol over the swept parameter."""
    by_proto: Dict[str, list] = {}
    for row in rows:
        by_proto.setdefault(row.protocol.value, []).append((row.sweep_value, row.sum_rate))
    fig, ax = plt.subplots(figsize=(6, 5))
    for proto, pts in sorted(by_proto.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=proto)
    ax.set_xlabel(xlabel or "swept parameter (dB)")
    ax.set_ylabel("optimal sum rate (bits/channel use)")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
