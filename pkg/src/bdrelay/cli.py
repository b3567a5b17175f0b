"""Command-line surface.

Conventions: gains and power enter in dB and never leave the CLI boundary
in linear units; rates leave in bits per channel use.  Exit codes: 0 on
success, 2 on usage errors, 3 on computation errors (the error is named on
standard error).  Files are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Dict, List, Optional, Sequence

from . import __version__
from .channel_model import ChannelGains, Protocol, db_to_linear, gaussian_mi_table
from .discrete_capacity import DiscreteChannel, InputGrid, ResourceLimitError, mabc_capacity_region
from .fading import (
    FadingConfig,
    SweepSpec,
    montecarlo_expected_rates,
    montecarlo_stats_json_obj,
    sweep_sum_rate,
    sweep_table_csv,
)
from .lp_optimizer import optimize_schedule, optimized_region
from .protocol_bounds import (
    BoundKind,
    PhaseSchedule,
    UnsupportedBoundError,
    fixed_delta_region,
)
from .rate_region import (
    EmptyRegionError,
    UnboundedRegionError,
    exists_point_outside,
    region_to_csv,
)

COMPUTE_ERRORS = (
    UnsupportedBoundError,
    UnboundedRegionError,
    EmptyRegionError,
    ResourceLimitError,
    ValueError,
)


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".bdrelay-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _meta(params: Dict) -> Dict:
    return {"tool": "bdrelay", "version": __version__, "params": params}


def _add_gain_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--p-db", type=float, required=required, help="transmit power P in dB")
    p.add_argument("--g-ab-db", type=float, required=required, help="gain G_ab in dB")
    p.add_argument("--g-ar-db", type=float, required=required, help="gain G_ar in dB")
    p.add_argument("--g-br-db", type=float, required=required, help="gain G_br in dB")


def _gains(args: argparse.Namespace) -> ChannelGains:
    return ChannelGains(
        g_ab_pow=db_to_linear(args.g_ab_db),
        g_ar_pow=db_to_linear(args.g_ar_db),
        g_br_pow=db_to_linear(args.g_br_db),
        power=db_to_linear(args.p_db),
    )


def _parse_delta(parser: argparse.ArgumentParser, text: str, protocol: Protocol) -> PhaseSchedule:
    try:
        durations = [float(tok) for tok in text.split(",")]
    except ValueError:
        parser.error(f"--delta: expected comma-separated numbers, got {text!r}")
    if len(durations) != protocol.num_phases:
        parser.error(
            f"--delta: {protocol.value} needs {protocol.num_phases} durations, "
            f"got {len(durations)}"
        )
    if any(d < 0 for d in durations):
        parser.error("--delta: durations must be >= 0")
    total = sum(durations)
    if abs(total - 1.0) > 1e-9:
        parser.error(f"--delta: durations must sum to 1, got {total!r}")
    durations = [d / total for d in durations]
    return PhaseSchedule(protocol=protocol, durations=tuple(durations))


def _parse_protocols(parser: argparse.ArgumentParser, text: str) -> List[Protocol]:
    out = []
    for tok in text.split(","):
        try:
            out.append(Protocol(tok.strip().lower()))
        except ValueError:
            parser.error(f"--protocols: unknown protocol {tok!r}")
    return out


def _parse_spec(parser: argparse.ArgumentParser, text: str, flag: str):
    try:
        proto_s, bound_s = text.split(":")
        return Protocol(proto_s.strip().lower()), BoundKind(bound_s.strip().lower())
    except ValueError:
        parser.error(f"{flag}: expected PROTOCOL:BOUND, got {text!r}")


def _region_text(region, fmt: str, params: Dict) -> str:
    if fmt == "csv":
        return region_to_csv(region)
    obj = {"meta": _meta(params), "vertices": [[v.r_a, v.r_b] for v in region.vertices]}
    return json.dumps(obj, indent=2) + "\n"


def cmd_region(parser, args) -> int:
    protocol = Protocol(args.protocol)
    bound = BoundKind(args.bound)
    gains = _gains(args)
    mi = gaussian_mi_table(gains, protocol)
    if args.delta is not None:
        sched = _parse_delta(parser, args.delta, protocol)
        region = fixed_delta_region(protocol, bound, mi, sched)
    else:
        region = optimized_region(protocol, bound, mi, args.mu_grid)
    params = {
        "subcommand": "region",
        "protocol": protocol.value,
        "bound": bound.value,
        "p_db": args.p_db,
        "g_ab_db": args.g_ab_db,
        "g_ar_db": args.g_ar_db,
        "g_br_db": args.g_br_db,
        "delta": args.delta,
        "mu_grid": args.mu_grid,
    }
    _write_output(_region_text(region, args.format, params), args.output)
    return 0


def cmd_optimize(parser, args) -> int:
    protocol = Protocol(args.protocol)
    bound = BoundKind(args.bound)
    if not 0.0 <= args.mu <= 1.0:
        parser.error(f"--mu must be in [0, 1], got {args.mu!r}")
    mi = gaussian_mi_table(_gains(args), protocol)
    sched, rates, value = optimize_schedule(protocol, bound, mi, args.mu)
    params = {
        "subcommand": "optimize",
        "protocol": protocol.value,
        "bound": bound.value,
        "mu": args.mu,
        "p_db": args.p_db,
        "g_ab_db": args.g_ab_db,
        "g_ar_db": args.g_ar_db,
        "g_br_db": args.g_br_db,
    }
    if args.format == "csv":
        deltas = [f"{d:.17g}" for d in sched.durations] + [""] * (4 - len(sched.durations))
        text = (
            "protocol,bound,mu,value,r_a,r_b,sum_rate,delta_1,delta_2,delta_3,delta_4\n"
            f"{protocol.value},{bound.value},{args.mu:.17g},{value:.17g},"
            f"{rates.r_a:.17g},{rates.r_b:.17g},{rates.r_a + rates.r_b:.17g},"
            + ",".join(deltas)
            + "\n"
        )
    else:
        text = (
            json.dumps(
                {
                    "meta": _meta(params),
                    "schedule": list(sched.durations),
                    "r_a": rates.r_a,
                    "r_b": rates.r_b,
                    "value": value,
                    "sum_rate": rates.r_a + rates.r_b,
                },
                indent=2,
            )
            + "\n"
        )
    _write_output(text, args.output)
    return 0


def cmd_sweep(parser, args) -> int:
    fixed = {}
    for name in ("p_db", "g_ab_db", "g_ar_db", "g_br_db"):
        val = getattr(args, name)
        if name != args.param and val is not None:
            fixed[name] = val
    spec = SweepSpec(
        param=args.param,
        start_db=args.start_db,
        stop_db=args.stop_db,
        step_db=args.step_db,
        fixed_db=fixed,
    )
    protocols = _parse_protocols(parser, args.protocols)
    rows = sweep_sum_rate(spec, protocols, BoundKind(args.bound))
    _write_output(sweep_table_csv(rows), args.output)
    return 0


def cmd_compare(parser, args) -> int:
    proto_a, bound_a = _parse_spec(parser, args.a, "--a")
    proto_b, bound_b = _parse_spec(parser, args.b, "--b")
    gains = _gains(args)
    region_a = optimized_region(proto_a, bound_a, gaussian_mi_table(gains, proto_a), args.mu_grid)
    region_b = optimized_region(proto_b, bound_b, gaussian_mi_table(gains, proto_b), args.mu_grid)
    witness = exists_point_outside(region_a, region_b, args.tol)
    params = {
        "subcommand": "compare",
        "a": args.a,
        "b": args.b,
        "tol": args.tol,
        "mu_grid": args.mu_grid,
        "p_db": args.p_db,
        "g_ab_db": args.g_ab_db,
        "g_ar_db": args.g_ar_db,
        "g_br_db": args.g_br_db,
    }
    obj = {
        "meta": _meta(params),
        "contained": witness is None,
        "witness": None if witness is None else [witness.r_a, witness.r_b],
    }
    _write_output(json.dumps(obj, indent=2) + "\n", args.output)
    return 0


def cmd_discrete(parser, args) -> int:
    try:
        with open(args.channel) as fh:
            channel = DiscreteChannel.from_json(fh.read())
    except OSError as exc:
        print(f"error: --channel: {exc}", file=sys.stderr)
        return 3
    sched = _parse_delta(parser, args.delta, Protocol.MABC)
    region = mabc_capacity_region(channel, sched, InputGrid(resolution=args.grid_k))
    params = {
        "subcommand": "discrete",
        "channel": args.channel,
        "delta": args.delta,
        "grid_k": args.grid_k,
    }
    _write_output(_region_text(region, args.format, params), args.output)
    return 0


def cmd_mc(parser, args) -> int:
    cfg = FadingConfig(
        alpha=args.alpha,
        d_ab=args.d_ab,
        d_ar=args.d_ar,
        d_br=args.d_br,
        model=args.model,
        power=db_to_linear(args.p_db),
        n_samples=args.samples,
        seed=args.seed,
    )
    protocols = _parse_protocols(parser, args.protocols)
    stats = montecarlo_expected_rates(cfg, protocols)
    obj = montecarlo_stats_json_obj(cfg, stats)
    obj["meta"] = _meta(
        {
            "subcommand": "mc",
            "alpha": args.alpha,
            "d_ab": args.d_ab,
            "d_ar": args.d_ar,
            "d_br": args.d_br,
            "model": args.model,
            "p_db": args.p_db,
            "samples": args.samples,
            "seed": args.seed,
        }
    )
    _write_output(json.dumps(obj, indent=2, sort_keys=True) + "\n", args.output)
    return 0


def cmd_report(parser, args) -> int:
    from .plots import render_region_figure, render_sweep_figure

    os.makedirs(args.out_dir, exist_ok=True)
    gains = _gains(args)
    specs = [
        (Protocol.DT, BoundKind.INNER, "DT"),
        (Protocol.MABC, BoundKind.INNER, "MABC (capacity)"),
        (Protocol.TDBC, BoundKind.INNER, "TDBC inner"),
        (Protocol.TDBC, BoundKind.OUTER, "TDBC outer"),
        (Protocol.HBC, BoundKind.INNER, "HBC inner"),
    ]
    regions = {}
    for proto, bound, label in specs:
        region = optimized_region(proto, bound, gaussian_mi_table(gains, proto), args.mu_grid)
        regions[label] = region
        stem = f"region_{proto.value}_{bound.value}"
        _write_output(region_to_csv(region), os.path.join(args.out_dir, stem + ".csv"))
    title = (
        f"P={args.p_db:g} dB, G_ar={args.g_ar_db:g} dB, "
        f"G_br={args.g_br_db:g} dB, G_ab={args.g_ab_db:g} dB"
    )
    render_region_figure(regions, os.path.join(args.out_dir, "regions.png"), title=title)

    if args.sweep_param is not None:
        if args.start_db is None or args.stop_db is None:
            parser.error("--sweep-param requires --start-db and --stop-db")
        fixed = {
            name: getattr(args, name)
            for name in ("p_db", "g_ab_db", "g_ar_db", "g_br_db")
            if name != args.sweep_param
        }
        spec = SweepSpec(
            param=args.sweep_param,
            start_db=args.start_db,
            stop_db=args.stop_db,
            step_db=args.step_db,
            fixed_db=fixed,
        )
        rows = sweep_sum_rate(
            spec, [Protocol.DT, Protocol.MABC, Protocol.TDBC, Protocol.HBC], BoundKind.INNER
        )
        _write_output(sweep_table_csv(rows), os.path.join(args.out_dir, "sweep.csv"))
        render_sweep_figure(
            rows, os.path.join(args.out_dir, "sweep.png"), xlabel=f"{args.sweep_param} (dB)"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bdrelay",
        description="Rate regions and phase-schedule optimization for "
        "half-duplex bi-directional relaying protocols.",
    )
    parser.add_argument("--version", action="version", version=f"bdrelay {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    protocols = [p.value for p in Protocol]
    bounds = [b.value for b in BoundKind]

    p_region = sub.add_parser("region", help="rate-region vertices for one protocol/bound")
    p_region.add_argument("--protocol", choices=protocols, required=True)
    p_region.add_argument("--bound", choices=bounds, default="inner")
    _add_gain_args(p_region)
    p_region.add_argument("--delta", help="fixed phase durations, comma separated")
    p_region.add_argument("--mu-grid", type=int, default=201)
    p_region.add_argument("--format", choices=["csv", "json"], default="csv")
    p_region.add_argument("--output")

    p_opt = sub.add_parser("optimize", help="optimal schedule and rates for a weight mu")
    p_opt.add_argument("--protocol", choices=protocols, required=True)
    p_opt.add_argument("--bound", choices=bounds, default="inner")
    _add_gain_args(p_opt)
    p_opt.add_argument("--mu", type=float, default=0.5)
    p_opt.add_argument("--format", choices=["csv", "json"], default="json")
    p_opt.add_argument("--output")

    p_sweep = sub.add_parser("sweep", help="sum-rate sweep table over one dB parameter")
    p_sweep.add_argument(
        "--param", choices=["p_db", "g_ab_db", "g_ar_db", "g_br_db"], required=True
    )
    p_sweep.add_argument("--start-db", type=float, required=True)
    p_sweep.add_argument("--stop-db", type=float, required=True)
    p_sweep.add_argument("--step-db", type=float, required=True)
    p_sweep.add_argument("--protocols", default="dt,mabc,tdbc,hbc")
    p_sweep.add_argument("--bound", choices=bounds, default="inner")
    _add_gain_args(p_sweep, required=False)
    p_sweep.add_argument("--output")

    p_cmp = sub.add_parser("compare", help="containment or witness between two regions")
    p_cmp.add_argument("--a", required=True, metavar="PROTOCOL:BOUND")
    p_cmp.add_argument("--b", required=True, metavar="PROTOCOL:BOUND")
    _add_gain_args(p_cmp)
    p_cmp.add_argument("--tol", type=float, default=1e-9)
    p_cmp.add_argument("--mu-grid", type=int, default=201)
    p_cmp.add_argument("--output")

    p_disc = sub.add_parser("discrete", help="discrete MABC capacity region from a channel file")
    p_disc.add_argument("--channel", required=True, help="channel JSON path")
    p_disc.add_argument("--delta", required=True)
    p_disc.add_argument("--grid-k", type=int, default=4)
    p_disc.add_argument("--format", choices=["csv", "json"], default="csv")
    p_disc.add_argument("--output")

    p_mc = sub.add_parser("mc", help="Monte Carlo expected sum rates over fading")
    p_mc.add_argument("--alpha", type=float, required=True)
    p_mc.add_argument("--d-ab", type=float, required=True)
    p_mc.add_argument("--d-ar", type=float, required=True)
    p_mc.add_argument("--d-br", type=float, required=True)
    p_mc.add_argument("--model", choices=["none", "rayleigh"], default="rayleigh")
    p_mc.add_argument("--p-db", type=float, required=True)
    p_mc.add_argument("--samples", type=int, required=True)
    p_mc.add_argument("--seed", type=int, default=0)
    p_mc.add_argument("--protocols", default="dt,mabc,tdbc,hbc")
    p_mc.add_argument("--output")

    p_rep = sub.add_parser("report", help="region/sweep CSVs plus rendered figures")
    _add_gain_args(p_rep)
    p_rep.add_argument("--out-dir", required=True)
    p_rep.add_argument("--mu-grid", type=int, default=201)
    p_rep.add_argument("--sweep-param", choices=["p_db", "g_ab_db", "g_ar_db", "g_br_db"])
    p_rep.add_argument("--start-db", type=float)
    p_rep.add_argument("--stop-db", type=float)
    p_rep.add_argument("--step-db", type=float, default=1.0)

    return parser


_COMMANDS = {
    "region": cmd_region,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "discrete": cmd_discrete,
    "mc": cmd_mc,
    "report": cmd_report,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](parser, args)
    except COMPUTE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
