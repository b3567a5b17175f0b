"""Rate regions, outer bounds and phase-schedule optimization for
half-duplex bi-directional relaying protocols (DT, MABC, TDBC, HBC)."""

__version__ = "0.1.0"

from .channel_model import (
    ChannelGains,
    MITable,
    Protocol,
    capacity_c,
    db_to_linear,
    gaussian_mi_table,
    linear_to_db,
)
from .rate_region import (
    EmptyRegionError,
    HalfPlane,
    RatePair,
    RateRegion,
    UnboundedRegionError,
    contains,
    exists_point_outside,
    hull_union,
    max_weighted_rate,
    region_from_csv,
    region_from_halfplanes,
    region_from_json,
    region_to_csv,
    region_to_json,
)
from .protocol_bounds import (
    BoundKind,
    ConstraintSet,
    LinearConstraint,
    PhaseSchedule,
    UnsupportedBoundError,
    build_constraints,
    fixed_delta_region,
)
from .lp_optimizer import (
    LinearProgram,
    LpSolution,
    optimize_schedule,
    optimized_region,
    simplex_solve,
)
from .discrete_capacity import (
    DiscreteChannel,
    InputGrid,
    ResourceLimitError,
    mabc_capacity_region,
    mabc_fixed_inputs_region,
    mutual_information,
    mutual_information_cond,
)
from .fading import (
    FadingConfig,
    SweepSpec,
    montecarlo_expected_rates,
    sample_gains,
    sweep_sum_rate,
)

__all__ = [
    "BoundKind",
    "ChannelGains",
    "ConstraintSet",
    "DiscreteChannel",
    "EmptyRegionError",
    "FadingConfig",
    "HalfPlane",
    "InputGrid",
    "LinearConstraint",
    "LinearProgram",
    "LpSolution",
    "MITable",
    "PhaseSchedule",
    "Protocol",
    "RatePair",
    "RateRegion",
    "ResourceLimitError",
    "SweepSpec",
    "UnboundedRegionError",
    "UnsupportedBoundError",
    "build_constraints",
    "capacity_c",
    "contains",
    "db_to_linear",
    "exists_point_outside",
    "fixed_delta_region",
    "gaussian_mi_table",
    "hull_union",
    "linear_to_db",
    "mabc_capacity_region",
    "mabc_fixed_inputs_region",
    "max_weighted_rate",
    "montecarlo_expected_rates",
    "mutual_information",
    "mutual_information_cond",
    "optimize_schedule",
    "optimized_region",
    "region_from_csv",
    "region_from_halfplanes",
    "region_from_json",
    "region_to_csv",
    "region_to_json",
    "sample_gains",
    "simplex_solve",
    "sweep_sum_rate",
]
