"""Two integer games against filters on the natural numbers, at finite horizons.

The library referees the games, implements the strategy constructions the
games' theory provides (diagonal refutation, strategy stealing, dominating
function extraction, growth-tower counterplay), and ships desk-scale checkers
for boundedness, block escape, and rareness of concrete filters.
"""

from .characterize import (
    BoundednessReport,
    EscapeReport,
    RarenessReport,
    check_enum_bounded,
    check_partition_escape,
    check_rare_at_horizon,
)
from .constructions import (
    ClaimInconclusive,
    ClaimRefuted,
    ClaimWitness,
    CounterplayEvidence,
    DiagonalPairEvidence,
    DirectDefeatEvidence,
    DominatingFunctionTable,
    GrowthTower,
    InconclusiveEvidence,
    StealEvidence,
    build_g_h,
    claim_search,
    defeat_one_g2,
    extract_dominating_function,
    refute_two_g1,
    steal_two_g2,
)
from .errors import (
    FilterGameError,
    InsufficientHorizonError,
    NoSelectorError,
    OutOfRangeError,
    PreconditionError,
    ResourceCapError,
    SpecParseError,
    UnsupportedKindError,
)
from .filters import (
    BaseGeneratedFilter,
    FilterHandle,
    FrechetFilter,
    NonRareWitnessFilter,
    PrefixStatus,
    RareOracleFilter,
    SetGenerator,
    StatusState,
    block_hit_counts,
    enum_base,
    nonzero_block_hits,
    parse_filter_spec,
    prefix_status,
    rare_selector,
)
from .model import (
    Inning,
    IntervalPartition,
    SetPrefix,
    Transcript,
    UniformPartition,
    parse_partition_spec,
    validate_transcript,
)
from .referee import G1Verdict, G2Verdict, domination_index, judge_g1, judge_g2, play
from .strategies import (
    Strategy,
    bound_over,
    bound_prefix_sum,
    normalize_strategy,
    one_dominator,
    one_tactic_nonrare,
    stock_strategy,
)

__version__ = "0.1.0"
