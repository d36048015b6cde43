"""Exact power indices and false-name manipulation checks for weighted voting games."""
from .counting import (
    WeightCardTable,
    WeightCountTable,
    brute_force_weight_counts,
    build_weight_card_table,
    build_weight_table,
    count_in_range,
)
from .errors import ResourceLimit, TooLarge, ValidationError, WVGError
from .game import WeightedVotingGame, coalition_weight, new_game, wins
from .indices import (
    IndexFamily,
    PowerReport,
    brute_force_banzhaf,
    brute_force_shapley,
    full_report,
    normalized_banzhaf,
    power,
    probabilistic_banzhaf,
    raw_banzhaf,
    raw_shapley_shubik,
    shapley_shubik,
)
from .manipulation import (
    ManipulationVerdict,
    MergeSpec,
    SplitSpec,
    enumerate_partitions,
    evaluate_split,
    is_beneficial_merge,
    merge,
    search_beneficial_split,
    split,
)
from .reductions import (
    CompareInstance,
    CompareRInstance,
    ReductionCertificate,
    RRInstance,
    SubsetSumInstance,
    count_subset_sum,
    decide_compare,
    decide_rr,
    normalize_times8,
    reduce_compare_to_r,
    reduce_r_to_rr,
    rr_to_banzhaf_merge,
    rr_to_banzhaf_split,
    rr_to_shapley_merge,
    verify_banzhaf_merge_identity,
    verify_shapley_merge_identity,
)
from .x3c import X3CInstance, count_x3c, reduce_x3c_to_subsetsum

__version__ = "0.1.0"
