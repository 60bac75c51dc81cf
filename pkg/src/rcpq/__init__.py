"""Range closest-pair queries over static planar point sets."""

from .analysis import (CandidatePairWitness, del_square_edge, gen_lower_bound_instance,
                       is_candidate_witness, square_candidate_survey)
from .anchored_square import AnchoredSquareResult, AnchoredSquares, as_build, as_query
from .closest_pair import PairResult, closest_pair_brute, closest_pair_fast
from .geometry import Point, Rect, RegionSet, compute_regions, packing_threshold
from .index import QueryOutcome, RcpIndex, Step4OverflowWarning, rcp_build, rcp_query, rcp_query_delta
from .range_tree import GeneralPositionError, RangeTree, rt_build
from .rmq import RmqIndex, rmq_build, rmq_query
from .yao import YaoGraph, yao_build, yao_weighted_sets

__all__ = [
    "AnchoredSquareResult", "AnchoredSquares", "CandidatePairWitness", "GeneralPositionError",
    "PairResult", "Point", "QueryOutcome", "RangeTree", "RcpIndex", "Rect", "RegionSet",
    "RmqIndex", "Step4OverflowWarning", "YaoGraph", "as_build", "as_query", "closest_pair_brute",
    "closest_pair_fast", "compute_regions", "del_square_edge", "gen_lower_bound_instance",
    "is_candidate_witness", "packing_threshold", "rcp_build", "rcp_query", "rcp_query_delta",
    "rmq_build", "rmq_query", "rt_build", "square_candidate_survey", "yao_build",
    "yao_weighted_sets",
]
