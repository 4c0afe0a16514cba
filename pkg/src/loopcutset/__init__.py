"""Randomized minimum-weight feedback vertex sets and loop cutsets."""
from .graph_core import INF, FormatError, MultiGraph, degree, is_forest, remove_vertex, verify_fvs
from .loop_cutset import CutsetResult, Dag, SplitGraph, psi, rlc, split_graph, verify_loop_cutset
from .oracle import OracleCapError, brute_force_min_loop_cutset, brute_force_min_wfvs, greedy_ga
from .random_fvs import (
    FvsResult,
    SelectionMode,
    Trace,
    repeated_guess,
    repeated_wguess_i,
    sample_vertex,
    selection_probabilities,
    single_guess,
    single_wguess_i,
    single_wguess_ii,
    wra,
)
from .reductions import ReductionOutcome, reduce_to_branchy, reduce_to_rich
from .rng import RandomStream

__version__ = "0.1.0"
