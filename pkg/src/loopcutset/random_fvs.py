"""Randomized feedback-vertex-set algorithms and their amplification wrappers.

All samplers pick a vertex directly with probability proportional to its
degree (or degree over weight); picking a uniform edge and then a uniform
endpoint gives the same distribution on self-loop-free graphs.  Vertices of
infinite weight are never sampled, and the distribution is renormalized
over the finite-weight ones.

Single-trial algorithms return ``None`` for "Fail".
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .graph_core import MultiGraph, set_weight
from .reductions import BypassRule, bypass_any, bypass_if_lighter_neighbor, reduce_in_place
from .rng import RandomStream

DEFAULT_TRIAL_CAP = 2 ** 31


class SelectionMode(enum.Enum):
    DEGREE = "degree"
    DEGREE_OVER_WEIGHT = "degree/weight"


class NoSelectableVertex(ValueError):
    pass


@dataclass(frozen=True)
class Trace:
    trials_run: int
    k_reached: int
    seed: int
    saturated: bool = False
    incumbents: Tuple[float, ...] = ()


@dataclass(frozen=True)
class FvsResult:
    members: FrozenSet[int]
    total_weight: float
    trace: Trace = field(compare=False)

    @property
    def size(self) -> int:
        return len(self.members)


def _scores(g: MultiGraph, mode: SelectionMode) -> List[Tuple[int, float]]:
    out = []
    for v in sorted(g):
        w = g.weight(v)
        if math.isinf(w):
            continue
        d = g.degree(v)
        out.append((v, d if mode is SelectionMode.DEGREE else d / w))
    return out


def selection_probabilities(g: MultiGraph, mode: SelectionMode) -> Dict[int, float]:
    """Exact per-vertex pick probabilities under ``mode``."""
    scores = _scores(g, mode)
    total = math.fsum(s for _, s in scores)
    if not scores:
        raise NoSelectableVertex("no selectable vertex")
    if total == 0:
        # only isolated finite vertices left: uniform
        return {v: 1 / len(scores) for v, _ in scores}
    return {v: s / total for v, s in scores}


def sample_vertex(g: MultiGraph, mode: SelectionMode, rng: RandomStream) -> int:
    scores = _scores(g, mode)
    if not scores:
        raise NoSelectableVertex("no selectable vertex")
    total = sum(s for _, s in scores)
    if total == 0:
        return scores[int(rng.random() * len(scores))][0]
    r = rng.random() * total
    acc = 0.0
    for v, s in scores:
        acc += s
        if r < acc:
            return v
    return next(v for v, s in reversed(scores) if s > 0)


class _Prereduced:
    """First reduction of a graph, shared by repeated trials (it is deterministic)."""

    def __init__(self, g: MultiGraph, may_bypass: BypassRule):
        self.graph = g.copy()
        self.forced = reduce_in_place(self.graph, may_bypass)


def _guess(g: MultiGraph, k: Optional[int], may_bypass: BypassRule,
           mode: SelectionMode, rng: RandomStream,
           start: Optional[_Prereduced] = None) -> Tuple[Optional[List[int]], int]:
    """One guessing run; ``k=None`` means unbounded. Returns (members or None, picks)."""
    if start is None:
        start = _Prereduced(g, may_bypass)
    h = start.graph.copy()
    members = list(start.forced)
    picks = 0
    while True:
        if k is not None and len(members) > k:
            return None, picks
        if not len(h):
            return members, picks
        if k is not None and len(members) == k:
            return None, picks
        v = sample_vertex(h, mode, rng)
        members.append(v)
        picks += 1
        touched = list(h.neighbors(v))
        h.delete_vertex(v)
        members.extend(reduce_in_place(h, may_bypass, touched))


def _result(g, members, trace) -> FvsResult:
    return FvsResult(frozenset(members), set_weight(members, g.weights), trace)


def single_guess(g: MultiGraph, k: int, rng: RandomStream) -> Optional[FvsResult]:
    """FVS of size <= k via rich reductions and degree-proportional picks, or None.

    Weights are ignored for selection. Forced vertices count toward ``k``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    members, _ = _guess(g, k, bypass_any, SelectionMode.DEGREE, rng)
    if members is None:
        return None
    return _result(g, members, Trace(1, k, rng.seed))


def single_wguess_i(g: MultiGraph, k: int, rng: RandomStream) -> Optional[FvsResult]:
    """As :func:`single_guess` but with branchy reductions."""
    if k < 1:
        raise ValueError("k must be >= 1")
    members, _ = _guess(g, k, bypass_if_lighter_neighbor, SelectionMode.DEGREE, rng)
    if members is None:
        return None
    return _result(g, members, Trace(1, k, rng.seed))


def single_wguess_ii(g: MultiGraph, rng: RandomStream) -> FvsResult:
    """Unbounded run picking by degree/weight; expected weight <= 6x optimum."""
    members, picks = _guess(g, None, bypass_if_lighter_neighbor,
                            SelectionMode.DEGREE_OVER_WEIGHT, rng)
    return _result(g, members, Trace(1, picks, rng.seed))


def trial_budget(c: float, base: int, k: int, cap: int = DEFAULT_TRIAL_CAP) -> Tuple[int, bool]:
    """``ceil(c * base**k)`` saturated at ``cap``; returns (count, saturated)."""
    if c < 1:
        raise ValueError("c must be >= 1")
    if math.log(c) + k * math.log(base) >= math.log(cap):
        return cap, True
    return min(math.ceil(c * base ** k), cap), False


def repeated_guess(g: MultiGraph, c: float, rng: RandomStream,
                   cap: int = DEFAULT_TRIAL_CAP) -> FvsResult:
    """Sweep k = 1..|V| with ceil(c*4^k) independent single guesses each.

    Returns the first success. Trial ``t`` (counted across the sweep) draws
    from ``rng.spawn(t)``.
    """
    trials = 0
    saturated = False
    start = _Prereduced(g, bypass_any)
    for k in range(1, len(g) + 1):
        budget, sat = trial_budget(c, 4, k, cap)
        saturated |= sat
        for _ in range(budget):
            members, _ = _guess(g, k, bypass_any, SelectionMode.DEGREE, rng.spawn(trials), start)
            trials += 1
            if members is not None:
                return _result(g, members, Trace(trials, k, rng.seed, saturated))
    # empty graph
    return _result(g, [], Trace(trials, 0, rng.seed, saturated))


def repeated_wguess_i(g: MultiGraph, c: float, k: int, rng: RandomStream,
                      cap: int = DEFAULT_TRIAL_CAP) -> Optional[FvsResult]:
    """Lightest success over ceil(c*6^k) runs of :func:`single_wguess_i`.

    ``None`` means no FVS of size <= k was seen: with high probability the
    minimum-weight FVS has more than ``k`` vertices.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    budget, saturated = trial_budget(c, 6, k, cap)
    best = None
    best_w = math.inf
    start = _Prereduced(g, bypass_if_lighter_neighbor)
    for t in range(budget):
        members, _ = _guess(g, k, bypass_if_lighter_neighbor, SelectionMode.DEGREE, rng.spawn(t),
                            start)
        if members is None:
            continue
        w = set_weight(members, g.weights)
        if best is None or w < best_w:
            best, best_w = members, w
    if best is None:
        return None
    return _result(g, best, Trace(budget, k, rng.seed, saturated))


def wra_budget(c: float, weight: float, max_iters: int) -> float:
    """min(max_iters, c * 6**weight), saturating to max_iters on overflow."""
    try:
        m = c * math.pow(6.0, weight)
    except OverflowError:
        return max_iters
    return min(max_iters, m)


def wra(g: MultiGraph, c: float, max_iters: int, rng: RandomStream) -> FvsResult:
    """Keep the lightest of repeated unbounded branchy guesses.

    The loop budget ``min(max_iters, c * 6**w(F))`` shrinks whenever the
    incumbent ``F`` improves. An equal-weight run replaces the incumbent.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    n = max(len(g), 1)
    start = _Prereduced(g, bypass_if_lighter_neighbor)

    def run(t):
        members, _ = _guess(g, n, bypass_if_lighter_neighbor, SelectionMode.DEGREE, rng.spawn(t),
                            start)
        return members, set_weight(members, g.weights)

    best, best_w = run(0)
    incumbents = [best_w]
    budget = wra_budget(c, best_w, max_iters)
    i = 1
    while i <= budget:
        members, w = run(i)
        if w <= best_w:
            best, best_w = members, w
            incumbents.append(w)
            budget = wra_budget(c, best_w, max_iters)
        i += 1
    return _result(g, best, Trace(i, len(g), rng.seed, False, tuple(incumbents)))
