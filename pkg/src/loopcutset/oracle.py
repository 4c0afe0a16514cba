"""Exact brute-force solvers, a greedy baseline, and cycle enumerators for tests."""
from __future__ import annotations

import heapq
import math
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .graph_core import MultiGraph, is_forest, set_weight
from .loop_cutset import Dag, split_graph, psi
from .random_fvs import FvsResult, Trace
from .reductions import bypass_if_lighter_neighbor, reduce_in_place

ORACLE_CAP = 20
LOOP_CUTSET_CAP = 12


class OracleCapError(ValueError):
    pass


def brute_force_min_wfvs(g: MultiGraph, cap: int = ORACLE_CAP,
                         candidates: Optional[Iterable[int]] = None) -> FvsResult:
    """Minimum-weight FVS by best-first subset enumeration.

    Subsets are popped in order of (weight, size, sorted ids), so the first
    feedback vertex set popped is the answer with ties broken by cardinality
    and then lexicographically. ``candidates`` restricts the allowed members.
    """
    pool = sorted(g if candidates is None else candidates)
    if len(pool) > cap:
        raise OracleCapError("instance too large for oracle")
    w = g.weights
    heap: List[Tuple[float, int, Tuple[int, ...], int]] = [(0.0, 0, (), 0)]
    pops = 0
    while heap:
        weight, size, members, nxt = heapq.heappop(heap)
        pops += 1
        if is_forest(g, members):
            return FvsResult(frozenset(members), weight, Trace(pops, size, 0))
        for j in range(nxt, len(pool)):
            child = members + (pool[j],)
            heapq.heappush(heap, (set_weight(child, w), size + 1, child, j + 1))
    raise ValueError("no feedback vertex set among the candidates")


def brute_force_min_loop_cutset(d: Dag, cap: int = LOOP_CUTSET_CAP) -> Tuple[FrozenSet[int], float]:
    if len(d) > cap:
        raise OracleCapError("instance too large for oracle")
    sg = split_graph(d)
    res = brute_force_min_wfvs(sg.graph, cap=cap, candidates=[sg.out_vertex(v) for v in d.vertices])
    members = psi(res.members, sg)
    return members, d.set_weight(members)


def greedy_ga(g: MultiGraph) -> FvsResult:
    """Branchy-reduce, take the finite vertex maximizing degree/weight, repeat."""
    h = g.copy()
    members = reduce_in_place(h, bypass_if_lighter_neighbor)
    picks = 0
    while len(h):
        best, best_score = None, -1.0
        for v in sorted(h):
            if math.isinf(h.weight(v)):
                continue
            score = h.degree(v) / h.weight(v)
            if score > best_score:
                best, best_score = v, score
        if best is None:
            raise ValueError("no selectable vertex")
        members.append(best)
        picks += 1
        touched = list(h.neighbors(best))
        h.delete_vertex(best)
        members.extend(reduce_in_place(h, bypass_if_lighter_neighbor, touched))
    return FvsResult(frozenset(members), set_weight(members, g.weights), Trace(1, picks, 0))


# -- enumeration helpers ----------------------------------------------------

def simple_cycles(adj: Dict[int, Set[int]]) -> List[Tuple[int, ...]]:
    """All simple cycles (length >= 3) of a simple undirected graph.

    Each cycle is reported once, starting at its smallest vertex and
    oriented so that the second vertex is smaller than the last.
    """
    cycles = []
    for start in sorted(adj):
        stack = [(start, [start], {start})]
        while stack:
            v, path, on_path = stack.pop()
            for u in adj[v]:
                if u == start and len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(tuple(path))
                elif u > start and u not in on_path:
                    stack.append((u, path + [u], on_path | {u}))
    return cycles


def dag_loops(d: Dag) -> List[Tuple[int, ...]]:
    """Loops of ``d``: simple cycles of its underlying undirected graph."""
    adj = {v: set() for v in d.vertices}
    for u, v in d.arcs:
        adj[u].add(v)
        adj[v].add(u)
    return simple_cycles(adj)


def loop_sinks(d: Dag, loop: Tuple[int, ...]) -> Set[int]:
    sinks = set()
    n = len(loop)
    for i, v in enumerate(loop):
        a, b = loop[i - 1], loop[(i + 1) % n]
        if (a, v) in d.arcs and (b, v) in d.arcs:
            sinks.add(v)
    return sinks


def is_loop_cutset_by_enumeration(d: Dag, s: Iterable[int]) -> bool:
    """Direct check: every loop has a member of ``s`` that is not its sink."""
    s = set(s)
    for loop in dag_loops(d):
        if not (s & (set(loop) - loop_sinks(d, loop))):
            return False
    return True
