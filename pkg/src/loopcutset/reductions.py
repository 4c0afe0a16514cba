"""Leaf removal and linkpoint bypassing down to rich or branchy graphs.

Both pipelines apply the same three rules to a fixpoint, visiting vertices
in ascending id and repeating passes until nothing fires:

* a vertex with a self-loop is forced into the output and deleted;
* a leaf (degree <= 1) is deleted;
* a linkpoint (degree 2) is replaced by an edge between its neighbours.
  The rich pipeline bypasses every linkpoint; the branchy pipeline only
  those with a neighbour of equal or lighter weight.

Bypassing a linkpoint whose two edges lead to the same neighbour creates a
self-loop there, so that neighbour is forced on the spot.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, FrozenSet, Iterable, List, Optional

from .graph_core import MultiGraph, set_weight

BypassRule = Callable[[MultiGraph, int], bool]


def bypass_any(g: MultiGraph, v: int) -> bool:
    return True


def bypass_if_lighter_neighbor(g: MultiGraph, v: int) -> bool:
    wv = g.weight(v)
    return any(g.weight(u) <= wv for u in g.neighbors(v))


@dataclass(frozen=True)
class ReductionOutcome:
    reduced: MultiGraph
    forced: FrozenSet[int]
    forced_weight: float


def _fire(g: MultiGraph, v: int, may_bypass: BypassRule, forced: List[int]) -> Optional[list]:
    """Apply the first matching rule at ``v``; return touched vertices or None."""
    if g.self_loops(v):
        touched = list(g.neighbors(v))
        forced.append(v)
        g.delete_vertex(v)
        return touched
    nb = g.neighbors(v)
    deg = sum(nb.values())
    if deg <= 1:
        touched = list(nb)
        g.delete_vertex(v)
        return touched
    if deg == 2 and may_bypass(g, v):
        ends = [u for u, m in nb.items() for _ in range(m)]
        g.delete_vertex(v)
        x, y = ends
        g.add_edge(x, y)
        if x != y:
            return [x, y]
        # 2-cycle through v collapsed into a self-loop on x
        touched = list(g.neighbors(x))
        forced.append(x)
        g.delete_vertex(x)
        return touched
    return None


def reduce_in_place(g: MultiGraph, may_bypass: BypassRule,
                    dirty: Optional[Iterable[int]] = None) -> List[int]:
    """Reduce ``g`` to a fixpoint in place and return the forced vertices in order.

    ``dirty`` restricts the first pass to vertices whose neighbourhood
    changed since ``g`` was last reduced; the result is identical to a full
    ascending-id pass because untouched vertices cannot fire.
    """
    forced: List[int] = []
    pending = set(g) if dirty is None else {v for v in dirty if v in g}
    for v in sorted(pending):
        if v in g and g.self_loops(v):
            pending.update(_fire(g, v, may_bypass, forced))
    while pending:
        heap = sorted(pending)
        queued = set(heap)
        pending = set()
        while heap:
            v = heapq.heappop(heap)
            queued.discard(v)
            if v not in g:
                continue
            touched = _fire(g, v, may_bypass, forced)
            if not touched:
                continue
            for u in touched:
                if u not in g:
                    continue
                if u > v:
                    if u not in queued:
                        heapq.heappush(heap, u)
                        queued.add(u)
                else:
                    pending.add(u)
    return forced


def is_rich(g: MultiGraph) -> bool:
    return all(g.self_loops(v) == 0 and g.degree(v) >= 3 for v in g)


def is_branchy(g: MultiGraph) -> bool:
    for v in g:
        if g.self_loops(v):
            return False
        d = g.degree(v)
        if d <= 1:
            return False
        if d == 2 and any(g.weight(u) <= g.weight(v) for u in g.neighbors(v)):
            return False
    return True


def _outcome(g: MultiGraph, may_bypass: BypassRule) -> ReductionOutcome:
    h = g.copy()
    forced = reduce_in_place(h, may_bypass)
    return ReductionOutcome(h, frozenset(forced), set_weight(forced, g.weights))


def reduce_to_rich(g: MultiGraph) -> ReductionOutcome:
    """Reduce ``g`` to a rich graph (every vertex of degree >= 3, no self-loops)."""
    out = _outcome(g, bypass_any)
    assert is_rich(out.reduced)
    return out


def reduce_to_branchy(g: MultiGraph) -> ReductionOutcome:
    """Reduce ``g`` to a branchy graph, preserving the minimum FVS weight.

    The minimum weight of ``g`` equals that of ``reduced`` plus
    ``forced_weight``.
    """
    out = _outcome(g, bypass_if_lighter_neighbor)
    assert is_branchy(out.reduced)
    return out
