"""Loop cutsets of Bayesian-network DAGs via the splitting graph.

Every vertex ``v`` of the DAG becomes ``v_in`` (incident to arcs into ``v``,
infinite weight) and ``v_out`` (incident to arcs out of ``v``, weight
``log2(domain_size(v))``), joined by an edge. Loops of the DAG correspond
one-to-one to cycles of this undirected graph, and deleting ``v_out`` breaks
exactly the loops on which ``v`` is not a sink.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Dict, FrozenSet, Iterable, Tuple

from .graph_core import INF, FormatError, MultiGraph, _directives, _int, is_forest
from .random_fvs import FvsResult, wra
from .rng import RandomStream

IN, OUT = "in", "out"


class NotADag(ValueError):
    pass


class Dag:
    """Directed acyclic graph with a domain size per vertex."""

    def __init__(self, domain_sizes: Dict[int, int], arcs: Iterable[Tuple[int, int]] = ()):
        self.domain_size: Dict[int, int] = {}
        for v, size in domain_sizes.items():
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"vertex ids are non-negative integers, got {v!r}")
            if int(size) < 2:
                raise ValueError(f"domain size of {v} must be >= 2, got {size}")
            self.domain_size[v] = int(size)
        self.arcs: FrozenSet[Tuple[int, int]] = frozenset()
        seen = set()
        for u, v in arcs:
            if u not in self.domain_size or v not in self.domain_size:
                raise ValueError(f"arc ({u}, {v}) references an unknown vertex")
            if u == v:
                raise NotADag("input is not a DAG: self-arc at %d" % u)
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
        self.arcs = frozenset(seen)
        try:
            tuple(TopologicalSorter(self.parents()).static_order())
        except CycleError:
            raise NotADag("input is not a DAG") from None

    @property
    def vertices(self) -> list:
        return sorted(self.domain_size)

    def __len__(self) -> int:
        return len(self.domain_size)

    def parents(self) -> Dict[int, set]:
        out = {v: set() for v in self.domain_size}
        for u, v in self.arcs:
            out[v].add(u)
        return out

    def weight(self, v: int) -> float:
        return math.log2(self.domain_size[v])

    def set_weight(self, members: Iterable[int]) -> float:
        return math.fsum(self.weight(v) for v in sorted(members))

    def __eq__(self, other) -> bool:
        return isinstance(other, Dag) and (self.domain_size, self.arcs) == (other.domain_size, other.arcs)

    def __repr__(self) -> str:
        return f"Dag(n={len(self)}, arcs={len(self.arcs)})"


@dataclass(frozen=True)
class SplitGraph:
    graph: MultiGraph
    origin: Dict[int, Tuple[int, str]]
    index: Dict[Tuple[int, str], int]

    def in_vertex(self, v: int) -> int:
        return self.index[(v, IN)]

    def out_vertex(self, v: int) -> int:
        return self.index[(v, OUT)]


def split_graph(d: Dag) -> SplitGraph:
    """Splitting graph of ``d``; the i-th vertex in id order maps to 2i (in) and 2i+1 (out)."""
    g = MultiGraph()
    origin, index = {}, {}
    for i, v in enumerate(d.vertices):
        vin, vout = 2 * i, 2 * i + 1
        g.add_vertex(vin, INF)
        g.add_vertex(vout, d.weight(v))
        g.add_edge(vin, vout)
        origin[vin], origin[vout] = (v, IN), (v, OUT)
        index[(v, IN)], index[(v, OUT)] = vin, vout
    for u, v in sorted(d.arcs):
        g.add_edge(index[(u, OUT)], index[(v, IN)])
    return SplitGraph(g, origin, index)


def psi(x: Iterable[int], s: SplitGraph) -> FrozenSet[int]:
    """Collapse split vertices onto their originals."""
    out = set()
    for v in x:
        try:
            out.add(s.origin[v][0])
        except KeyError:
            raise KeyError(f"no such split vertex: {v}") from None
    return frozenset(out)


def verify_loop_cutset(d: Dag, s: Iterable[int]) -> bool:
    sg = split_graph(d)
    return is_forest(sg.graph, {sg.out_vertex(v) for v in s})


@dataclass(frozen=True)
class CutsetResult:
    members: FrozenSet[int]
    log2_weight: float
    trials: int
    seed: int
    fvs: FvsResult

    def to_json(self) -> str:
        return json.dumps({
            "cutset": sorted(self.members),
            "log2_weight": self.log2_weight,
            "trials": self.trials,
            "seed": self.seed,
        }, sort_keys=True)


def rlc(d: Dag, c: float, max_iters: int, rng: RandomStream) -> CutsetResult:
    """Loop cutset from WRA on the splitting graph, mapped back through psi."""
    sg = split_graph(d)
    res = wra(sg.graph, c, max_iters, rng)
    members = psi(res.members, sg)
    return CutsetResult(members, d.set_weight(members), res.trace.trials_run, rng.seed, res)


# -- BNDAG v1 -------------------------------------------------------------

def format_bndag(d: Dag) -> str:
    lines = [f"dag {len(d)}"]
    lines += [f"node {v} {d.domain_size[v]}" for v in d.vertices]
    lines += [f"arc {u} {v}" for u, v in sorted(d.arcs)]
    return "\n".join(lines) + "\n"


def parse_bndag(text: str) -> Dag:
    declared = None
    domains: Dict[int, int] = {}
    arcs = []
    for lineno, toks in _directives(text):
        kind, args = toks[0], toks[1:]
        if declared is None:
            if kind != "dag" or len(args) != 1:
                raise FormatError(f"line {lineno}: expected 'dag <n>' header")
            declared = _int(args[0], lineno)
        elif kind == "node" and len(args) == 2:
            v, size = _int(args[0], lineno), _int(args[1], lineno)
            if v in domains:
                raise FormatError(f"line {lineno}: duplicate node {v}")
            domains[v] = size
        elif kind == "arc" and len(args) == 2:
            arcs.append((_int(args[0], lineno), _int(args[1], lineno)))
        else:
            raise FormatError(f"line {lineno}: bad directive {' '.join(toks)!r}")
    if declared is None:
        raise FormatError("missing 'dag <n>' header")
    if declared != len(domains):
        raise FormatError(f"header declares {declared} nodes, found {len(domains)}")
    try:
        return Dag(domains, arcs)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
