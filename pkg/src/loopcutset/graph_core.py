"""Undirected vertex-weighted multigraphs.

Parallel edges are stored as multiplicity counts and self-loops as a
per-vertex count; edge identities are never needed by the algorithms.
Infinite weight is ``math.inf``.
"""
from __future__ import annotations

import math
from typing import Dict, Iterable, Iterator, Optional, TextIO

INF = math.inf


class FormatError(ValueError):
    """Raised for malformed UGRAPH / BNDAG input."""


def check_weight(w) -> float:
    w = float(w)
    if math.isnan(w) or w <= 0:
        raise ValueError(f"weights must be positive or infinite, got {w!r}")
    return w


def set_weight(members: Iterable[int], weights: Dict[int, float]) -> float:
    """Total weight of ``members``; infinite if any member is."""
    return math.fsum(weights[v] for v in sorted(members))


class MultiGraph:
    def __init__(self) -> None:
        self._adj: Dict[int, Dict[int, int]] = {}
        self._loops: Dict[int, int] = {}
        self._w: Dict[int, float] = {}

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], weights: Optional[Dict[int, float]] = None,
                   vertices: Iterable[int] = ()) -> "MultiGraph":
        """Build a graph from ``(u, v)`` or ``(u, v, multiplicity)`` tuples.

        Vertices default to weight 1.
        """
        g = cls()
        weights = weights or {}
        for v in vertices:
            g.add_vertex(v, weights.get(v, 1.0))
        for e in edges:
            u, v = e[0], e[1]
            for x in (u, v):
                if x not in g:
                    g.add_vertex(x, weights.get(x, 1.0))
            g.add_edge(u, v, e[2] if len(e) > 2 else 1)
        for v, w in weights.items():
            if v not in g:
                g.add_vertex(v, w)
        return g

    def copy(self) -> "MultiGraph":
        h = MultiGraph()
        h._adj = {v: dict(nb) for v, nb in self._adj.items()}
        h._loops = dict(self._loops)
        h._w = dict(self._w)
        return h

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self) -> Iterator[int]:
        return iter(self._adj)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (self._adj == other._adj and self._w == other._w
                and {v: c for v, c in self._loops.items() if c}
                == {v: c for v, c in other._loops.items() if c})

    def __repr__(self) -> str:
        return f"MultiGraph(n={len(self)}, m={self.edge_count()})"

    def vertices(self) -> list:
        return sorted(self._adj)

    def weight(self, v: int) -> float:
        return self._w[v]

    @property
    def weights(self) -> Dict[int, float]:
        return self._w

    def neighbors(self, v: int) -> Dict[int, int]:
        """Neighbor -> multiplicity map of ``v`` (self-loops excluded). Do not mutate."""
        try:
            return self._adj[v]
        except KeyError:
            raise KeyError(f"no such vertex: {v}") from None

    def multiplicity(self, u: int, v: int) -> int:
        if u == v:
            return self.self_loops(u)
        return self.neighbors(u).get(v, 0)

    def self_loops(self, v: int) -> int:
        if v not in self._adj:
            raise KeyError(f"no such vertex: {v}")
        return self._loops.get(v, 0)

    def degree(self, v: int) -> int:
        return sum(self.neighbors(v).values()) + 2 * self._loops.get(v, 0)

    def edge_count(self) -> int:
        half = sum(sum(nb.values()) for nb in self._adj.values())
        return half // 2 + sum(self._loops.values())

    def edges(self) -> Iterator[tuple]:
        """Yield ``(u, v, multiplicity)`` with ``u <= v``; self-loops as ``(v, v, count)``."""
        for u in sorted(self._adj):
            if self._loops.get(u):
                yield u, u, self._loops[u]
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v, self._adj[u][v]

    # -- mutation ---------------------------------------------------------

    def add_vertex(self, v: int, weight=1.0) -> None:
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"vertex ids are non-negative integers, got {v!r}")
        if v in self._adj:
            raise ValueError(f"duplicate vertex: {v}")
        self._adj[v] = {}
        self._w[v] = check_weight(weight)

    def add_edge(self, u: int, v: int, multiplicity: int = 1) -> None:
        if multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")
        if u not in self._adj or v not in self._adj:
            raise KeyError(f"no such vertex: {u if u not in self._adj else v}")
        if u == v:
            self._loops[u] = self._loops.get(u, 0) + multiplicity
            return
        self._adj[u][v] = self._adj[u].get(v, 0) + multiplicity
        self._adj[v][u] = self._adj[v].get(u, 0) + multiplicity

    def delete_vertex(self, v: int) -> None:
        """Remove ``v`` with all incident edges, in place."""
        try:
            nb = self._adj.pop(v)
        except KeyError:
            raise KeyError(f"no such vertex: {v}") from None
        for u in nb:
            del self._adj[u][v]
        self._loops.pop(v, None)
        del self._w[v]


def degree(g: MultiGraph, v: int) -> int:
    return g.degree(v)


def remove_vertex(g: MultiGraph, v: int) -> MultiGraph:
    """Copy of ``g`` without ``v``."""
    h = g.copy()
    h.delete_vertex(v)
    return h


def is_forest(g: MultiGraph, removed=frozenset()) -> bool:
    """True iff ``g`` minus ``removed`` has no cycle."""
    parent: Dict[int, int] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            parent[x], x = root, parent[x]
        return root

    for u, nb in g._adj.items():
        if u in removed:
            continue
        if g._loops.get(u):
            return False
        for v, mult in nb.items():
            if v in removed or v < u:
                continue
            if mult > 1:
                return False
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
    return True


def verify_fvs(g: MultiGraph, f) -> bool:
    f = frozenset(f)
    for v in f:
        if v not in g:
            raise KeyError(f"no such vertex: {v}")
    return is_forest(g, f)


# -- UGRAPH v1 ------------------------------------------------------------

def _fmt_weight(w: float) -> str:
    return "inf" if math.isinf(w) else repr(float(w))


def format_ugraph(g: MultiGraph) -> str:
    lines = [f"graph {len(g)}"]
    for v in g.vertices():
        lines.append(f"node {v} {_fmt_weight(g.weight(v))}")
    for u, v, m in g.edges():
        lines.append(f"selfloop {u} {m}" if u == v else f"edge {u} {v} {m}")
    return "\n".join(lines) + "\n"


def _directives(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected integer, got {tok!r}") from None
    if val < 0:
        raise FormatError(f"line {lineno}: negative integer {val}")
    return val


def parse_ugraph(text: str) -> MultiGraph:
    g = MultiGraph()
    declared = None
    for lineno, toks in _directives(text):
        kind, args = toks[0], toks[1:]
        if declared is None:
            if kind != "graph" or len(args) != 1:
                raise FormatError(f"line {lineno}: expected 'graph <n>' header")
            declared = _int(args[0], lineno)
            continue
        try:
            if kind == "node" and len(args) == 2:
                w = INF if args[1].lower() in ("inf", "infinity") else float(args[1])
                g.add_vertex(_int(args[0], lineno), w)
            elif kind == "edge" and len(args) == 3:
                u, v, m = (_int(a, lineno) for a in args)
                if u == v:
                    raise FormatError(f"line {lineno}: use 'selfloop' for loops")
                g.add_edge(u, v, m)
            elif kind == "selfloop" and len(args) == 2:
                v, m = (_int(a, lineno) for a in args)
                g.add_edge(v, v, m)
            else:
                raise FormatError(f"line {lineno}: bad directive {' '.join(toks)!r}")
        except (ValueError, KeyError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from None
    if declared is None:
        raise FormatError("missing 'graph <n>' header")
    if declared != len(g):
        raise FormatError(f"header declares {declared} nodes, found {len(g)}")
    return g


def read_ugraph(fp: TextIO) -> MultiGraph:
    return parse_ugraph(fp.read())
