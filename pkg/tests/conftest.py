import itertools
import random

import pytest
from hypothesis import strategies as st

from loopcutset import Dag, MultiGraph, is_forest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report():
    def _report(num, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
        return ok
    return _report


# -- builders ---------------------------------------------------------------

def figure1(eps=0.1, m=10.0):
    """Center a=0 (weight 6) with three parallel edges to b=1 (3*eps) and to c=2 (3*m)."""
    return MultiGraph.from_edges([(0, 1, 3), (0, 2, 3)], {0: 6.0, 1: 3 * eps, 2: 3 * m})


def cycle(n, weights=None):
    return MultiGraph.from_edges([(i, (i + 1) % n) for i in range(n)], weights)


def path(n):
    return MultiGraph.from_edges([(i, i + 1) for i in range(n - 1)], vertices=range(n))


def complete(n, weights=None):
    return MultiGraph.from_edges(list(itertools.combinations(range(n), 2)), weights)


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph.from_edges(outer + spokes + inner)


def diamond(domains=(2, 2, 2, 2)):
    return Dag(dict(enumerate(domains)), [(0, 1), (0, 2), (1, 3), (2, 3)])


def triangle_dag(domains=(2, 4, 2)):
    return Dag(dict(enumerate(domains)), [(0, 1), (1, 2), (0, 2)])


def random_multigraph(rnd, n, m, loops=0.05, weights="unit"):
    """Random multigraph; ``weights`` is 'unit', 'int' (1..5) or 'real' (0.1..10)."""
    g = MultiGraph()
    for v in range(n):
        if weights == "unit":
            w = 1.0
        elif weights == "int":
            w = float(rnd.randint(1, 5))
        else:
            w = rnd.uniform(0.1, 10.0)
        g.add_vertex(v, w)
    for _ in range(m if n else 0):
        u = rnd.randrange(n)
        v = u if rnd.random() < loops else rnd.randrange(n)
        g.add_edge(u, v)
    return g


def sparse_multigraph(rnd, n, extra, weights="real"):
    """Random forest on n vertices plus ``extra`` edges (cyclomatic number <= extra)."""
    g = random_multigraph(rnd, n, 0, weights=weights)
    for v in range(1, n):
        if rnd.random() < 0.9:
            g.add_edge(v, rnd.randrange(v))
    for _ in range(extra if n else 0):
        u = rnd.randrange(n)
        v = u if rnd.random() < 0.1 else rnd.randrange(n)
        g.add_edge(u, v)
    return g


def random_dag(rnd, n, m, dlo=2, dhi=6):
    order = list(range(n))
    rnd.shuffle(order)
    pairs = list(itertools.combinations(order, 2))
    arcs = rnd.sample(pairs, min(m, len(pairs)))
    return Dag({v: rnd.randint(dlo, dhi) for v in range(n)}, arcs)


def exhaustive_min_fvs(g, weighted=True, candidates=None):
    """Plain enumeration of all subsets; independent of the best-first oracle."""
    verts = sorted(g if candidates is None else candidates)
    best = None
    for r in range(len(verts) + 1):
        for sub in itertools.combinations(verts, r):
            if is_forest(g, frozenset(sub)):
                w = sum(g.weight(v) for v in sub) if weighted else len(sub)
                if best is None or w < best - 1e-12:
                    best = w
        if not weighted and best is not None:
            break
    return best


@st.composite
def multigraphs(draw, max_n=9, max_m=16, weighted=False):
    n = draw(st.integers(0, max_n))
    g = MultiGraph()
    for v in range(n):
        w = draw(st.sampled_from([1.0, 2.0, 0.5, 3.0])) if weighted else 1.0
        g.add_vertex(v, w)
    if n:
        edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                              max_size=max_m))
        for u, v in edges:
            g.add_edge(u, v)
    return g


@pytest.fixture
def rnd():
    return random.Random(12345)
