"""Instance generation, benchmark runs and success-rate estimation."""
from __future__ import annotations

import csv
import io
import math
import time
import zlib
from dataclasses import dataclass, fields
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .graph_core import MultiGraph, format_ugraph, parse_ugraph, verify_fvs
from .loop_cutset import Dag, format_bndag, parse_bndag, psi, split_graph, verify_loop_cutset
from .oracle import OracleCapError, brute_force_min_loop_cutset, brute_force_min_wfvs, greedy_ga
from .random_fvs import (
    FvsResult,
    repeated_guess,
    repeated_wguess_i,
    single_guess,
    single_wguess_i,
    single_wguess_ii,
    wra,
)
from .rng import RandomStream

Instance = Union[MultiGraph, Dag]

# canonical names; position fixes each algorithm's random stream
ALGOS = ("guess", "repeat", "wguess1", "wguess2", "rwguess1", "wra", "ga", "oracle")
ALIASES = {"repeated_guess": "repeat", "repeated_wguess_i": "rwguess1", "single_guess": "guess",
           "single_wguess_i": "wguess1", "single_wguess_ii": "wguess2"}
UNIT_ALGOS = {"guess", "repeat"}
TOL = 1e-9


def canonical_algo(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in ALGOS:
        raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGOS)}")
    return name


@dataclass(frozen=True)
class CorpusSpec:
    n_vertices: int
    n_edges: int
    domain_lo: int = 2
    domain_hi: int = 2
    n_instances: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.n_vertices < 0 or self.n_edges < 0 or self.n_instances < 0:
            raise ValueError("counts must be non-negative")
        if not 2 <= self.domain_lo <= self.domain_hi:
            raise ValueError("need 2 <= domain_lo <= domain_hi")
        if self.n_edges > self.n_vertices * (self.n_vertices - 1) // 2:
            raise ValueError(f"{self.n_edges} edges do not fit on {self.n_vertices} vertices")


@dataclass(frozen=True)
class Budget:
    c: float = 1.0
    max_iters: int = 300
    k: Optional[int] = None


def gen_random_dag(spec: CorpusSpec, rng: RandomStream) -> Dag:
    """Random topological order, then ``n_edges`` order-respecting arcs without replacement."""
    order = list(range(spec.n_vertices))
    rng.shuffle(order)
    pairs = list(combinations(order, 2))
    arcs = rng.sample(pairs, spec.n_edges)
    domains = {v: rng.randint(spec.domain_lo, spec.domain_hi) for v in range(spec.n_vertices)}
    return Dag(domains, arcs)


def gen_random_graph(spec: CorpusSpec, rng: RandomStream, weighted: bool = True) -> MultiGraph:
    """Uniform simple graph; weights are log2 of uniform domain sizes, or 1."""
    n = spec.n_vertices
    edges = rng.sample(list(combinations(range(n), 2)), spec.n_edges)
    g = MultiGraph()
    for v in range(n):
        g.add_vertex(v, math.log2(rng.randint(spec.domain_lo, spec.domain_hi)) if weighted else 1.0)
    for u, v in sorted(edges):
        g.add_edge(u, v)
    return g


def gen_corpus(kind: str, spec: CorpusSpec) -> List[Tuple[str, Instance]]:
    base = RandomStream(spec.seed)
    out = []
    for i in range(spec.n_instances):
        rng = base.spawn(i)
        inst = gen_random_dag(spec, rng) if kind == "dag" else gen_random_graph(spec, rng)
        out.append((f"{kind}_{i:04d}", inst))
    return out


def write_corpus(corpus: Sequence[Tuple[str, Instance]], out_dir: Path) -> List[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, inst in corpus:
        if isinstance(inst, Dag):
            p = out_dir / f"{name}.bndag"
            p.write_text(format_bndag(inst))
        else:
            p = out_dir / f"{name}.ugraph"
            p.write_text(format_ugraph(inst))
        paths.append(p)
    return paths


def load_instance(path: Path) -> Instance:
    text = Path(path).read_text()
    for line in text.splitlines():
        head = line.split("#", 1)[0].split()
        if head:
            return parse_bndag(text) if head[0] == "dag" else parse_ugraph(text)
    return parse_ugraph(text)


def load_corpus(directory: Path) -> List[Tuple[str, Instance]]:
    paths = sorted(p for p in Path(directory).iterdir() if p.suffix in (".ugraph", ".bndag"))
    return [(p.stem, load_instance(p)) for p in paths]


# -- running algorithms -----------------------------------------------------

def run_fvs_algo(name: str, g: MultiGraph, budget: Budget, rng: RandomStream) -> Optional[FvsResult]:
    """Dispatch by canonical name. ``None`` means Fail / k too small."""
    name = canonical_algo(name)
    k = budget.k
    if name in ("guess", "wguess1", "rwguess1") and k is None:
        k = max(len(greedy_ga(g).members), 1) if name == "rwguess1" else max(len(g), 1)
    if name == "guess":
        return single_guess(g, k, rng)
    if name == "repeat":
        return repeated_guess(g, budget.c, rng)
    if name == "wguess1":
        return single_wguess_i(g, k, rng)
    if name == "wguess2":
        return single_wguess_ii(g, rng)
    if name == "rwguess1":
        return repeated_wguess_i(g, budget.c, k, rng)
    if name == "wra":
        return wra(g, budget.c, budget.max_iters, rng)
    if name == "ga":
        return greedy_ga(g)
    return brute_force_min_wfvs(g)


def instance_stream(seed: int, instance_id: str, algo: str) -> RandomStream:
    """Stream keyed by instance name, so results do not depend on corpus order."""
    return RandomStream(seed, (zlib.crc32(instance_id.encode()), ALGOS.index(canonical_algo(algo))))


@dataclass
class BenchRow:
    instance_id: str
    n: int
    m: int
    algo: str
    seed: int
    weight: Optional[float]
    size: Optional[int]
    iterations: int
    elapsed_ms: int
    members: Tuple[int, ...] = ()
    status: str = "ok"


def bench_instance(instance_id: str, inst: Instance, algo: str, budget: Budget,
                   seed: int, timing: bool = False) -> BenchRow:
    algo = canonical_algo(algo)
    rng = instance_stream(seed, instance_id, algo)
    if isinstance(inst, Dag):
        n, m = len(inst), len(inst.arcs)
        sg = split_graph(inst)
        g = sg.graph
    else:
        n, m = len(inst), inst.edge_count()
        g = inst
    t0 = time.perf_counter()
    status, members, iterations = "ok", None, 0
    try:
        if isinstance(inst, Dag) and algo == "oracle":
            members, _ = brute_force_min_loop_cutset(inst)
            iterations = 1
        else:
            res = run_fvs_algo(algo, g, budget, rng)
            if res is None:
                status = "fail"
            else:
                members = psi(res.members, sg) if isinstance(inst, Dag) else res.members
                iterations = res.trace.trials_run
    except OracleCapError:
        status = "oracle-cap"
    elapsed = round((time.perf_counter() - t0) * 1000) if timing else 0
    if members is None:
        return BenchRow(instance_id, n, m, algo, seed, None, None, iterations, elapsed, (), status)
    weight = inst.set_weight(members) if isinstance(inst, Dag) else math.fsum(
        inst.weight(v) for v in sorted(members))
    return BenchRow(instance_id, n, m, algo, seed, weight, len(members), iterations, elapsed,
                    tuple(sorted(members)), status)


def summarize(rows: Iterable[BenchRow], algos: Sequence[str]) -> Dict:
    by_inst: Dict[str, Dict[str, BenchRow]] = {}
    for r in rows:
        by_inst.setdefault(r.instance_id, {})[r.algo] = r
    algos = [canonical_algo(a) for a in algos]
    means = {}
    for a in algos:
        ws = [by_inst[i][a].weight for i in sorted(by_inst)
              if a in by_inst[i] and by_inst[i][a].weight is not None]
        means[a] = math.fsum(ws) / len(ws) if ws else None
    pairs = {}
    for i, a in enumerate(algos):
        for b in algos[i + 1:]:
            win = tie = loss = 0
            for inst in by_inst.values():
                ra, rb = inst.get(a), inst.get(b)
                if ra is None or rb is None or ra.weight is None or rb.weight is None:
                    continue
                if abs(ra.weight - rb.weight) <= TOL:
                    tie += 1
                elif ra.weight < rb.weight:
                    win += 1
                else:
                    loss += 1
            pairs[f"{a}_vs_{b}"] = {"wins": win, "ties": tie, "losses": loss}
    return {"instances": len(by_inst), "mean_weight": means, "pairs": pairs}


def run_bench(corpus: Sequence[Tuple[str, Instance]], algos: Sequence[str], budget: Budget,
              seed: int, timing: bool = False) -> Tuple[List[BenchRow], Dict]:
    rows = [bench_instance(iid, inst, a, budget, seed, timing)
            for iid, inst in sorted(corpus, key=lambda x: x[0]) for a in algos]
    return rows, summarize(rows, algos)


CSV_FIELDS = [f.name for f in fields(BenchRow)]


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        w.writerow([r.instance_id, r.n, r.m, r.algo, r.seed,
                    "" if r.weight is None else repr(r.weight),
                    "" if r.size is None else r.size,
                    r.iterations, r.elapsed_ms, " ".join(map(str, r.members)), r.status])
    return buf.getvalue()


def rows_from_csv(text: str) -> List[BenchRow]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append(BenchRow(
            rec["instance_id"], int(rec["n"]), int(rec["m"]), rec["algo"], int(rec["seed"]),
            float(rec["weight"]) if rec["weight"] else None,
            int(rec["size"]) if rec["size"] else None,
            int(rec["iterations"]), int(rec["elapsed_ms"]),
            tuple(int(x) for x in rec["members"].split()), rec["status"]))
    return rows


def reverify(rows: Iterable[BenchRow], corpus: Dict[str, Instance]) -> List[str]:
    """Problems found re-checking recorded cutsets against their instances."""
    problems = []
    for r in rows:
        if r.status != "ok":
            continue
        inst = corpus[r.instance_id]
        if isinstance(inst, Dag):
            ok = verify_loop_cutset(inst, r.members)
            w = inst.set_weight(r.members)
        else:
            ok = verify_fvs(inst, r.members)
            w = math.fsum(inst.weight(v) for v in sorted(r.members))
        if not ok:
            problems.append(f"{r.instance_id}/{r.algo}: not a valid cutset")
        if r.size != len(r.members) or abs(w - r.weight) > TOL:
            problems.append(f"{r.instance_id}/{r.algo}: weight/size mismatch")
    return problems


# -- success rates ------------------------------------------------------------

def wilson_interval(hits: int, n: int, z: float = 1.96) -> Tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    p = hits / n
    denom = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def estimate_success_rate(inst: Instance, algo: str, budget: Budget, trials: int,
                          rng: RandomStream) -> Dict:
    """Fraction of independent runs whose output is optimal, with a Wilson 95% interval.

    Unit-weight algorithms are scored on cardinality, the others on weight.
    """
    algo = canonical_algo(algo)
    if isinstance(inst, Dag):
        sg = split_graph(inst)
        g = sg.graph
        _, best = brute_force_min_loop_cutset(inst)
        score = lambda res: inst.set_weight(psi(res.members, sg))  # noqa: E731
    elif algo in UNIT_ALGOS:
        g = inst
        unit = MultiGraph.from_edges(g.edges(), vertices=g.vertices())
        best = brute_force_min_wfvs(unit).total_weight
        score = lambda res: float(res.size)  # noqa: E731
    else:
        g = inst
        best = brute_force_min_wfvs(g).total_weight
        score = lambda res: res.total_weight  # noqa: E731
    hits = 0
    for t in range(trials):
        res = run_fvs_algo(algo, g, budget, rng.spawn(t))
        if res is not None and abs(score(res) - best) <= TOL:
            hits += 1
    lo, hi = wilson_interval(hits, trials)
    return {"algo": algo, "trials": trials, "hits": hits, "optimum": best,
            "hit_rate": hits / trials if trials else 0.0, "ci95": [lo, hi]}
