import math
import random

import pytest

from loopcutset import RandomStream
from loopcutset.harness import (
    Budget,
    CorpusSpec,
    estimate_success_rate,
    gen_corpus,
    gen_random_dag,
    gen_random_graph,
    load_corpus,
    reverify,
    rows_from_csv,
    rows_to_csv,
    run_bench,
    summarize,
    wilson_interval,
    write_corpus,
)
from loopcutset.oracle import brute_force_min_loop_cutset

from conftest import complete, figure1, path


def test_corpus_spec_validation():
    with pytest.raises(ValueError):
        CorpusSpec(4, 7)
    with pytest.raises(ValueError):
        CorpusSpec(4, 2, domain_lo=1)
    with pytest.raises(ValueError):
        CorpusSpec(4, 2, domain_lo=5, domain_hi=3)


def test_gen_random_dag_examples():
    d = gen_random_dag(CorpusSpec(3, 0), RandomStream(0))
    assert len(d) == 3 and not d.arcs
    assert brute_force_min_loop_cutset(d) == (frozenset(), 0)
    spec = CorpusSpec(15, 25, 2, 6, seed=7)
    a, b = gen_random_dag(spec, RandomStream(7)), gen_random_dag(spec, RandomStream(7))
    assert a == b and len(a.arcs) == 25
    assert all(2 <= s <= 6 for s in a.domain_size.values())
    full = gen_random_dag(CorpusSpec(4, 6), RandomStream(1))
    assert len(full.arcs) == 6


def test_gen_random_graph():
    g = gen_random_graph(CorpusSpec(10, 12, 2, 8), RandomStream(0))
    assert len(g) == 10 and g.edge_count() == 12
    assert all(g.multiplicity(u, v) == 1 for u, v, _ in g.edges())
    assert all(1.0 <= g.weight(v) <= 3.0 for v in g)
    u = gen_random_graph(CorpusSpec(5, 3), RandomStream(0), weighted=False)
    assert all(u.weight(v) == 1.0 for v in u)


def test_corpus_files_round_trip(tmp_path):
    corpus = gen_corpus("dag", CorpusSpec(6, 7, 2, 4, n_instances=3, seed=1))
    write_corpus(corpus, tmp_path)
    assert load_corpus(tmp_path) == corpus
    graphs = gen_corpus("graph", CorpusSpec(6, 7, 2, 4, n_instances=2, seed=1))
    write_corpus(graphs, tmp_path / "g")
    assert load_corpus(tmp_path / "g") == graphs


def test_bench_forests_all_tie():
    corpus = [(f"t{i}", path(i + 2)) for i in range(4)]
    rows, summary = run_bench(corpus, ["wra", "ga", "oracle"], Budget(1, 10), seed=0)
    assert all(r.weight == 0 for r in rows)
    assert summary["pairs"]["wra_vs_ga"] == {"wins": 0, "ties": 4, "losses": 0}


def test_bench_small_dags_against_oracle():
    corpus = gen_corpus("dag", CorpusSpec(8, 12, 2, 6, n_instances=20, seed=3))
    rows, summary = run_bench(corpus, ["wra", "ga", "oracle"], Budget(1, 50), seed=3)
    by = {(r.instance_id, r.algo): r for r in rows}
    for iid, _ in corpus:
        assert by[iid, "wra"].weight >= by[iid, "oracle"].weight - 1e-9
        assert by[iid, "ga"].weight >= by[iid, "oracle"].weight - 1e-9
    pair = summary["pairs"]["wra_vs_ga"]
    assert pair["wins"] + pair["ties"] + pair["losses"] == 20
    assert reverify(rows_from_csv(rows_to_csv(rows)), dict(corpus)) == []


def test_bench_all_algorithms_on_graphs():
    corpus = gen_corpus("graph", CorpusSpec(9, 12, 2, 6, n_instances=5, seed=4))
    algos = ["repeated_guess", "repeated_wguess_i", "wra", "ga", "oracle"]
    rows, _ = run_bench(corpus, algos, Budget(1, 30), seed=4)
    assert len(rows) == 25
    assert reverify(rows, dict(corpus)) == []
    assert {r.status for r in rows} <= {"ok", "fail"}


def test_bench_oracle_cap_marks_row():
    corpus = gen_corpus("dag", CorpusSpec(14, 20, n_instances=1, seed=0))
    rows, _ = run_bench(corpus, ["ga", "oracle"], Budget(1, 5), seed=0)
    assert rows[1].status == "oracle-cap" and rows[1].weight is None
    assert rows[0].status == "ok"


def test_bench_order_independent():
    corpus = gen_corpus("dag", CorpusSpec(8, 12, 2, 6, n_instances=6, seed=5))
    rows, summary = run_bench(corpus, ["wra", "ga"], Budget(1, 20), seed=9)
    shuffled = list(corpus)
    random.Random(0).shuffle(shuffled)
    rows2, summary2 = run_bench(shuffled, ["wra", "ga"], Budget(1, 20), seed=9)
    assert rows_to_csv(rows) == rows_to_csv(rows2)
    assert summary == summary2
    assert summarize(list(reversed(rows)), ["wra", "ga"]) == summary


def test_csv_header_and_reverify_catches_tampering():
    corpus = gen_corpus("dag", CorpusSpec(6, 12, n_instances=2, seed=2))
    rows, _ = run_bench(corpus, ["ga"], Budget(), seed=0)
    assert all(r.members for r in rows)
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == "instance_id,n,m,algo,seed,weight,size,iterations,elapsed_ms,members,status"
    bad = rows_from_csv(text)
    bad[0].members, bad[0].size, bad[0].weight = (), 0, 0.0
    bad[1].weight += 1.0
    assert len(reverify(bad, dict(corpus))) == 2


def test_wilson_interval():
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
    assert wilson_interval(0, 0) == (0.0, 1.0)
    lo, hi = wilson_interval(100, 100)
    assert hi == pytest.approx(1.0) and lo > 0.95


def test_success_rate_examples():
    est = estimate_success_rate(path(5), "wra", Budget(1, 5), 20, RandomStream(0))
    assert est["hit_rate"] == 1.0
    est = estimate_success_rate(figure1(), "wguess1", Budget(k=1), 10_000, RandomStream(1))
    lo, hi = est["ci95"]
    assert lo <= 0.5 <= hi
    est = estimate_success_rate(complete(4), "repeat", Budget(1), 1000, RandomStream(2))
    bound = 1 - (1 - 1 / 16) ** 16
    sigma = math.sqrt(bound * (1 - bound) / 1000)
    assert est["hit_rate"] >= bound - 3 * sigma
