import json
from pathlib import Path

import pytest

import spmine

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def p3():
    return spmine.Graph.parse("0 1\n1 2\n")


def test_graph_basics():
    g = p3()
    assert (g.vertex_count, g.edge_count) == (3, 2)
    assert [g.degree(v) for v in range(3)] == [1, 2, 1]
    assert g.neighbors(1) == [0, 2]
    assert g.edge_weight(0, 2) is None
    assert spmine.degree_histogram(g) == {1: 2, 2: 1}
    assert len(g.fingerprint_hex) == 16
    assert spmine.Graph.parse(g.to_edge_list()) == g


def test_errors_map_to_python_exceptions():
    with pytest.raises(spmine.ParseError):
        spmine.Graph.parse("0 1\n1 x\n")
    with pytest.raises(spmine.BoundsError):
        p3().degree(3)
    with pytest.raises(spmine.ValidationError):
        spmine.sample_sources(p3(), 5, 1)
    with pytest.raises(spmine.Error):
        spmine.Graph.read("/nonexistent/graph.txt")


def test_weighted_shortest_path_prefers_cheaper_route():
    g = spmine.Graph.from_edges(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 5), (0, 3, 10)], weighted=True)
    r = spmine.sssp(g, 0)
    assert r.dist == [0, 1, 1, 2]
    assert r.path_to(3) == [0, 1, 3]


def test_traversal_and_mining_on_p3():
    g = p3()
    db = spmine.run_traversals(g, spmine.all_sources(g))
    assert len(db) == 6
    assert sorted(db.transactions) == [[0, 1], [0, 1, 2], [1, 0], [1, 2], [2, 1], [2, 1, 0]]
    assert spmine.vertex_frequency(db) == {0: 4, 1: 6, 2: 4}
    assert spmine.count_ngrams(db, 2) == {(0, 1): 4, (1, 2): 4}
    patterns = {tuple(p.items): p.support for p in spmine.mine_patterns(db, 4)}
    assert patterns == {(0,): 4, (1,): 6, (2,): 4, (0, 1): 4, (1, 2): 4}
    assert spmine.mine_patterns(db, 1) == spmine.brute_force_frequent(db, 1)
    assert spmine.TransactionDb.parse(db.serialize()) == db
    with pytest.raises(spmine.ParseError, match="fingerprint"):
        spmine.TransactionDb.parse(db.serialize(), expected_fingerprint=db.graph_fingerprint ^ 1)


def test_statistics():
    assert spmine.spearman([1, 2, 3], [10, 20, 30]) == pytest.approx(1.0)
    assert spmine.spearman([1, 1, 1], [1, 2, 3]) == 0.0
    g = p3()
    db = spmine.run_traversals(g, spmine.all_sources(g))
    assert spmine.correlate_degree_frequency(g, db) == pytest.approx(1.0)
    assert spmine.top_degree_share(g, db, 1) == pytest.approx(6 / 14)
    local, average = spmine.clustering(spmine.Graph.parse("0 1\n1 2\n0 2\n"))
    assert local == [1.0, 1.0, 1.0] and average == 1.0


def test_dot_export_highlights_edges():
    dot = spmine.export_dot(p3(), highlight=[(0, 1)])
    assert dot.startswith("graph G {")
    assert "0 -- 1 [color=red, penwidth=2]" in dot
    assert "1 -- 2;" in dot


def test_run_pipeline_writes_report(tmp_path):
    summary = spmine.run_pipeline(FIXTURES / "small_social.txt", tmp_path, k=10, seed=3, min_support="0.05")
    assert summary["transactions"] == len(
        spmine.run_traversals(
            spmine.Graph.read(FIXTURES / "small_social.txt"),
            spmine.sample_sources(spmine.Graph.read(FIXTURES / "small_social.txt"), 10, 3),
        )
    )
    assert json.loads((tmp_path / "summary.json").read_text()) == summary
    for name in ("degree_hist.csv", "vertex_freq.csv", "patterns.csv", "ngram_1.csv", "paths.dot"):
        assert (tmp_path / name).is_file()
    with pytest.raises(spmine.StageError) as info:
        spmine.run_pipeline(FIXTURES / "missing.txt", tmp_path)
    assert info.value.exit_code == 2
