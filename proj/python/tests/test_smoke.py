import json

import pytest

import pylocator as pl


def test_triangle_is_not_locatable():
    r = pl.solve(pl.SubdividedGraph.uniform(pl.Graph(3, [(0, 1), (1, 2), (0, 2)]), 1))
    assert r["locatable"] is False
    assert r["certificate_verified"] is True
    assert r["certificate"].splitlines() == ["b:0 b:1", "b:0 b:2", "b:1 b:2"]


def test_claw_capture_bound():
    r = pl.solve(pl.SubdividedGraph.uniform(pl.Graph(4, [(0, 1), (0, 2), (0, 3)]), 1))
    assert r["capture_bound"] == 2


def test_k4_distance():
    g = pl.SubdividedGraph.uniform(pl.Graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)]), 12)
    assert g.distance(g.parse_vertex("i:0/1/6"), g.parse_vertex("i:2/3/6")) == 24


def test_matching_strategy_verifies():
    g = pl.SubdividedGraph.uniform(pl.Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)]), 13)
    v = pl.verify(g, "matching")
    assert v["kind"] == "AllCaptured"
    assert all(val <= 0 for key, val in v["metrics"].items() if key.startswith("excess:"))


def test_unequal_strategy_verifies():
    g = pl.SubdividedGraph(pl.Graph(3, [(0, 1), (1, 2)]), [6, 8])
    assert pl.verify(g, "unequal")["kind"] == "AllCaptured"


def test_build_errors_surface_as_value_errors():
    k4 = pl.Graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    with pytest.raises(ValueError, match="m >= 12"):
        pl.verify(pl.SubdividedGraph.uniform(k4, 11), "matching")


def test_simulate_trace_lines():
    g = pl.SubdividedGraph.uniform(pl.Graph(3, [(0, 1), (1, 2)]), 1)
    lines = [json.loads(x) for x in pl.simulate(g, [0], seed=3).splitlines()]
    assert lines[-1]["outcome"] == "captured"


def test_enumeration_and_lemma():
    assert pl.connected_graph_count(5) == 21
    assert {e["name"] for e in pl.check_mmm_lemma(2)["extremal"]} == {"K_4", "K_{2,2}"}
    assert len(pl.min_maximal_matching(pl.Graph(6, [(i, (i + 1) % 6) for i in range(6)]))) == 2
