import pytest

import streamcolor as sc


def test_palette_period():
    assert sc.palette_period(16) == 44
    assert sc.palette_period(10) == 28


def test_generate_run_verify():
    stream = sc.generate("regular-bipartite", 50, 8, mode="vertex-one-sided", seed=3)
    assert stream.startswith("H ")
    assert len(sc.stream_edges(stream)) == 400
    res = sc.run(stream, "one-sided")
    rep = sc.verify(stream, res["assignments"], res["budget"])
    assert rep["ok"]
    assert res["colors_used"] <= 3 * sc.palette_period(8) + 8


@pytest.mark.parametrize("alg", ["edge-sqrt", "edge-general", "offline-exact", "offline-greedy"])
def test_edge_presets(alg):
    stream = sc.generate("regular-general", 60, 12, seed=5)
    res = sc.run(stream, alg, s=2, force_stream=True, policy="divert")
    assert sc.verify(stream, res["assignments"], res["budget"])["ok"]


def test_determinism():
    a = sc.generate("random-bipartite", 40, 6, seed=9)
    assert a == sc.generate("random-bipartite", 40, 6, seed=9)
    assert sc.run(a, "edge-sqrt", force_stream=True)["assignments"] == sc.run(
        a, "edge-sqrt", force_stream=True
    )["assignments"]


def test_errors():
    with pytest.raises(sc.StreamColorError, match="InfeasibleSpec"):
        sc.generate("regular-bipartite", 4, 0)
    edge_stream = sc.generate("regular-bipartite", 10, 3)
    with pytest.raises(sc.StreamColorError, match="ModeMismatch"):
        sc.run(edge_stream, "one-sided")


def test_offline_and_kout():
    assert sc.color_offline([(0, 1), (1, 2), (2, 0)], "greedy") == [0, 1, 2]
    assert sc.color_offline([(0, 10), (0, 11), (1, 11)], "bipartite") == [0, 1, 0]
    r = sc.kout(1, "3", trials=100)
    assert r["failures"] == 0 and r["u_size"] == 3


def test_bench():
    csv = sc.bench("presets = one-sided\nfamilies = regular-bipartite\nn = 32\ndelta = 8\nseeds = 2\n")
    lines = csv.strip().splitlines()
    assert lines[0].startswith("preset,family,n,delta,s,seed")
    assert len(lines) == 3
    assert all(",true," in line for line in lines[1:])
