import os
import subprocess

import pytest

import cpdigraph


def test_version():
    assert cpdigraph.__version__ == "0.1.0"


def test_sample_is_deterministic():
    a = cpdigraph.sample("constant:1", 100, seed=7)
    b = cpdigraph.sample("constant:1", 100, seed=7)
    assert a == b
    assert a.n == 100
    assert sum(m for _, _, m in a.arcs()) == a.total_arcs


def test_edge_list_matches_cli():
    cli = os.environ.get("CPDIGRAPH_CLI")
    if not cli:
        pytest.skip("CPDIGRAPH_CLI not set")
    out = subprocess.run(
        [cli, "sample", "--model", "constant:1", "--n", "100", "--seed", "7"],
        check=True, capture_output=True, text=True,
    ).stdout
    rows = [line for line in out.splitlines() if not line.startswith("#")]
    g = cpdigraph.sample("constant:1", 100, seed=7)
    assert rows == [f"{s + 1}\t{d + 1}\t{m}" for s, d, m in g.arcs()]
    mine = [line for line in cpdigraph.edge_list(g, 7).splitlines() if not line.startswith("#")]
    assert mine == rows


def test_components_of_a_cycle():
    g = cpdigraph.MultiDigraph(4, [(0, 1, 1), (1, 2, 2), (2, 0, 1)])
    report = cpdigraph.components(g)
    assert report["largest_strong"] == 3
    assert report["largest_weak"] == 3
    assert report["weak_count"] == 2
    assert g.multiplicity(1, 2) == 2


def test_survival_constant_two():
    r = cpdigraph.survival("constant:2", "mirrored-sum")
    assert r["q_f"] == pytest.approx(0.20319, abs=1e-5)
    assert r["pi"] == pytest.approx(r["zeta"] ** 2)


def test_weights_prefix_stable():
    short = cpdigraph.weights("pareto-mirrored:3.5,1", 10, seed=3)
    long = cpdigraph.weights("pareto-mirrored:3.5,1", 100, seed=3)
    assert long[:10] == short
    assert all(w_in == w_out >= 1.0 for w_in, w_out in long)


def test_numerics_and_errors():
    assert cpdigraph.poisson_tv(0.0, 2.0) == pytest.approx(0.8646647167633873)
    assert cpdigraph.critical_cluster_exponent(3.5) == pytest.approx(0.6)
    with pytest.raises(ValueError):
        cpdigraph.sample("constant:0", 10)
    with pytest.raises(ValueError):
        cpdigraph.sample("constant:1", 0)
    with pytest.raises(ValueError):
        cpdigraph.poisson_tv(-1.0, 1.0)
    with pytest.raises(IndexError):
        cpdigraph.MultiDigraph(2, [(0, 2, 1)])
