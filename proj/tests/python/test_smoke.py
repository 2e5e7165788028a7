"""Smoke tests for the firmnet extension module."""

import math

import pytest

import firmnet


def test_version():
    assert firmnet.__version__


def test_entropy_and_mi():
    assert firmnet.entropy([4, 4]) == pytest.approx(1.0, abs=1e-12)
    assert firmnet.entropy([6, 2]) == pytest.approx(0.8112781244591328, abs=1e-9)
    x = [0, 1, 0, 1, 0, 1, 0, 1]
    assert firmnet.mutual_information(x, x) == pytest.approx(1.0, abs=1e-12)
    assert firmnet.mutual_information([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(0.0, abs=1e-12)


def test_mi_rejects_short_series():
    with pytest.raises(ValueError):
        firmnet.mutual_information([0, 1], [0, 1], u=1)


def test_ais_and_te():
    assert firmnet.active_information_storage([0, 1, 0, 1, 0, 1, 0, 1, 0], k=1) == pytest.approx(
        1.0, abs=1e-12
    )
    src = [0, 0, 0, 1, 0, 1, 1, 1, 0]
    tgt = [1, 0, 0, 0, 1, 0, 1, 1, 1]
    te = firmnet.transfer_entropy(src, tgt, k=1, l=1, u=1)
    assert te == pytest.approx(1.0, abs=1e-12)
    te2 = firmnet.transfer_entropy_entropy_form(src, tgt, k=1, l=1, u=1)
    assert te2 == pytest.approx(te, abs=1e-12)


def test_surrogates_and_fisher():
    x = [0, 1, 0, 1, 0, 1, 0, 1]
    p = firmnet.surrogate_p_value("mi", x, x, n_surrogates=99, seed=42)
    assert p <= 0.05
    assert firmnet.fisher_combine([0.05, 0.05]) == pytest.approx(0.0175, abs=5e-4)
    assert firmnet.fisher_combine([0.3]) == pytest.approx(0.3, abs=1e-12)


def test_cascade_roundtrip():
    k, r = firmnet.derive_step_params(0.2, 1.0, 50)
    assert k == pytest.approx(0.008712551324208, abs=1e-9)
    assert r == pytest.approx(0.020201340026756, abs=1e-9)

    assert firmnet.init_shock(10, 0.1, seed=1) == firmnet.init_shock(10, 0.1, seed=1)
    assert len(firmnet.init_shock(10, 0.1, seed=1)) == 1

    arcs = [(0, 1), (1, 2), (2, 3), (3, 4)]
    res = firmnet.cascade_run(5, arcs, alpha=0.0, gamma=1.0, steps=10, shock=0.2, seed=3)
    assert res["mean_downtime"] == 0.0
    assert res["failure_proportion"] == 0.0

    res2 = firmnet.cascade_run(5, arcs, alpha=1.0, gamma=0.0, steps=4, shock_nodes=[0], seed=3)
    assert 0.0 <= res2["failure_proportion"] <= 0.8


def test_cascade_sweep_determinism():
    gen = firmnet.gen_shareholding(nodes=500, seed=11)
    rows1 = firmnet.cascade_sweep(gen["n"], gen["arcs"], [0.5, 1.0], [1.0], steps=10, seed=9)
    rows8 = firmnet.cascade_sweep(
        gen["n"], gen["arcs"], [0.5, 1.0], [1.0], steps=10, seed=9, threads=8
    )
    assert rows1 == rows8
    assert len(rows1) == 2


def test_generators_and_recovery():
    data = firmnet.gen_coupled(pairs=800, seed=11)
    assert data["n_nodes"] == 1600
    assert data["d_delay"] == 4

    # rebuild per-pair columns and locate the planted delay
    window = 9
    pat = {}
    sha = {}
    for s, d, y in data["patents"]:
        pat.setdefault(min(s, d) // 2, [0] * window)[y - 2008] = 1
    for s, d, y in data["shares"]:
        sha.setdefault(min(s, d) // 2, [0] * window)[y - 2008] = 1
    pairs = sorted(set(pat) & set(sha))
    patents = [pat[i] for i in pairs]
    shares = [sha[i] for i in pairs]
    curve = firmnet.delayed_mi_curve(patents, shares, max_delay=6)
    assert len(curve) == 7
    assert curve.index(max(curve)) == 4


def test_summarize():
    s = firmnet.summarize_network(3, [(0, 1), (1, 2), (0, 2)], directed=False)
    assert s["avg_degree"] == pytest.approx(2.0)
    assert s["component_count"] == 1
    assert s["largest_component_fraction"] == pytest.approx(1.0)


def test_duplicate_arcs_collapse():
    # duplicate arcs must not double-count cascade influence
    once = firmnet.cascade_run(3, [(0, 1), (1, 2)], alpha=0.7, gamma=1.0, steps=8,
                               shock_nodes=[0], seed=5)
    dup = firmnet.cascade_run(3, [(0, 1), (0, 1), (1, 2)], alpha=0.7, gamma=1.0, steps=8,
                              shock_nodes=[0], seed=5)
    assert once == dup

    s = firmnet.summarize_network(2, [(0, 1), (1, 0)], directed=False)
    assert s["edges"] == 1


def test_out_of_range_arc_rejected():
    with pytest.raises(ValueError):
        firmnet.cascade_run(2, [(0, 5)], shock_nodes=[0])
