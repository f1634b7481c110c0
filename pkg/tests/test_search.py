import json
import pickle

import pytest
from pydantic import ValidationError

from netlap import theorems
from netlap.core import SignedGraph, coalesce, cycle_graph, negate, theta_graph
from netlap.errors import CapExceededError, InputError, TheoremViolation
from netlap.exactalg import nullity
from netlap.search import (
    SweepConfig,
    _theta_key,
    dedupe_isomorphic,
    exhaustive_sweep,
    find_shared_cycle_examples,
    graph_from_code,
    load_config,
    nullity_histogram,
    random_sweep,
    read_findings,
    suite_corpus,
    theta_family,
    write_findings,
)
from netlap.structure import is_cactus
from netlap.theorems import NULLITY_BOUNDS, CheckResult


def test_graph_from_code():
    assert graph_from_code(2, 0) == SignedGraph(n=2)
    assert graph_from_code(2, 1).edges == ((0, 1, 1),)
    assert graph_from_code(2, 2).edges == ((0, 1, -1),)
    assert graph_from_code(3, 1 + 2 * 3).edges == ((0, 1, 1), (0, 2, -1))
    with pytest.raises(InputError):
        graph_from_code(3, 27)


def test_config_validation(tmp_path):
    with pytest.raises(ValidationError):
        SweepConfig(n_min=5, n_max=4)
    with pytest.raises(ValidationError):
        SweepConfig(checks=["made_up"])
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps({"n_min": 3, "n_max": 3, "connected_only": True}))
    cfg = load_config(str(path))
    assert (cfg.n_min, cfg.n_max, cfg.connected_only, cfg.mode) == (3, 3, True, "exhaustive")


def test_n3_exhaustive():
    result = exhaustive_sweep(SweepConfig(n_min=3, n_max=3, workers=1))
    stats = result.statistics
    assert stats.enumerated == 27
    # 12 signed paths and 8 signed triangles
    assert sum(stats.histogram_map().values()) == 20
    assert result.summary()["bounds_violations"] == 0
    assert result.report.ok


def test_n4_exhaustive_extremal_graphs():
    result = exhaustive_sweep(SweepConfig(n_min=4, n_max=4, workers=1))
    hist = result.statistics.histogram_map()
    assert hist[(4, 0, 1)] == 128
    assert not [key for key in hist if key[1] == 0 and key[2] != 1]
    assert hist[(4, 3, 3)] == 6
    assert sum(count for (n, _, eta), count in hist.items() if eta == 3) == 6
    extremal = [SignedGraph.from_json(g) for g in result.statistics.extremal]
    assert len(extremal) == 6
    assert all(theorems.classify_max_nullity(g).extremal for g in extremal)
    assert len(dedupe_isomorphic(extremal)) == 2
    summary = result.summary()
    assert summary["extremal_classes"] == 2
    assert summary["violations"] == 0


def test_n5_bounds_and_unicyclic_mass():
    cfg = SweepConfig(n_min=5, n_max=5, connected_only=True, checks=[NULLITY_BOUNDS], workers=1)
    result = exhaustive_sweep(cfg)
    assert result.statistics.enumerated == 3**10
    assert result.statistics.checks[NULLITY_BOUNDS]["failed"] == 0
    unicyclic = {eta for (_, beta, eta) in result.statistics.histogram_map() if beta == 1}
    assert unicyclic == {1, 2}


def test_parallel_sweep_matches_inline():
    inline = exhaustive_sweep(SweepConfig(n_min=2, n_max=4, workers=1))
    parallel = exhaustive_sweep(SweepConfig(n_min=2, n_max=4, workers=2))
    assert parallel.statistics == inline.statistics


def test_exhaustive_ceiling():
    with pytest.raises(CapExceededError):
        exhaustive_sweep(SweepConfig(n_min=7, n_max=7))


def test_nullity_histogram_is_deterministic():
    cfg = SweepConfig(n_min=4, n_max=4, checks=[], connected_only=True, workers=1)
    assert nullity_histogram(cfg) == nullity_histogram(cfg)


def test_random_sweep_is_seeded():
    cfg = SweepConfig(mode="random", n_min=3, n_max=8, samples=60, seed=11, workers=1)
    first = random_sweep(cfg).statistics
    assert first.enumerated == 60
    assert random_sweep(cfg).statistics == first
    other = random_sweep(cfg.model_copy(update={"seed": 12})).statistics
    assert other.enumerated == 60


def test_cactus_filter():
    cfg = SweepConfig(n_min=4, n_max=4, cactus="non-cactus", checks=[], workers=1)
    stats = exhaustive_sweep(cfg).statistics
    # K4 and K4 minus an edge are the only connected non-cacti on 4 vertices
    assert stats.examined == 64 + 6 * 32


def test_failing_check_aborts_with_the_graph(monkeypatch):
    def broken(g, eta=None):
        return CheckResult(name=NULLITY_BOUNDS, applicable=True, passed=g.m < 3, witness="forced")

    monkeypatch.setitem(theorems.GRAPH_CHECKS, NULLITY_BOUNDS, broken)
    with pytest.raises(TheoremViolation) as info:
        exhaustive_sweep(SweepConfig(n_min=3, n_max=3, checks=[NULLITY_BOUNDS], workers=1))
    assert info.value.check == NULLITY_BOUNDS
    assert SignedGraph.from_json(info.value.graph_json).m == 3


def test_violation_survives_pickling():
    e = TheoremViolation(NULLITY_BOUNDS, "eta=0", '{"edges": [], "n": 2}')
    copy = pickle.loads(pickle.dumps(e))
    assert (copy.check, copy.witness, copy.graph_json) == (e.check, e.witness, e.graph_json)
    assert str(copy) == str(e)


def test_theta_key_identifies_symmetric_patterns():
    signs = ((1, -1), (1, 1, -1), (-1, -1, -1))
    swapped = ((1, -1), (-1, -1, -1), (1, 1, -1))
    reversed_ = ((-1, 1), (-1, 1, 1), (-1, -1, -1))
    assert _theta_key(signs) == _theta_key(swapped) == _theta_key(reversed_)
    assert _theta_key(signs) != _theta_key(((1, 1), (1, 1, -1), (-1, -1, -1)))


def test_theta_family_is_reduced():
    cfg = SweepConfig(mode="theta", max_path_sum=6)
    patterns = [signs for signs, _ in theta_family(cfg)]
    keys = [_theta_key(s) for s in patterns]
    assert len(keys) == len(set(keys))
    assert all(g.m == sum(len(p) for p in s) for s, g in theta_family(cfg))


def test_all_positive_theta_has_no_balanced_cycle():
    g = theta_graph(1, 2, 2)
    assert nullity(g) == 1
    assert theorems.check_nullity_bounds(g).passed


def test_shared_cycle_witnesses():
    findings = find_shared_cycle_examples(SweepConfig(mode="theta", max_path_sum=10))
    witnesses = [f for f in findings if f.nullity == 1]
    contrasts = [f for f in findings if f.nullity > 1]
    assert witnesses
    assert len(witnesses) + len(contrasts) == len(findings)
    for f in witnesses:
        assert f.balanced_cycles >= 2
        assert not is_cactus(f.graph)
    assert all(f.balanced_cycles >= 1 for f in contrasts)
    assert all(f.reverify() for f in findings[:200])


def test_smallest_witness():
    findings = find_shared_cycle_examples(SweepConfig(mode="theta", max_path_sum=7))
    target = theta_graph(1, 3, 3, [[1], [-1, 1, -1], [1, -1, -1]])
    assert nullity(target) == 1
    assert any(f.nullity == 1 for f in findings)


def test_findings_need_theta_mode():
    with pytest.raises(InputError):
        find_shared_cycle_examples(SweepConfig())


def test_findings_persist_as_json_lines(tmp_path):
    findings = find_shared_cycle_examples(SweepConfig(mode="theta", max_path_sum=7))
    path = str(tmp_path / "findings.jsonl")
    write_findings(findings, path)
    assert read_findings(path) == findings
    assert len((tmp_path / "findings.jsonl").read_text().splitlines()) == len(findings)
    first = json.loads((tmp_path / "findings.jsonl").read_text().splitlines()[0])
    assert sorted(first["graph"]) == ["edges", "n"]
    assert SignedGraph.model_validate(first["graph"]) == findings[0].graph


def test_dedupe_respects_signs(bowtie):
    relabelled = coalesce(cycle_graph([1, 1, -1, -1]), 2, cycle_graph([-1, 1, 1]), 2)
    kept = dedupe_isomorphic([bowtie, relabelled, negate(bowtie)])
    assert kept == [bowtie, negate(bowtie)]


def test_suite_corpus_covers_the_families():
    labels = [label for label, _ in suite_corpus()]
    assert any(label.startswith("tree") for label in labels)
    assert any(label.startswith("unicyclic") for label in labels)
    assert any(label.endswith("cactus") for label in labels)
    assert any(label.startswith("join") for label in labels)
    assert any(label.startswith("theta") for label in labels)
