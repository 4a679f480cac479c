"""Search engine: exactness, verify mode, frontier discipline, limits."""

import dataclasses
import math
import random
from fractions import Fraction

import pytest

from gedkit.graphs import LabelTable, editorial_cost, parse_graphs
from gedkit.oracle import brute_force_ged
from gedkit.search import SearchConfig, ged_compute, ged_verify
from helpers import G, small_pairs

ALL_CONFIGS = [
    SearchConfig(strategy=s, bound=b)
    for s in ("astar", "dfs")
    for b in ("LS", "LSa", "BM", "BMa", "BMaN", "SM", "SMa")
]


def test_identical_graphs_have_distance_zero():
    t = LabelTable()
    a = G("ABAB", [(0, 1, "x"), (2, 3, "y")], t)
    b = G("ABAB", [(0, 1, "x"), (2, 3, "y")], t, tag=1)
    for cfg in ALL_CONFIGS:
        res = ged_compute(a, b, cfg)
        assert res.status == "ok" and res.distance == 0
        assert res.witness_cost == 0


def test_single_relabel_pair():
    t = LabelTable()
    a = G("AA", [(0, 1, "a")], t)
    b = G("AB", [(0, 1, "a")], t, tag=1)
    for cfg in ALL_CONFIGS:
        assert ged_compute(a, b, cfg).distance == 1


def test_matches_brute_force_on_small_pairs():
    pairs = small_pairs(42)
    for k, (a, b) in enumerate(pairs):
        truth = brute_force_ged(a, b)
        cfg = ALL_CONFIGS[k % len(ALL_CONFIGS)]
        res = ged_compute(a, b, cfg)
        assert res.status == "ok"
        assert res.distance == truth, (k, cfg)
        assert res.lower == truth and res.upper == truth


def test_distance_is_symmetric():
    for a, b in small_pairs(10, start_seed=100):
        assert ged_compute(a, b).distance == ged_compute(b, a).distance


def test_identity_order_gives_the_same_distance():
    cfg = SearchConfig(order="identity")
    for a, b in small_pairs(10, start_seed=200):
        assert ged_compute(a, b, cfg).distance == brute_force_ged(a, b)


def test_witness_attains_the_distance():
    for k, (a, b) in enumerate(small_pairs(12, start_seed=300)):
        cfg = ALL_CONFIGS[k % len(ALL_CONFIGS)]
        res = ged_compute(a, b, cfg)
        assert res.witness is not None
        assert sorted(res.witness) == list(range(res.q.n))
        assert editorial_cost(res.q, res.g, res.witness) == res.distance
        assert res.witness_cost == res.distance


def test_witness_pairs_use_original_ids():
    t = LabelTable()
    a = G("ABC", [(0, 1, "x")], t)  # larger graph first: pair gets swapped
    b = G("AB", [(0, 1, "x")], t, tag=1)
    res = ged_compute(a, b)
    assert res.swapped
    pairs = res.witness_pairs()
    assert len(pairs) == 3
    firsts = [x for x, _y in pairs]
    seconds = [y for _x, y in pairs if y is not None]
    assert sorted(firsts) == [0, 1, 2]  # every vertex of a appears
    assert sorted(seconds) == sorted(set(seconds))  # b side stays injective
    assert [y for _x, y in pairs].count(None) == 1  # one padding slot


def test_verify_accepts_at_the_distance():
    for a, b in small_pairs(8, start_seed=400):
        d = brute_force_ged(a, b)
        res = ged_verify(a, b, d)
        assert res.status == "ok" and res.verified is True
        assert res.witness_cost is not None and res.witness_cost <= d
        assert res.distance is None


def test_verify_rejects_below_the_distance():
    for a, b in small_pairs(8, start_seed=500):
        d = brute_force_ged(a, b)
        if d == 0:
            continue
        res = ged_verify(a, b, d - 1)
        assert res.status == "ok" and res.verified is False
        assert res.lower == d  # tau + 1
        assert res.upper is None and res.witness is None


def test_verify_agrees_with_the_distance_threshold():
    for a, b in small_pairs(10, start_seed=600):
        d = brute_force_ged(a, b)
        for tau in (max(0, d - 1), d, d + 1):
            assert ged_verify(a, b, tau).verified is (d <= tau)


def test_verify_extension_counts_match_across_strategies():
    for a, b in small_pairs(10, start_seed=700):
        d = brute_force_ged(a, b)
        if d == 0:
            continue
        ra = ged_verify(a, b, d - 1, SearchConfig(strategy="astar"))
        rd = ged_verify(a, b, d - 1, SearchConfig(strategy="dfs"))
        assert ra.verified is False and rd.verified is False
        assert ra.stats.extensions == rd.stats.extensions


def test_expand_all_toggle_changes_nothing_observable():
    for k, (a, b) in enumerate(small_pairs(12, start_seed=800)):
        cfg = ALL_CONFIGS[k % len(ALL_CONFIGS)]
        on = ged_compute(a, b, cfg)
        off = ged_compute(a, b, dataclasses.replace(cfg, expand_all=False))
        assert on.distance == off.distance
        assert on.stats.extensions == off.stats.extensions
        assert on.stats.pushed == off.stats.pushed


def test_dfs_frontier_never_exceeds_the_vertex_count():
    for k, (a, b) in enumerate(small_pairs(12, start_seed=900)):
        cfg = SearchConfig(strategy="dfs", bound=("LS", "BMa")[k % 2])
        res = ged_compute(a, b, cfg)
        assert res.stats.peak_frontier <= res.q.n


def test_astar_pops_in_bound_order_and_extends_below_the_optimum():
    for k, (a, b) in enumerate(small_pairs(12, start_seed=1000)):
        cfg = SearchConfig(strategy="astar", bound=("LSa", "BMa", "SM")[k % 3])
        res = ged_compute(a, b, cfg)
        assert res.stats.pop_bound_monotone
        assert math.ceil(res.stats.max_extended_bound) <= res.distance


def test_pushes_are_bounded_by_pops():
    for k, (a, b) in enumerate(small_pairs(12, start_seed=1100)):
        cfg = ALL_CONFIGS[k % len(ALL_CONFIGS)]
        res = ged_compute(a, b, cfg)
        assert res.stats.pushed <= 2 * res.stats.popped + 1


def test_stats_are_internally_consistent():
    for a, b in small_pairs(6, start_seed=1200):
        res = ged_compute(a, b)
        s = res.stats
        assert s.popped <= s.pushed
        assert s.extensions + s.pruned <= s.popped
        assert s.peak_memory_bytes > 0
        assert s.peak_live_nodes >= 1
        assert s.elapsed_ms >= 0.0
        # the incumbent must come from a leaf or from the matching heuristic
        assert s.leaves >= 1 or s.upper_bound_updates >= 1


def test_zero_time_limit_reports_timeout():
    a, b = small_pairs(1, start_seed=1300)[0]
    res = ged_compute(a, b, SearchConfig(time_limit=0.0))
    assert res.status == "timeout"
    assert res.distance is None
    assert res.lower >= 0
    if res.upper is not None:
        assert res.lower <= res.upper


def test_tiny_memory_limit_reports_exhaustion():
    a, b = small_pairs(1, start_seed=1300)[0]
    res = ged_compute(a, b, SearchConfig(memory_limit=1))
    assert res.status == "out_of_memory"
    assert res.stats.popped == 0
    assert res.distance is None


def test_verify_timeout_leaves_the_question_open():
    a, b = small_pairs(1, start_seed=1400)[0]
    res = ged_verify(a, b, 0, SearchConfig(time_limit=0.0))
    assert res.status == "timeout"
    assert res.verified is None


def test_empty_graphs():
    t = LabelTable()
    a, b = G("", table=t), G("", table=t, tag=1)
    res = ged_compute(a, b)
    assert res.status == "ok" and res.distance == 0
    assert res.witness == []
    assert ged_verify(a, b, 0).verified is True


def test_empty_versus_nonempty():
    t = LabelTable()
    a = G("", table=t)
    b = G("AB", [(0, 1, "x")], t, tag=1)
    assert ged_compute(a, b).distance == 3
    assert ged_compute(b, a).distance == 3


def test_single_vertex_pairs():
    t = LabelTable()
    assert ged_compute(G("A", table=t), G("A", table=t, tag=1)).distance == 0
    t2 = LabelTable()
    assert ged_compute(G("A", table=t2), G("B", table=t2, tag=1)).distance == 1


def test_parsed_graphs_run_end_to_end():
    text = "t # 0\nv 0 A\nv 1 B\ne 0 1 x\nt # 1\nv 0 A\nv 1 B\nv 2 A\ne 0 1 y\n"
    a, b = parse_graphs(text)
    res = ged_compute(a, b)
    assert res.distance == brute_force_ged(a, b)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(strategy="bfs")
    with pytest.raises(ValueError):
        SearchConfig(bound="LSx")
    with pytest.raises(ValueError):
        SearchConfig(order="random")
    with pytest.raises(ValueError):
        SearchConfig(time_limit=-1.0)
    with pytest.raises(ValueError):
        SearchConfig(memory_limit=0)


def test_tau_validation():
    t = LabelTable()
    a, b = G("A", table=t), G("A", table=t, tag=1)
    with pytest.raises(ValueError):
        ged_verify(a, b, -1)
    with pytest.raises(ValueError):
        ged_verify(a, b, True)
    with pytest.raises(ValueError):
        ged_verify(a, b, 1.0)


def test_compute_fields_are_mode_specific():
    a, b = small_pairs(1, start_seed=1500)[0]
    res = ged_compute(a, b)
    assert res.mode == "compute" and res.tau is None and res.verified is None
    assert res.upper == res.distance
    rv = ged_verify(a, b, 3)
    assert rv.mode == "verify" and rv.tau == 3 and rv.distance is None


def test_matching_bounds_report_upper_updates():
    rng = random.Random(44)
    seen = 0
    for a, b in small_pairs(8, start_seed=1600):
        res = ged_compute(a, b, SearchConfig(bound="BMa"))
        seen += res.stats.upper_bound_updates
    assert seen > 0  # the one-shot matching heuristic must fire somewhere
