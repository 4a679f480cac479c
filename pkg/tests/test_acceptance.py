"""End-to-end acceptance checks.

Eight checks, one test each, every one printing a single PASS line with
its measurements (visible under -rA or -s; a failure shows up as the
usual FAILED line):

  1. brute-force equivalence on 200 small pairs across all 14 configs
  2. admissibility of every bound family on 1000 random partial mappings
  3. dominance relations between the bound families, zero violations
  4. incremental fast paths match the from-scratch reference evaluators,
     and the assignment solver matches exhaustive enumeration
  5. stronger bounds extend fewer nodes on average, best-first extends
     no more than depth-first (5 percent slack on the means)
  6. verification: strategy-independent extension counts on dissimilar
     queries, and agreement with the computed distance on similar ones
  7. 30-vertex pairs solve within the per-pair time budget
  8. structural search invariants: frontier size, bound monotonicity,
     push/pop accounting, and expansion-policy parity

Tolerances are pinned at the top of the file.
"""

import dataclasses
import functools
import math
import random
import time
from fractions import Fraction

from gedkit.assignment import INFEASIBLE, CostMatrix, solve
from gedkit.bounds import ALL_KINDS, SearchContext, best_extension, child_bound, node_bound, remainder_bound
from gedkit.datagen import make_pair
from gedkit.graphs import pad_pair
from gedkit.oracle import brute_force_assignment, brute_force_extension_min, brute_force_ged
from gedkit.search import SearchConfig, ged_compute, ged_verify
from helpers import random_partial, random_prefix, small_pairs

EQUIVALENCE_BUDGET_S = 300.0  # check 1: the whole sweep, oracle included
MEAN_SLACK = 1.05  # check 5: mean-extension comparisons
PER_PAIR_LIMIT_S = 60.0  # check 7: each 30-vertex pair

ALL_CONFIGS = [
    SearchConfig(strategy=s, bound=b) for s in ("astar", "dfs") for b in ALL_KINDS
]


@functools.cache
def _oracle_corpus():
    """200 seeded pairs with at most 7 vertices after padding, plus truth."""
    return [(a, b, brute_force_ged(a, b)) for a, b in small_pairs(200)]


@functools.cache
def _mapping_corpus():
    """1000 random partial mappings with their exact completion minima."""
    rng = random.Random(2024)
    out = []
    for a, b in small_pairs(125, start_seed=5000):
        q, g, _sw = pad_pair(a, b)
        for _ in range(8):
            pairs = random_partial(rng, q.n)
            out.append((q, g, pairs, brute_force_extension_min(q, g, pairs)))
    return out


def test_1_distances_match_brute_force_everywhere():
    t0 = time.monotonic()
    corpus = _oracle_corpus()
    runs = 0
    for a, b, truth in corpus:
        for cfg in ALL_CONFIGS:
            res = ged_compute(a, b, cfg)
            assert res.status == "ok"
            assert res.distance == truth, (a.tag, cfg.strategy, cfg.bound)
            runs += 1
    elapsed = time.monotonic() - t0
    assert elapsed < EQUIVALENCE_BUDGET_S, f"sweep took {elapsed:.1f}s"
    print(f"ACCEPTANCE 1 brute-force equivalence: PASS "
          f"({len(corpus)} pairs x {len(ALL_CONFIGS)} configs = {runs} runs, {elapsed:.1f}s)")


def test_2_bounds_never_exceed_the_true_completion_cost():
    checked = 0
    for q, g, pairs, truth in _mapping_corpus():
        for kind in ALL_KINDS:
            assert node_bound(kind, q, g, pairs) <= truth, (kind, pairs)
            checked += 1
    print(f"ACCEPTANCE 2 admissibility: PASS "
          f"({len(_mapping_corpus())} mappings, {checked} bound evaluations)")


def test_3_bound_families_dominate_as_designed():
    rng = random.Random(99)
    conditional_hits = 0
    child_checks = 0
    for q, g, pairs, _truth in _mapping_corpus():
        ls = node_bound("LS", q, g, pairs)
        lsa = node_bound("LSa", q, g, pairs)
        bm = node_bound("BM", q, g, pairs)
        bma = node_bound("BMa", q, g, pairs)
        sm = node_bound("SM", q, g, pairs)
        sma = node_bound("SMa", q, g, pairs)
        assert ls <= lsa <= bma, pairs
        assert bm <= bma, pairs
        assert sm <= sma, pairs
        free_q = sorted(set(range(q.n)) - {v for v, _u in pairs})
        free_g = sorted(set(range(g.n)) - {u for _v, u in pairs})
        if free_q:
            # committing a child dominates pinning its column
            v, u = free_q[0], rng.choice(free_g)
            assert child_bound("BMaN", q, g, pairs, v, u) >= child_bound("BMa", q, g, pairs, v, u)
            child_checks += 1
            bma_rem = remainder_bound("BMa", q, g, pairs)
            if bma_rem >= len(free_q):
                conditional_hits += 1
                assert bma_rem >= remainder_bound("SMa", q, g, pairs), pairs
    assert conditional_hits > 0
    print(f"ACCEPTANCE 3 dominance: PASS ({len(_mapping_corpus())} mappings, "
          f"{child_checks} child checks, conditional fired {conditional_hits} times)")


def test_4_fast_paths_match_the_reference_evaluators():
    rng = random.Random(4096)
    pairs = small_pairs(100, start_seed=9000)
    states = 0
    while states < 500:
        a, b = pairs[states % len(pairs)]
        q, g, _sw = pad_pair(a, b)
        order, prefix = random_prefix(rng, q.n, max_level=q.n - 1)
        states += 1
        for kind in ALL_KINDS:
            ctx = SearchContext(q, g, order, kind)
            ctx.morph_to(prefix)
            mapped, v = ctx.pairs(), ctx.next_vertex
            got = best_extension(ctx, ctx.free_g())
            want = {u: child_bound(kind, q, g, mapped, v, u) for u in ctx.free_g()}
            assert got.bounds == want, (kind, order, prefix)

    matrices = 0
    for trial in range(500):
        n = rng.randrange(1, 8)
        rows = [
            [INFEASIBLE if rng.random() < 0.15 else rng.randrange(11) for _ in range(n)]
            for _ in range(n)
        ]
        st = solve(CostMatrix(rows))
        truth = brute_force_assignment(CostMatrix(rows))
        if truth == INFEASIBLE:
            assert not st.feasible
        else:
            assert st.feasible and st.total_cost == truth, rows
        matrices += 1
    print(f"ACCEPTANCE 4 fast-path equivalence: PASS "
          f"({states} expansion states x {len(ALL_KINDS)} kinds, {matrices} matrices)")


def test_5_stronger_bounds_extend_fewer_nodes():
    combos = [(s, b) for s in ("astar", "dfs") for b in ("BMa", "LSa", "LS")]
    sums = {combo: 0 for combo in combos}
    pairs = [make_pair(14, 1 + k % 5, 31_000 + k) for k in range(100)]
    for a, b in pairs:
        for s, b_kind in combos:
            res = ged_compute(a, b, SearchConfig(strategy=s, bound=b_kind))
            assert res.status == "ok"
            sums[(s, b_kind)] += res.stats.extensions
    mean = {combo: sums[combo] / len(pairs) for combo in combos}
    for s in ("astar", "dfs"):
        assert mean[(s, "BMa")] <= mean[(s, "LSa")] * MEAN_SLACK, mean
        assert mean[(s, "LSa")] <= mean[(s, "LS")] * MEAN_SLACK, mean
    for b in ("BMa", "LSa", "LS"):
        assert mean[("astar", b)] <= mean[("dfs", b)] * MEAN_SLACK, mean
    shown = ", ".join(f"{s}-{b}={mean[(s, b)]:.1f}" for s, b in combos)
    print(f"ACCEPTANCE 5 extension ranking: PASS ({len(pairs)} pairs; {shown})")


def test_6_verification_is_strategy_independent_and_consistent():
    dissimilar = 0
    kinds = ("BMa", "LSa", "LS")
    for i, (a, b, d) in enumerate(_oracle_corpus()):
        if d == 0 or dissimilar >= 100:
            continue
        bound = kinds[i % len(kinds)]
        ra = ged_verify(a, b, d - 1, SearchConfig(strategy="astar", bound=bound))
        rd = ged_verify(a, b, d - 1, SearchConfig(strategy="dfs", bound=bound))
        assert ra.verified is False and rd.verified is False
        assert ra.stats.extensions == rd.stats.extensions, (a.tag, bound)
        dissimilar += 1
    assert dissimilar == 100

    similar = 0
    for a, b, d in _oracle_corpus()[:40]:
        for tau in (max(0, d - 1), d, d + 1):
            res = ged_verify(a, b, tau)
            assert res.verified is (d <= tau), (tau, d)
        similar += 1
    print(f"ACCEPTANCE 6 verification parity: PASS "
          f"({dissimilar} dissimilar queries, {similar} pairs swept around the distance)")


def test_7_medium_instances_stay_within_the_time_budget():
    worst = 0.0
    cfg = SearchConfig(strategy="astar", bound="BMa")
    for seed in range(20):
        a, b = make_pair(30, 5, 77_000 + seed)
        res = ged_compute(a, b, cfg)
        assert res.status == "ok"
        assert res.distance <= 5  # perturbation budget caps the distance
        worst = max(worst, res.stats.elapsed_ms / 1000.0)
        assert worst < PER_PAIR_LIMIT_S, f"pair {seed} took {worst:.1f}s"
    print(f"ACCEPTANCE 7 thirty-vertex pairs: PASS (20 pairs, worst {worst * 1000:.0f}ms)")


def test_8_search_invariants_hold_everywhere():
    parity_runs = 0
    invariant_runs = 0
    for a, b, truth in _oracle_corpus()[:15]:
        for cfg in ALL_CONFIGS:
            res = ged_compute(a, b, cfg)
            s = res.stats
            assert s.pushed <= 2 * s.popped + 1
            if cfg.strategy == "dfs":
                assert s.peak_frontier <= res.q.n
            else:
                assert s.pop_bound_monotone
                assert math.ceil(s.max_extended_bound) <= res.distance
            invariant_runs += 1
            off = ged_compute(a, b, dataclasses.replace(cfg, expand_all=False))
            assert off.distance == res.distance
            assert off.stats.extensions == s.extensions, (a.tag, cfg)
            parity_runs += 1
    print(f"ACCEPTANCE 8 structural invariants: PASS "
          f"({invariant_runs} runs checked, {parity_runs} expansion-policy parities)")
