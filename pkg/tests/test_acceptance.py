"""Acceptance suite: twelve release criteria, one test per criterion.

Each test prints a single PASS line when its criterion holds; pytest -v
adds the per-test PASSED/FAILED verdict. Tolerances are pinned in the
asserts, not configurable.
"""

from __future__ import annotations

import math
import time
from collections import Counter

import numpy as np

from spse.cli import main
from spse.counter import CountConfig, count_paths, discovery_ratio
from spse.encoding import PRESET_NAMES, preset, spse_map
from spse.graph import (
    bfs_distances,
    diameter,
    generate,
    graph_from_edges,
    is_connected,
    mirror_around,
)
from spse.io import format_edge_list, read_tensor
from spse.oracle import (
    cycles_through_edge,
    exact_path_counts,
    pair_equivalent,
    random_walk_tensor,
)
from spse.synth import SynthParams, dataset_manifest, generate_dataset, verify_labels
from spse.verify import find_fig6_instance, run_fig6


def _tree_tensor(g, k_max):
    n = g.node_count
    counts = np.zeros((n, n, k_max), dtype=np.uint64)
    for i in range(n):
        for j, d in bfs_distances(g, i).items():
            if 1 <= d <= k_max:
                counts[i, j, d - 1] = 1
    return counts


def _cycle_tensor(m):
    counts = np.zeros((m, m, m - 1), dtype=np.uint64)
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            d = min(abs(i - j), m - abs(i - j))
            if d == m - d:
                counts[i, j, d - 1] = 2
            else:
                counts[i, j, d - 1] += 1
                counts[i, j, m - d - 1] += 1
    return counts


def test_criterion_01_paths_equal_cycles_through_edge():
    t0 = time.perf_counter()
    rng = np.random.default_rng(np.random.SeedSequence([0, 301]))
    checked = 0
    for case in range(100):
        n = int(rng.integers(5, 13))
        p = (0.2, 0.4)[case % 2]
        g = generate("er", n=n, p=p, seed=int(rng.integers(2**32)))
        exact = exact_path_counts(g, n - 1)
        for (i, j) in sorted(g.edges):
            for k in range(2, n):
                assert int(exact.counts[i, j, k - 1]) == cycles_through_edge(
                    g, i, j, k + 1
                ), f"case {case} edge ({i},{j}) k={k}"
                checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    print(f"criterion 01 PASS: {checked} edge/length checks on 100 graphs in {elapsed:.1f}s")


def test_criterion_02_even_cycle_matches_odd_path_walks():
    checked = 0
    for half in range(2, 9):
        cyc = generate("cycle", n=2 * half)
        path = generate("path", n=2 * half + 1)
        center = half
        for j in range(1, half):
            assert pair_equivalent(
                cyc, (0, j), path, (center, center + j), 20, "rw", 1e-12
            ), f"C{2*half} pair (0,{j})"
            checked += 1
        pc = random_walk_tensor(cyc, 20).probs[0, half, :]
        pp = random_walk_tensor(path, 20).probs[center, 2 * half, :]
        assert np.max(np.abs(2.0 * pp - pc)) <= 1e-12, f"C{2*half} antipodal"
        checked += 1
    print(f"criterion 02 PASS: {checked} pair profiles matched for n=2..8 at 1e-12")


def test_criterion_03_mirror_preserves_walk_profile():
    rng = np.random.default_rng(np.random.SeedSequence([0, 302]))
    done = 0
    while done < 50:
        n = int(rng.integers(4, 11))
        g = generate("er", n=n, p=0.45, seed=int(rng.integers(2**32)))
        if not (is_connected(g) and g.has_edge(0, 1)):
            continue
        twin = mirror_around(g, 1)
        assert twin.node_count == 2 * n - 1 != n
        assert pair_equivalent(g, (0, 1), twin, (0, 1), 20, "rw", 1e-12), f"n={n}"
        done += 1
    print("criterion 03 PASS: 50 mirrored graphs keep the (0,1) walk profile at 1e-12")


def test_criterion_04_lower_bound_and_edge_slice():
    rng = np.random.default_rng(np.random.SeedSequence([0, 304]))
    for case in range(200):
        n = int(rng.integers(4, 15))
        p = (0.15, 0.3, 0.5)[case % 3]
        g = generate("er", n=n, p=p, seed=int(rng.integers(2**32)))
        cfg = CountConfig(
            root_fraction=(0.25, 0.5, 1.0)[int(rng.integers(3))],
            k_max=int(rng.integers(3, 9)),
            dfs_depth_max=int(rng.integers(0, 5)),
            trials_per_depth=int(rng.integers(1, 4)),
            seed=int(rng.integers(2**32)),
        )
        rep = count_paths(g, cfg)
        exact = exact_path_counts(g, cfg.k_max)
        assert np.all(rep.tensor.counts <= exact.counts), f"case {case}"
        adj = g.dense_adjacency().astype(np.uint64)
        assert np.array_equal(rep.tensor.counts[:, :, 0], adj), f"case {case}"
    print("criterion 04 PASS: 200 random graphs stay under the exact tensor, slice 1 exact")


def test_criterion_05_tree_and_cycle_exactness():
    for n, seed in ((16, 3), (60, 4), (200, 1)):
        g = generate("tree", n=n, seed=seed)
        k = diameter(g)
        rep = count_paths(g, CountConfig(1.0, k, 0, 1, seed=seed))
        assert np.array_equal(rep.tensor.counts, _tree_tensor(g, k)), f"tree n={n}"
    for m in (3, 8, 27, 50):
        g = generate("cycle", m=m)
        rep = count_paths(g, CountConfig(1.0, m - 1, 1, 12, seed=0))
        assert np.array_equal(rep.tensor.counts, _cycle_tensor(m)), f"C{m}"
    print("criterion 05 PASS: trees n in {16,60,200} and cycles m in {3,8,27,50} exact at R=1")


def test_criterion_06_c6_edge_profile():
    g = generate("cycle", m=6)
    want = [1, 0, 0, 0, 1, 0]
    exact = exact_path_counts(g, 6)
    assert list(exact.counts[0, 1, :]) == want
    rep = count_paths(g, CountConfig(1.0, 6, 5, 8, seed=0))
    assert list(rep.tensor.counts[0, 1, :]) == want
    print("criterion 06 PASS: C6 edge profile [1,0,0,0,1,0] exact and at R=1")


def test_criterion_07_complete_graph_closed_form():
    for n in range(3, 9):
        g = generate("complete", n=n)
        exact = exact_path_counts(g, n - 1)
        for k in range(1, n):
            want = math.factorial(n - 2) // math.factorial(n - k - 1)
            slice_k = exact.counts[:, :, k - 1]
            off = ~np.eye(n, dtype=bool)
            assert np.all(slice_k[off] == want), f"K{n} k={k}"
            assert np.all(slice_k[~off] == 0)
        rep = count_paths(g, CountConfig(1.0, n - 1, 1, 8, seed=1))
        assert np.all(rep.tensor.counts <= exact.counts), f"K{n} approx"
    print("criterion 07 PASS: K_n n<=8 matches (n-2)!/(n-k-1)!, approx stays below")


def test_criterion_08_orientation_blind_spot_instance():
    g, pair = find_fig6_instance()
    assert g.node_count <= 8
    exact = exact_path_counts(g, 5)
    assert int(exact.counts[pair[0], pair[1], 3]) == 2
    report = run_fig6(seed=0, cases=20)
    assert report["passed"], report["failures"]
    assert report["checked"] == 20
    print(
        "criterion 08 PASS: "
        f"{g.node_count}-node witness, 20 configs all count < 2 on pair {pair}"
    )


def test_criterion_09_discovery_monotone_in_budget():
    grids = {"R": (0.25, 0.5, 1.0), "N": (1, 2, 4), "D": (0, 2, 4)}
    for idx in range(100):
        g = generate("er", n=23, p=0.10, seed=idx)
        ref_cfg = CountConfig(1.0, 10, max(1, diameter(g)), 4, seed=idx)
        ref = count_paths(g, ref_cfg).tensor
        for param, grid in grids.items():
            ratios = []
            for value in grid:
                r, trials, d = 0.5, 2, 2
                if param == "R":
                    r = value
                elif param == "N":
                    trials = value
                else:
                    d = value
                rep = count_paths(g, CountConfig(r, 10, d, trials, seed=idx))
                ratios.append(discovery_ratio(rep.tensor, ref))
            assert all(a <= b for a, b in zip(ratios, ratios[1:])), (
                f"graph {idx} {param} sweep {ratios}"
            )
            assert ratios[-1] >= ratios[0]
    print("criterion 09 PASS: R/N/D sweeps pointwise non-decreasing on 100 graphs")


def test_criterion_10_encoding_matches_high_precision():
    import mpmath

    grid = (0, 1, 10, 10**6, 2**64 - 1)
    checked = 0
    for name in PRESET_NAMES:
        _, params = preset(name)
        assert spse_map(np.uint64(0), params) == params.beta
        for x in grid:
            with mpmath.workdps(60):
                v = mpmath.mpf(int(x))
                for _ in range(params.log_depth):
                    v = mpmath.log(1 + v)
                want = float(mpmath.mpf(params.alpha) * v + mpmath.mpf(params.beta))
            got = float(spse_map(np.uint64(x), params))
            assert abs(got - want) <= 1e-12, f"{name} x={x}"
            checked += 1
    print(f"criterion 10 PASS: {checked} grid values within 1e-12 of 60-digit reference")


def test_criterion_11_synthetic_dataset_statistics():
    stats_params = SynthParams(n_graphs=1000, split=(1000, 0, 0), seed=2)
    graphs, _ = generate_dataset(stats_params)
    manifest = dataset_manifest(stats_params, graphs)
    assert 112.0 <= manifest["mean_nodes"] <= 186.0, manifest["mean_nodes"]
    assert 143.0 <= manifest["mean_edges"] <= 238.0, manifest["mean_edges"]

    eligible = [
        lg for lg in graphs if lg.graph.node_count <= 60 or sum(lg.labels) <= 20
    ]
    small = sorted(eligible, key=lambda lg: lg.graph.node_count)[:20]
    assert len(small) == 20
    assert all(verify_labels(lg) for lg in small)

    full, assignment = generate_dataset(SynthParams())
    assert len(full) == 12000
    counts = Counter(assignment)
    assert counts == {"train": 10000, "val": 1000, "test": 1000}
    assert assignment[:10000] == ("train",) * 10000
    assert assignment[10000:11000] == ("val",) * 1000
    assert assignment[11000:] == ("test",) * 1000
    print(
        "criterion 11 PASS: means "
        f"{manifest['mean_nodes']:.1f}/{manifest['mean_edges']:.1f} in band, "
        "20 labels verified, 10000/1000/1000 split"
    )


def test_criterion_12_preset_speed_and_thread_determinism(tmp_path):
    tree = generate("tree", n=23, seed=0)
    rng = np.random.default_rng(0)
    non_edges = sorted(
        (i, j)
        for i in range(23)
        for j in range(i + 1, 23)
        if (i, j) not in tree.edges
    )
    chords = [non_edges[i] for i in rng.choice(len(non_edges), size=3, replace=False)]
    g = graph_from_edges(23, sorted(tree.edges) + chords)
    assert g.node_count == 23 and g.edge_count == 25

    cfg, _ = preset("zinc", seed=0)
    t0 = time.perf_counter()
    rep = count_paths(g, cfg, threads=1)
    elapsed = time.perf_counter() - t0
    assert elapsed <= 1.0, f"{elapsed:.3f}s"
    assert rep.dag_count == 23 * 7

    src = tmp_path / "g23.txt"
    src.write_text(format_edge_list(g))
    one = tmp_path / "one.spse"
    eight = tmp_path / "eight.spse"
    base = ["count", str(src), "--preset", "zinc", "--seed", "0"]
    assert main(base + ["--threads", "1", "-o", str(one)]) == 0
    assert main(base + ["--threads", "8", "-o", str(eight)]) == 0
    assert one.read_bytes() == eight.read_bytes()
    arr, _ = read_tensor(one)
    assert np.array_equal(arr, rep.tensor.counts)
    print(
        "criterion 12 PASS: zinc preset on 23 nodes/25 edges in "
        f"{elapsed * 1000:.0f}ms single-threaded, 1 vs 8 workers byte-identical"
    )
