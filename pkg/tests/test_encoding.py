"""Tests for the squashed-count encoding, presets, and the walk encoder."""

from __future__ import annotations

import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spse.counter import CountConfig, count_paths
from spse.encoding import (
    PRESET_NAMES,
    EncodingParams,
    encode_rwse,
    encode_spse,
    load_preset_file,
    preset,
    spse_map,
)
from spse.errors import InputError
from spse.graph import generate
from spse.oracle import random_walk_tensor

PROPERTY_SETTINGS = settings(max_examples=100, deadline=None)

# name -> (R, K, D_dfs, N, alpha, beta, n)
FROZEN_PRESETS = {
    "zinc": (1.0, 20, 6, 1, 0.5, 0.0, 1),
    "pattern": (0.4, 16, 2, 7, 0.2, -0.2, 3),
    "cluster": (0.4, 16, 2, 7, 0.2, -0.2, 3),
    "mnist": (0.55, 17, 11, 2, 0.2, -0.2, 3),
    "cifar10": (0.55, 17, 11, 2, 0.2, -0.2, 3),
    "peptides": (1.0, 23, 4, 1, 0.2, -0.2, 2),
    "pcqm4mv2": (1.0, 15, 6, 1, 0.5, 0.0, 1),
}

GRID = (0, 1, 10, 10**6, 2**64 - 1)


def _mp_reference(x, alpha, beta, depth):
    with mpmath.workdps(60):
        v = mpmath.mpf(int(x))
        for _ in range(depth):
            v = mpmath.log(1 + v)
        return float(mpmath.mpf(alpha) * v + mpmath.mpf(beta))


def test_zero_maps_to_beta_exactly():
    for name in PRESET_NAMES:
        _, params = preset(name)
        assert spse_map(np.uint64(0), params) == params.beta


def test_zinc_single_count_value():
    _, params = preset("zinc")
    assert spse_map(np.uint64(1), params) == 0.34657359027997264
    assert spse_map(np.uint64(1), params) == 0.5 * math.log(2.0)


def test_preset_table_frozen():
    assert len(PRESET_NAMES) == 7
    assert set(PRESET_NAMES) == set(FROZEN_PRESETS)
    for name, (r, k, d, trials, alpha, beta, depth) in FROZEN_PRESETS.items():
        cfg, params = preset(name, seed=9)
        assert cfg == CountConfig(r, k, d, trials, seed=9)
        assert (params.alpha, params.beta, params.log_depth) == (alpha, beta, depth)


def test_unknown_preset_lists_names():
    with pytest.raises(InputError, match="zinc"):
        preset("qm9")


@pytest.mark.parametrize("x", GRID)
@pytest.mark.parametrize("name", sorted(FROZEN_PRESETS))
def test_map_matches_high_precision_reference(name, x):
    _, params = preset(name)
    want = _mp_reference(x, params.alpha, params.beta, params.log_depth)
    got = float(spse_map(np.uint64(x), params))
    assert abs(got - want) <= 1e-12


def test_strictly_increasing_on_spread_grid():
    for name in PRESET_NAMES:
        _, params = preset(name)
        values = [float(spse_map(np.uint64(x), params)) for x in (0, 1, 10, 100, 10**6)]
        assert all(a < b for a, b in zip(values, values[1:]))


@PROPERTY_SETTINGS
@given(st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1))
def test_monotone_over_full_count_range(x, y):
    _, params = preset("peptides")
    lo, hi = sorted((x, y))
    assert spse_map(np.uint64(lo), params) <= spse_map(np.uint64(hi), params)


def test_range_compression_bound():
    params = EncodingParams(alpha=0.5, beta=0.0, log_depth=1)
    top = float(spse_map(np.uint64(2**64 - 1), params))
    assert top < 0.5 * 45.0


def test_iterated_map_composes_exactly():
    raw_a = EncodingParams(alpha=1.0, beta=0.0, log_depth=2)
    raw_b = EncodingParams(alpha=1.0, beta=0.0, log_depth=3)
    raw_ab = EncodingParams(alpha=1.0, beta=0.0, log_depth=5)
    xs = np.array([0, 1, 7, 10**9, 2**63], dtype=np.uint64)
    stage = spse_map(xs, raw_a)
    assert np.array_equal(spse_map(stage, raw_b), spse_map(xs, raw_ab))


def test_encode_spse_applies_map_elementwise():
    g = generate("cycle", m=6)
    rep = count_paths(g, CountConfig(1.0, 5, 1, 12, seed=1))
    _, params = preset("zinc")
    enc = encode_spse(rep.tensor, params)
    assert enc.values.dtype == np.float64
    assert enc.values.shape == (6, 6, 5)
    assert np.array_equal(enc.values, spse_map(rep.tensor.counts, params))


def test_encode_rwse_matches_walk_oracle():
    g = generate("er", n=9, p=0.4, seed=3)
    enc = encode_rwse(g, 6)
    oracle = random_walk_tensor(g, 6)
    assert np.array_equal(enc.probs, oracle.probs)


def test_params_validation():
    with pytest.raises(InputError):
        EncodingParams(alpha=0.5, beta=0.0, log_depth=0)
    with pytest.raises(InputError):
        EncodingParams(alpha=float("inf"), beta=0.0, log_depth=1)
    with pytest.raises(InputError):
        EncodingParams(alpha=0.5, beta=float("nan"), log_depth=1)


def test_preset_file_round_trip(tmp_path):
    row = {"R": 1.0, "K": 20, "D_dfs": 6, "N": 1, "alpha": 0.5, "beta": 0.0, "n": 1}
    path = tmp_path / "custom.json"
    path.write_text(json.dumps(row))
    cfg, params = load_preset_file(path, seed=3)
    want_cfg, want_params = preset("zinc", seed=3)
    assert cfg == want_cfg and params == want_params


def test_preset_file_rejects_bad_shapes(tmp_path):
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"R": 1.0, "K": 20}))
    with pytest.raises(InputError):
        load_preset_file(missing)
    extra = tmp_path / "extra.json"
    extra.write_text(
        json.dumps(
            {"R": 1.0, "K": 20, "D_dfs": 6, "N": 1, "alpha": 0.5, "beta": 0.0, "n": 1, "gamma": 2}
        )
    )
    with pytest.raises(InputError):
        load_preset_file(extra)
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    with pytest.raises(InputError):
        load_preset_file(garbled)
    with pytest.raises(InputError):
        load_preset_file(tmp_path / "absent.json")
