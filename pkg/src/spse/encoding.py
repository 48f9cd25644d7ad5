"""Feature encodings over count and walk tensors.

The main map squashes raw path counts with an iterated logarithm,
f(x) = alpha * g^n(x) + beta with g(x) = ln(1 + x), so saturated 64-bit
counts land around alpha * 44.4 + beta instead of 1.8e19. The module also
re-exposes the random-walk tensor as the conventional baseline encoding,
and ships the per-dataset hyperparameter presets.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .counter import CountConfig
from .errors import InputError
from .graph import Graph
from .oracle import random_walk_tensor
from .tensors import EncodedTensor, PathCountTensor, RwTensor


@dataclass(frozen=True)
class EncodingParams:
    alpha: float
    beta: float
    log_depth: int = 1

    def __post_init__(self) -> None:
        if self.log_depth < 1:
            raise InputError("log_depth must be >= 1")
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise InputError("alpha and beta must be finite")


def spse_map(x, p: EncodingParams) -> np.ndarray:
    """alpha * log1p(...log1p(x)...) + beta, log1p applied log_depth times.

    Accepts scalars or arrays of non-negative values. Integer counts above
    2**53 lose precision in the float conversion; the shift in the output is
    below 1e-9 and accepted.
    """
    out = np.asarray(x, dtype=np.float64)
    for _ in range(p.log_depth):
        out = np.log1p(out)
    return p.alpha * out + p.beta


def encode_spse(counts: PathCountTensor, p: EncodingParams) -> EncodedTensor:
    """Entrywise squashed counts; zero-count entries come out exactly beta."""
    return EncodedTensor(
        n=counts.n, k_max=counts.k_max, values=spse_map(counts.counts, p)
    )


def encode_rwse(g: Graph, k_max: int) -> RwTensor:
    """Random-walk transition probabilities, the baseline encoding."""
    return random_walk_tensor(g, k_max)


PRESET_NAMES = (
    "zinc",
    "pattern",
    "cluster",
    "mnist",
    "cifar10",
    "peptides",
    "pcqm4mv2",
)

# name -> (R, K, D_dfs, N, alpha, beta, n)
_PRESETS = {
    "zinc": (1.0, 20, 6, 1, 0.5, 0.0, 1),
    "pattern": (0.4, 16, 2, 7, 0.2, -0.2, 3),
    "cluster": (0.4, 16, 2, 7, 0.2, -0.2, 3),
    "mnist": (0.55, 17, 11, 2, 0.2, -0.2, 3),
    "cifar10": (0.55, 17, 11, 2, 0.2, -0.2, 3),
    "peptides": (1.0, 23, 4, 1, 0.2, -0.2, 2),
    "pcqm4mv2": (1.0, 15, 6, 1, 0.5, 0.0, 1),
}

_PRESET_FILE_KEYS = ("R", "K", "D_dfs", "N", "alpha", "beta", "n")


def _build(row, seed: int) -> tuple[CountConfig, EncodingParams]:
    r, k, d, trials, alpha, beta, depth = row
    cfg = CountConfig(
        root_fraction=float(r),
        k_max=int(k),
        dfs_depth_max=int(d),
        trials_per_depth=int(trials),
        seed=seed,
    )
    return cfg, EncodingParams(alpha=float(alpha), beta=float(beta), log_depth=int(depth))


def preset(name: str, seed: int = 0) -> tuple[CountConfig, EncodingParams]:
    """Counting and encoding hyperparameters for a named dataset."""
    row = _PRESETS.get(name)
    if row is None:
        raise InputError(
            f"unknown preset {name!r}; valid names: {', '.join(PRESET_NAMES)}"
        )
    return _build(row, seed)


def load_preset_file(
    path: Union[str, Path], seed: int = 0
) -> tuple[CountConfig, EncodingParams]:
    """Read a preset from a JSON file with keys R, K, D_dfs, N, alpha, beta, n."""
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read preset file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"preset file {path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError("preset file must hold a JSON object")
    missing = [k for k in _PRESET_FILE_KEYS if k not in obj]
    if missing:
        raise InputError(f"preset file missing keys: {', '.join(missing)}")
    unknown = [k for k in obj if k not in _PRESET_FILE_KEYS]
    if unknown:
        raise InputError(f"preset file has unknown keys: {', '.join(sorted(unknown))}")
    return _build(tuple(obj[k] for k in _PRESET_FILE_KEYS), seed)
