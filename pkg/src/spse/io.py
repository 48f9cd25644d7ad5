"""File formats: edge-list text, JSON graphs and datasets, binary tensor files.

Tensor files carry a fixed header (magic ``SPSE1``, a one-byte dtype tag, three
little-endian u32 dimensions) followed by the row-major payload with the length
axis fastest. A JSON sidecar at ``<path>.json`` records config, seed, the
saturation flag, wall time, and the tool version.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InputError
from .graph import Graph, graph_from_edges

MAGIC = b"SPSE1"
DTYPE_U64 = 1
DTYPE_F64 = 2

_TAG_TO_DTYPE = {DTYPE_U64: np.dtype("<u8"), DTYPE_F64: np.dtype("<f8")}
_HEADER = struct.Struct("<III")


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format.

    An optional header line ``# nodes=N`` fixes the node count; other lines
    starting with ``#`` are comments. Each edge line is ``u v`` in 0-based
    decimal. Without a header the node count is one more than the largest
    index seen (zero for an empty file).
    """
    node_count: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("nodes="):
                try:
                    node_count = int(body[len("nodes=") :])
                except ValueError:
                    raise InputError(f"line {lineno}: bad node count in header")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: non-integer endpoint in {line!r}")
        edges.append((u, v))
    if node_count is None:
        node_count = 1 + max((max(u, v) for u, v in edges), default=-1)
    return graph_from_edges(node_count, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"# nodes={g.node_count}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def graph_to_json_obj(g: Graph) -> dict[str, Any]:
    return {"n": g.node_count, "edges": [[u, v] for u, v in sorted(g.edges)]}


def graph_from_json_obj(obj: Any) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise InputError('JSON graph must be an object with "n" and "edges"')
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise InputError('"edges" must be a list of [u, v] pairs')
    try:
        pairs = [(int(u), int(v)) for u, v in edges]
    except (TypeError, ValueError):
        raise InputError('"edges" must be a list of [u, v] pairs')
    return graph_from_edges(int(obj["n"]), pairs)


def load_graph(path: str | Path) -> Graph:
    """Read a graph file; ``.json`` selects the JSON format, anything else
    is treated as edge-list text."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    if path.suffix == ".json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}")
        return graph_from_json_obj(obj)
    return parse_edge_list(text)


def save_graph(path: str | Path, g: Graph) -> None:
    path = Path(path)
    try:
        if path.suffix == ".json":
            path.write_text(json.dumps(graph_to_json_obj(g), sort_keys=True))
        else:
            path.write_text(format_edge_list(g))
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}")


def dataset_to_json_obj(
    graphs: list[Graph], labels: list[list[int]] | None = None
) -> dict[str, Any]:
    obj: dict[str, Any] = {"graphs": [graph_to_json_obj(g) for g in graphs]}
    if labels is not None:
        obj["labels"] = [list(map(int, row)) for row in labels]
    return obj


def dataset_from_json_obj(obj: Any) -> tuple[list[Graph], list[list[int]] | None]:
    if not isinstance(obj, dict) or "graphs" not in obj:
        raise InputError('dataset JSON must be an object with "graphs"')
    graphs = [graph_from_json_obj(go) for go in obj["graphs"]]
    labels = obj.get("labels")
    if labels is not None:
        if len(labels) != len(graphs):
            raise InputError("labels length does not match graphs length")
        labels = [[int(x) for x in row] for row in labels]
    return graphs, labels


def load_dataset(path: str | Path) -> tuple[list[Graph], list[list[int]] | None]:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}")
    return dataset_from_json_obj(obj)


def write_tensor(path: str | Path, array: np.ndarray, sidecar: dict[str, Any]) -> None:
    """Write an (n, n, K) uint64 or float64 array plus its JSON sidecar."""
    if array.ndim != 3 or array.shape[0] != array.shape[1]:
        raise InputError(f"tensor must have shape (n, n, K), got {array.shape}")
    if array.dtype == np.uint64:
        tag = DTYPE_U64
    elif array.dtype == np.float64:
        tag = DTYPE_F64
    else:
        raise InputError(f"unsupported tensor dtype {array.dtype}")
    n, _, k = array.shape
    payload = np.ascontiguousarray(array).astype(_TAG_TO_DTYPE[tag], copy=False)
    path = Path(path)
    try:
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(bytes([tag]))
            fh.write(_HEADER.pack(n, n, k))
            fh.write(payload.tobytes(order="C"))
        Path(str(path) + ".json").write_text(json.dumps(sidecar, sort_keys=True))
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}")


def read_tensor(path: str | Path) -> tuple[np.ndarray, dict[str, Any] | None]:
    """Read a tensor file back; returns (array, sidecar-or-None).

    Rejects wrong magic, unknown dtype tags, inconsistent dims, and truncated
    payloads with InputError.
    """
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    head_len = len(MAGIC) + 1 + _HEADER.size
    if len(blob) < head_len or blob[: len(MAGIC)] != MAGIC:
        raise InputError(f"{path} is not a tensor file (bad magic)")
    tag = blob[len(MAGIC)]
    if tag not in _TAG_TO_DTYPE:
        raise InputError(f"{path}: unknown dtype tag {tag}")
    n, n2, k = _HEADER.unpack_from(blob, len(MAGIC) + 1)
    if n != n2:
        raise InputError(f"{path}: non-square dims {n} x {n2}")
    expected = n * n * k * 8
    body = blob[head_len:]
    if len(body) != expected:
        raise InputError(
            f"{path}: payload is {len(body)} bytes, expected {expected} (truncated?)"
        )
    arr = np.frombuffer(body, dtype=_TAG_TO_DTYPE[tag]).reshape(n, n, k).copy()
    sidecar = None
    side_path = Path(str(path) + ".json")
    if side_path.exists():
        try:
            sidecar = json.loads(side_path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{side_path}: unreadable sidecar: {exc}")
    return arr, sidecar
