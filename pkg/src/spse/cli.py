"""Command-line interface: count, encode, verify, sweep, gen.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource
refusal (an oracle or enumeration budget said no). Every command is
deterministic given its flags and seed; --threads never changes output bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .counter import CountConfig, count_paths, discovery_ratio
from .encoding import (
    PRESET_NAMES,
    EncodingParams,
    encode_spse,
    load_preset_file,
    preset,
)
from .errors import InputError, ResourceLimitError
from .graph import FAMILIES, diameter, generate
from .io import (
    dataset_to_json_obj,
    format_edge_list,
    load_dataset,
    load_graph,
    read_tensor,
    save_graph,
    write_tensor,
)
from .oracle import exact_path_counts
from .synth import SynthParams, dataset_manifest, generate_dataset
from .tensors import PathCountTensor
from .verify import SUITES, run_suite


def _resolve_threads(flag: int | None) -> int:
    if flag is not None:
        if flag < 1:
            raise InputError("--threads must be >= 1")
        return flag
    env = os.environ.get("SPSE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"SPSE_THREADS must be an integer, got {env!r}")
    return max(1, os.cpu_count() or 1)


def _load_preset(value: str, seed: int) -> tuple[CountConfig, EncodingParams]:
    if value in PRESET_NAMES:
        return preset(value, seed)
    path = Path(value)
    if path.suffix == ".json" or path.exists():
        return load_preset_file(path, seed)
    return preset(value, seed)  # raises with the list of valid names


def _count_config(args) -> CountConfig:
    if args.preset:
        base, _ = _load_preset(args.preset, args.seed)
    else:
        base = CountConfig(seed=args.seed)
    return CountConfig(
        root_fraction=args.roots_frac if args.roots_frac is not None else base.root_fraction,
        k_max=args.max_len if args.max_len is not None else base.k_max,
        dfs_depth_max=args.dfs_depth if args.dfs_depth is not None else base.dfs_depth_max,
        trials_per_depth=args.trials if args.trials is not None else base.trials_per_depth,
        seed=args.seed,
    )


def _config_sidecar(cfg: CountConfig, mode: str) -> dict:
    return {
        "mode": mode,
        "R": cfg.root_fraction,
        "K": cfg.k_max,
        "D_dfs": cfg.dfs_depth_max,
        "N": cfg.trials_per_depth,
    }


def cmd_count(args) -> int:
    cfg = _count_config(args)
    threads = _resolve_threads(args.threads)
    if args.output and len(args.inputs) != 1:
        raise InputError("--output works with exactly one input; use --output-dir")
    for src in args.inputs:
        g = load_graph(src)
        if args.exact:
            t0 = time.perf_counter()
            tensor = exact_path_counts(g, cfg.k_max, allow_large=args.allow_large)
            wall = time.perf_counter() - t0
            dag_count = None
        else:
            rep = count_paths(g, cfg, threads=threads)
            tensor, wall, dag_count = rep.tensor, rep.wall_time, rep.dag_count
        sidecar = {
            "config": _config_sidecar(cfg, "exact" if args.exact else "approx"),
            "seed": cfg.seed,
            "saturated": bool(tensor.saturated),
            "wall_time_ms": wall * 1000.0,
            "tool_version": __version__,
        }
        if dag_count is not None:
            sidecar["dag_count"] = dag_count
        if args.output:
            dest = Path(args.output)
        else:
            name = Path(src).stem + ".spse"
            dest = Path(args.output_dir or Path(src).parent) / name
        if args.output_dir:
            Path(args.output_dir).mkdir(parents=True, exist_ok=True)
        write_tensor(dest, tensor.counts, sidecar)
        dags = "" if dag_count is None else f" dags={dag_count}"
        print(f"wrote {dest} (n={tensor.n} K={tensor.k_max}{dags} {wall*1000.0:.1f}ms)")
    return 0


def cmd_encode(args) -> int:
    arr, _ = read_tensor(args.input)
    if arr.dtype != np.uint64:
        raise InputError("encode expects a count tensor (dtype tag 1, uint64)")
    if args.preset:
        _, params = _load_preset(args.preset, 0)
    else:
        if args.alpha is None or args.beta is None:
            raise InputError("encode needs --alpha and --beta, or --preset")
        params = EncodingParams(
            alpha=args.alpha, beta=args.beta, log_depth=args.logn
        )
    n, _, k = arr.shape
    counts = PathCountTensor(n=n, k_max=k, counts=arr)
    encoded = encode_spse(counts, params)
    dest = Path(args.output) if args.output else Path(
        str(Path(args.input).with_suffix("")) + ".enc.spse"
    )
    sidecar = {
        "encoding": {
            "alpha": params.alpha,
            "beta": params.beta,
            "n": params.log_depth,
        },
        "source": str(args.input),
        "tool_version": __version__,
    }
    write_tensor(dest, encoded.values, sidecar)
    print(f"wrote {dest} (n={n} K={k})")
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.prop, seed=args.seed, cases=args.cases)
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if report["passed"] else 1


_SWEEP_DEFAULTS = {
    "R": "0.25,0.5,1.0",
    "N": "1,2,4",
    "D_dfs": "0,2,4",
}


def _sweep_graphs(args) -> list:
    if args.input:
        graphs, _ = load_dataset(args.input)
        return graphs
    graphs = []
    for idx in range(args.graphs):
        sub = np.random.SeedSequence([args.seed, idx]).generate_state(1)[0]
        graphs.append(generate("er", n=args.nodes, p=args.edge_prob, seed=int(sub)))
    return graphs


def cmd_sweep(args) -> int:
    param = args.param
    raw = args.values if args.values is not None else _SWEEP_DEFAULTS[param]
    try:
        values = [float(v) if param == "R" else int(v) for v in raw.split(",") if v]
    except ValueError:
        raise InputError(f"cannot parse --values {raw!r}")
    if not values:
        raise InputError("--values is empty")
    threads = _resolve_threads(args.threads)
    graphs = _sweep_graphs(args)
    if not graphs:
        raise InputError("sweep needs at least one graph")
    k = args.max_len

    refs = []
    for g in graphs:
        if args.canonical:
            ref_cfg, _ = _load_preset(args.canonical, args.seed)
            ref_cfg = CountConfig(
                root_fraction=ref_cfg.root_fraction,
                k_max=k,
                dfs_depth_max=ref_cfg.dfs_depth_max,
                trials_per_depth=ref_cfg.trials_per_depth,
                seed=args.seed,
            )
        else:
            ref_cfg = CountConfig(
                root_fraction=1.0,
                k_max=k,
                dfs_depth_max=max(1, diameter(g)),
                trials_per_depth=4,
                seed=args.seed,
            )
        refs.append(count_paths(g, ref_cfg, threads=threads).tensor)

    rows = []
    for value in values:
        fields = {"root_fraction": 0.5, "dfs_depth_max": 2, "trials_per_depth": 2}
        if param == "R":
            fields["root_fraction"] = value
        elif param == "N":
            fields["trials_per_depth"] = value
        else:
            fields["dfs_depth_max"] = value
        cfg = CountConfig(k_max=k, seed=args.seed, **fields)
        ratios = []
        times = []
        for g, ref in zip(graphs, refs):
            rep = count_paths(g, cfg, threads=threads)
            ratios.append(discovery_ratio(rep.tensor, ref))
            times.append(rep.wall_time * 1000.0)
        rows.append((value, float(np.mean(ratios)), float(np.mean(times))))

    if args.output:
        try:
            out = open(args.output, "w", newline="")
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc}")
    else:
        out = sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["param_value", "mean_discovery_ratio", "mean_time_per_sample_ms"])
        for value, ratio, ms in rows:
            writer.writerow([value, f"{ratio:.6f}", f"{ms:.3f}"])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_gen(args) -> int:
    if args.synth:
        if not args.output:
            raise InputError("gen --synth needs --output")
        try:
            split = tuple(int(x) for x in args.split.split(","))
        except ValueError:
            raise InputError(f"cannot parse --split {args.split!r}")
        n_graphs = args.n if args.n is not None else 12000
        params = SynthParams(n_graphs=n_graphs, split=split, seed=args.seed)
        labeled, assignment = generate_dataset(params)
        obj = dataset_to_json_obj(
            [lg.graph for lg in labeled], [list(lg.labels) for lg in labeled]
        )
        obj["split"] = list(assignment)
        obj["manifest"] = dataset_manifest(params, labeled)
        try:
            Path(args.output).write_text(json.dumps(obj, sort_keys=True))
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc}")
        man = obj["manifest"]
        print(
            f"wrote {args.output} ({n_graphs} graphs, "
            f"mean nodes {man['mean_nodes']:.1f}, mean edges {man['mean_edges']:.1f})"
        )
        return 0
    if not args.family:
        raise InputError("gen needs --synth or --family")
    g = generate(
        args.family, n=args.n, m=args.m, p=args.p, skip=args.skip, seed=args.seed
    )
    if args.output:
        save_graph(args.output, g)
        print(f"wrote {args.output} (n={g.node_count}, edges={g.edge_count})")
    else:
        sys.stdout.write(format_edge_list(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spse",
        description="Approximate simple-path counting and structural encodings.",
    )
    parser.add_argument("--version", action="version", version=f"spse {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("count", help="count paths in one or more graphs")
    pc.add_argument("inputs", nargs="+", help="edge-list or .json graph files")
    pc.add_argument("-R", "--roots-frac", type=float, default=None)
    pc.add_argument("-K", "--max-len", type=int, default=None)
    pc.add_argument("--dfs-depth", type=int, default=None, help="max DFS depth D_dfs")
    pc.add_argument("-N", "--trials", type=int, default=None, help="trials per depth")
    pc.add_argument("--preset", default=None, help="preset name or JSON file")
    pc.add_argument("--exact", action="store_true", help="use the exact oracle")
    pc.add_argument(
        "--allow-large",
        action="store_true",
        help="override the exact-oracle node cap",
    )
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--threads", type=int, default=None)
    pc.add_argument("-o", "--output", default=None)
    pc.add_argument("--output-dir", default=None)
    pc.set_defaults(func=cmd_count)

    pe = sub.add_parser("encode", help="map a count tensor to features")
    pe.add_argument("input", help="count tensor file")
    pe.add_argument("--alpha", type=float, default=None)
    pe.add_argument("--beta", type=float, default=None)
    pe.add_argument("--logn", type=int, default=1, help="log compositions n")
    pe.add_argument("--preset", default=None, help="preset name or JSON file")
    pe.add_argument("-o", "--output", default=None)
    pe.set_defaults(func=cmd_encode)

    pv = sub.add_parser("verify", help="run a property suite")
    pv.add_argument("--prop", required=True, choices=sorted(SUITES))
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--cases", type=int, default=None)
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("sweep", help="sensitivity sweep, CSV output")
    ps.add_argument("--param", choices=("R", "N", "D_dfs"), default="R")
    ps.add_argument("--values", default=None, help="comma-separated grid")
    ps.add_argument("--input", default=None, help="dataset JSON instead of generator")
    ps.add_argument("--graphs", type=int, default=20)
    ps.add_argument("--nodes", type=int, default=23)
    ps.add_argument("--edge-prob", type=float, default=0.10)
    ps.add_argument("-K", "--max-len", type=int, default=10)
    ps.add_argument("--canonical", default=None, help="preset for the reference config")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--threads", type=int, default=None)
    ps.add_argument("-o", "--output", default=None)
    ps.set_defaults(func=cmd_sweep)

    pg = sub.add_parser("gen", help="generate graphs or the synthetic dataset")
    pg.add_argument("--synth", action="store_true")
    pg.add_argument("--family", choices=FAMILIES, default=None)
    pg.add_argument("--n", type=int, default=None, help="graph count (synth) or size")
    pg.add_argument("--m", type=int, default=None, help="cycle length")
    pg.add_argument("--p", type=float, default=None, help="er edge probability")
    pg.add_argument("--skip", type=int, default=None, help="csl chord offset")
    pg.add_argument("--split", default="10000,1000,1000")
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("-o", "--output", default=None)
    pg.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
