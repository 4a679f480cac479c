"""Command-line interface.

Subcommands: compute (exact distance), verify (threshold decision),
bench (batch runs from a manifest), gen (synthetic pair generation),
oracle (brute-force reference on small graphs).

Records share one column set across formats, versioned in the CSV
header comment.  Exit codes: 0 ok / verified true, 1 verified false,
2 usage or parse error, 3 timeout, 4 memory limit, 5 oracle refusal.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .bounds import ALL_KINDS
from .datagen import make_pair
from .graphs import LabelTable, ParseError, parse_graphs, serialize_graphs
from .oracle import DEFAULT_MAX_VERTICES, OracleLimitError, brute_force_ged
from .search import ORDERS, STRATEGIES, SearchConfig, SearchResult, ged_compute, ged_verify

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3
EXIT_MEMORY = 4
EXIT_ORACLE = 5

RECORD_VERSION = "# gedkit-records v1"
RECORD_COLUMNS = (
    "pair",
    "strategy",
    "bound",
    "expand_all",
    "mode",
    "tau",
    "status",
    "distance",
    "verified",
    "lower",
    "upper",
    "extensions",
    "pushed",
    "popped",
    "peak_live_nodes",
    "upper_bound_updates",
    "elapsed_ms",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def _record(pair: str, cfg: SearchConfig, mode: str, tau, res: SearchResult,
            elapsed_ms: float) -> dict:
    return {
        "pair": pair,
        "strategy": cfg.strategy,
        "bound": cfg.bound,
        "expand_all": cfg.expand_all,
        "mode": mode,
        "tau": tau,
        "status": res.status,
        "distance": res.distance,
        "verified": res.verified,
        "lower": str(res.lower),
        "upper": res.upper,
        "extensions": res.stats.extensions,
        "pushed": res.stats.pushed,
        "popped": res.stats.popped,
        "peak_live_nodes": res.stats.peak_live_nodes,
        "upper_bound_updates": res.stats.upper_bound_updates,
        "elapsed_ms": elapsed_ms,
    }


def _write_csv(records: list[dict], out) -> None:
    out.write(RECORD_VERSION + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    for rec in records:
        writer.writerow([_cell(rec[c]) for c in RECORD_COLUMNS])


def _witness_payload(res: SearchResult):
    pairs = res.witness_pairs()
    if pairs is None:
        return None
    return [[a, b] for a, b in pairs]


def _write_single(record: dict, res: SearchResult, fmt: str, out) -> None:
    if fmt == "csv":
        _write_csv([record], out)
        return
    if fmt == "json":
        payload = dict(record)
        payload["witness"] = _witness_payload(res)
        payload["witness_cost"] = res.witness_cost
        json.dump(payload, out, indent=2)
        out.write("\n")
        return
    out.write(f"pair: {record['pair']}\n")
    out.write(
        f"mode: {record['mode']}   strategy: {record['strategy']}   "
        f"bound: {record['bound']}   expand_all: {_cell(record['expand_all'])}\n"
    )
    if record["tau"] is not None:
        out.write(f"tau: {record['tau']}\n")
    out.write(f"status: {record['status']}\n")
    if record["mode"] == "verify":
        out.write(f"verified: {_cell(record['verified'])}\n")
    if record["distance"] is not None:
        out.write(f"distance: {record['distance']}\n")
    else:
        upper = record["upper"] if record["upper"] is not None else "?"
        out.write(f"interval: [{record['lower']}, {upper}]\n")
    pairs = res.witness_pairs()
    if pairs is not None:
        cells = " ".join(
            f"{'_' if a is None else a}->{'_' if b is None else b}" for a, b in pairs
        )
        out.write(f"witness: {cells}\n")
        out.write(f"witness_cost: {res.witness_cost}\n")
    out.write(
        f"extensions: {record['extensions']}   pushed: {record['pushed']}   "
        f"popped: {record['popped']}   peak_live_nodes: {record['peak_live_nodes']}\n"
    )
    out.write(f"elapsed_ms: {_cell(record['elapsed_ms'])}\n")


def _exit_for(res: SearchResult) -> int:
    if res.status == "timeout":
        return EXIT_TIMEOUT
    if res.status == "out_of_memory":
        return EXIT_MEMORY
    if res.mode == "verify" and res.verified is False:
        return EXIT_FALSE
    return EXIT_OK


def _load_pair(args):
    """Two files (first graph of each) or one file with --pair indices."""
    table = LabelTable()
    if args.second is not None:
        if args.pair:
            raise ValueError("--pair applies to a single multi-graph file")
        ga = parse_graphs(Path(args.first).read_text(), table)
        gb = parse_graphs(Path(args.second).read_text(), table)
        if not ga or not gb:
            raise ValueError("input files must each hold at least one graph")
        return ga[0], gb[0], f"{args.first}:0|{args.second}:0"
    graphs = parse_graphs(Path(args.first).read_text(), table)
    i, j = args.pair if args.pair else (0, 1)
    if not (0 <= i < len(graphs) and 0 <= j < len(graphs)):
        raise ValueError(f"pair indices out of range for {len(graphs)} graphs")
    return graphs[i], graphs[j], f"{args.first}:{i}|{args.first}:{j}"


def _config_from_args(args) -> SearchConfig:
    return SearchConfig(
        strategy=args.strategy,
        bound=args.bound,
        expand_all=args.expand_all,
        order=args.order,
        time_limit=args.time_limit,
        memory_limit=args.memory_limit,
    )


def _open_output(args):
    if args.output:
        return open(args.output, "w", encoding="utf-8"), True
    return sys.stdout, False


def _run_single(args, mode: str) -> int:
    try:
        a, b, pair_label = _load_pair(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = _config_from_args(args)
    if mode == "verify":
        res = ged_verify(a, b, args.tau, cfg)
    else:
        res = ged_compute(a, b, cfg)
    record = _record(pair_label, cfg, mode, getattr(args, "tau", None), res,
                     res.stats.elapsed_ms)
    out, close = _open_output(args)
    try:
        _write_single(record, res, args.format, out)
    finally:
        if close:
            out.close()
    return _exit_for(res)


def cmd_compute(args) -> int:
    return _run_single(args, "compute")


def cmd_verify(args) -> int:
    return _run_single(args, "verify")


# -- bench ------------------------------------------------------------


def _bench_config(raw: dict, time_limit: float, memory_limit: int) -> SearchConfig:
    return SearchConfig(
        strategy=raw.get("strategy", "astar"),
        bound=raw.get("bound", "BMa"),
        expand_all=bool(raw.get("expand_all", True)),
        order=raw.get("order", "auto"),
        time_limit=time_limit,
        memory_limit=memory_limit,
    )


def _bench_job(dataset: str, i: int, j: int, raw_cfg: dict, time_limit: float,
               memory_limit: int) -> dict:
    graphs = parse_graphs(Path(dataset).read_text(), LabelTable())
    a, b = graphs[i], graphs[j]
    cfg = _bench_config(raw_cfg, time_limit, memory_limit)
    mode = raw_cfg.get("mode", "compute")
    tau = raw_cfg.get("tau")
    if mode == "verify":
        res = ged_verify(a, b, int(tau), cfg)
    else:
        res = ged_compute(a, b, cfg)
    # a timed-out run is charged the full cap so averages stay comparable
    elapsed = time_limit * 1000.0 if res.status == "timeout" else res.stats.elapsed_ms
    return _record(f"{i}:{j}", cfg, mode, tau, res, elapsed)


def _aggregate(records: list[dict], configs: list[dict], n_pairs: int) -> list[dict]:
    out = []
    k = len(configs)
    for ci in range(k):
        rows = records[ci::k]
        assert len(rows) == n_pairs
        base = rows[0]
        out.append({
            "pair": "mean",
            "strategy": base["strategy"],
            "bound": base["bound"],
            "expand_all": base["expand_all"],
            "mode": base["mode"],
            "tau": base["tau"],
            "status": "aggregate",
            "distance": None,
            "verified": None,
            "lower": "",
            "upper": None,
            "extensions": sum(r["extensions"] for r in rows) / n_pairs,
            "pushed": None,
            "popped": None,
            "peak_live_nodes": None,
            "upper_bound_updates": None,
            "elapsed_ms": sum(r["elapsed_ms"] for r in rows) / n_pairs,
        })
    return out


def cmd_bench(args) -> int:
    try:
        manifest_path = Path(args.manifest)
        manifest = json.loads(manifest_path.read_text())
        dataset = str((manifest_path.parent / manifest["dataset"]))
        pairs = [(int(i), int(j)) for i, j in manifest["pairs"]]
        configs = list(manifest["configs"])
        if not pairs or not configs:
            raise ValueError("manifest needs non-empty pairs and configs")
        time_limit = float(manifest.get("time_limit", 3600.0))
        memory_limit = int(manifest.get("memory_limit", 16 * 2**30))
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: bad manifest: {exc}", file=sys.stderr)
        return EXIT_USAGE
    jobs = [
        (dataset, i, j, cfg, time_limit, memory_limit)
        for (i, j) in pairs
        for cfg in configs
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_bench_job, *job) for job in jobs]
            records = [f.result() for f in futures]
    else:
        records = [_bench_job(*job) for job in jobs]
    aggregates = _aggregate(records, configs, len(pairs))
    out, close = _open_output(args)
    try:
        if args.format == "json":
            json.dump({"records": records, "aggregates": aggregates}, out, indent=2)
            out.write("\n")
        else:
            _write_csv(records + aggregates, out)
    finally:
        if close:
            out.close()
    statuses = {r["status"] for r in records}
    if "out_of_memory" in statuses:
        return EXIT_MEMORY
    if "timeout" in statuses:
        return EXIT_TIMEOUT
    return EXIT_OK


# -- gen / oracle ------------------------------------------------------


def cmd_gen(args) -> int:
    try:
        graphs = []
        for k in range(args.count):
            a, b = make_pair(
                args.n,
                args.x,
                args.seed + k,
                edge_density=args.density,
                vertex_labels=args.vertex_labels,
                edge_labels=args.edge_labels,
            )
            a.tag = 2 * k
            b.tag = 2 * k + 1
            graphs.extend((a, b))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = serialize_graphs(graphs)
    out, close = _open_output(args)
    try:
        out.write(text)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        a, b, pair_label = _load_pair(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.monotonic()
    try:
        distance = brute_force_ged(a, b, max_vertices=args.max_vertices)
    except OracleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    elapsed_ms = (time.monotonic() - t0) * 1000.0
    out, close = _open_output(args)
    try:
        if args.format == "json":
            json.dump(
                {"pair": pair_label, "distance": distance, "elapsed_ms": elapsed_ms},
                out,
                indent=2,
            )
            out.write("\n")
        else:
            out.write(f"pair: {pair_label}\ndistance: {distance}\n")
            out.write(f"elapsed_ms: {elapsed_ms:.3f}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


# -- parser ------------------------------------------------------------


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("first", help="graph file (multi-graph format)")
    p.add_argument("second", nargs="?", help="second graph file; omit with --pair")
    p.add_argument("--pair", nargs=2, type=int, metavar=("I", "J"),
                   help="graph indices within a single file (default: 0 1)")


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strategy", choices=STRATEGIES, default="astar")
    p.add_argument("--bound", choices=ALL_KINDS, default="BMa")
    p.add_argument("--expand-all", dest="expand_all",
                   action=argparse.BooleanOptionalAction, default=True,
                   help="cache whole families at expansion (default: on)")
    p.add_argument("--order", choices=ORDERS, default="auto")
    p.add_argument("--time-limit", type=float, default=3600.0, metavar="SECONDS")
    p.add_argument("--memory-limit", type=int, default=16 * 2**30, metavar="BYTES")


def _add_output_flags(p: argparse.ArgumentParser, formats=("text", "json", "csv")) -> None:
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--output", help="write to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gedkit",
        description="Exact graph edit distance computation and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="exact edit distance of one pair")
    _add_input_flags(p)
    _add_search_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="decide distance <= tau")
    _add_input_flags(p)
    p.add_argument("--tau", type=int, required=True)
    _add_search_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a manifest of pairs x configs")
    p.add_argument("manifest", help="JSON manifest: dataset, pairs, configs")
    p.add_argument("--jobs", type=int, default=1)
    _add_output_flags(p, formats=("csv", "json"))
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate base/perturbed graph pairs")
    p.add_argument("--n", type=int, required=True, help="vertices per graph")
    p.add_argument("--count", type=int, default=1, help="number of pairs")
    p.add_argument("--x", type=int, default=1, help="edit operations per pair")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.20)
    p.add_argument("--vertex-labels", type=int, default=5)
    p.add_argument("--edge-labels", type=int, default=2)
    p.add_argument("--output", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force distance on small graphs")
    _add_input_flags(p)
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    _add_output_flags(p, formats=("text", "json"))
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
