"""Command-line interface: detect, eval, bench.

Exit statuses: 0 success, 1 input error, 2 config/usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import run_bench
from .errors import ConfigError, ConfigInvalidError, InputError, UnknownNodeError
from .graph import Graph, Partition, load_edge_list, load_gml, load_labels, parse_label_lines
from .modularity import confusion_matrix, partition_accuracy
from .pipeline import detect
from .synthetic import planted_partition


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str, fmt: str | None) -> tuple[Graph, Partition | None]:
    if fmt is None:
        fmt = "gml" if path.endswith(".gml") else "edgelist"
    text = _read_text(path)
    if fmt == "gml":
        return load_gml(text)
    return load_edge_list(text), None


def _result_json(result) -> str:
    return json.dumps(result.to_json_dict(), sort_keys=True, indent=2)


def cmd_detect(args) -> int:
    g, _ = _load_graph(args.input, args.format)
    result = detect(
        g,
        seed=args.seed,
        agent_count=args.agents,
        memory_size=args.memory,
        hub_fraction=args.hub_fraction,
        max_generations=args.max_generations,
    )
    if args.output == "json":
        print(_result_json(result))
    else:
        for name in g.nodes:
            print(f"{name}\t{result.communities[name]}")
    return 0


def _load_result_communities(path: str) -> dict[str, int]:
    """Read a detect result: the JSON output or two-column name/community text."""
    text = _read_text(path)
    try:
        payload = json.loads(text)
    except json.JSONDecodeError:
        return {name: int(label) for name, label in parse_label_lines(text).items()}
    if not isinstance(payload, dict) or "communities" not in payload:
        raise InputError(f"{path}: JSON result has no 'communities' map")
    return payload["communities"]


def cmd_eval(args) -> int:
    predicted_map = _load_result_communities(args.result)
    truth_map = parse_label_lines(_read_text(args.truth))
    missing = sorted(set(predicted_map) - set(truth_map))
    if missing:
        raise UnknownNodeError(f"truth file is missing node '{missing[0]}'")
    unknown = sorted(set(truth_map) - set(predicted_map))
    if unknown:
        raise UnknownNodeError(f"truth file names unknown node '{unknown[0]}'")

    names = sorted(predicted_map)
    predicted = Partition.from_labels([predicted_map[n] for n in names])
    truth = Partition.from_labels([truth_map[n] for n in names])
    accuracy = partition_accuracy(predicted, truth)
    counts = confusion_matrix(predicted, truth)

    print(f"accuracy: {accuracy:.6f}")
    print(f"predicted communities: {predicted.community_count}")
    print(f"true communities: {truth.community_count}")
    print("confusion matrix (rows: predicted, columns: true):")
    for row in counts.tolist():
        print("  " + " ".join(f"{c:6d}" for c in row))
    return 0


def _parse_synthetic(text: str) -> dict:
    fields = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        if not value:
            raise ConfigInvalidError(f"--synthetic entries must be key=value, got {item!r}")
        fields[key.strip()] = value.strip()
    expected = {"blocks", "size", "pin", "pout"}
    if set(fields) != expected:
        raise ConfigInvalidError(f"--synthetic needs exactly {sorted(expected)}, got {sorted(fields)}")
    try:
        return {
            "block_count": int(fields["blocks"]),
            "block_size": int(fields["size"]),
            "p_in": float(fields["pin"]),
            "p_out": float(fields["pout"]),
        }
    except ValueError as exc:
        raise ConfigInvalidError(f"bad --synthetic value: {exc}") from exc


def cmd_bench(args) -> int:
    overrides = {
        "agent_count": args.agents,
        "memory_size": args.memory,
        "hub_fraction": args.hub_fraction,
        "max_generations": args.max_generations,
    }
    if args.synthetic:
        params = _parse_synthetic(args.synthetic)

        def source(seed: int):
            return planted_partition(seed=seed, **params)

    else:
        if not args.input:
            raise ConfigInvalidError("bench needs --input or --synthetic")
        g, gml_truth = _load_graph(args.input, args.format)
        if args.truth:
            truth = load_labels(_read_text(args.truth), g)
        elif gml_truth is not None:
            truth = gml_truth
        else:
            raise ConfigInvalidError("bench needs --truth (or GML node values) for accuracy scoring")

        def source(seed: int):
            return g, truth

    report = run_bench(source, trials=args.trials, base_seed=args.seed, **overrides)
    print(json.dumps(report.to_json_dict(), sort_keys=True, indent=2))

    histogram = report.community_count_histogram()
    print("seed  accuracy  communities  q        time_s", file=sys.stderr)
    for o in report.outcomes:
        print(
            f"{o.seed:<5d} {o.accuracy:<9.4f} {o.community_count:<12d} {o.q:<8.4f} {o.wall_time_s:.3f}",
            file=sys.stderr,
        )
    print(
        f"mean accuracy {report.mean_accuracy:.4f}, min {report.min_accuracy:.4f}, "
        f"community counts {histogram}",
        file=sys.stderr,
    )
    return 0


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--agents", type=int, default=None, help="walker agents per generation")
    parser.add_argument("--memory", type=int, default=None, help="nodes per agent memory")
    parser.add_argument("--hub-fraction", type=float, default=0.75, dest="hub_fraction",
                        help="share of agents started on most-hit nodes")
    parser.add_argument("--max-generations", type=int, default=1000, dest="max_generations",
                        help="safety cap on generations")
    parser.add_argument("--seed", type=int, default=0, help="random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commwalker",
        description="Agent-based community detection on undirected graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_detect = sub.add_parser("detect", help="detect communities in a graph file")
    p_detect.add_argument("--input", required=True, help="graph file path")
    p_detect.add_argument("--format", choices=["edgelist", "gml"], default=None,
                          help="input format (default: by file extension)")
    p_detect.add_argument("--output", choices=["json", "tsv"], default="json")
    _add_config_flags(p_detect)
    p_detect.set_defaults(func=cmd_detect)

    p_eval = sub.add_parser("eval", help="score a detect result against ground-truth labels")
    p_eval.add_argument("--result", required=True, help="detect output (JSON or two-column text)")
    p_eval.add_argument("--truth", required=True, help="ground-truth 'name label' file")
    p_eval.set_defaults(func=cmd_eval)

    p_bench = sub.add_parser("bench", help="multi-seed accuracy benchmark")
    p_bench.add_argument("--input", default=None, help="graph file path")
    p_bench.add_argument("--format", choices=["edgelist", "gml"], default=None)
    p_bench.add_argument("--truth", default=None, help="ground-truth 'name label' file")
    p_bench.add_argument("--trials", type=int, default=20)
    p_bench.add_argument("--synthetic", default=None, metavar="blocks=K,size=N,pin=P,pout=Q",
                         help="bench on planted-partition graphs instead of a file")
    _add_config_flags(p_bench)
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
