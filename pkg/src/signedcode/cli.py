"""Command-line interface.

Subcommands: gen-sbm, balance-check, decode, experiment, polblogs-prep (and
an undocumented exhaustive `oracle` used to audit the local search on tiny
graphs). Exit codes: 0 success, 1 usage error, 2 data or file error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .cyclespace import fundamental_cycle_matrix, spanning_tree
from .datagen import (
    DataFormatError,
    SbmParams,
    bsc_flip,
    largest_component,
    load_polblogs,
    polblogs_stats,
    sbm_signed,
)
from .decoders import BitFlipConfig, bit_flipping_decode, bp_decode
from .experiment import (
    DECODERS,
    ExperimentSpec,
    run_experiment,
    summarize,
    write_records,
    write_summary,
)
from .gf2 import BitVector
from .graph import (
    GraphError,
    Partition,
    edge_accuracy,
    is_structurally_balanced,
    node_coloring,
    partition_codeword,
    read_edge_list,
    read_labels,
    weight_vector,
    write_edge_list,
    write_labels,
)
from .hamming import SearchConfig, brute_force_min_distance, hamming_decode

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _load_config(path: str) -> List[str]:
    """Turn `key = value` lines into CLI tokens, prepended so flags override."""
    tokens: List[str] = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataFormatError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataFormatError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "yes", "on") and key.replace("-", "_") in (
            "timing",
            "no_figure",
        ):
            tokens.append(flag)
        else:
            tokens.extend([flag, value])
    return tokens


def _p_sweep(start: float, end: float, step: float) -> List[float]:
    if step <= 0:
        raise ValueError("--p-step must be > 0")
    if end < start:
        raise ValueError("--p-end must be >= --p-start")
    count = int(round((end - start) / step)) + 1
    values = [round(start + i * step, 12) for i in range(count)]
    return [v for v in values if v <= end + 1e-12]


def _add_experiment_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="key=value file supplying any of these flags")
    sub.add_argument("--n", type=int, help="number of nodes for the generator")
    sub.add_argument("--c-in", type=float, help="within-block mean degree parameter")
    sub.add_argument("--c-out", type=float, help="across-block mean degree parameter")
    sub.add_argument("--dataset", help="GML dataset path (overrides the generator)")
    sub.add_argument("--p-start", type=float, default=0.01)
    sub.add_argument("--p-end", type=float, default=0.10)
    sub.add_argument("--p-step", type=float, default=0.01)
    sub.add_argument("--trials", type=int, default=20)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument(
        "--decoders",
        default=",".join(DECODERS),
        help=f"comma-separated subset of {','.join(DECODERS)}",
    )
    sub.add_argument("--bitflip-iterations", type=int, default=20)
    sub.add_argument("--delta", type=int, default=0, help="bit-flip residual tolerance")
    sub.add_argument("--bp-iterations", type=int, default=100)
    sub.add_argument("--max-sweeps", type=int, default=1000)
    sub.add_argument("--restarts", type=int, default=100, help="local-search restarts per trial")
    sub.add_argument("--jobs", type=int, default=1, help="worker threads for trials")
    sub.add_argument("--timing", action="store_true", help="record wall-clock runtime_ms")
    sub.add_argument("--out", required=True, help="records CSV path")
    sub.add_argument("--summary", help="summary CSV path (default: <out stem>-summary.csv)")
    sub.add_argument("--no-figure", action="store_true", help="skip the accuracy figure")
    sub.add_argument("--figure", help="figure path (default: <out stem>.png)")


def build_parser() -> _Parser:
    parser = _Parser(prog="signedcode", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(
        dest="command",
        metavar="{gen-sbm,balance-check,decode,experiment,polblogs-prep}",
    )
    subs.required = True

    gen = subs.add_parser("gen-sbm", help="generate a planted two-block signed graph")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--c-in", type=float, required=True)
    gen.add_argument("--c-out", type=float, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output prefix (.edges and .labels)")

    bal = subs.add_parser("balance-check", help="test structural balance of an edge list")
    bal.add_argument("--input", required=True, help="edge list file (u v s per line)")

    dec = subs.add_parser("decode", help="decode one edge list with one decoder")
    dec.add_argument("--input", required=True, help="edge list file with observed signs")
    dec.add_argument("--decoder", required=True, choices=DECODERS)
    dec.add_argument("--p", type=float, default=0.05, help="assumed crossover probability (bp)")
    dec.add_argument("--max-iterations", type=int, help="decoder iteration cap")
    dec.add_argument("--delta", type=int, default=0)
    dec.add_argument("--seed", type=int, default=0, help="search initialization seed")
    dec.add_argument("--restarts", type=int, default=100, help="local-search restarts")
    dec.add_argument("--truth", help="labels file for accuracy reporting")
    dec.add_argument("--out-labels", help="write the decoded partition here")

    exp = subs.add_parser("experiment", help="sweep p, score decoders, write CSV + figure")
    _add_experiment_flags(exp)

    pol = subs.add_parser("polblogs-prep", help="ingest a GML dataset and report stats")
    pol.add_argument("--dataset", required=True)
    pol.add_argument("--out", help="optional output prefix (.edges and .labels)")

    orc = subs.add_parser("oracle")  # exhaustive minimum distance; test support
    orc.add_argument("--input", required=True)
    orc.add_argument("--max-nodes", type=int, default=16)
    return parser


def _prefixed(prefix: Path, ext: str) -> Path:
    return prefix.parent / (prefix.name + ext)


def _cmd_gen_sbm(args) -> int:
    params = SbmParams(n=args.n, c_in=args.c_in, c_out=args.c_out, seed=args.seed)
    graph, truth = sbm_signed(params)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    edges_path, labels_path = _prefixed(prefix, ".edges"), _prefixed(prefix, ".labels")
    write_edge_list(graph, edges_path)
    write_labels(graph, truth.partition, labels_path)
    sizes = truth.partition.sizes()
    print(f"nodes: {graph.n}")
    print(f"edges: {graph.m}")
    print(f"block_sizes: {sizes[0]} {sizes[1]}")
    print(f"wrote: {edges_path} {labels_path}")
    return 0


def _cmd_balance_check(args) -> int:
    graph = read_edge_list(args.input)
    weights = weight_vector(graph)
    balanced = is_structurally_balanced(graph, weights)
    coloring = node_coloring(graph, weights, root=0) if graph.n else None
    print(f"nodes: {graph.n}")
    print(f"edges: {graph.m}")
    print(f"balanced: {'true' if balanced else 'false'}")
    if coloring is not None:
        print(f"violations_from_node_0: {coloring.violations}")
    return 0


def _cmd_decode(args) -> int:
    graph = read_edge_list(args.input)
    graph, observed, _ = largest_component(graph, weight_vector(graph), None)
    if args.decoder == "bit-flip":
        cfg = BitFlipConfig(max_iterations=args.max_iterations or 20, delta=args.delta)
        check = fundamental_cycle_matrix(graph, spanning_tree(graph, root=0))
        result = bit_flipping_decode(graph, check, observed, cfg)
    elif args.decoder == "bp":
        check = fundamental_cycle_matrix(graph, spanning_tree(graph, root=0))
        result = bp_decode(
            graph, check, observed, args.p, max_iterations=args.max_iterations or 100
        )
    else:
        result = hamming_decode(
            graph,
            observed,
            two_step=args.decoder == "hamming-two-step",
            config=SearchConfig(seed=args.seed),
            restarts=args.restarts,
        )
    sizes = result.partition.sizes()
    print(f"decoder: {args.decoder}")
    print(f"nodes: {graph.n}")
    print(f"edges: {graph.m}")
    print(f"converged: {'true' if result.converged else 'false'}")
    print(f"iterations: {result.iterations}")
    print(f"residual_unsatisfied: {result.residual_unsatisfied}")
    print(f"coloring_violations: {result.coloring_violations}")
    print(f"partition_sizes: {sizes[0]} {sizes[1]}")
    if args.truth:
        pairs = dict(read_labels(args.truth))
        try:
            labels = tuple(pairs[graph.external_ids[v]] for v in range(graph.n))
        except KeyError as exc:
            raise DataFormatError(f"truth file lacks a label for node {exc}") from exc
        clean = partition_codeword(graph, Partition(labels))
        decoded = partition_codeword(graph, result.partition)
        print(f"edge_accuracy_vs_truth: {edge_accuracy(decoded, clean)}")
    if args.out_labels:
        write_labels(graph, result.partition, args.out_labels)
        print(f"wrote: {args.out_labels}")
    return 0


def _cmd_experiment(args) -> int:
    decoders = tuple(name.strip() for name in args.decoders.split(",") if name.strip())
    spec = ExperimentSpec(
        p_values=tuple(_p_sweep(args.p_start, args.p_end, args.p_step)),
        decoders=decoders,
        trials=args.trials,
        seed=args.seed,
        n=args.n,
        c_in=args.c_in,
        c_out=args.c_out,
        dataset=args.dataset,
        bitflip=BitFlipConfig(max_iterations=args.bitflip_iterations, delta=args.delta),
        bp_max_iterations=args.bp_iterations,
        max_sweeps=args.max_sweeps,
        hamming_restarts=args.restarts,
        timing=args.timing,
    )
    records = run_experiment(spec, jobs=args.jobs)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_records(records, out)
    rows = summarize(records)
    summary_path = Path(args.summary) if args.summary else out.with_name(out.stem + "-summary.csv")
    write_summary(rows, summary_path)
    print(f"records: {out}")
    print(f"summary: {summary_path}")
    if not args.no_figure:
        from .plotting import plot_accuracy_curves

        figure_path = Path(args.figure) if args.figure else out.with_suffix(".png")
        plot_accuracy_curves(rows, figure_path)
        print(f"figure: {figure_path}")
    return 0


def _cmd_polblogs_prep(args) -> int:
    stats = polblogs_stats(args.dataset)
    graph, truth = load_polblogs(args.dataset)
    print(f"nodes: {stats.nodes}")
    print(f"edges: {stats.edges}")
    print(f"community_sizes: {stats.community_sizes[0]} {stats.community_sizes[1]}")
    print(f"average_degree_raw_links: {stats.average_degree:.2f}")
    print(f"average_degree_simple: {stats.average_simple_degree:.2f}")
    if args.out:
        prefix = Path(args.out)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        edges_path, labels_path = _prefixed(prefix, ".edges"), _prefixed(prefix, ".labels")
        write_edge_list(graph, edges_path)
        write_labels(graph, truth.partition, labels_path)
        print(f"wrote: {edges_path} {labels_path}")
    return 0


def _cmd_oracle(args) -> int:
    graph = read_edge_list(args.input)
    weights = weight_vector(graph)
    distance, partition = brute_force_min_distance(graph, weights, max_nodes=args.max_nodes)
    s1, s2 = partition.sets()
    print(f"minimum_distance: {distance}")
    print(f"set1: {' '.join(str(graph.external_ids[v]) for v in s1)}")
    print(f"set2: {' '.join(str(graph.external_ids[v]) for v in s2)}")
    return 0


_COMMANDS = {
    "gen-sbm": _cmd_gen_sbm,
    "balance-check": _cmd_balance_check,
    "decode": _cmd_decode,
    "experiment": _cmd_experiment,
    "polblogs-prep": _cmd_polblogs_prep,
    "oracle": _cmd_oracle,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    # expand --config into flags before the real parse so explicit flags win
    if "experiment" in argv[:1] and "--config" in argv:
        idx = argv.index("--config")
        if idx + 1 >= len(argv):
            parser.error("--config needs a path")
        try:
            injected = _load_config(argv[idx + 1])
        except DataFormatError as exc:
            print(f"signedcode: {exc}", file=sys.stderr)
            return DATA_ERROR
        argv = [argv[0], *injected, *argv[1:idx], *argv[idx + 2 :]]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (DataFormatError, FileNotFoundError, OSError) as exc:
        print(f"signedcode: {exc}", file=sys.stderr)
        return DATA_ERROR
    except GraphError as exc:
        print(f"signedcode: {exc}", file=sys.stderr)
        return DATA_ERROR
    except ValueError as exc:
        print(f"signedcode: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
