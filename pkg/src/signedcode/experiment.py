"""Accuracy sweeps over noise levels, with reproducible seeding and CSV output.

Each trial draws (or reloads) a clean balanced instance, corrupts its sign
vector through the binary symmetric channel, and scores every selected
decoder on the same corrupted copy. Accuracy compares the decoder partition's
codeword against the clean weights. Seeds derive from (base seed, p index,
trial index) through numpy's SeedSequence, so any single trial can be
replayed: trial_seed = SeedSequence([seed, p_index, trial]).generate_state(1)[0],
and words 1-3 of SeedSequence(trial_seed).generate_state(4) seed the graph
draw, the channel noise, and the search initialization (both search variants
start from the same splits, so their comparison is paired).
"""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cyclespace import fundamental_cycle_matrix, spanning_tree
from .datagen import GroundTruth, SbmParams, bsc_flip, largest_component, load_polblogs, sbm_signed
from .decoders import BitFlipConfig, bit_flipping_decode, bp_decode
from .gf2 import BitVector
from .graph import SignedGraph, edge_accuracy
from .hamming import SearchConfig, hamming_decode

__all__ = [
    "DECODERS",
    "ExperimentSpec",
    "TrialRecord",
    "SummaryRow",
    "RECORD_HEADER",
    "SUMMARY_HEADER",
    "trial_seeds",
    "run_experiment",
    "summarize",
    "records_to_csv",
    "summary_to_csv",
    "write_records",
    "write_summary",
]

DECODERS = ("bit-flip", "bp", "hamming-plain", "hamming-two-step")

RECORD_HEADER = "source,p,c,decoder,trial,seed,edge_accuracy,iterations,converged,runtime_ms"
SUMMARY_HEADER = "source,p,c,decoder,trials,mean_accuracy,ci95_half_width"


@dataclass(frozen=True)
class ExperimentSpec:
    """One sweep: either a planted-partition source (n, c_in, c_out) or a
    dataset file. p_values are the channel crossover probabilities."""

    p_values: Tuple[float, ...]
    decoders: Tuple[str, ...] = DECODERS
    trials: int = 20
    seed: int = 0
    n: Optional[int] = None
    c_in: Optional[float] = None
    c_out: Optional[float] = None
    dataset: Optional[str] = None
    bitflip: BitFlipConfig = field(default_factory=BitFlipConfig)
    bp_max_iterations: int = 100
    max_sweeps: int = 1000
    hamming_restarts: int = 100
    timing: bool = False

    def __post_init__(self) -> None:
        if not self.p_values:
            raise ValueError("at least one p value is required")
        for p in self.p_values:
            if not 0.0 <= p < 0.5:
                raise ValueError(f"p={p} outside [0, 0.5)")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.decoders:
            raise ValueError("at least one decoder is required")
        for name in self.decoders:
            if name not in DECODERS:
                raise ValueError(f"unknown decoder {name!r}; choose from {DECODERS}")
        if self.dataset is None:
            if self.n is None or self.c_in is None or self.c_out is None:
                raise ValueError("either a dataset or (n, c_in, c_out) must be given")
        if self.bp_max_iterations < 1:
            raise ValueError("bp_max_iterations must be >= 1")
        if self.hamming_restarts < 1:
            raise ValueError("hamming_restarts must be >= 1")

    @property
    def source_tag(self) -> str:
        return Path(self.dataset).stem if self.dataset is not None else "sbm"

    @property
    def c(self) -> Optional[float]:
        if self.dataset is not None:
            return None
        return (self.c_in + self.c_out) / 2.0


@dataclass(frozen=True)
class TrialRecord:
    source: str
    p: float
    c: Optional[float]
    decoder: str
    trial: int
    seed: int
    edge_accuracy: float
    iterations: int
    converged: bool
    runtime_ms: float


@dataclass(frozen=True)
class SummaryRow:
    source: str
    p: float
    c: Optional[float]
    decoder: str
    trials: int
    mean_accuracy: float
    ci95_half_width: Optional[float]


def trial_seeds(base_seed: int, p_index: int, trial: int) -> Tuple[int, int, int, int]:
    """(trial_seed, graph_seed, noise_seed, search_seed) for one trial."""
    root = int(np.random.SeedSequence([base_seed, p_index, trial]).generate_state(1)[0])
    words = np.random.SeedSequence(root).generate_state(4)
    return root, int(words[1]), int(words[2]), int(words[3])


def _prepare_instance(
    spec: ExperimentSpec,
    graph_seed: int,
    dataset_instance: Optional[Tuple[SignedGraph, GroundTruth]],
) -> Tuple[SignedGraph, GroundTruth]:
    if dataset_instance is not None:
        return dataset_instance
    params = SbmParams(n=spec.n, c_in=spec.c_in, c_out=spec.c_out, seed=graph_seed)
    graph, truth = sbm_signed(params)
    graph, _, truth = largest_component(graph, None, truth)
    return graph, truth


def _run_one_trial(
    spec: ExperimentSpec,
    p_index: int,
    trial: int,
    dataset_instance: Optional[Tuple[SignedGraph, GroundTruth]],
) -> List[TrialRecord]:
    p = spec.p_values[p_index]
    root_seed, graph_seed, noise_seed, search_seed = trial_seeds(spec.seed, p_index, trial)
    graph, truth = _prepare_instance(spec, graph_seed, dataset_instance)
    corrupted = bsc_flip(truth.clean_weights, p, noise_seed)
    check_matrix = None
    if "bit-flip" in spec.decoders or "bp" in spec.decoders:
        check_matrix = fundamental_cycle_matrix(graph, spanning_tree(graph, root=0))
    records = []
    for decoder in spec.decoders:
        t0 = time.perf_counter()
        if decoder == "bit-flip":
            result = bit_flipping_decode(graph, check_matrix, corrupted, spec.bitflip)
        elif decoder == "bp":
            result = bp_decode(
                graph, check_matrix, corrupted, p, max_iterations=spec.bp_max_iterations
            )
        elif decoder == "hamming-plain":
            result = hamming_decode(
                graph,
                corrupted,
                two_step=False,
                config=SearchConfig(seed=search_seed, max_sweeps=spec.max_sweeps),
                restarts=spec.hamming_restarts,
            )
        else:
            result = hamming_decode(
                graph,
                corrupted,
                two_step=True,
                config=SearchConfig(seed=search_seed, max_sweeps=spec.max_sweeps),
                restarts=spec.hamming_restarts,
            )
        elapsed_ms = (time.perf_counter() - t0) * 1000.0 if spec.timing else 0.0
        # corrected is the decoded sign vector; for the search decoders it is
        # already the partition codeword
        acc = edge_accuracy(result.corrected, truth.clean_weights)
        records.append(
            TrialRecord(
                source=spec.source_tag,
                p=p,
                c=spec.c,
                decoder=decoder,
                trial=trial,
                seed=root_seed,
                edge_accuracy=acc,
                iterations=result.iterations,
                converged=result.converged,
                runtime_ms=elapsed_ms,
            )
        )
    return records


def run_experiment(spec: ExperimentSpec, jobs: int = 1) -> List[TrialRecord]:
    """All trials of the sweep, ordered by (p index, trial, decoder order).

    Trials are independent; with jobs > 1 they run on a thread pool and the
    records are reassembled in deterministic order afterwards.
    """
    dataset_instance = None
    if spec.dataset is not None:
        dataset_instance = load_polblogs(spec.dataset)
    tasks = [(pi, t) for pi in range(len(spec.p_values)) for t in range(spec.trials)]
    if jobs <= 1:
        chunks = [_run_one_trial(spec, pi, t, dataset_instance) for pi, t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_one_trial, spec, pi, t, dataset_instance) for pi, t in tasks
            ]
            chunks = [f.result() for f in futures]
    records: List[TrialRecord] = []
    for chunk in chunks:
        records.extend(chunk)
    return records


def summarize(records: Sequence[TrialRecord]) -> List[SummaryRow]:
    """Mean accuracy and normal-approximation 95% half-width per decoder curve.

    The half-width is 1.96 * sample std (ddof=1) / sqrt(trials); a single
    trial has no spread estimate and reports None.
    """
    groups: Dict[Tuple[str, float, Optional[float], str], List[float]] = {}
    order: List[Tuple[str, float, Optional[float], str]] = []
    for rec in records:
        key = (rec.source, rec.p, rec.c, rec.decoder)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(rec.edge_accuracy)
    rows = []
    for key in order:
        vals = groups[key]
        mean = float(np.mean(vals))
        if len(vals) > 1:
            half = 1.96 * float(np.std(vals, ddof=1)) / math.sqrt(len(vals))
        else:
            half = None
        rows.append(
            SummaryRow(
                source=key[0],
                p=key[1],
                c=key[2],
                decoder=key[3],
                trials=len(vals),
                mean_accuracy=mean,
                ci95_half_width=half,
            )
        )
    return rows


def _fmt_float(x: Optional[float]) -> str:
    if x is None:
        return ""
    return repr(float(x))


def records_to_csv(records: Sequence[TrialRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_HEADER.split(","))
    for r in records:
        writer.writerow(
            [
                r.source,
                _fmt_float(r.p),
                _fmt_float(r.c),
                r.decoder,
                r.trial,
                r.seed,
                _fmt_float(r.edge_accuracy),
                r.iterations,
                "true" if r.converged else "false",
                "0" if r.runtime_ms == 0.0 else f"{r.runtime_ms:.3f}",
            ]
        )
    return buf.getvalue()


def summary_to_csv(rows: Sequence[SummaryRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER.split(","))
    for r in rows:
        writer.writerow(
            [
                r.source,
                _fmt_float(r.p),
                _fmt_float(r.c),
                r.decoder,
                r.trials,
                _fmt_float(r.mean_accuracy),
                _fmt_float(r.ci95_half_width),
            ]
        )
    return buf.getvalue()


def write_records(records: Sequence[TrialRecord], path: str | Path) -> None:
    Path(path).write_text(records_to_csv(records), encoding="utf-8")


def write_summary(rows: Sequence[SummaryRow], path: str | Path) -> None:
    Path(path).write_text(summary_to_csv(rows), encoding="utf-8")
