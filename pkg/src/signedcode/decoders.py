"""Iterative decoders that restore balance to a corrupted sign vector.

Both decoders operate on the parity checks given by the fundamental cycle
matrix. Bit flipping repeatedly flips the edge lying on the most unsatisfied
cycles; belief propagation passes log-likelihood messages on the Tanner graph
of H assuming independent sign flips with probability p. Either way the run
ends with a node coloring of the final vector, so a two-set partition is
always produced even when the decoder did not reach a codeword.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np

from .gf2 import BitMatrix, BitVector
from .graph import Partition, SignedGraph, node_coloring

__all__ = [
    "BitFlipConfig",
    "DecodeResult",
    "TannerGraph",
    "LlrState",
    "unsatisfied_counts",
    "bit_flipping_decode",
    "intrinsic_llr",
    "check_to_variable",
    "variable_to_check",
    "bp_iteration",
    "bp_decode",
]


@dataclass(frozen=True)
class BitFlipConfig:
    """max_iterations bounds the number of flips; the run stops as soon as
    at most delta checks stay unsatisfied."""

    max_iterations: int = 20
    delta: int = 0

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.delta < 0:
            raise ValueError("delta must be >= 0")


@dataclass(frozen=True)
class DecodeResult:
    """corrected is the final weight vector; partition comes from coloring it.

    converged means the stopping rule was met (residual_unsatisfied <= delta
    for bit flipping, zero syndrome for belief propagation). iterations counts
    flips or message-passing rounds actually performed.
    """

    corrected: BitVector
    partition: Partition
    converged: bool
    iterations: int
    residual_unsatisfied: int
    coloring_violations: int


def unsatisfied_counts(check_matrix: BitMatrix, synd: BitVector) -> np.ndarray:
    """Per-edge count of unsatisfied checks containing that edge (integer)."""
    if synd.length != check_matrix.nrows:
        raise ValueError(f"syndrome length {synd.length} != rows {check_matrix.nrows}")
    unsat_rows = [check_matrix.row(i) for i in range(check_matrix.nrows) if synd.get(i)]
    if not unsat_rows:
        return np.zeros(check_matrix.ncols, dtype=np.int64)
    return np.bincount(np.concatenate(unsat_rows), minlength=check_matrix.ncols).astype(np.int64)


def bit_flipping_decode(
    graph: SignedGraph,
    check_matrix: BitMatrix,
    weights: BitVector,
    config: BitFlipConfig = BitFlipConfig(),
) -> DecodeResult:
    """Flip the edge on the most unsatisfied cycles until (almost) none remain.

    Tie-break among edges with maximal count: prefer the edge lying on the
    fewest cycles overall (sparsest column of H), then the lowest edge id.
    Choosing the same edge twice in a row would undo the previous flip, so
    that run is cut short as not converged.
    """
    if weights.length != graph.m or check_matrix.ncols != graph.m:
        raise ValueError("weight/check-matrix size mismatch with the graph")
    coldeg = check_matrix.column_degrees()
    current = weights
    iterations = 0
    last_flip = -1
    converged = False
    while True:
        synd = check_matrix.mul_vector(current)
        unsat = synd.weight()
        if unsat <= config.delta:
            converged = True
            break
        if iterations >= config.max_iterations:
            break
        counts = unsatisfied_counts(check_matrix, synd)
        best = counts.max()
        candidates = np.flatnonzero(counts == best)
        order = np.lexsort((candidates, coldeg[candidates]))
        k = int(candidates[order[0]])
        if k == last_flip:
            break  # oscillation: flipping k again restores the previous state
        current = current.flipped(k)
        last_flip = k
        iterations += 1
    residual = check_matrix.mul_vector(current).weight()
    coloring = node_coloring(graph, current, root=0)
    return DecodeResult(
        corrected=current,
        partition=coloring.partition,
        converged=converged,
        iterations=iterations,
        residual_unsatisfied=residual,
        coloring_violations=coloring.violations,
    )


# -- belief propagation --------------------------------------------------------


class TannerGraph:
    """Bipartite factor graph of a check matrix.

    check_vars[i] lists the variables of check i; var_checks[j] the checks of
    variable j. The flat arrays edge_check/edge_var enumerate the Tanner edges
    grouped by check, which is the layout the flooding update vectorizes over.
    """

    def __init__(self, check_matrix: BitMatrix):
        self.n_checks = check_matrix.nrows
        self.n_vars = check_matrix.ncols
        self.check_vars: List[np.ndarray] = [check_matrix.row(i) for i in range(self.n_checks)]
        var_checks: List[List[int]] = [[] for _ in range(self.n_vars)]
        for i, row in enumerate(self.check_vars):
            for j in row:
                var_checks[int(j)].append(i)
        self.var_checks: List[np.ndarray] = [np.array(c, dtype=np.int64) for c in var_checks]
        if self.check_vars:
            lengths = [len(r) for r in self.check_vars]
            self.edge_check = np.repeat(np.arange(self.n_checks, dtype=np.int64), lengths)
            self.edge_var = (
                np.concatenate(self.check_vars).astype(np.int64)
                if self.n_checks
                else np.array([], dtype=np.int64)
            )
        else:
            self.edge_check = np.array([], dtype=np.int64)
            self.edge_var = np.array([], dtype=np.int64)
        self.n_edges = self.edge_var.size


@dataclass
class LlrState:
    """Message state of the flooding schedule, one entry per Tanner edge.

    Messages and intrinsic values are clamped to [-clamp, clamp], keeping
    every quantity finite.
    """

    intrinsic: np.ndarray
    var_to_check: np.ndarray
    check_to_var: np.ndarray
    total: np.ndarray
    clamp: float = 30.0

    @classmethod
    def init(cls, tanner: TannerGraph, weights: BitVector, p: float, clamp: float = 30.0) -> "LlrState":
        if not 0.0 <= p < 0.5:
            raise ValueError(f"crossover probability {p} outside [0, 0.5)")
        bits = weights.to_numpy().astype(np.float64)
        with np.errstate(divide="ignore"):
            magnitude = min(math.log((1.0 - p) / p) if p > 0 else math.inf, clamp)
        intrinsic = (1.0 - 2.0 * bits) * magnitude
        return cls(
            intrinsic=intrinsic,
            var_to_check=intrinsic[tanner.edge_var].copy(),
            check_to_var=np.zeros(tanner.n_edges),
            total=intrinsic.copy(),
            clamp=clamp,
        )


def intrinsic_llr(bit: int, p: float) -> float:
    """Channel log-likelihood ratio of one observed bit under flip probability p."""
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1")
    if not 0.0 < p < 0.5:
        raise ValueError(f"crossover probability {p} outside (0, 0.5)")
    return (1.0 - 2.0 * bit) * math.log((1.0 - p) / p)

def check_to_variable(incoming: Iterable[float], clamp: float = 30.0) -> float:
    """Check-node update: 2 atanh of the product of tanh(l/2) over the inputs."""
    prod = 1.0
    for llr in incoming:
        prod *= math.tanh(llr / 2.0)
    limit = math.tanh(clamp / 2.0)
    prod = max(-limit, min(limit, prod))
    return 2.0 * math.atanh(prod)


def variable_to_check(incoming: Iterable[float], intrinsic: float, clamp: float = 30.0) -> float:
    """Variable-node update: intrinsic plus the other incoming check messages."""
    total = intrinsic + sum(incoming)
    return max(-clamp, min(clamp, total))


def bp_iteration(tanner: TannerGraph, state: LlrState) -> np.ndarray:
    """One flooding round; returns the hard-decision bits (L >= 0 maps to 0).

    Check updates run in the log domain: the product of tanh(l/2) factors is
    split into sign, zero count and log-magnitude so the leave-one-out values
    come from per-check totals without any division.
    """
    ec, ev = tanner.edge_check, tanner.edge_var
    t = np.tanh(state.var_to_check / 2.0)
    zero = t == 0.0
    mag = np.abs(t)
    with np.errstate(divide="ignore"):
        logmag = np.where(zero, 0.0, np.log(np.where(zero, 1.0, mag)))
    neg = t < 0.0
    nchk = tanner.n_checks
    zeros_per_check = np.bincount(ec, weights=zero.astype(np.float64), minlength=nchk)
    negs_per_check = np.bincount(ec, weights=neg.astype(np.float64), minlength=nchk)
    logsum_per_check = np.bincount(ec, weights=logmag, minlength=nchk)
    excl_zero = zeros_per_check[ec] - zero
    excl_neg = negs_per_check[ec] - neg
    excl_log = logsum_per_check[ec] - logmag
    sign = np.where(excl_neg.astype(np.int64) % 2 == 1, -1.0, 1.0)
    prod = np.where(excl_zero > 0, 0.0, sign * np.exp(excl_log))
    limit = math.tanh(state.clamp / 2.0)
    np.clip(prod, -limit, limit, out=prod)
    state.check_to_var = np.clip(2.0 * np.arctanh(prod), -state.clamp, state.clamp)

    incoming = np.bincount(ev, weights=state.check_to_var, minlength=tanner.n_vars)
    state.total = state.intrinsic + incoming
    state.var_to_check = np.clip(
        state.total[ev] - state.check_to_var, -state.clamp, state.clamp
    )
    return (state.total < 0.0).astype(np.uint8)


def bp_decode(
    graph: SignedGraph,
    check_matrix: BitMatrix,
    weights: BitVector,
    p: float,
    max_iterations: int = 100,
    clamp: float = 30.0,
    state_out: Optional[list] = None,
) -> DecodeResult:
    """Sum-product decoding of the cycle code under a binary symmetric channel.

    Runs the flooding schedule until the hard decision has zero syndrome or
    the round limit is hit. p = 0 is accepted for sweeps over noiseless
    instances; the intrinsic magnitude is then pinned at the clamp.
    """
    if weights.length != graph.m or check_matrix.ncols != graph.m:
        raise ValueError("weight/check-matrix size mismatch with the graph")
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    tanner = TannerGraph(check_matrix)
    state = LlrState.init(tanner, weights, p, clamp=clamp)
    decided = weights
    converged = False
    iterations = 0
    for it in range(1, max_iterations + 1):
        hard = bp_iteration(tanner, state)
        decided = BitVector.from_numpy(hard)
        iterations = it
        if check_matrix.mul_vector(decided).is_zero():
            converged = True
            break
    if state_out is not None:
        state_out.append(state)
    residual = check_matrix.mul_vector(decided).weight()
    coloring = node_coloring(graph, decided, root=0)
    return DecodeResult(
        corrected=decided,
        partition=coloring.partition,
        converged=converged,
        iterations=iterations,
        residual_unsatisfied=residual,
        coloring_violations=coloring.violations,
    )
