"""Partitioning by direct minimization of the sign disagreement count.

The distance of a partition is the number of edges whose observed sign
contradicts it: negative edges inside a set plus positive edges across. A
node sweep moves each node to the set its signed correlation prefers; every
accepted move lowers the distance by exactly the correlation gap, so the
search terminates in a local minimum. The two-step variant scores moves with
A + A^2/2, which also credits agreement between neighbors of neighbors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .decoders import DecodeResult
from .gf2 import BitVector
from .graph import Partition, SignedGraph, partition_codeword

__all__ = [
    "SearchConfig",
    "Move",
    "SearchResult",
    "SearchDivergenceError",
    "signed_adjacency",
    "two_step_matrix",
    "correlation",
    "hamming_distance",
    "generalized_agreement",
    "random_balanced_partition",
    "local_search",
    "hamming_decode",
    "brute_force_min_distance",
]


class SearchDivergenceError(RuntimeError):
    """The sweep cap was hit; with a plain adjacency matrix this cannot happen."""


@dataclass(frozen=True)
class SearchConfig:
    """Initial split comes from init_partition when given, otherwise from a
    seeded uniformly random balanced split. max_sweeps is a safety cap only."""

    seed: Optional[int] = None
    init_partition: Optional[Partition] = None
    max_sweeps: int = 1000

    def __post_init__(self) -> None:
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")


@dataclass(frozen=True)
class Move:
    node: int
    from_label: int
    to_label: int
    q_from: float
    q_to: float
    sweep: int


@dataclass(frozen=True)
class SearchResult:
    partition: Partition
    sweeps: int
    moves: Tuple[Move, ...]


def signed_adjacency(graph: SignedGraph, weights: Optional[BitVector] = None) -> np.ndarray:
    """Symmetric +1/-1/0 adjacency matrix (int64, zero diagonal).

    When a weight vector is given it overrides the stored signs: bit 1 means
    the edge is observed negative.
    """
    if weights is None:
        signs = graph.edge_sign
    else:
        if weights.length != graph.m:
            raise ValueError(f"weight length {weights.length} != m {graph.m}")
        signs = 1 - 2 * weights.to_numpy().astype(np.int64)
    a = np.zeros((graph.n, graph.n), dtype=np.int64)
    a[graph.edge_u, graph.edge_v] = signs
    a[graph.edge_v, graph.edge_u] = signs
    return a


def two_step_matrix(adjacency: np.ndarray) -> np.ndarray:
    """A + A^2 / 2 with the diagonal zeroed (float64, symmetric)."""
    a = np.asarray(adjacency)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("adjacency must be square")
    if not np.array_equal(a, a.T):
        raise ValueError("adjacency must be symmetric")
    af = a.astype(np.float64)
    out = af + 0.5 * (af @ af)
    np.fill_diagonal(out, 0.0)
    return out


def correlation(matrix: np.ndarray, node: int, members) -> float | int:
    """Sum of matrix[node, u] over u in the member set (self term is zero)."""
    idx = [int(u) for u in members if int(u) != int(node)]
    if not idx:
        return 0 if np.issubdtype(matrix.dtype, np.integer) else 0.0
    total = matrix[int(node), idx].sum()
    return int(total) if np.issubdtype(matrix.dtype, np.integer) else float(total)


def hamming_distance(graph: SignedGraph, weights: BitVector, partition: Partition) -> int:
    """Disagreement count via the four ordered-pair tallies.

    Counts ordered node pairs: negative edges inside either set and positive
    edges across the sets each contribute two ordered pairs; half that total
    equals the bitwise distance between the weights and the partition
    codeword.
    """
    if weights.length != graph.m:
        raise ValueError(f"weight length {weights.length} != m {graph.m}")
    if len(partition) != graph.n:
        raise ValueError(f"partition length {len(partition)} != n {graph.n}")
    labels = partition.to_numpy()
    neg = weights.to_numpy().astype(bool)
    same = labels[graph.edge_u] == labels[graph.edge_v]
    n_minus_within = 2 * int(np.count_nonzero(same & neg))
    n_plus_across = 2 * int(np.count_nonzero(~same & ~neg))
    return (n_minus_within + n_plus_across) // 2


def generalized_agreement(matrix: np.ndarray, partition: Partition) -> float | int:
    """Within-set affinity minus across-set affinity, summed over ordered pairs.

    The sweep never decreases this quantity. For a plain adjacency matrix it
    equals 2(m - 2 d(P)), so ranking partitions by it is the same as ranking
    by disagreement count.
    """
    matrix = np.asarray(matrix)
    signs = 3 - 2 * partition.to_numpy()
    total = signs @ (matrix @ signs)
    return int(total) if np.issubdtype(matrix.dtype, np.integer) else float(total)


def random_balanced_partition(n: int, seed: Optional[int] = None) -> Partition:
    """Uniformly random split into halves of size ceil(n/2) and floor(n/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    labels = np.full(n, 2, dtype=np.int64)
    labels[perm[: (n + 1) // 2]] = 1
    return Partition.from_array(labels)


def local_search(matrix: np.ndarray, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Sweep nodes in ascending id, moving each to the set with the strictly
    larger correlation; ties stay put. Stops after a sweep with no moves.

    Moves are recorded with their correlation pair so callers can audit the
    per-move distance change (q_from - q_to for a plain adjacency matrix).
    """
    matrix = np.asarray(matrix)
    n = matrix.shape[0]
    if matrix.ndim != 2 or matrix.shape[1] != n:
        raise ValueError("matrix must be square")
    if n < 1:
        raise ValueError("matrix must have at least one node")
    if config.init_partition is not None:
        if len(config.init_partition) != n:
            raise ValueError("init partition length mismatch")
        labels = config.init_partition.to_numpy().copy()
    else:
        labels = random_balanced_partition(n, config.seed).to_numpy().copy()

    integer = np.issubdtype(matrix.dtype, np.integer)
    in_s1 = (labels == 1).astype(matrix.dtype)
    row_sums = matrix.sum(axis=1)
    moves: List[Move] = []
    sweeps = 0
    while True:
        if sweeps >= config.max_sweeps:
            raise SearchDivergenceError(f"no convergence within {config.max_sweeps} sweeps")
        sweeps += 1
        moved = False
        for v in range(n):
            q1 = matrix[v] @ in_s1
            q2 = row_sums[v] - q1
            if labels[v] == 1:
                q_cur, q_oth = q1, q2
            else:
                q_cur, q_oth = q2, q1
            if q_oth > q_cur:
                frm = int(labels[v])
                to = 3 - frm
                labels[v] = to
                in_s1[v] = 1 if to == 1 else 0
                moves.append(
                    Move(
                        node=v,
                        from_label=frm,
                        to_label=to,
                        q_from=int(q_cur) if integer else float(q_cur),
                        q_to=int(q_oth) if integer else float(q_oth),
                        sweep=sweeps,
                    )
                )
                moved = True
        if not moved:
            break
    return SearchResult(Partition.from_array(labels), sweeps, tuple(moves))


def hamming_decode(
    graph: SignedGraph,
    weights: BitVector,
    two_step: bool = False,
    config: SearchConfig = SearchConfig(),
    restarts: int = 100,
) -> DecodeResult:
    """Run the local search on (optionally two-step) observed signs, keeping
    the best restart.

    The sweep only reaches a local minimum of its own objective, so the
    decoder repeats it from independent random splits: restart 0 uses the
    configured seed directly and restart r draws its seed from
    SeedSequence([seed, r]). The restart whose partition disagrees with the
    fewest observed signs wins, whichever matrix drove the moves. Equal
    disagreement counts are broken by the larger generalized agreement under
    the driving matrix (for the plain matrix that adds nothing, since the
    agreement is a function of the count), then by restart order. A fixed
    init_partition pins the trajectory, so it forces a single run.

    The returned corrected vector is the partition codeword, which satisfies
    every cycle parity, so residual and coloring violations are zero.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    a = signed_adjacency(graph, weights)
    matrix = two_step_matrix(a) if two_step else a
    if config.init_partition is not None:
        restarts = 1
    best: Optional[SearchResult] = None
    best_key: Tuple[int, float] = (0, 0.0)
    for r in range(restarts):
        if r == 0:
            run = config
        elif config.seed is None:
            run = SearchConfig(seed=None, max_sweeps=config.max_sweeps)
        else:
            seed = int(np.random.SeedSequence([int(config.seed), r]).generate_state(1)[0])
            run = SearchConfig(seed=seed, max_sweeps=config.max_sweeps)
        result = local_search(matrix, run)
        key = (
            hamming_distance(graph, weights, result.partition),
            -generalized_agreement(matrix, result.partition),
        )
        if best is None or key < best_key:
            best = result
            best_key = key
    codeword = partition_codeword(graph, best.partition)
    return DecodeResult(
        corrected=codeword,
        partition=best.partition,
        converged=True,
        iterations=best.sweeps,
        residual_unsatisfied=0,
        coloring_violations=0,
    )


def brute_force_min_distance(
    graph: SignedGraph, weights: BitVector, max_nodes: int = 16
) -> Tuple[int, Partition]:
    """Exhaustive minimum distance over all 2^(n-1) two-set partitions.

    Node 0 is pinned to set 1 (swapping sets leaves the codeword unchanged).
    Guarded to small graphs; intended as a test oracle.
    """
    n = graph.n
    if n < 1:
        raise ValueError("graph must have at least one node")
    if n > max_nodes:
        raise ValueError(f"n={n} exceeds the exhaustive-search limit {max_nodes}")
    if graph.m == 0:
        return 0, Partition(tuple([1] * n))
    assignments = np.arange(1 << (n - 1), dtype=np.int64)
    # side bit of node v for every assignment; node 0 is fixed at 0
    side = ((assignments[:, None] >> np.maximum(graph.edge_u - 1, 0)) & 1) * (graph.edge_u > 0)
    side_v = ((assignments[:, None] >> np.maximum(graph.edge_v - 1, 0)) & 1) * (graph.edge_v > 0)
    cross = side ^ side_v
    target = weights.to_numpy().astype(np.int64)
    dists = np.count_nonzero(cross != target[None, :], axis=1)
    best = int(np.argmin(dists))
    bits = (best >> np.arange(n - 1)) & 1
    labels = np.concatenate(([1], bits + 1))
    return int(dists[best]), Partition.from_array(labels)
