"""Signed graphs, two-set partitions, and balance tests.

A signed graph carries a +1/-1 sign per undirected edge. Edges are stored as
(u, v) with u < v over internal ids 0..n-1; the weight vector marks negative
edges with a 1 bit. A partition assigns every node the label 1 or 2; its
codeword has bit 1 exactly on edges that cross the two sets.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .gf2 import BitVector

__all__ = [
    "GraphError",
    "SignedGraph",
    "Partition",
    "ColoringResult",
    "build_signed_graph",
    "weight_vector",
    "node_coloring",
    "is_structurally_balanced",
    "partition_codeword",
    "edge_accuracy",
    "read_edge_list",
    "write_edge_list",
    "read_labels",
    "write_labels",
]


class GraphError(ValueError):
    """Invalid graph input (self loop, duplicate edge, bad id, ...)."""


class SignedGraph:
    """Immutable undirected signed graph with dense edge indices.

    Attributes
    ----------
    n : number of nodes (internal ids 0..n-1)
    m : number of edges
    edges : tuple of (u, v, sign) with u < v, indexed by edge id
    adjacency : per node, tuple of (neighbor, edge_id) sorted by neighbor
    edge_index : dict mapping (u, v) with u < v to the edge id
    external_ids : original node ids, indexed by internal id
    """

    def __init__(
        self,
        n: int,
        edges: Sequence[Tuple[int, int, int]],
        external_ids: Sequence[int],
    ):
        self.n = n
        self.m = len(edges)
        self.edges: Tuple[Tuple[int, int, int], ...] = tuple(edges)
        self.external_ids: Tuple[int, ...] = tuple(external_ids)
        self.edge_index = {(u, v): j for j, (u, v, _) in enumerate(self.edges)}
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        for j, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, j))
            adj[v].append((u, j))
        self.adjacency: Tuple[Tuple[Tuple[int, int], ...], ...] = tuple(
            tuple(sorted(nbrs)) for nbrs in adj
        )
        self.edge_u = np.array([e[0] for e in self.edges], dtype=np.int64)
        self.edge_v = np.array([e[1] for e in self.edges], dtype=np.int64)
        self.edge_sign = np.array([e[2] for e in self.edges], dtype=np.int64)
        for arr in (self.edge_u, self.edge_v, self.edge_sign):
            arr.setflags(write=False)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def to_external(self, internal: int) -> int:
        return self.external_ids[internal]

    def __repr__(self) -> str:
        return f"SignedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Partition:
    """Node labelling into sets 1 and 2."""

    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        for lab in self.labels:
            if lab not in (1, 2):
                raise ValueError("labels must be 1 or 2")

    @classmethod
    def from_array(cls, labels: Iterable[int]) -> "Partition":
        return cls(tuple(int(x) for x in labels))

    @classmethod
    def from_set(cls, n: int, s1: Iterable[int]) -> "Partition":
        members = set(s1)
        return cls(tuple(1 if v in members else 2 for v in range(n)))

    def to_numpy(self) -> np.ndarray:
        return np.array(self.labels, dtype=np.int64)

    def sets(self) -> Tuple[List[int], List[int]]:
        s1 = [v for v, lab in enumerate(self.labels) if lab == 1]
        s2 = [v for v, lab in enumerate(self.labels) if lab == 2]
        return s1, s2

    def sizes(self) -> Tuple[int, int]:
        s1, s2 = self.sets()
        return len(s1), len(s2)

    def swapped(self) -> "Partition":
        return Partition(tuple(3 - lab for lab in self.labels))

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class ColoringResult:
    partition: Partition
    violations: int

    @property
    def consistent(self) -> bool:
        return self.violations == 0


def build_signed_graph(
    edge_list: Iterable[Tuple[int, int, int]],
    num_nodes: Optional[int] = None,
    canonical_order: bool = True,
    external_ids: Optional[Sequence[int]] = None,
) -> SignedGraph:
    """Build a SignedGraph from (u, v, sign) triples.

    Node ids may be arbitrary non-negative ints; they are normalized to
    0..n-1 by sorted rank unless num_nodes is given (then ids must already
    be in range, and isolated nodes are allowed). With canonical_order the
    edges are indexed in lexicographic (u, v) order; otherwise input order
    is kept, which pins edge indices for golden-value comparisons.
    external_ids optionally records the original id of each internal node
    when the caller has already renumbered (requires num_nodes).
    """
    triples = []
    for item in edge_list:
        try:
            u, v, s = item
        except (TypeError, ValueError):
            raise GraphError(f"edge entry {item!r} is not a (u, v, sign) triple")
        u, v, s = int(u), int(v), int(s)
        if s not in (1, -1):
            raise GraphError(f"edge ({u}, {v}) has sign {s}, expected +1 or -1")
        if u == v:
            raise GraphError(f"self loop at node {u}")
        if u < 0 or v < 0:
            raise GraphError("node ids must be non-negative")
        triples.append((u, v, s))

    if num_nodes is None:
        if external_ids is not None:
            raise GraphError("external_ids requires num_nodes")
        ids = sorted({u for u, _, _ in triples} | {v for _, v, _ in triples})
        remap = {ext: i for i, ext in enumerate(ids)}
        external = ids
        n = len(ids)
    else:
        n = int(num_nodes)
        for u, v, _ in triples:
            if u >= n or v >= n:
                raise GraphError(f"node id {max(u, v)} out of range for n={n}")
        remap = {i: i for i in range(n)}
        if external_ids is not None:
            if len(external_ids) != n:
                raise GraphError("external_ids length must equal num_nodes")
            external = [int(x) for x in external_ids]
        else:
            external = list(range(n))

    normalized = []
    for u, v, s in triples:
        a, b = remap[u], remap[v]
        if a > b:
            a, b = b, a
        normalized.append((a, b, s))
    if canonical_order:
        normalized.sort(key=lambda e: (e[0], e[1]))
    seen = set()
    for a, b, _ in normalized:
        if (a, b) in seen:
            raise GraphError(f"duplicate edge ({external[a]}, {external[b]})")
        seen.add((a, b))
    return SignedGraph(n, normalized, external)


def weight_vector(graph: SignedGraph) -> BitVector:
    """Weight vector of the stored signs: bit j = 1 iff edge j is negative."""
    return BitVector.from_numpy((graph.edge_sign < 0).astype(np.uint8))


def node_coloring(graph: SignedGraph, weights: BitVector, root: int = 0) -> ColoringResult:
    """Two-color the nodes by BFS so that tree edges are satisfied.

    The root gets label 1. Each BFS tree edge propagates the parent's label
    (positive edge, weight bit 0) or the opposite label (negative). Every
    edge inside the traversed component is then checked; the violation count
    is the number of edges whose weight contradicts the labels. Zero
    violations certify structural balance of the component. Only the root's
    component is traversed; nodes outside it default to label 1.
    """
    if weights.length != graph.m:
        raise ValueError(f"weight length {weights.length} != m {graph.m}")
    if not 0 <= root < graph.n:
        raise GraphError(f"root {root} out of range for n={graph.n}")
    labels = [1] * graph.n
    visited = [False] * graph.n
    visited[root] = True
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, j in graph.adjacency[u]:
            if not visited[v]:
                visited[v] = True
                labels[v] = labels[u] if weights.get(j) == 0 else 3 - labels[u]
                queue.append(v)
    violations = 0
    for j, (u, v, _) in enumerate(graph.edges):
        if visited[u] and visited[v]:
            same = labels[u] == labels[v]
            if same == bool(weights.get(j)):
                violations += 1
    return ColoringResult(Partition(tuple(labels)), violations)


def is_structurally_balanced(graph: SignedGraph, weights: Optional[BitVector] = None) -> bool:
    """True iff every component admits a consistent two-coloring."""
    if weights is None:
        weights = weight_vector(graph)
    if weights.length != graph.m:
        raise ValueError(f"weight length {weights.length} != m {graph.m}")
    seen = [False] * graph.n
    for root in range(graph.n):
        if seen[root]:
            continue
        result = node_coloring(graph, weights, root=root)
        # mark the traversed component
        queue = deque([root])
        seen[root] = True
        while queue:
            u = queue.popleft()
            for v, _ in graph.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        if result.violations:
            return False
    return True


def partition_codeword(graph: SignedGraph, partition: Partition) -> BitVector:
    """Bit j = 1 iff edge j runs between the two sets of the partition."""
    if len(partition) != graph.n:
        raise ValueError(f"partition length {len(partition)} != n {graph.n}")
    labels = partition.to_numpy()
    bits = (labels[graph.edge_u] != labels[graph.edge_v]).astype(np.uint8)
    return BitVector.from_numpy(bits)


def edge_accuracy(decoded: BitVector, truth: BitVector) -> float:
    """Fraction of edges whose decoded weight matches the reference."""
    if decoded.length != truth.length:
        raise ValueError("length mismatch")
    if decoded.length == 0:
        return 1.0
    return 1.0 - decoded.hamming(truth) / decoded.length


# -- text formats -------------------------------------------------------------

_SIGNS = {"+1": 1, "1": 1, "-1": -1}


def read_edge_list(path: str | Path, canonical_order: bool = True) -> SignedGraph:
    """Read `u v s` lines (s in {+1, -1}); `#` starts a comment."""
    triples = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise GraphError(f"{path}:{lineno}: expected 'u v s', got {raw.strip()!r}")
            u, v, s = parts
            if s not in _SIGNS:
                raise GraphError(f"{path}:{lineno}: bad sign {s!r}")
            try:
                triples.append((int(u), int(v), _SIGNS[s]))
            except ValueError:
                raise GraphError(f"{path}:{lineno}: bad node id in {raw.strip()!r}")
    return build_signed_graph(triples, canonical_order=canonical_order)


def write_edge_list(graph: SignedGraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for u, v, s in graph.edges:
            fh.write(f"{graph.external_ids[u]} {graph.external_ids[v]} {s}\n")


def read_labels(path: str | Path) -> List[Tuple[int, int]]:
    """Read `node label` lines; returns (external id, label) pairs."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphError(f"{path}:{lineno}: expected 'node label'")
            node, lab = int(parts[0]), int(parts[1])
            if lab not in (1, 2):
                raise GraphError(f"{path}:{lineno}: label must be 1 or 2")
            out.append((node, lab))
    return out


def write_labels(graph: SignedGraph, partition: Partition, path: str | Path) -> None:
    if len(partition) != graph.n:
        raise ValueError("partition length mismatch")
    with open(path, "w", encoding="utf-8") as fh:
        for v in range(graph.n):
            fh.write(f"{graph.external_ids[v]} {partition.labels[v]}\n")
