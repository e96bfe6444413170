"""Synthetic signed networks, channel noise, and dataset ingestion.

The generator plants two equal blocks: pairs inside a block get a positive
edge with probability c_in/n, pairs across blocks a negative edge with
probability c_out/n, so the clean sign vector is exactly the planted
partition's codeword. Corruption flips each sign independently. The GML
loader ingests a directed blog network, collapses it to a simple undirected
graph, and assigns signs from the per-node political orientation: same side
positive, opposite sides negative.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from .gf2 import BitVector
from .graph import (
    GraphError,
    Partition,
    SignedGraph,
    build_signed_graph,
    partition_codeword,
)

__all__ = [
    "DataFormatError",
    "SbmParams",
    "GroundTruth",
    "DatasetStats",
    "sbm_signed",
    "bsc_flip",
    "largest_component",
    "load_polblogs",
    "polblogs_stats",
]


class DataFormatError(ValueError):
    """Unreadable or malformed data file."""


@dataclass(frozen=True)
class SbmParams:
    """Two-block planted partition: p_in = c_in/n within, p_out = c_out/n across.

    The average degree works out to (c_in + c_out) / 2.
    """

    n: int
    c_in: float
    c_out: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError("n must be even and >= 2")
        if self.c_in < 0 or self.c_out < 0:
            raise ValueError("c_in and c_out must be >= 0")
        if self.c_in > self.n or self.c_out > self.n:
            raise ValueError("edge probabilities c/n must not exceed 1")

    @property
    def p_in(self) -> float:
        return self.c_in / self.n

    @property
    def p_out(self) -> float:
        return self.c_out / self.n

    @property
    def average_degree(self) -> float:
        return (self.c_in + self.c_out) / 2.0


@dataclass(frozen=True)
class GroundTruth:
    """Planted partition and its codeword on the generated graph's edges."""

    partition: Partition
    clean_weights: BitVector


@dataclass(frozen=True)
class DatasetStats:
    """Ingestion summary of a dataset graph (after restriction to the
    largest component). average_degree counts the raw source links, including
    reciprocal and repeated ones, matching how the source network is usually
    quoted; average_simple_degree counts deduplicated undirected edges."""

    nodes: int
    edges: int
    community_sizes: Tuple[int, int]
    raw_links: int
    average_degree: float
    average_simple_degree: float


def sbm_signed(params: SbmParams) -> Tuple[SignedGraph, GroundTruth]:
    """Sample a planted two-block signed graph; isolated nodes are dropped.

    Pair draws are counter-based (Philox keyed by the seed) and consumed in
    lexicographic pair order, so a given seed always yields the same graph.
    """
    n = params.n
    half = n // 2
    rng = np.random.Generator(np.random.Philox(key=params.seed))
    iu, iv = np.triu_indices(n, k=1)
    same_block = (iu < half) == (iv < half)
    u = rng.random(iu.size)
    keep = np.where(same_block, u < params.p_in, u < params.p_out)
    eu, ev, es = iu[keep], iv[keep], np.where(same_block[keep], 1, -1)

    present = np.unique(np.concatenate([eu, ev])) if eu.size else np.array([], dtype=np.int64)
    remap = {int(old): i for i, old in enumerate(present)}
    triples = [(remap[int(a)], remap[int(b)], int(s)) for a, b, s in zip(eu, ev, es)]
    graph = build_signed_graph(
        triples, num_nodes=len(present), external_ids=[int(x) for x in present]
    )
    labels = tuple(1 if int(x) < half else 2 for x in present)
    partition = Partition(labels)
    clean = partition_codeword(graph, partition)
    return graph, GroundTruth(partition=partition, clean_weights=clean)


def bsc_flip(weights: BitVector, p: float, seed: int) -> BitVector:
    """Flip each bit independently with probability p (binary symmetric channel).

    The flip mask depends only on (length, p, seed), so applying the same
    call twice restores the input.
    """
    if not 0.0 <= p < 0.5:
        raise ValueError(f"crossover probability {p} outside [0, 0.5)")
    rng = np.random.default_rng(seed)
    mask = rng.random(weights.length) < p
    return weights ^ BitVector.from_numpy(mask.astype(np.uint8))


def _components(graph: SignedGraph) -> List[List[int]]:
    seen = [False] * graph.n
    comps: List[List[int]] = []
    for start in range(graph.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, _ in graph.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def largest_component(
    graph: SignedGraph,
    weights: Optional[BitVector] = None,
    truth: Optional[GroundTruth] = None,
) -> Tuple[SignedGraph, Optional[BitVector], Optional[GroundTruth]]:
    """Restrict a graph (and aligned weights / ground truth) to its largest
    connected component. Ties go to the component holding the smallest node
    id. Node ids are compacted preserving order; edges are re-indexed
    lexicographically.
    """
    if graph.n == 0:
        return graph, weights, truth
    comps = _components(graph)
    best = max(comps, key=len)  # first maximal component contains the smallest id
    keep = {v: i for i, v in enumerate(best)}
    old_edge_ids: List[int] = []
    triples: List[Tuple[int, int, int]] = []
    for j, (u, v, s) in enumerate(graph.edges):
        if u in keep and v in keep:
            old_edge_ids.append(j)
            triples.append((keep[u], keep[v], s))
    sub = build_signed_graph(
        triples,
        num_nodes=len(best),
        external_ids=[graph.external_ids[v] for v in best],
    )
    # for each new edge id, the old edge id it came from
    source_of = {}
    for old_j, (a, b, _) in zip(old_edge_ids, triples):
        aa, bb = (a, b) if a < b else (b, a)
        source_of[sub.edge_index[(aa, bb)]] = old_j
    order = [source_of[j] for j in range(sub.m)]

    def restrict_bits(bits: BitVector) -> BitVector:
        if bits.length != graph.m:
            raise ValueError("weight length mismatch")
        arr = bits.to_numpy()
        return BitVector.from_numpy(arr[np.array(order, dtype=np.int64)]) if order else BitVector(0)

    new_weights = restrict_bits(weights) if weights is not None else None
    new_truth = None
    if truth is not None:
        labels = tuple(truth.partition.labels[v] for v in best)
        new_truth = GroundTruth(
            partition=Partition(labels),
            clean_weights=restrict_bits(truth.clean_weights),
        )
    return sub, new_weights, new_truth


# -- GML ingestion -------------------------------------------------------------


def _tokenize_gml(text: str) -> List[str]:
    tokens: List[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
        elif ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise DataFormatError("unterminated string in GML input")
            tokens.append(text[i : j + 1])
            i = j + 1
        elif ch in "[]":
            tokens.append(ch)
            i += 1
        else:
            j = i
            while j < n and text[j] not in ' \t\r\n[]"':
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


def _parse_gml_block(tokens: List[str], pos: int) -> Tuple[List[Tuple[str, object]], int]:
    items: List[Tuple[str, object]] = []
    while pos < len(tokens):
        tok = tokens[pos]
        if tok == "]":
            return items, pos + 1
        key = tok
        pos += 1
        if pos >= len(tokens):
            raise DataFormatError(f"GML key {key!r} has no value")
        val = tokens[pos]
        if val == "[":
            sub, pos = _parse_gml_block(tokens, pos + 1)
            items.append((key, sub))
        else:
            pos += 1
            if val.startswith('"'):
                items.append((key, val[1:-1]))
            else:
                try:
                    items.append((key, int(val)))
                except ValueError:
                    try:
                        items.append((key, float(val)))
                    except ValueError:
                        items.append((key, val))
    return items, pos


def parse_gml(text: str) -> List[Tuple[str, object]]:
    """Parse GML into nested (key, value) lists. Unknown keys are kept as-is;
    the caller picks out what it needs."""
    tokens = _tokenize_gml(text)
    items, _ = _parse_gml_block(tokens, 0)
    return items


def _ingest_orientation_gml(path: str | Path):
    """Read a node/edge GML file with a per-node orientation attribute.

    Returns the deduplicated undirected simple graph restricted to its
    largest component, the orientation-derived ground truth, and raw tallies.
    """
    try:
        text = Path(path).read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc
    doc = parse_gml(text)
    graph_block = None
    for key, val in doc:
        if key == "graph" and isinstance(val, list):
            graph_block = val
            break
    if graph_block is None:
        raise DataFormatError(f"{path}: no 'graph [...]' block found")

    orientation: Dict[int, int] = {}
    raw_links: List[Tuple[int, int]] = []
    for key, val in graph_block:
        if key == "node" and isinstance(val, list):
            attrs = dict((k, v) for k, v in val)
            if "id" not in attrs:
                raise DataFormatError(f"{path}: node without id")
            if "value" not in attrs:
                raise DataFormatError(f"{path}: node {attrs['id']} lacks a 'value' attribute")
            orientation[int(attrs["id"])] = int(attrs["value"])
        elif key == "edge" and isinstance(val, list):
            attrs = dict((k, v) for k, v in val)
            if "source" not in attrs or "target" not in attrs:
                raise DataFormatError(f"{path}: edge without source/target")
            raw_links.append((int(attrs["source"]), int(attrs["target"])))
    if not orientation:
        raise DataFormatError(f"{path}: no nodes found")

    pairs = set()
    for a, b in raw_links:
        if a == b:
            continue  # self links dropped
        if a not in orientation or b not in orientation:
            raise DataFormatError(f"{path}: edge ({a}, {b}) references an unknown node")
        pairs.add((a, b) if a < b else (b, a))
    triples = [
        (a, b, 1 if orientation[a] == orientation[b] else -1) for a, b in sorted(pairs)
    ]
    full = build_signed_graph(triples)  # isolated nodes drop out here
    labels = Partition(
        tuple(1 if orientation[full.external_ids[v]] == 0 else 2 for v in range(full.n))
    )
    truth_full = GroundTruth(
        partition=labels,
        clean_weights=partition_codeword(full, labels),
    )
    graph, _, truth = largest_component(full, None, truth_full)
    kept = set(graph.external_ids)
    raw_in_component = sum(
        1 for a, b in raw_links if a != b and a in kept and b in kept
    )
    return graph, truth, raw_in_component


def load_polblogs(path: str | Path) -> Tuple[SignedGraph, GroundTruth]:
    """Load the political-blogs network: undirected, deduplicated, signs from
    shared vs. opposing orientation, restricted to the largest component.

    The clean weight vector equals the orientation partition's codeword, so
    the uncorrupted instance is balanced by construction.
    """
    graph, truth, _ = _ingest_orientation_gml(path)
    return graph, truth


def polblogs_stats(path: str | Path) -> DatasetStats:
    """Ingestion summary used for reporting and validation."""
    graph, truth, raw = _ingest_orientation_gml(path)
    s1, s2 = truth.partition.sizes()
    return DatasetStats(
        nodes=graph.n,
        edges=graph.m,
        community_sizes=(s1, s2),
        raw_links=raw,
        average_degree=2.0 * raw / graph.n if graph.n else 0.0,
        average_simple_degree=2.0 * graph.m / graph.n if graph.n else 0.0,
    )
