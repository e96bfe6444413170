"""Cycle space of a connected graph as a binary linear code.

A BFS spanning tree splits the m edges into n-1 tree edges and m-n+1 chords.
Each chord closes exactly one fundamental cycle with the tree; the cycle
indicator rows form the parity-check matrix H. The node-edge incidence rows
form the generator matrix G: codewords are exactly the cut vectors, i.e. the
partition codewords, and a weight vector is balanced iff its syndrome under H
is zero.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .gf2 import BitMatrix, BitVector
from .graph import GraphError, SignedGraph

__all__ = [
    "SpanningTree",
    "spanning_tree",
    "fundamental_cycle_matrix",
    "generator_matrix",
    "syndrome",
    "encode",
]


@dataclass(frozen=True)
class SpanningTree:
    """BFS spanning tree of a connected graph.

    parent[v] / parent_edge[v] give the BFS parent and connecting edge id
    (-1 at the root). non_tree_edges lists the chords in ascending edge id;
    chord i owns row i of the fundamental cycle matrix.
    """

    root: int
    parent: Tuple[int, ...]
    parent_edge: Tuple[int, ...]
    depth: Tuple[int, ...]
    tree_edges: Tuple[int, ...]
    non_tree_edges: Tuple[int, ...]


def spanning_tree(graph: SignedGraph, root: int = 0) -> SpanningTree:
    """BFS spanning tree from root, visiting neighbors in ascending id order."""
    if graph.n == 0:
        raise GraphError("empty graph has no spanning tree")
    if not 0 <= root < graph.n:
        raise GraphError(f"root {root} out of range for n={graph.n}")
    parent = [-1] * graph.n
    parent_edge = [-1] * graph.n
    depth = [0] * graph.n
    visited = [False] * graph.n
    visited[root] = True
    tree_edges: List[int] = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, j in graph.adjacency[u]:
            if not visited[v]:
                visited[v] = True
                parent[v] = u
                parent_edge[v] = j
                depth[v] = depth[u] + 1
                tree_edges.append(j)
                queue.append(v)
    for v in range(graph.n):
        if not visited[v]:
            raise GraphError(
                f"graph is disconnected: node {graph.external_ids[v]} unreachable "
                f"from root {graph.external_ids[root]}"
            )
    tree_set = set(tree_edges)
    non_tree = tuple(j for j in range(graph.m) if j not in tree_set)
    return SpanningTree(
        root=root,
        parent=tuple(parent),
        parent_edge=tuple(parent_edge),
        depth=tuple(depth),
        tree_edges=tuple(sorted(tree_edges)),
        non_tree_edges=non_tree,
    )


def _tree_path_edges(tree: SpanningTree, u: int, v: int) -> List[int]:
    """Edge ids on the unique tree path between u and v (walk up to the LCA)."""
    path: List[int] = []
    du, dv = tree.depth[u], tree.depth[v]
    while du > dv:
        path.append(tree.parent_edge[u])
        u = tree.parent[u]
        du -= 1
    tail: List[int] = []
    while dv > du:
        tail.append(tree.parent_edge[v])
        v = tree.parent[v]
        dv -= 1
    while u != v:
        path.append(tree.parent_edge[u])
        tail.append(tree.parent_edge[v])
        u = tree.parent[u]
        v = tree.parent[v]
    return path + tail


def fundamental_cycle_matrix(graph: SignedGraph, tree: SpanningTree) -> BitMatrix:
    """Parity-check matrix H: row i is the cycle closed by the i-th chord.

    Rows are ordered by ascending chord edge id; each row contains the chord
    itself plus its tree path, so exactly one chord bit is set per row.
    """
    rows = []
    for j in tree.non_tree_edges:
        u, v, _ = graph.edges[j]
        rows.append([j] + _tree_path_edges(tree, u, v))
    return BitMatrix(rows, graph.m)


def generator_matrix(graph: SignedGraph) -> BitMatrix:
    """Node-edge incidence matrix G (n rows, m columns)."""
    rows = [[j for _, j in graph.adjacency[v]] for v in range(graph.n)]
    return BitMatrix(rows, graph.m)


def syndrome(check_matrix: BitMatrix, weights: BitVector) -> BitVector:
    """H w^T over GF(2); zero iff the weights are balanced on every cycle."""
    return check_matrix.mul_vector(weights)


def encode(node_bits: BitVector, gen_matrix: BitMatrix) -> BitVector:
    """Codeword x G: edge bit is the XOR of its two endpoint bits."""
    if node_bits.length != gen_matrix.nrows:
        raise ValueError(
            f"node vector length {node_bits.length} != generator rows {gen_matrix.nrows}"
        )
    acc = 0
    for i in range(gen_matrix.nrows):
        if node_bits.get(i):
            acc ^= gen_matrix.row_mask(i)
    return BitVector(gen_matrix.ncols, acc)
