import numpy as np
import pytest

from signedcode import (
    BitVector,
    GraphError,
    Partition,
    build_signed_graph,
    encode,
    fundamental_cycle_matrix,
    generator_matrix,
    is_structurally_balanced,
    partition_codeword,
    spanning_tree,
    syndrome,
    weight_vector,
)

from conftest import random_connected_graph, random_weights

# 4-spoke star plus outer square plus one chord, rooted at the hub: the five
# chords e5..e9 each close a cycle through the spokes
STAR_H = """\
1 1 0 0 1 0 0 0 0
0 1 1 0 0 1 0 0 0
0 0 1 1 0 0 1 0 0
1 0 0 1 0 0 0 1 0
1 0 1 0 0 0 0 0 1"""

# node-edge incidence; row i has a 1 for every edge touching node i
STAR_G = """\
1 0 0 0 1 0 0 1 1
0 1 0 0 1 1 0 0 0
0 0 1 0 0 1 1 0 1
0 0 0 1 0 0 1 1 0
1 1 1 1 0 0 0 0 0"""


def test_star_check_matrix_golden(star):
    tree = spanning_tree(star, root=4)
    H = fundamental_cycle_matrix(star, tree)
    assert (H.nrows, H.ncols) == (5, 9)
    assert H.to_text() == STAR_H
    assert tree.tree_edges == (0, 1, 2, 3)
    assert tree.non_tree_edges == (4, 5, 6, 7, 8)


def test_star_generator_matrix_golden(star):
    G = generator_matrix(star)
    assert (G.nrows, G.ncols) == (5, 9)
    assert G.to_text() == STAR_G


def test_star_duality(star):
    H = fundamental_cycle_matrix(star, spanning_tree(star, root=4))
    G = generator_matrix(star)
    for i in range(G.nrows):
        assert syndrome(H, G.row_vector(i)).is_zero()


def test_each_check_row_has_a_private_chord(star):
    tree = spanning_tree(star, root=4)
    H = fundamental_cycle_matrix(star, tree)
    coldeg = H.column_degrees()
    for i, chord in enumerate(tree.non_tree_edges):
        assert H.row_vector(i).get(chord) == 1
        assert coldeg[chord] == 1


def test_encode_matches_partition_codeword(star):
    G = generator_matrix(star)
    part = Partition((1, 2, 1, 2, 1))
    bits = BitVector.from_bits([0 if lab == 1 else 1 for lab in part.labels])
    assert encode(bits, G) == partition_codeword(star, part)
    with pytest.raises(ValueError):
        encode(BitVector(3), G)


def test_spanning_tree_requires_connectivity():
    g = build_signed_graph([(0, 1, 1), (2, 3, 1)])
    with pytest.raises(GraphError):
        spanning_tree(g)
    with pytest.raises(GraphError):
        spanning_tree(build_signed_graph([(0, 1, 1)]), root=5)


def test_check_rows_are_cycles():
    # every row of H must induce even degree at every node
    rng = np.random.default_rng(101)
    for _ in range(30):
        g = random_connected_graph(rng, int(rng.integers(3, 30)), int(rng.integers(0, 20)))
        H = fundamental_cycle_matrix(g, spanning_tree(g))
        assert H.nrows == g.m - g.n + 1
        for i in range(H.nrows):
            deg = np.zeros(g.n, dtype=np.int64)
            for j in H.row(i):
                u, v, _ = g.edges[j]
                deg[u] += 1
                deg[v] += 1
            assert not np.any(deg % 2)


def test_partition_codewords_have_zero_syndrome():
    rng = np.random.default_rng(103)
    for _ in range(30):
        g = random_connected_graph(rng, int(rng.integers(2, 25)), int(rng.integers(0, 15)))
        H = fundamental_cycle_matrix(g, spanning_tree(g))
        G = generator_matrix(g)
        for i in range(G.nrows):
            assert syndrome(H, G.row_vector(i)).is_zero()
        for _ in range(5):
            labels = rng.integers(1, 3, g.n)
            cw = partition_codeword(g, Partition.from_array(labels))
            assert syndrome(H, cw).is_zero()


def test_zero_syndrome_iff_balanced():
    rng = np.random.default_rng(107)
    seen_balanced = seen_unbalanced = 0
    for _ in range(60):
        g = random_connected_graph(rng, int(rng.integers(3, 15)), int(rng.integers(1, 10)))
        H = fundamental_cycle_matrix(g, spanning_tree(g))
        w = random_weights(rng, g.m)
        signed = build_signed_graph(
            [(u, v, -1 if w.get(j) else 1) for j, (u, v, _) in enumerate(g.edges)]
        )
        balanced = is_structurally_balanced(signed, weight_vector(signed))
        assert syndrome(H, w).is_zero() == balanced
        seen_balanced += balanced
        seen_unbalanced += not balanced
    assert seen_balanced and seen_unbalanced  # both directions exercised


def test_root_choice_changes_rows_not_the_row_space(star):
    H4 = fundamental_cycle_matrix(star, spanning_tree(star, root=4))
    H0 = fundamental_cycle_matrix(star, spanning_tree(star, root=0))
    assert H0.nrows == H4.nrows
    # same null space: weight vectors balanced under one are balanced under the other
    rng = np.random.default_rng(109)
    for _ in range(40):
        w = random_weights(rng, star.m)
        assert syndrome(H0, w).is_zero() == syndrome(H4, w).is_zero()
