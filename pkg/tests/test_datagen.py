import numpy as np
import pytest

from signedcode import (
    BitVector,
    DataFormatError,
    GroundTruth,
    Partition,
    SbmParams,
    bsc_flip,
    build_signed_graph,
    fundamental_cycle_matrix,
    is_structurally_balanced,
    largest_component,
    load_polblogs,
    partition_codeword,
    polblogs_stats,
    sbm_signed,
    spanning_tree,
    syndrome,
    weight_vector,
)
from signedcode.datagen import parse_gml

GML_FIXTURE = """
graph [
  directed 1
  node [ id 1 label "a" value 0 ]
  node [ id 2 label "b" value 0 ]
  node [ id 3 label "c" value 1 ]
  node [ id 4 label "d" value 1 ]
  node [ id 5 label "iso" value 0 ]
  edge [ source 1 target 2 ]
  edge [ source 2 target 1 ]
  edge [ source 2 target 3 ]
  edge [ source 3 target 4 ]
  edge [ source 4 target 4 ]
  edge [ source 1 target 3 ]
]
"""


@pytest.fixture
def gml_path(tmp_path):
    path = tmp_path / "blogs.gml"
    path.write_text(GML_FIXTURE)
    return path


def test_params_validation():
    with pytest.raises(ValueError):
        SbmParams(n=5, c_in=2, c_out=1)
    with pytest.raises(ValueError):
        SbmParams(n=4, c_in=-1, c_out=1)
    with pytest.raises(ValueError):
        SbmParams(n=4, c_in=5, c_out=1)
    params = SbmParams(n=100, c_in=8, c_out=4)
    assert params.p_in == 0.08
    assert params.p_out == 0.04
    assert params.average_degree == 6.0


def test_dense_limit_is_the_complete_two_block_graph():
    graph, truth = sbm_signed(SbmParams(n=4, c_in=4, c_out=4, seed=7))
    assert graph.n == 4
    assert graph.m == 6
    signs = [s for _, _, s in graph.edges]
    assert signs == [1, -1, -1, -1, -1, 1]
    assert truth.partition.labels == (1, 1, 2, 2)
    assert truth.clean_weights.to_list() == [0, 1, 1, 1, 1, 0]


def test_empty_limit():
    graph, truth = sbm_signed(SbmParams(n=10, c_in=0, c_out=0))
    assert graph.n == 0
    assert graph.m == 0
    assert truth.clean_weights.length == 0


def test_generation_is_reproducible():
    params = SbmParams(n=120, c_in=8, c_out=4, seed=42)
    g1, t1 = sbm_signed(params)
    g2, t2 = sbm_signed(params)
    assert g1.edges == g2.edges
    assert g1.external_ids == g2.external_ids
    assert t1.clean_weights == t2.clean_weights
    g3, _ = sbm_signed(SbmParams(n=120, c_in=8, c_out=4, seed=43))
    assert g3.edges != g1.edges


def test_clean_instance_is_balanced():
    for seed in range(5):
        graph, truth = sbm_signed(SbmParams(n=80, c_in=9, c_out=4, seed=seed))
        assert truth.clean_weights == partition_codeword(graph, truth.partition)
        assert is_structurally_balanced(graph, truth.clean_weights)
        sub, _, st = largest_component(graph, None, truth)
        H = fundamental_cycle_matrix(sub, spanning_tree(sub))
        assert syndrome(H, st.clean_weights).is_zero()


def test_mean_degree_matches_the_parameter():
    degrees = []
    for seed in range(20):
        graph, _ = sbm_signed(SbmParams(n=500, c_in=8, c_out=4, seed=seed))
        degrees.append(2.0 * graph.m / graph.n)
    mean = float(np.mean(degrees))
    assert abs(mean - 6.0) < 0.6


def test_bsc_zero_noise_is_identity():
    w = BitVector.from_bits([1, 0, 1, 1])
    assert bsc_flip(w, 0.0, seed=5) == w


def test_bsc_same_seed_is_an_involution():
    rng = np.random.default_rng(8)
    w = BitVector.from_numpy(rng.integers(0, 2, 200).astype(np.uint8))
    once = bsc_flip(w, 0.3, seed=17)
    assert once != w
    assert bsc_flip(once, 0.3, seed=17) == w


def test_bsc_flip_count_concentrates():
    m, p = 10000, 0.1
    w = BitVector(m)
    flips = [bsc_flip(w, p, seed=s).weight() for s in range(20)]
    sigma_of_mean = (m * p * (1 - p) / 20) ** 0.5
    assert abs(np.mean(flips) - m * p) <= 3 * sigma_of_mean


def test_bsc_rejects_bad_p():
    w = BitVector(4)
    for bad in (-0.1, 0.5, 0.9):
        with pytest.raises(ValueError):
            bsc_flip(w, bad, seed=0)


def test_largest_component_connected_identity(triangle):
    sub, w, _ = largest_component(triangle, weight_vector(triangle), None)
    assert sub.edges == triangle.edges
    assert sub.external_ids == triangle.external_ids
    assert w == weight_vector(triangle)


def test_largest_component_tie_keeps_smallest_id():
    g = build_signed_graph(
        [(0, 1, 1), (1, 2, 1), (0, 2, 1), (10, 11, -1), (11, 12, -1), (10, 12, -1)]
    )
    sub, _, _ = largest_component(g)
    assert sub.external_ids == (0, 1, 2)
    assert sub.m == 3


def test_largest_component_restricts_weights_and_truth():
    g = build_signed_graph([(0, 1, 1), (1, 2, -1), (0, 2, 1), (5, 6, -1)])
    w = BitVector.from_bits([1, 0, 1, 0])  # aligned with canonical edge order
    truth = GroundTruth(
        partition=Partition((1, 1, 2, 1, 2)),
        clean_weights=BitVector.from_bits([0, 0, 1, 1]),
    )
    sub, sw, st = largest_component(g, w, truth)
    assert sub.n == 3
    assert sub.external_ids == (0, 1, 2)
    assert sw.to_list() == [1, 0, 1]  # the (5,6) bit is gone
    assert st.partition.labels == (1, 1, 2)
    assert st.clean_weights.to_list() == [0, 0, 1]


def test_largest_component_drops_pendant_edge():
    g = build_signed_graph([(1, 2, 1), (2, 3, 1), (1, 3, -1), (7, 8, 1)])
    sub, _, _ = largest_component(g)
    assert sub.n == 3
    assert sub.m == 3


def test_parse_gml_values():
    doc = parse_gml('x 1 name "two words" blk [ inner 3.5 ]')
    assert doc[0] == ("x", 1)
    assert doc[1] == ("name", "two words")
    assert doc[2][0] == "blk"
    assert doc[2][1] == [("inner", 3.5)]
    with pytest.raises(DataFormatError):
        parse_gml('bad "unterminated')


def test_load_collapses_directions_and_drops_self_links(gml_path):
    graph, truth = load_polblogs(gml_path)
    assert graph.n == 4  # the isolated node is gone
    assert graph.external_ids == (1, 2, 3, 4)
    assert graph.m == 4  # reciprocal pair collapsed, self link dropped
    signs = {(graph.external_ids[u], graph.external_ids[v]): s for u, v, s in graph.edges}
    assert signs == {(1, 2): 1, (1, 3): -1, (2, 3): -1, (3, 4): 1}
    assert truth.clean_weights == partition_codeword(graph, truth.partition)
    assert truth.partition.labels == (1, 1, 2, 2)


def test_loaded_instance_is_balanced(gml_path):
    graph, truth = load_polblogs(gml_path)
    H = fundamental_cycle_matrix(graph, spanning_tree(graph))
    assert syndrome(H, truth.clean_weights).is_zero()
    again, _ = load_polblogs(gml_path)
    assert again.edges == graph.edges


def test_stats_count_raw_links(gml_path):
    stats = polblogs_stats(gml_path)
    assert stats.nodes == 4
    assert stats.edges == 4
    assert stats.community_sizes == (2, 2)
    assert stats.raw_links == 5  # self link excluded, reciprocal pair kept
    assert stats.average_degree == pytest.approx(2.5)
    assert stats.average_simple_degree == pytest.approx(2.0)


def test_load_errors(tmp_path):
    with pytest.raises(DataFormatError):
        load_polblogs(tmp_path / "missing.gml")
    bad = tmp_path / "bad.gml"
    bad.write_text("graph [ node [ id 1 ] ]")
    with pytest.raises(DataFormatError):
        load_polblogs(bad)  # orientation attribute absent
    bad.write_text("graph [ node [ id 1 value 0 ] edge [ source 1 target 9 ] ]")
    with pytest.raises(DataFormatError):
        load_polblogs(bad)
    bad.write_text("nothing here 1")
    with pytest.raises(DataFormatError):
        load_polblogs(bad)
