"""Community detection in signed networks via cycle-space decoding.

A balanced signed network splits into two groups with positive edges inside
and negative edges across. The edge sign vector of any such split is a
codeword of the binary code generated by the node-edge incidence matrix and
checked by the fundamental cycle matrix, so noisy sign observations can be
repaired with channel decoders (bit flipping, belief propagation) or by a
direct local search on the disagreement count.
"""
from .cyclespace import (
    SpanningTree,
    encode,
    fundamental_cycle_matrix,
    generator_matrix,
    spanning_tree,
    syndrome,
)
from .datagen import (
    DataFormatError,
    DatasetStats,
    GroundTruth,
    SbmParams,
    bsc_flip,
    largest_component,
    load_polblogs,
    polblogs_stats,
    sbm_signed,
)
from .decoders import (
    BitFlipConfig,
    DecodeResult,
    LlrState,
    TannerGraph,
    bit_flipping_decode,
    bp_decode,
    check_to_variable,
    intrinsic_llr,
    unsatisfied_counts,
    variable_to_check,
)
from .experiment import (
    DECODERS,
    ExperimentSpec,
    SummaryRow,
    TrialRecord,
    records_to_csv,
    run_experiment,
    summarize,
    summary_to_csv,
    trial_seeds,
    write_records,
    write_summary,
)
from .gf2 import BitMatrix, BitVector
from .graph import (
    ColoringResult,
    GraphError,
    Partition,
    SignedGraph,
    build_signed_graph,
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
from .hamming import (
    SearchConfig,
    SearchDivergenceError,
    SearchResult,
    brute_force_min_distance,
    correlation,
    generalized_agreement,
    hamming_decode,
    hamming_distance,
    local_search,
    random_balanced_partition,
    signed_adjacency,
    two_step_matrix,
)

__version__ = "0.1.0"
