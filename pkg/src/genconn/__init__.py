"""Exact generalized (edge-)connectivity of small graphs with checkable certificates.

``kappa_k`` counts internally disjoint trees and ``lambda_k`` edge-disjoint
trees connecting every ``k``-set of vertices; both are minimised over all
``k``-sets.
"""

from .bounds import (
    CountingBound,
    PartitionCertificate,
    PartitionLimitError,
    counting_upper_bound,
    terminal_partition_bound,
    tutte_partition_number,
)
from .certificate import certificate_document, certificate_json, check_certificate
from .constructions import (
    Family,
    FamilySpec,
    PackingInvariantError,
    complete_minus,
    construct_family,
    example3_pair,
    figure2_family,
    h_graph,
    join_family,
    pendant_complete,
    planar_family,
    random_graph,
    theorem4_packing,
)
from .corpus import CorpusError, CorpusMember, CorpusSpec, load_corpus
from .flow import (
    LocalCut,
    edge_connectivity,
    is_set_edge_connected,
    local_edge_connectivity,
    local_mixed_connectivity,
    pairwise_edge_connectivity,
    vertex_connectivity,
)
from .graph import (
    Graph,
    GraphFormatError,
    UnsupportedSizeError,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    line_graph,
    parse_graph,
    path_graph,
    serialize_graph,
    star_graph,
)
from .kernels import BACKEND
from .packing import (
    EXACT,
    LOWER_BOUND_ONLY,
    Budget,
    ConnectivityResult,
    generalized_connectivity,
    max_tree_packing,
    stp_number,
)
from .suite import CHECKS, CheckOptions, VerificationReport, replay_counterexample, run_check
from .trees import (
    EDGE_DISJOINT,
    INTERNALLY_DISJOINT,
    EnumerationOverflow,
    Packing,
    PackingVerification,
    SteinerTree,
    enumerate_minimal_steiner_trees,
    verify_packing,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
