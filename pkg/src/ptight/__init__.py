"""(3,6)-tight graphs embedded in the real projective plane."""
from .core import (
    FaceGraph,
    Graph,
    HoleSignature,
    PGraph,
    ValidationReport,
    classify,
    from_face_graph,
    hole_incidence_degree,
    min_hole_incidence_degree,
    moebius_completion,
    validate,
)
from .enumeration import count_tight_graphs, tight_graphs, tight_p_graph_members
from .iso import canonical_form, is_isomorphic
from .moves import admissible_contractions, contract, contractible_edges, ff_edges, grow, vertex_split
from .reduction import ReductionTrace, catalog, identify_base, reduce, replay
from .rigidity import generic_rank, is_minimally_3_rigid, rigidity_matrix
from .sparsity import BlockingSubgraph, brute_force_sparse, find_violation, freedom_number, is_sparse, is_tight

__version__ = "0.1.0"

__all__ = [
    "admissible_contractions",
    "BlockingSubgraph",
    "brute_force_sparse",
    "canonical_form",
    "catalog",
    "classify",
    "contract",
    "contractible_edges",
    "count_tight_graphs",
    "FaceGraph",
    "ff_edges",
    "find_violation",
    "freedom_number",
    "from_face_graph",
    "generic_rank",
    "Graph",
    "grow",
    "hole_incidence_degree",
    "HoleSignature",
    "identify_base",
    "is_isomorphic",
    "is_minimally_3_rigid",
    "is_sparse",
    "is_tight",
    "min_hole_incidence_degree",
    "moebius_completion",
    "PGraph",
    "reduce",
    "ReductionTrace",
    "replay",
    "rigidity_matrix",
    "tight_graphs",
    "tight_p_graph_members",
    "validate",
    "ValidationReport",
    "vertex_split",
]
