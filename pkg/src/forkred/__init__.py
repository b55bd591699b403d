"""Exact quiver mutation: forks, general reddening sequences, c-vector sign checks."""

__version__ = "0.1.0"

from .errors import (
    BlueVertexError,
    CyclicInputError,
    MixedSignsError,
    NonReducedSequenceError,
    NotAForkError,
    NotRank3CyclicError,
    ParseError,
    QuiverError,
    SinkNotRedError,
)
from .quiver import (
    ExtendedQuiver,
    MutationSequence,
    QuiverMatrix,
    VertexColor,
    c_vector,
    coframe,
    colors,
    frame,
    full_subquiver,
    mutate,
    mutate_seq,
    reduce_check,
    vertex_color,
)
from .structure import (
    ForkCertificate,
    acyclic_ordering,
    classify,
    connected_components,
    detect_fork,
    find_fork,
    is_abundant,
    is_acyclic,
    sources_and_sinks,
)
from .reddening import (
    compute_ured,
    finish_from_green_return,
    general_reddening_fork,
    source_cycle_reddening,
    to_green_point_of_return,
)
from .verifier import bfs_sign_coherence, check_base_conditions, check_no_all_red, verify_trajectory

__all__ = [
    "__version__",
    "BlueVertexError",
    "CyclicInputError",
    "MixedSignsError",
    "NonReducedSequenceError",
    "NotAForkError",
    "NotRank3CyclicError",
    "ParseError",
    "QuiverError",
    "SinkNotRedError",
    "ExtendedQuiver",
    "MutationSequence",
    "QuiverMatrix",
    "VertexColor",
    "c_vector",
    "coframe",
    "colors",
    "frame",
    "full_subquiver",
    "mutate",
    "mutate_seq",
    "reduce_check",
    "vertex_color",
    "ForkCertificate",
    "acyclic_ordering",
    "classify",
    "connected_components",
    "detect_fork",
    "find_fork",
    "is_abundant",
    "is_acyclic",
    "sources_and_sinks",
    "compute_ured",
    "finish_from_green_return",
    "general_reddening_fork",
    "source_cycle_reddening",
    "to_green_point_of_return",
    "bfs_sign_coherence",
    "check_base_conditions",
    "check_no_all_red",
    "verify_trajectory",
]
