"""hyperdense: decision procedures and density auditors for k-uniform hypergraphs."""

from .hypergraphs import (
    Hypergraph,
    HypergraphParseError,
    VertexMap,
    complete_hypergraph,
    contains_copy,
    count_embeddings,
    count_homomorphisms,
    enumerate_hypergraphs,
    induced_edge_count,
    is_embedding,
    parse_hypergraph,
    relabel,
    serialize_hypergraph,
    shadow,
)
from .rainbow import (
    Conflict,
    PairColouring,
    ShadowColouring,
    build_pattern_host,
    find_rainbow_ordering,
    forced_colouring,
    random_pair_colouring,
    verify_rainbow_colouring,
)
from .ternary import (
    EmbeddingWitness,
    build_kary,
    find_kary_embedding,
    is_frequent,
    kary_edge,
    kary_edge_count,
    verify_kary_embedding,
)
from .density import (
    DensityQuery,
    DensityReport,
    ProfileReport,
    density_profile,
    triple_density_check,
    verify_density_certificate,
    vertex_density_check,
)
from .reduced import (
    CoreSelection,
    MuDensityError,
    ReducedHypergraph,
    is_mu_dense,
    select_rainbow_core,
    verify_core,
)
from .inequalities import (
    RHO,
    TAU,
    audit_kary_subsets,
    binary_prefix_slice,
    inequality_gap,
    scan_inequality,
    supersaturation_experiment,
)

__version__ = "0.1.0"
