"""Graph-invariant engine for resistance distances and Kirchhoff indices.

Computes Laplacian spectra, effective resistances, Kirchhoff and Wiener
indices, and exact spanning-tree counts; builds the named parametric graph
families with their exact closed-form Kirchhoff catalog; and verifies
extremal bounds, equality characterizations, and Kirchhoff-index orderings
by exhaustive enumeration at desk scale.
"""

from .enumeration import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    EnumerationSpec,
    cardinality,
    connected_with_edges,
    deleted_edges,
    enumerate_space,
    labeled_trees,
    prufer_decode,
)
from .families import (
    FamilyParameterError,
    FamilySpec,
    NoClosedFormSpectrumError,
    build,
    closed_form_kf,
    closed_form_spectrum,
    parse_family,
)
from .graphs import (
    DegreeStats,
    DistanceRow,
    EdgeAbsentError,
    EdgeAlreadyPresentError,
    EdgeListFormatError,
    Graph,
    Graph6FormatError,
    Graph6SizeError,
    GraphError,
    LoopEdgeError,
    VertexOutOfRangeError,
    combine,
    complement,
    connected_components,
    degree_stats,
    edit_edge,
    format_edge_list,
    graph6_decode,
    graph6_encode,
    is_connected,
    make_graph,
    merge_at,
    parse_edge_list,
    shortest_paths,
)
from .spectral import (
    ConvergenceFailureError,
    DisconnectedGraphError,
    NoEdgesError,
    ResistanceMatrix,
    Spectrum,
    kf_resistance,
    kf_spectral,
    kf_vertex,
    laplacian_matrix,
    laplacian_spectrum,
    mu1_bounds,
    resistance_matrix,
    tree_count,
    wiener,
)
from .verify import (
    BoundRecord,
    ComplementShape,
    Counterexample,
    IdentityResult,
    MalformedInputError,
    ParamOutOfRangeError,
    VerificationReport,
    Witness,
    automorphism_count,
    bound_eval,
    check_identity,
    complement_shape,
    extremal_search,
    is_isomorphic,
    labeled_copy_count,
    render_report,
    verify_theorem,
)

__version__ = "0.1.0"
