"""cyclewright: a certifying digraph toolkit.

Every constructive theorem is an operation returning either a proper
coloring within the proven bound or an explicit subdivision witness of the
forbidden oriented cycle; independent brute-force oracles cross-check all
certificates at desk scale.
"""

from .antidirected import (
    BipartiteCut,
    dense_bipartite_subgraph,
    find_antidirected,
    long_cycle_bipartite,
    peel_to_min_degree,
    quarter_directed_cut,
)
from .certificates import (
    Certificate,
    certificate_from_json,
    certificate_to_json,
    verify_certificate,
    verify_coloring,
    verify_subdivision,
)
from .coloring import Coloring, combine_colorings, combine_many
from .constructions import (
    Hypergraph,
    all_cycle_specs,
    all_digraphs_up_to_iso,
    build_blocks_digraph,
    complete_digraph,
    directed_cycle,
    embed_cycle_in_k_strong,
    enumerate_colorings,
    hamiltonian_with_bounded_span,
    hypergraph_girth,
    random_strong_digraph,
    random_tournament,
    search_hypergraph,
    strong_digraphs_up_to_iso,
    transitive_tournament,
    weak_chromatic_number,
)
from .cycles import (
    OrientedCycleSpec,
    SubdivisionWitness,
    antidirected_spec,
    directed_cycle_spec,
    hat_c4_spec,
    parse_spec,
    two_block_spec,
)
from .digraph import (
    Digraph,
    from_text,
    is_k_strong,
    is_strong,
    read_digraph,
    strong_components,
    to_text,
    write_digraph,
)
from .errors import (
    BudgetExceededError,
    CyclewrightError,
    DegenerateError,
    DomainMismatchError,
    ImproperInputError,
    InfeasibleParametersError,
    LemmaViolationError,
    NoOutGeneratorError,
    PreconditionError,
)
from .hamiltonian import (
    ChordedCycle,
    certify_hamiltonian_ck1,
    certify_hamiltonian_ckk,
    certify_strong_ck1,
    combine_split,
    neighbour_bound_check,
    span_coloring,
)
from .handles import (
    HandleDecomposition,
    certify_C12,
    certify_C13,
    certify_C22,
    certify_C23,
    handle_decomposition,
    nice_handle_decomposition,
    reduce_to_robust,
)
from .leveling import Leveling, bfs_leveling, find_out_generator
from .leveling_colorers import (
    ArcClasses,
    certify_hatC4,
    certify_two_blocks_strong,
    certify_two_strong,
    classify_arcs,
    menger_two_paths,
)
from .oracles import (
    SearchBudget,
    SearchOutcome,
    chromatic_number_exact,
    exact_coloring,
    find_subdivision,
    find_two_block_path,
    gallai_roy,
    longest_dipath,
    longest_directed_cycle,
    min_blocks_exceeds,
    min_blocks_over_cycles,
)

__version__ = "0.1.0"
