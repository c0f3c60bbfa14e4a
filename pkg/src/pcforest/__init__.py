"""Maximum properly colored forests and trees in edge-colored multigraphs."""

from .graph import (
    ColoredMultigraph,
    Edge,
    InstanceError,
    SimpleGraph,
    Verdict,
    color_class,
    components,
    format_solution,
    is_pc_tree,
    parse_instance,
    parse_solution,
    serialize_instance,
    spanning_forest,
    verify_pc_forest,
)
from .matching import (
    covers,
    matching_number,
    matroid_rank,
    max_matching,
    max_matching_covering,
    max_weight_matching,
)
from .matroid_union import CoverCertificate, coverable, coverable_with_forced, max_coverable_set
from .maxpt import (
    Partition,
    build_bipartite_H,
    exhaustive_partition,
    forest_from_H_matching,
    partition_from_vertices,
    prune_parallel,
    solve_maxpt,
)
from .oracle import CapExceeded, OracleResult, brute_maxpf, brute_maxpt, brute_opt_restricted
from .solvers import (
    InvariantError,
    PreconditionError,
    SolveReport,
    candidate_edges,
    merge_path_cycle_factor,
    solve_complete_2color,
    solve_general,
    solve_union_matchings,
    upper_bound_matchings,
)

__version__ = "0.1.0"
