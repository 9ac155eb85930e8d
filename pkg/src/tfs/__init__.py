"""Forcing and total forcing sets, with an exact-solver harness for trees."""

from .errors import (
    Disconnected,
    DuplicateEdge,
    EdgeNotPresent,
    IndexOutOfRange,
    InvalidParameters,
    InvalidPartition,
    NotATree,
    NotTrimContractible,
    ParseError,
    PreconditionViolated,
    SelfLoop,
    TFSError,
    TooLarge,
)
from .families import (
    FamilyCertificate,
    OpStep,
    StarPartition,
    apply_operation,
    gap_tree,
    generate_T_delta,
    prescribed_min_tf_set,
    recognize_F,
    recognize_H,
    recognize_T_delta,
)
from .forcing import (
    ClosureResult,
    closure,
    induces_isolate_free,
    is_forcing_set,
    is_total_forcing_set,
    validate_certificate,
)
from .graph import (
    Graph,
    GraphStats,
    build_graph,
    canonical_code,
    contract_trim_edge,
    is_tree,
    stats,
    subdivide_edge,
    trim,
)
from .solvers import (
    SolveResult,
    all_minimum_tf_sets,
    forcing_number,
    total_forcing_number,
    tree_forcing_oracle,
)
from .trees import free_trees, labeled_trees_prufer

__version__ = "0.1.0"
