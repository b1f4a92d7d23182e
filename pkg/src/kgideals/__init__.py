"""Gauge-invariant ideal lattices of finite k-graphs and commuting dynamics."""

from .dynsys import DynSys, dyn_invariant_subsets, dyn_is_nt_tuple, dyn_transfer, to_kgraph, validate_dynsys
from .errors import CapacityError, CompositionError, InconclusiveError, InputError, KGIdealsError, PreconditionError
from .eventual import EventualBehavior, eventual_behavior, eventual_containment
from .kgraph import (
    Edge,
    KGraph,
    Path,
    compose,
    f_sources,
    f_tracing,
    is_locally_convex,
    is_saturated,
    is_sourceless,
    jf_vertices,
    lambda_min,
    mce,
    normalize,
    paths_from,
    quotient_graph,
    saturation,
    segment,
    source_set,
    subgraph,
    transfer_system,
    validate_kgraph,
)
from .lattice import (
    IdealLattice,
    enumerate_no_tuples,
    enumerate_nt_tuples,
    enumerate_relative_no_tuples,
    export,
    hasse,
    join,
    join_formula_check,
    meet,
    regular_case_report,
    rsy_report,
)
from .transfer import TransferSystem
from .tuples import (
    TupleFamily,
    Verdict,
    inv_closure,
    is_hereditary_family,
    is_m_tuple,
    is_neg_invariant,
    is_no_tuple,
    is_nt_tuple,
    is_partially_ordered,
    is_relative_no_tuple,
    iterate_once,
    maximalise,
    participates_in_no_tuple,
    po_closure,
    rf_condition_sets,
    tracing_family,
)

__all__ = [
    "CapacityError",
    "CompositionError",
    "DynSys",
    "Edge",
    "EventualBehavior",
    "IdealLattice",
    "InconclusiveError",
    "InputError",
    "KGIdealsError",
    "KGraph",
    "Path",
    "PreconditionError",
    "TransferSystem",
    "TupleFamily",
    "Verdict",
    "compose",
    "dyn_invariant_subsets",
    "dyn_is_nt_tuple",
    "dyn_transfer",
    "enumerate_no_tuples",
    "enumerate_nt_tuples",
    "enumerate_relative_no_tuples",
    "eventual_behavior",
    "eventual_containment",
    "export",
    "f_sources",
    "f_tracing",
    "hasse",
    "inv_closure",
    "is_hereditary_family",
    "is_locally_convex",
    "is_m_tuple",
    "is_neg_invariant",
    "is_no_tuple",
    "is_nt_tuple",
    "is_partially_ordered",
    "is_relative_no_tuple",
    "is_saturated",
    "is_sourceless",
    "iterate_once",
    "jf_vertices",
    "join",
    "join_formula_check",
    "lambda_min",
    "maximalise",
    "mce",
    "meet",
    "normalize",
    "participates_in_no_tuple",
    "paths_from",
    "po_closure",
    "quotient_graph",
    "regular_case_report",
    "rf_condition_sets",
    "rsy_report",
    "saturation",
    "segment",
    "source_set",
    "subgraph",
    "to_kgraph",
    "tracing_family",
    "transfer_system",
    "validate_dynsys",
    "validate_kgraph",
]
