"""Acyclic, induced and uniquely restricted matchings.

Exact reference solvers, polynomial algorithms for P4-free and 2P3-free
graphs, linear-time recognizers for graphs whose maximum matchings are all
acyclic (or all induced), and a generator for the bipartite SAT-reduction
instances showing hardness at maximum degree 4.
"""

from .characterization import (
    ComponentShape,
    classify_components,
    every_max_matching_acyclic,
    every_max_matching_induced,
)
from .cograph import CotreeNode, build_cotree, mwam_p4free
from .errors import (
    AcyclicMatchingError,
    ClassViolationError,
    GenerationError,
    NotCographError,
    NotTwoP3FreeError,
    ParseError,
    ResourceLimitError,
    ValidationError,
    VerificationError,
)
from .generators import GenSpec, generate
from .graph import (
    Graph,
    MatchingKind,
    find_2p3,
    is_2p3_free,
    is_bipartite,
    is_forest,
    is_kind_matching,
    is_p4_free,
    matched_subgraph,
)
from .io import emit_cnf, emit_graph, parse_cnf, parse_graph
from .oracles import (
    SolveResult,
    enumerate_maximum_matchings,
    every_maximum_matching_is,
    matching_numbers,
    max_restricted_matching,
    maximum_matching,
)
from .reduction import (
    CnfFormula,
    ReductionInstance,
    Verdict,
    assignment_to_matching,
    build_reduction,
    decide_via_assignments,
    normalize_cnf,
    verify_instance,
)
from .twop3 import ShapeClass, classify_component, mwam_2p3free

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
