"""Fundamental groups of complements of real line and conic-line arrangements."""
from __future__ import annotations

from .errors import (
    ArrangeoError,
    ComplexIntersection,
    IdenticalLines,
    MalformedInput,
    MalformedSkeleton,
    NonGeneric,
    NotAdjacent,
    NotApplicable,
    NotOneCycle,
    UnsupportedParabola,
    UnsupportedTangency,
    ValidationFailed,
)
from .exact import ExactScalar, compare
from .finite import count_homs, named_group
from .geometry import (
    Arrangement,
    Conic,
    Line,
    PointXY,
    branch_points,
    conic_line,
    line_line,
    parse_arrangement,
    shear_to_generic,
    singular_points,
    validate,
)
from .graph import IncidenceGraph, betti, build_graph, cfg_check_cl, cfg_check_line, emit_dot, prscf_condition
from .monodromy import Monodromy, SingularEvent, sort_events
from .pipeline import monodromy_of, move_basepoint, presentation_of
from .presentation import (
    Presentation,
    Relation,
    abelianization,
    basepoint_move,
    canonical_presentation,
    expand_cyclic,
    zvk,
)
from .simplify import simplify_to_cf
from .skeleton import Skeleton, skeleton_to_words
from .structure import (
    GroupStructure,
    StructureVerdict,
    cl_structure,
    conic_split,
    fan_structure,
    oka_sakamoto_split,
    predict_cf,
)
from .words import Automorphism, half_twist_block, twist

__version__ = "0.1.0"
