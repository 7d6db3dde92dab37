"""Exact computation in Leavitt path algebras: normal forms, commutator
membership with certificates, perfection of graph families and a matrix
oracle for finite acyclic graphs."""

__version__ = "0.1.0"

from .algebra import (
    Element,
    Monomial,
    Path,
    ck2_generator,
    ck2_normalize,
    commutator,
    equals_in_L,
    expand_at_vertex,
    is_zero_in_L,
    make_path,
    mono_mul,
    rewrite_normalize,
)
from .commutators import (
    Certificate,
    Decision,
    MembershipReport,
    build_certificate,
    canonical_rotation,
    classify,
    decide_membership,
    span_membership,
    trace_T,
    trace_TS,
    trace_TS_star,
    verify_certificate,
)
from .dsl import load_source, parse_graph
from .errors import FieldError, GraphContractError, GraphError, LeavittError, ParseError
from .expr import format_element, parse_element
from .families import FamilySpec, family, parse_family
from .fields import Field, solve_exact
from .graph import (
    INFINITY,
    Acyclicity,
    Edge,
    FiniteGraph,
    HSLattice,
    LazyGraph,
    b_vector,
    ball,
    distance,
    enumerate_hs,
    hs_closure,
    is_acyclic,
)
from .oracle import BlockMatrix, SinkIndex, oracle_membership, sink_index, to_matrix
from .perfection import PerfectReport, check_perfect, count_boundary_paths, vertex_sum_decomposition
