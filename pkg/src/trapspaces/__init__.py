"""Trap space computation for Boolean networks.

The solver path (prime implicant hypergraph + extremal arc-set enumeration)
scales to hundreds of variables; the dynamics path is an exhaustive oracle
for desk-scale cross-validation.
"""

from .analysis import (
    CommitmentTable,
    CyclicLowerBound,
    ReducedNetwork,
    attractor_trapspace_audit,
    commitment_table,
    cyclic_attractor_lower_bound,
    reduce,
)
from .bnet import load_network, parse_network, write_network
from .dynamics import (
    StateTransitionGraph,
    attractors,
    brute_force_trap_spaces,
    build_stg,
    is_trap_set,
)
from .encode import emit_asp, emit_ilp
from .expr import (
    Expression,
    constant_value,
    essential_support,
    evaluate,
    format_expression,
    parse_expression,
    restrict,
)
from .primes import HyperArc, PrimeImplicant, PrimeImplicantGraph, build_graph, c_prime_implicants
from .randgen import GeneratorConfig, generate
from .solver import (
    ArcSetSolution,
    TrapSpaceReport,
    enumerate_extremal,
    induced_subspace,
    is_consistent,
    is_stable,
    max_trap_spaces,
    min_trap_spaces,
    steady_states,
)
from .space import (
    BooleanNetwork,
    Subspace,
    image_state,
    image_subspace,
    is_trap_space,
    referenced_states,
    smallest_enclosing_subspace,
    subspace_leq,
)

__version__ = "0.1.0"
