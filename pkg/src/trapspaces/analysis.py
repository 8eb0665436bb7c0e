"""Applications of trap spaces: model reduction, the cyclic-attractor lower
bound, commitment tables and attractor containment audits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import dynamics as _dynamics
from . import expr as _expr
from . import solver as _solver
from .errors import CapExceededError, NotATrapSpaceError
from .space import (
    BooleanNetwork,
    Subspace,
    is_trap_space,
    smallest_enclosing_subspace,
    subspace_leq,
)


@dataclass(frozen=True)
class ReducedNetwork:
    """A network with the fixed variables of a trap space divided out."""

    parent: BooleanNetwork
    fixing: Subspace
    network: BooleanNetwork
    # parent variable index -> reduced index, for the free variables
    index_map: dict[int, int]

    def embed_state(self, reduced_state: int) -> int:
        """Map a reduced state back to the parent state it represents."""
        x = self.fixing.vals
        rn = self.network.n
        for parent_i, reduced_i in self.index_map.items():
            if (reduced_state >> (rn - 1 - reduced_i)) & 1:
                x |= 1 << (self.parent.n - 1 - parent_i)
        return x


def reduce(net: BooleanNetwork, p: Subspace, unchecked: bool = False) -> ReducedNetwork:
    """Divide out the fixed variables of ``p``: keep the free variables and
    restrict their update functions to ``p``.

    Requires ``p`` to be a trap space (the reduction is only sound as a
    dynamics-preserving step for trap sets); pass unchecked=True to bypass.
    """
    if not unchecked and not is_trap_space(net, p):
        raise NotATrapSpaceError(f"{p} is not a trap space of the network")
    free = p.free_vars()
    if not free:
        raise NotATrapSpaceError("cannot reduce away every variable")
    index_map = {v: j for j, v in enumerate(free)}
    names = tuple(net.variables[v] for v in free)
    functions = tuple(
        _expr.remap_variables(_expr.restrict(net.functions[v], p), index_map)
        for v in free
    )
    return ReducedNetwork(net, p, BooleanNetwork(names, functions), index_map)


@dataclass
class CyclicLowerBound:
    count: int
    witnesses: list[Subspace]
    # per witness, the free variables (some of which must oscillate)
    oscillating_candidates: list[list[str]]


def cyclic_attractor_lower_bound(
    net: BooleanNetwork,
    limit: int = _solver.DEFAULT_LIMIT,
    timeout: Optional[float] = _solver.DEFAULT_TIMEOUT,
) -> CyclicLowerBound:
    """|minimal trap spaces that are not steady states|: each such space is a
    trap set without steady states, so it contains a cyclic attractor."""
    report = _solver.min_trap_spaces(net, limit, timeout)
    witnesses = [p for p in report.spaces if not p.is_state]
    return CyclicLowerBound(
        count=len(witnesses),
        witnesses=witnesses,
        oscillating_candidates=[
            [net.variables[v] for v in p.free_vars()] for p in witnesses
        ],
    )


@dataclass
class CommitmentTable:
    spaces: list[Subspace]
    steady_counts: list[int]
    sync_cyclic_counts: Optional[list[int]]
    async_cyclic_counts: Optional[list[int]]


def commitment_table(
    net: BooleanNetwork,
    stg_cap: Optional[int] = None,
    limit: int = _solver.DEFAULT_LIMIT,
    timeout: Optional[float] = _solver.DEFAULT_TIMEOUT,
) -> CommitmentTable:
    """For each maximal trap space, how many steady states and cyclic
    attractors of each transition graph it contains.

    An attractor counts as inside p iff it is fully contained in p's states
    (tested as enclosing-subspace <= p). The attractor columns are omitted
    when the network exceeds the dynamics caps; steady states always come
    from the solver.
    """
    report = _solver.max_trap_spaces(net, limit, timeout)
    spaces = report.spaces
    steady = _solver.steady_states(net, limit, timeout)
    steady_counts = [
        sum(1 for x in steady if subspace_leq(x, p)) for p in spaces
    ]
    sync_counts = async_counts = None
    for rule in ("sync", "async"):
        try:
            stg = _dynamics.build_stg(net, rule, stg_cap)
        except CapExceededError:
            continue
        counts = _cyclic_containment_counts(net, stg, spaces)
        if rule == "sync":
            sync_counts = counts
        else:
            async_counts = counts
    return CommitmentTable(spaces, steady_counts, sync_counts, async_counts)


def _cyclic_containment_counts(
    net: BooleanNetwork, stg: _dynamics.StateTransitionGraph, spaces: list[Subspace]
) -> list[int]:
    cyclic = [
        smallest_enclosing_subspace(attr, net.n)
        for attr in _dynamics.attractors(stg)
        if len(attr) > 1
    ]
    return [sum(1 for pi_a in cyclic if subspace_leq(pi_a, p)) for p in spaces]


@dataclass
class SpaceAudit:
    space: Subspace
    attractor_count: int
    tight: list[bool]  # per contained attractor: enclosing subspace equals the space


@dataclass
class AttractorAudit:
    rule: str
    per_space: list[SpaceAudit]
    outside: list[list[int]]  # attractors contained in no minimal trap space


def attractor_trapspace_audit(
    net: BooleanNetwork,
    rule: str,
    stg_cap: Optional[int] = None,
    limit: int = _solver.DEFAULT_LIMIT,
    timeout: Optional[float] = _solver.DEFAULT_TIMEOUT,
) -> AttractorAudit:
    """Per minimal trap space: the attractors it contains and whether their
    enclosing subspace is exactly the space; plus attractors outside all
    minimal trap spaces."""
    report = _solver.min_trap_spaces(net, limit, timeout)
    stg = _dynamics.build_stg(net, rule, stg_cap)
    attrs = _dynamics.attractors(stg)
    enclosing = [smallest_enclosing_subspace(a, net.n) for a in attrs]
    per_space = []
    covered = [False] * len(attrs)
    for p in report.spaces:
        inside = [
            i for i, pi_a in enumerate(enclosing) if subspace_leq(pi_a, p)
        ]
        for i in inside:
            covered[i] = True
        per_space.append(
            SpaceAudit(p, len(inside), [enclosing[i] == p for i in inside])
        )
    outside = [attrs[i] for i in range(len(attrs)) if not covered[i]]
    return AttractorAudit(rule, per_space, outside)
