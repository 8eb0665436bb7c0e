"""Enumeration of extremal stable-and-consistent arc sets and trap spaces.

A set of hyperarcs is consistent when no two selected heads assign opposite
values to the same variable, and stable when every tail literal of a selected
arc is the head of some selected arc. Inclusion-maximal such sets induce the
minimal trap spaces; inclusion-minimal non-empty ones induce the maximal trap
spaces. The enumerator repeatedly finds a cardinality-optimal feasible arc
set by a complete, deterministic branch-and-bound search, emits it, and
installs a no-good cut (forbidding subsets in max mode, supersets in min
mode) until the problem becomes infeasible.

Search internals: every cardinality-maximal arc set is the full set of arcs
compatible with some trap space, so max mode branches over per-variable
states (fixed 1 / fixed 0 / free) with arc-liveness propagation. Min mode
branches over the candidate providers of uncovered tail literals, which
confines the search to arcs reachable from the requirements.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import InconsistentArcSetError, SolverTimeoutError, TrapSpacesError
from .primes import PrimeImplicantGraph, build_graph
from .space import BooleanNetwork, Subspace, subspace_lt

DEFAULT_LIMIT = 100_000
DEFAULT_TIMEOUT = 600.0


@dataclass(frozen=True)
class ArcSetSolution:
    """A stable and consistent arc set together with its induced subspace."""

    arc_ids: tuple[int, ...]
    induced: Subspace


@dataclass
class TrapSpaceReport:
    mode: str  # "min" | "max" | "steady"
    spaces: list[Subspace]
    witnesses: list[ArcSetSolution]
    stats: dict = field(default_factory=dict)


def _head_literals(g: PrimeImplicantGraph, arc_ids: Iterable[int]) -> dict[int, int]:
    heads: dict[int, int] = {}
    for a in arc_ids:
        v, c = g.arc(a).head
        if heads.setdefault(v, c) != c:
            raise InconsistentArcSetError(
                f"arcs assign both values to variable index {v}"
            )
    return heads


def is_consistent(g: PrimeImplicantGraph, arc_ids: Iterable[int]) -> bool:
    """True iff no two heads assign the same variable opposite values."""
    try:
        _head_literals(g, arc_ids)
    except InconsistentArcSetError:
        return False
    return True


def is_stable(g: PrimeImplicantGraph, arc_ids: Iterable[int]) -> bool:
    """True iff every tail literal of every arc is the head of some arc."""
    ids = set(arc_ids)
    heads = {g.arc(a).head for a in ids}
    return all(lit in heads for a in ids for lit in g.arc(a).tail)


def induced_subspace(g: PrimeImplicantGraph, arc_ids: Iterable[int]) -> Subspace:
    """Intersection of all selected head literals; whole space for the empty set."""
    heads = _head_literals(g, arc_ids)
    return Subspace.from_items(g.n, heads.items())


class _Infeasible(Exception):
    pass


class _Instance:
    """Bitmask view of a prime implicant graph (arc a of id k has bit k-1)."""

    def __init__(self, g: PrimeImplicantGraph):
        self.g = g
        self.n = g.n
        self.m = len(g.arcs)
        self.all_mask = (1 << self.m) - 1
        self.head_lit = []  # literal id 2*v + c
        self.tails = []  # list of literal ids
        self.tail_litmask = []  # bitmask over the 2n literal ids
        self.heads_mask = [0] * (2 * g.n)  # arcs providing each literal
        for arc in g.arcs:
            v, c = arc.head
            self.head_lit.append(2 * v + c)
            lits = [2 * u + d for u, d in arc.tail]
            self.tails.append(lits)
            mask = 0
            for lit in lits:
                mask |= 1 << lit
            self.tail_litmask.append(mask)
            self.heads_mask[2 * v + c] |= 1 << (arc.id - 1)
        self.conflict = [
            self.heads_mask[lit ^ 1] for lit in self.head_lit
        ]
        # literals committed by selecting an arc: its head plus every tail
        # literal (tails must be covered by equal heads, so they fix values)
        self.arc_commit = [
            self.tail_litmask[a] | (1 << self.head_lit[a])
            for a in range(self.m)
        ]
        # arcs with a given literal in their tail
        self.tailed_by = [0] * (2 * g.n)
        for a in range(self.m):
            for lit in self.tails[a]:
                self.tailed_by[lit] |= 1 << a
        # all arcs mentioning a variable in head or tail
        self.involving = [
            self.heads_mask[2 * v] | self.heads_mask[2 * v + 1]
            | self.tailed_by[2 * v] | self.tailed_by[2 * v + 1]
            for v in range(g.n)
        ]

    def mask_to_ids(self, mask: int) -> tuple[int, ...]:
        return tuple(a + 1 for a in range(self.m) if mask & (1 << a))


_UNDECIDED = -1
_FREE = 2


class _MaxSearch:
    """Cardinality-maximal feasible arc set under positive clauses.

    Branches over per-variable states. A leaf assignment is a trap space and
    its solution is the set of all arcs alive there: head variable fixed at
    the head value and every tail literal fixed accordingly. Propagation
    keeps ``alive`` closed under tail providability (an arc whose tail
    literal has no alive provider can never be selected) and forces literals
    shared by all remaining providers of a fixed variable.
    """

    def __init__(self, inst: _Instance, clauses: list[int], allow_free: bool,
                 deadline: Optional[float]):
        self.inst = inst
        self.clauses = clauses
        self.allow_free = allow_free
        self.deadline = deadline
        self.nodes = 0
        self.best: Optional[int] = None
        self.best_card = 0  # the empty set is never emitted

    def solve(self) -> Optional[int]:
        status = [_UNDECIDED] * self.inst.n
        try:
            # seed with every literal so unprovidable tails are pruned up front
            self._dfs(status, self.inst.all_mask, [],
                      set(range(2 * self.inst.n)))
        except _Infeasible:
            pass
        return self.best

    def _propagate(self, status: list[int], alive: int, queue: list[int],
                   pending: set[int]) -> int:
        """Event-driven closure: queue holds newly decided variables, pending
        holds literals whose alive provider set may have shrunk."""
        inst = self.inst
        heads_mask = inst.heads_mask
        tailed_by = inst.tailed_by

        def kill(mask: int) -> None:
            nonlocal alive
            dead = alive & mask
            if not dead:
                return
            alive &= ~dead
            while dead:
                low = dead & -dead
                pending.add(inst.head_lit[low.bit_length() - 1])
                dead ^= low

        while queue or pending:
            while queue:
                v = queue.pop()
                s = status[v]
                if s == _FREE:
                    kill(heads_mask[2 * v] | heads_mask[2 * v + 1]
                         | tailed_by[2 * v] | tailed_by[2 * v + 1])
                else:
                    kill(heads_mask[2 * v + 1 - s] | tailed_by[2 * v + 1 - s])
                    pending.add(2 * v + s)
            if not pending:
                break
            lit = pending.pop()
            v, c = divmod(lit, 2)
            prov = alive & heads_mask[lit]
            if prov == 0:
                # nothing can induce this literal any more
                if status[v] == c:
                    raise _Infeasible
                kill(tailed_by[lit])
                if status[v] == _UNDECIDED and not (alive & heads_mask[lit ^ 1]):
                    if not self.allow_free:
                        raise _Infeasible
                    status[v] = _FREE
                    queue.append(v)
            elif status[v] == c:
                # every remaining provider shares these tail literals
                common = -1
                p = prov
                while p:
                    low = p & -p
                    common &= inst.tail_litmask[low.bit_length() - 1]
                    if common == 0:
                        break
                    p ^= low
                while common > 0:
                    low = common & -common
                    u, d = divmod(low.bit_length() - 1, 2)
                    if status[u] == _UNDECIDED:
                        status[u] = d
                        queue.append(u)
                    common ^= low
        for clause in self.clauses:
            if not (clause & alive):
                raise _Infeasible
        return alive

    def _upper_bound(self, status: list[int], alive: int) -> int:
        total = 0
        heads_mask = self.inst.heads_mask
        for v in range(self.inst.n):
            s = status[v]
            if s == _FREE:
                continue
            if s == _UNDECIDED:
                a = bin(alive & heads_mask[2 * v]).count("1")
                b = bin(alive & heads_mask[2 * v + 1]).count("1")
                total += a if a > b else b
            else:
                total += bin(alive & heads_mask[2 * v + s]).count("1")
        return total

    def _dfs(self, status: list[int], alive: int, queue: list[int],
             pending: set[int]) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % 64 == 0:
            if time.monotonic() > self.deadline:
                raise SolverTimeoutError("solver wall-clock budget exhausted")
        try:
            alive = self._propagate(status, alive, queue, pending)
        except _Infeasible:
            return
        if self._upper_bound(status, alive) <= self.best_card:
            return
        # branch on the undecided variable touching the most alive arcs
        branch_var, best_score = -1, -1
        for v in range(self.inst.n):
            if status[v] != _UNDECIDED:
                continue
            score = bin(alive & self.inst.involving[v]).count("1")
            if score > best_score:
                branch_var, best_score = v, score
        if branch_var < 0:
            card = bin(alive).count("1")
            if card > self.best_card:
                self.best, self.best_card = alive, card
            return
        heads_mask = self.inst.heads_mask
        ones = bin(alive & heads_mask[2 * branch_var + 1]).count("1")
        zeros = bin(alive & heads_mask[2 * branch_var]).count("1")
        order = [1, 0] if ones >= zeros else [0, 1]
        if self.allow_free:
            order.append(_FREE)
        for value in order:
            child = list(status)
            child[branch_var] = value
            self._dfs(child, alive, [branch_var], set())


def _admissible_arcs(inst: _Instance) -> int:
    """Arcs that can appear in some inclusion-minimal stable set.

    A minimal stable and consistent set keeps exactly one arc per head
    literal, and no proper non-empty subset may be closed under tail
    coverage, so the digraph of head-to-tail literal dependencies it selects
    is strongly connected. Hence every arc of a minimal set has its head and
    all tail literals inside one strongly connected component of the literal
    dependency digraph. Filtering such arcs shrinks the digraph, so iterate
    to a fixed point.
    """
    alive = inst.all_mask
    num_lits = 2 * inst.n
    while True:
        succ: list[set[int]] = [set() for _ in range(num_lits)]
        a_mask = alive
        while a_mask:
            low = a_mask & -a_mask
            a = low.bit_length() - 1
            succ[inst.head_lit[a]].update(inst.tails[a])
            a_mask ^= low
        comp = _scc_ids(succ)
        keep = 0
        a_mask = alive
        while a_mask:
            low = a_mask & -a_mask
            a = low.bit_length() - 1
            cid = comp[inst.head_lit[a]]
            if all(comp[lit] == cid for lit in inst.tails[a]):
                keep |= low
            a_mask ^= low
        if keep == alive:
            return alive
        alive = keep


def _scc_ids(succ: list[set[int]]) -> list[int]:
    """Tarjan component ids (iterative) for a digraph given as successor sets."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


class _MinSearch:
    """Cardinality-minimal non-empty feasible arc set under superset cuts.

    Arcs that cannot occur in any minimal set (head and tails not in one
    strongly connected component of the literal dependency digraph) are
    excluded up front. Branching picks the unsatisfied requirement with the
    fewest candidate providers (the uncovered tail literals of selected
    arcs, or the non-emptiness clause) and partitions the solution space:
    candidate i is selected with candidates 0..i-1 excluded. Lower bound:
    selected arcs plus the number of distinct uncovered literals, each of
    which needs its own provider.
    """

    def __init__(self, inst: _Instance, at_most: list[int],
                 deadline: Optional[float]):
        self.inst = inst
        self.at_most = at_most
        self.deadline = deadline
        self.nodes = 0
        self.best: Optional[int] = None
        self.best_card = inst.m + 1

    def solve(self) -> Optional[int]:
        try:
            self._dfs(0, self.inst.all_mask & ~_admissible_arcs(self.inst))
        except _Infeasible:
            pass
        return self.best

    def _propagate(self, selected: int, excluded: int) -> tuple[int, int]:
        inst = self.inst
        while True:
            if selected & excluded:
                raise _Infeasible
            changed = False
            # literals committed by the selection (heads and tail literals);
            # any arc contradicting one of them can never join this set
            committed = 0
            s = selected
            while s:
                low = s & -s
                committed |= inst.arc_commit[low.bit_length() - 1]
                s ^= low
            c = committed
            while c:
                lowl = c & -c
                lit = lowl.bit_length() - 1
                if committed & (1 << (lit ^ 1)):
                    raise _Infeasible
                contra = (inst.heads_mask[lit ^ 1] | inst.tailed_by[lit ^ 1]) & ~excluded
                if contra:
                    excluded |= contra
                    changed = True
                c ^= lowl
            if selected & excluded:
                raise _Infeasible
            s = selected
            while s:
                low = s & -s
                a = low.bit_length() - 1
                for lit in inst.tails[a]:
                    prov = inst.heads_mask[lit]
                    if prov & selected:
                        continue
                    cand = prov & ~excluded
                    if cand == 0:
                        raise _Infeasible
                    if cand & (cand - 1) == 0:
                        selected |= cand
                        changed = True
                s ^= low
            for cut in self.at_most:
                rem = cut & ~selected
                if rem == 0:
                    raise _Infeasible
                if rem & (rem - 1) == 0 and not (rem & excluded):
                    excluded |= rem
                    changed = True
            if not changed:
                return selected, excluded

    def _uncovered(self, selected: int) -> list[int]:
        """Distinct tail literals of selected arcs with no selected provider."""
        inst = self.inst
        lits: list[int] = []
        seen = 0
        s = selected
        while s:
            low = s & -s
            a = low.bit_length() - 1
            for lit in inst.tails[a]:
                bit = 1 << lit
                if seen & bit:
                    continue
                seen |= bit
                if not (inst.heads_mask[lit] & selected):
                    lits.append(lit)
            s ^= low
        return lits

    def _dfs(self, selected: int, excluded: int) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % 64 == 0:
            if time.monotonic() > self.deadline:
                raise SolverTimeoutError("solver wall-clock budget exhausted")
        try:
            selected, excluded = self._propagate(selected, excluded)
        except _Infeasible:
            return
        uncovered = self._uncovered(selected)
        card = bin(selected).count("1")
        if card + len(uncovered) >= self.best_card:
            return
        if uncovered:
            # fail-first: branch on the literal with the fewest providers
            best_lit, best_width = -1, self.inst.m + 1
            for lit in uncovered:
                width = bin(self.inst.heads_mask[lit] & ~excluded).count("1")
                if width < best_width:
                    best_lit, best_width = lit, width
            requirement = self.inst.heads_mask[best_lit]
        elif selected == 0:
            requirement = self.inst.all_mask  # non-emptiness
        else:
            self.best, self.best_card = selected, card
            return
        cands = requirement & ~excluded & ~selected
        banned = 0
        while cands:
            low = cands & -cands
            self._dfs(selected | low, excluded | banned)
            banned |= low
            cands ^= low


@dataclass
class EnumerationResult:
    solutions: list[ArcSetSolution]
    complete: bool
    iterations: int
    nodes: int
    elapsed: float


def enumerate_extremal(
    g: PrimeImplicantGraph,
    mode: str,
    limit: int = DEFAULT_LIMIT,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    require_all_vars: bool = False,
) -> EnumerationResult:
    """All inclusion-maximal (mode="max") or inclusion-minimal non-empty
    (mode="min") stable and consistent arc sets, by iterated cardinality
    optimization with no-good cuts.

    With require_all_vars, solutions must induce every variable (the steady
    state system; max mode only). Raises SolverTimeoutError on timeout; a
    hit limit returns the partial list flagged incomplete.
    """
    if mode not in ("min", "max"):
        raise TrapSpacesError(f"unknown mode {mode!r}")
    if require_all_vars and mode != "max":
        raise TrapSpacesError("require_all_vars needs mode='max'")
    start = time.monotonic()
    deadline = start + timeout if timeout is not None else None
    inst = _Instance(g)
    clauses: list[int] = []
    at_most: list[int] = []
    solutions: list[ArcSetSolution] = []
    complete = True
    iterations = 0
    nodes = 0
    while True:
        if mode == "max":
            search = _MaxSearch(inst, clauses, not require_all_vars, deadline)
        else:
            search = _MinSearch(inst, at_most, deadline)
        mask = search.solve()
        nodes += search.nodes
        iterations += 1
        if mask is None:
            break
        ids = inst.mask_to_ids(mask)
        if not (is_consistent(g, ids) and is_stable(g, ids)):
            raise TrapSpacesError("search produced an invalid arc set")
        solutions.append(ArcSetSolution(ids, induced_subspace(g, ids)))
        if mode == "max":
            rest = inst.all_mask & ~mask
            if rest == 0:
                break  # every arc selected: all other sets are subsets
            clauses.append(rest)  # require an unselected arc: forbids subsets
        else:
            at_most.append(mask)  # forbid supersets
        if len(solutions) >= limit:
            complete = False
            break
    # emitted sets must be pairwise inclusion-incomparable
    for i, a in enumerate(solutions):
        sa = set(a.arc_ids)
        for b in solutions[i + 1 :]:
            sb = set(b.arc_ids)
            if sa <= sb or sb <= sa:
                raise TrapSpacesError("enumeration produced comparable arc sets")
    return EnumerationResult(
        solutions, complete, iterations, nodes, time.monotonic() - start
    )


def _dedupe_spaces(
    solutions: list[ArcSetSolution],
) -> tuple[list[Subspace], dict[str, ArcSetSolution]]:
    witnesses: dict[str, ArcSetSolution] = {}
    for sol in sorted(solutions, key=lambda s: s.arc_ids):
        witnesses.setdefault(str(sol.induced), sol)
    return [Subspace.from_str(key) for key in sorted(witnesses)], witnesses


def _report(
    net: BooleanNetwork,
    result: EnumerationResult,
    keep_minimal: bool,
    g: PrimeImplicantGraph,
) -> TrapSpaceReport:
    spaces, witnesses = _dedupe_spaces(result.solutions)
    if keep_minimal:
        spaces = [p for p in spaces if not any(subspace_lt(q, p) for q in spaces)]
    else:
        spaces = [p for p in spaces if not any(subspace_lt(p, q) for q in spaces)]
    if keep_minimal and not spaces:
        # the whole space is the unique minimal trap space when no proper one exists
        whole = Subspace.whole(net.n)
        spaces = [whole]
        witnesses[str(whole)] = ArcSetSolution((), whole)
    spaces.sort(key=str)
    return TrapSpaceReport(
        mode="min" if keep_minimal else "max",
        spaces=spaces,
        witnesses=[witnesses[str(p)] for p in spaces],
        stats={
            "arcs": len(g.arcs),
            "iterations": result.iterations,
            "nodes": result.nodes,
            "elapsed": result.elapsed,
            "complete": result.complete,
        },
    )


def min_trap_spaces(
    net: BooleanNetwork,
    limit: int = DEFAULT_LIMIT,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    graph: Optional[PrimeImplicantGraph] = None,
) -> TrapSpaceReport:
    """Minimal trap spaces: induced subspaces of the maximal stable and
    consistent arc sets, post-filtered to inclusion-minimal spaces."""
    g = graph if graph is not None else build_graph(net)
    result = enumerate_extremal(g, "max", limit, timeout)
    return _report(net, result, keep_minimal=True, g=g)


def max_trap_spaces(
    net: BooleanNetwork,
    limit: int = DEFAULT_LIMIT,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    graph: Optional[PrimeImplicantGraph] = None,
) -> TrapSpaceReport:
    """Maximal trap spaces strictly below the whole space: induced subspaces
    of the minimal non-empty stable and consistent arc sets, post-filtered to
    inclusion-maximal spaces."""
    g = graph if graph is not None else build_graph(net)
    result = enumerate_extremal(g, "min", limit, timeout)
    return _report(net, result, keep_minimal=False, g=g)


def steady_states(
    net: BooleanNetwork,
    limit: int = DEFAULT_LIMIT,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    graph: Optional[PrimeImplicantGraph] = None,
) -> list[Subspace]:
    """All states x with F(x) = x, as the all-variables-fixed solutions of the
    arc-set constraint system (computed independently of min_trap_spaces)."""
    g = graph if graph is not None else build_graph(net)
    result = enumerate_extremal(g, "max", limit, timeout, require_all_vars=True)
    return [Subspace.from_str(key) for key in
            sorted({str(sol.induced) for sol in result.solutions})]
