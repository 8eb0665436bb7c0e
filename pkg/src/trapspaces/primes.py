"""Prime implicant enumeration and the prime implicant hypergraph.

For a non-constant function f, a c-prime implicant is a maximal subspace on
which f is the constant c. A constant function f = c contributes a single
self-referential implicant fixing its own target variable at c, which makes
input-like variables self-stabilizing. Each implicant becomes one hyperarc:
tail = the implicant decomposed into literals, head = the induced literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import expr as _expr
from .space import BooleanNetwork, Subspace

Literal = tuple[int, int]  # (variable index, value)


@dataclass(frozen=True)
class PrimeImplicant:
    subspace: Subspace
    value: int
    target: int


@dataclass(frozen=True)
class HyperArc:
    id: int
    tail: tuple[Literal, ...]
    head: Literal

    def __post_init__(self):
        if not self.tail:
            raise ValueError("arc tail must be non-empty")
        if len({v for v, _ in self.tail}) != len(self.tail):
            raise ValueError("tail variables must be distinct")


def _merge_cubes(k: int, minterms: list[int]) -> list[tuple[int, int]]:
    """Iterative adjacent-cube consensus over k variables.

    Cubes are (mask, vals) pairs over k bit positions; returns the prime
    cubes covering exactly the given minterms.
    """
    full = (1 << k) - 1
    current = {(full, m) for m in minterms}
    primes: set[tuple[int, int]] = set()
    while current:
        merged: set[tuple[int, int]] = set()
        next_level: set[tuple[int, int]] = set()
        by_mask: dict[int, dict[int, list[int]]] = {}
        for mask, vals in current:
            by_mask.setdefault(mask, {}).setdefault(bin(vals).count("1"), []).append(vals)
        for mask, groups in by_mask.items():
            for ones in sorted(groups):
                uppers = set(groups.get(ones + 1, ()))
                for vals in groups[ones]:
                    for j in range(k):
                        bit = 1 << j
                        if not (mask & bit) or (vals & bit):
                            continue
                        if (vals | bit) in uppers:
                            next_level.add((mask & ~bit, vals))
                            merged.add((mask, vals))
                            merged.add((mask, vals | bit))
        primes |= current - merged
        current = next_level
    return sorted(primes)


def c_prime_implicants(
    f: _expr.Expression,
    c: int,
    target: int,
    n: int,
    cap: int = _expr.DEFAULT_SUPPORT_CAP,
) -> list[PrimeImplicant]:
    """All c-prime implicants of f, embedded over the full vocabulary of size n.

    Enumeration runs over the essential support so fictitious variables never
    produce non-prime cubes.
    """
    constant = _expr.constant_value(f, cap)
    if constant is not None:
        if constant == c:
            return [PrimeImplicant(Subspace.from_items(n, [(target, c)]), c, target)]
        return []
    support = sorted(_expr.essential_support(f, cap))
    fictitious = _expr.syntactic_support(f) - set(support)
    if fictitious:
        # non-essential variables cannot change f; pin them to evaluate
        f = _expr.restrict(f, Subspace.from_items(n, [(v, 0) for v in fictitious]))
    k = len(support)
    table = _expr.truth_table(f, support, cap)
    minterms = [r for r in range(1 << k) if ((table >> r) & 1) == c]
    out = []
    for mask, vals in _merge_cubes(k, minterms):
        items = []
        for j, v in enumerate(support):
            bit = 1 << (k - 1 - j)
            if mask & bit:
                items.append((v, 1 if vals & bit else 0))
        out.append(PrimeImplicant(Subspace.from_items(n, items), c, target))
    return out


@dataclass(frozen=True)
class PrimeImplicantGraph:
    """The directed hypergraph with one arc per prime implicant.

    Arcs are sorted by (target variable, value descending, tail) and ids are
    assigned 1-based in that order, so output is reproducible byte-for-byte.
    """

    network: BooleanNetwork
    arcs: tuple[HyperArc, ...]

    @cached_property
    def by_head(self) -> dict[Literal, tuple[int, ...]]:
        """For each literal (v, c), the ids of the arcs inducing it."""
        index: dict[Literal, list[int]] = {}
        for arc in self.arcs:
            index.setdefault(arc.head, []).append(arc.id)
        return {lit: tuple(ids) for lit, ids in index.items()}

    def arc(self, arc_id: int) -> HyperArc:
        if not 1 <= arc_id <= len(self.arcs):
            raise KeyError(f"unknown arc id {arc_id}")
        return self.arcs[arc_id - 1]

    @property
    def n(self) -> int:
        return self.network.n


def build_graph(net: BooleanNetwork, cap: int = _expr.DEFAULT_SUPPORT_CAP) -> PrimeImplicantGraph:
    """Enumerate all prime implicants of the network and assemble the graph."""
    entries = []
    for i, f in enumerate(net.functions):
        for c in (1, 0):
            for pi in c_prime_implicants(f, c, i, net.n, cap):
                tail = tuple(sorted(pi.subspace.items()))
                entries.append((i, 1 - c, tail))
    entries.sort()
    arcs = tuple(
        HyperArc(idx + 1, tail, (i, 1 - inv_c))
        for idx, (i, inv_c, tail) in enumerate(entries)
    )
    return PrimeImplicantGraph(net, arcs)
