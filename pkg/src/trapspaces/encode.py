"""Deterministic ASP and ILP encodings of the arc-set constraint system.

The mode names the objective direction over the arc indicators: "min"
(smallest non-empty arc sets, which induce the maximal trap spaces) or "max"
(largest arc sets, which induce the minimal trap spaces). Output is
byte-identical across runs for the same network.
"""

from __future__ import annotations

import re

from .errors import TrapSpacesError
from .primes import PrimeImplicantGraph


def _atom_names(variables: tuple[str, ...]) -> list[str]:
    """Map variable names to ASP-safe atoms: lowercase, non-alphanumerics to
    underscores, letter-initial, deduplicated by positional suffix."""
    atoms = []
    seen: set[str] = set()
    for name in variables:
        atom = re.sub(r"[^a-z0-9_]", "_", name.lower())
        if not atom or not atom[0].isalpha():
            atom = "v" + atom
        if atom in seen:
            atom = f"{atom}_{len(atoms) + 1}"
        seen.add(atom)
        atoms.append(atom)
    return atoms


def _check_mode(mode: str) -> None:
    if mode not in ("min", "max"):
        raise TrapSpacesError(f"unknown mode {mode!r}")


def emit_asp(g: PrimeImplicantGraph, mode: str) -> str:
    """Answer set program whose subset-minimal (mode="min") or subset-maximal
    (mode="max") answer sets over x/1 are the extremal arc sets."""
    _check_mode(mode)
    atoms = _atom_names(g.network.variables)
    target = "maximal trap spaces" if mode == "min" else "minimal trap spaces"
    lines = [
        "% stable and consistent arc sets of the prime implicant graph",
        f"% objective direction: {mode} (solutions induce the {target})",
        "% enumerate subset-"
        + ("minimal" if mode == "min" else "maximal")
        + " answer sets w.r.t. x/1 in the downstream solver,",
        "% e.g. clasp with --heu=domain --dom-mod="
        + ("6" if mode == "min" else "7"),
        "% variable name mapping:",
    ]
    for name, atom in zip(g.network.variables, atoms):
        lines.append(f"%   {atom} = {name}")
    for arc in g.arcs:
        hv, hc = arc.head
        facts = [f"head({atoms[hv]},{hc},a{arc.id})."]
        facts.extend(f"tail({atoms[v]},{c},a{arc.id})." for v, c in arc.tail)
        lines.append(" ".join(facts))
    lines.append("{x(ID) : head(v,c,ID)}.")
    lines.append(":- x(ID1), tail(v,c,ID1), not x(ID2): head(v,c,ID2).")
    lines.append(":- x(ID1), x(ID2), head(v,1,ID1), head(v,0,ID2).")
    if mode == "min":
        lines.append(":- {x(_)} 0.")
    return "\n".join(lines) + "\n"


def emit_ilp(g: PrimeImplicantGraph, mode: str) -> str:
    """LP-format 0-1 program; one cardinality-optimal arc set per solve.

    The consumer must iterate no-good cuts to enumerate all extremal sets:
    after each solution S, add sum of x over the complement of S >= 1 (max
    mode) or sum of x over S <= |S|-1 (min mode) and re-solve until
    infeasible.
    """
    _check_mode(mode)
    atoms = _atom_names(g.network.variables)
    target = "maximal trap spaces" if mode == "min" else "minimal trap spaces"
    x_names = [f"x_a{arc.id}" for arc in g.arcs]
    lines = [
        "\\ stable and consistent arc sets of the prime implicant graph",
        f"\\ objective direction: {mode} (solutions induce the {target})",
        "\\ enumerate by iteratively adding no-good cuts: after a solution S,",
        "\\ max mode: sum of x_a over arcs outside S >= 1 (forbids subsets),",
        "\\ min mode: sum of x_a over S <= |S|-1 (forbids supersets).",
        "Maximize" if mode == "max" else "Minimize",
        " obj: " + " + ".join(x_names),
        "Subject To",
    ]
    for v, atom in enumerate(atoms):
        for c in (0, 1):
            providers = g.by_head.get((v, c), ())
            y = f"y_{atom}_{c}"
            if providers:
                # y <= sum of inducing arcs
                terms = " - ".join(f"x_a{a}" for a in providers)
                lines.append(f" ilp1_{atom}_{c}: {y} - {terms} <= 0")
                for a in providers:
                    lines.append(f" ilp1_{atom}_{c}_a{a}: x_a{a} - {y} <= 0")
            else:
                lines.append(f" ilp1_{atom}_{c}: {y} <= 0")
    for arc in g.arcs:
        for v, c in arc.tail:
            lines.append(f" ilp2_a{arc.id}_{atoms[v]}: x_a{arc.id} - y_{atoms[v]}_{c} <= 0")
    for atom in atoms:
        lines.append(f" ilp3_{atom}: y_{atom}_0 + y_{atom}_1 <= 1")
    if mode == "min":
        lines.append(" nonempty: " + " + ".join(x_names) + " >= 1")
    lines.append("Binary")
    names = x_names + [f"y_{atom}_{c}" for atom in atoms for c in (0, 1)]
    lines.append(" " + " ".join(names))
    lines.append("End")
    return "\n".join(lines) + "\n"
