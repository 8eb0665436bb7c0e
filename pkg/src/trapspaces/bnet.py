"""The network file format: a ``targets, factors`` header, then one
``<name>, <expression>`` line per variable. Variable order is line order.
Blank lines and ``#`` comment lines are ignored."""

from __future__ import annotations

import re

from . import expr as _expr
from .errors import NetworkFormatError
from .space import BooleanNetwork

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
HEADER = "targets, factors"


def parse_network(text: str) -> BooleanNetwork:
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise NetworkFormatError("empty network file")
    if re.sub(r"\s*,\s*", ", ", lines[0]).lower() != HEADER:
        raise NetworkFormatError(f"expected header {HEADER!r}, found {lines[0]!r}")
    pairs = []
    for line in lines[1:]:
        if "," not in line:
            raise NetworkFormatError(f"expected '<name>, <expression>': {line!r}")
        name, text_expr = line.split(",", 1)
        name = name.strip()
        if not _NAME_RE.match(name):
            raise NetworkFormatError(f"bad variable name {name!r}")
        pairs.append((name, text_expr.strip()))
    names = tuple(name for name, _ in pairs)
    if len(set(names)) != len(names):
        raise NetworkFormatError("duplicate variable names")
    functions = tuple(
        _expr.parse_expression(text_expr, names) for _, text_expr in pairs
    )
    return BooleanNetwork(names, functions)


def load_network(path: str) -> BooleanNetwork:
    with open(path, encoding="utf-8") as handle:
        return parse_network(handle.read())


def write_network(net: BooleanNetwork) -> str:
    lines = [HEADER]
    for name, f in zip(net.variables, net.functions):
        lines.append(f"{name}, {_expr.format_expression(f, net.variables)}")
    return "\n".join(lines) + "\n"
