"""Reproducible random N-K Boolean network generation.

Per variable, in this fixed order: sample an in-degree from Poisson(k)
clamped to [1, min(degree_cap, n)], pick that many distinct regulators
uniformly, then fill a random truth table with independent fair bits. The
stream comes from a single Mersenne Twister instance seeded once, and all
sampling uses explicit algorithms on top of random()/getrandbits() so
networks are reproducible across platforms for a given seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import expr as _expr
from .space import BooleanNetwork

DEFAULT_MEAN_DEGREE = 3.0
DEFAULT_DEGREE_CAP = 12


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    k: float = DEFAULT_MEAN_DEGREE
    seed: int = 0
    degree_cap: int = DEFAULT_DEGREE_CAP

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if not 1 <= self.degree_cap:
            raise ValueError("degree cap must be at least 1")


def _poisson(rng: random.Random, mean: float) -> int:
    # Knuth's multiplication method; fine for small means
    limit = math.exp(-mean)
    count = 0
    prod = rng.random()
    while prod > limit:
        count += 1
        prod *= rng.random()
    return count


def _sample_distinct(rng: random.Random, population: int, count: int) -> list[int]:
    # partial Fisher-Yates over [0, population), explicit for reproducibility
    pool = list(range(population))
    for j in range(count):
        swap = j + rng.randrange(population - j)
        pool[j], pool[swap] = pool[swap], pool[j]
    return sorted(pool[:count])


def _table_to_expression(regulators: list[int], table: int) -> _expr.Expression:
    """Disjunctive normal form over the true rows; Const for constant tables.

    Row bit j of a row index holds the value of regulators[j], counting the
    first regulator as most significant (the truth_table convention).
    """
    d = len(regulators)
    rows = 1 << d
    if table == 0:
        return _expr.Const(0)
    if table == (1 << rows) - 1:
        return _expr.Const(1)
    terms = []
    for row in range(rows):
        if not (table >> row) & 1:
            continue
        literals = []
        for j, v in enumerate(regulators):
            if (row >> (d - 1 - j)) & 1:
                literals.append(_expr.Var(v))
            else:
                literals.append(_expr.Not(_expr.Var(v)))
        terms.append(literals[0] if d == 1 else _expr.And(tuple(literals)))
    return terms[0] if len(terms) == 1 else _expr.Or(tuple(terms))


def generate(cfg: GeneratorConfig) -> BooleanNetwork:
    """Generate a random network; identical configs give identical networks."""
    rng = random.Random(cfg.seed)
    max_degree = min(cfg.degree_cap, cfg.n)
    names = tuple(f"v{i + 1}" for i in range(cfg.n))
    functions = []
    for _ in range(cfg.n):
        degree = _poisson(rng, cfg.k)
        degree = max(1, min(degree, max_degree))
        regulators = _sample_distinct(rng, cfg.n, degree)
        table = 0
        for row in range(1 << degree):
            if rng.getrandbits(1):
                table |= 1 << row
        functions.append(_table_to_expression(regulators, table))
    return BooleanNetwork(names, tuple(functions))
