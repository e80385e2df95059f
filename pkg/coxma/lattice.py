"""
Intersection lattice of a central arrangement, its Moebius function, and the
combinatorial characteristic polynomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, FrozenSet, List, Sequence, Tuple

from coxma.algebra import UniPoly, fraction_free_echelon
from coxma.arrangement import Arrangement

logger = logging.getLogger(__name__)

Row = Tuple[Fraction, ...]


def rref(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[Row, ...]:
    """Reduced row echelon form with unit pivots; canonical for the row space."""
    ints = [[int(v) for v in r] for r in rows]
    reduced, pivots = fraction_free_echelon(ints, ncols, reduced=True)
    return tuple(tuple(Fraction(v, row[p]) for v in row) for row, p in zip(reduced, pivots))


def _in_span(basis: Tuple[Row, ...], vector: Sequence[int]) -> bool:
    v = [Fraction(x) for x in vector]
    for row in basis:
        p = next(i for i, x in enumerate(row) if x)
        if v[p]:
            c = v[p]
            v = [a - c * b for a, b in zip(v, row)]
    return not any(v)


@dataclass(frozen=True)
class Flat:
    normal_space: Tuple[Row, ...]
    hyperplanes: FrozenSet[int] = field(compare=False)

    @property
    def codim(self) -> int:
        return len(self.normal_space)

    def integer_rows(self) -> List[List[int]]:
        out = []
        for row in self.normal_space:
            out.append([int(v * _denominator_lcm(row)) for v in row])
        return out


@dataclass
class IntersectionLattice:
    ambient_dim: int
    levels: List[List[Flat]]
    mobius_values: Dict[Flat, int] = field(default_factory=dict)

    def flats(self) -> List[Flat]:
        return [f for level in self.levels for f in level]

    @property
    def bottom(self) -> Flat:
        return self.levels[0][0]

    def top(self) -> List[Flat]:
        return list(self.levels[-1])

    def leq(self, lower: Flat, upper: Flat) -> bool:
        """Reverse inclusion of subspaces, i.e. containment of normal spans."""
        return lower.hyperplanes <= upper.hyperplanes

    def profile(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    def mobius(self) -> Dict[Flat, int]:
        if not self.mobius_values:
            self.mobius_values = mobius(self)
        return self.mobius_values

    def to_records(self) -> List[dict]:
        mu = self.mobius()
        return [
            {"codim": f.codim, "normal_space": f.integer_rows(), "hyperplanes": sorted(f.hyperplanes), "mobius": mu[f]}
            for f in self.flats()
        ]


def intersection_lattice(arrangement: Arrangement) -> IntersectionLattice:
    """Flats generated level by level; each new flat adds one normal to a flat one level down."""
    n = arrangement.ambient_dim
    forms = [f.coefficients for f in arrangement.forms]
    bottom = Flat((), frozenset())
    levels: List[List[Flat]] = [[bottom]]
    while True:
        found: Dict[Tuple[Row, ...], Flat] = {}
        for flat in levels[-1]:
            for i, form in enumerate(forms):
                if i in flat.hyperplanes:
                    continue
                key = rref(flat.integer_rows() + [list(form)], n)
                if key in found:
                    continue
                contained = frozenset(j for j, g in enumerate(forms) if _in_span(key, g))
                found[key] = Flat(key, contained)
        if not found:
            break
        levels.append(sorted(found.values(), key=lambda f: sorted(f.hyperplanes)))
    lattice = IntersectionLattice(n, levels)
    logger.debug(f"Lattice of {len(arrangement)} hyperplanes: codim profile {lattice.profile()}")
    return lattice


def _denominator_lcm(row: Row) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in row), 1)


def mobius(lattice: IntersectionLattice) -> Dict[Flat, int]:
    """mu(V) = 1 and mu(X) = -sum of mu(Y) over V <= Y < X."""
    values: Dict[Flat, int] = {lattice.bottom: 1}
    lower: List[Flat] = [lattice.bottom]
    for level in lattice.levels[1:]:
        for flat in level:
            values[flat] = -sum(values[y] for y in lower if y.hyperplanes < flat.hyperplanes)
        lower.extend(level)
    return values


def char_poly(arrangement: Arrangement) -> UniPoly:
    """chi(A, t) = sum over flats of mu(X) t^(dim X), dim taken in the ambient space."""
    lattice = intersection_lattice(arrangement)
    mu = lattice.mobius()
    n = arrangement.ambient_dim
    coeffs = [0] * (n + 1)
    for flat, value in mu.items():
        coeffs[n - flat.codim] += value
    return UniPoly(coeffs)
