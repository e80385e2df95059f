"""
Hyperplane arrangements, multiplicities and rational Coxeter realizations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from coxma.algebra import LinearForm, MultiPoly, RatMatrix, matrix_rank
from coxma.coxeter_facts import CoxeterFacts, default_facts
from coxma.errors import ArrangementError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hyperplane:
    normal: LinearForm

    def poly(self) -> MultiPoly:
        return self.normal.to_poly()

    def __str__(self):
        return str(self.normal)


@dataclass(frozen=True)
class CoxeterSpec:
    family: str
    rank: int
    coxeter_number: int
    classical_exponents: Tuple[int, ...]

    def __post_init__(self):
        e = self.classical_exponents
        if len(e) != self.rank or list(e) != sorted(e):
            raise ArrangementError(f"{self.label}: need {self.rank} sorted exponents, got {list(e)}")
        for i in range(self.rank):
            if e[i] + e[self.rank - 1 - i] != self.coxeter_number:
                raise ArrangementError(f"{self.label}: exponents {list(e)} are not dual about h={self.coxeter_number}")

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Arrangement:
    ambient_dim: int
    hyperplanes: Tuple[Hyperplane, ...]
    coxeter_spec: Optional[CoxeterSpec] = None

    def __post_init__(self):
        seen = set()
        for h in self.hyperplanes:
            if h.normal.nvars != self.ambient_dim:
                raise ArrangementError(
                    f"hyperplane {h} has {h.normal.nvars} coordinates, ambient dimension is {self.ambient_dim}"
                )
            if h.normal in seen:
                raise ArrangementError(f"duplicate hyperplane {h} after normalization")
            seen.add(h.normal)

    @classmethod
    def from_forms(cls, ambient_dim: int, forms: Iterable[Sequence[int]], spec: Optional[CoxeterSpec] = None) -> "Arrangement":
        return cls(ambient_dim, tuple(Hyperplane(LinearForm(f)) for f in forms), spec)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @property
    def forms(self) -> List[LinearForm]:
        return [h.normal for h in self.hyperplanes]

    @property
    def rank(self) -> int:
        if not self.hyperplanes:
            return 0
        return matrix_rank(RatMatrix([f.coefficients for f in self.forms]))

    def spans_ambient(self) -> bool:
        return self.rank == self.ambient_dim

    def index_of(self, form: Union[LinearForm, Sequence[int]]) -> int:
        if not isinstance(form, LinearForm):
            form = LinearForm(form)
        for i, h in enumerate(self.hyperplanes):
            if h.normal == form:
                return i
        raise ArrangementError(f"{form} is not a hyperplane of this arrangement")

    def describe(self) -> str:
        label = self.coxeter_spec.label if self.coxeter_spec else "arrangement"
        return f"{label}[{', '.join(str(h) for h in self.hyperplanes)}]"


@dataclass(frozen=True)
class Multiplicity:
    values: Tuple[int, ...]

    def __post_init__(self):
        for v in self.values:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ArrangementError(f"multiplicity values must be integers, got {v!r}")
            if v < 0:
                raise ArrangementError(f"negative multiplicity {v}")

    @classmethod
    def of(cls, values: Iterable[int]) -> "Multiplicity":
        return cls(tuple(values))

    @classmethod
    def constant(cls, size: int, value: int) -> "Multiplicity":
        return cls((value,) * size)

    @classmethod
    def indicator(cls, size: int, index: int) -> "Multiplicity":
        """The characteristic multiplicity of one hyperplane."""
        return cls(tuple(1 if i == index else 0 for i in range(size)))

    @classmethod
    def from_support(cls, size: int, support: Iterable[int]) -> "Multiplicity":
        chosen = set(support)
        return cls(tuple(1 if i in chosen else 0 for i in range(size)))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    @property
    def total(self) -> int:
        return sum(self.values)

    def spread(self) -> int:
        return max(self.values) - min(self.values) if self.values else 0

    def is_quasi_constant(self) -> bool:
        return self.spread() <= 1

    def is_zero_one(self) -> bool:
        return all(v in (0, 1) for v in self.values)

    def is_constant(self) -> bool:
        return self.spread() == 0

    def support(self) -> List[int]:
        return [i for i, v in enumerate(self.values) if v]

    def shifted(self, amount: int) -> "Multiplicity":
        """m + amount."""
        return Multiplicity(tuple(v + amount for v in self.values))

    def reflected(self, amount: int) -> "Multiplicity":
        """amount - m."""
        return Multiplicity(tuple(amount - v for v in self.values))

    def __le__(self, other: "Multiplicity") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))


def check_multiplicity(arrangement: Arrangement, m: Multiplicity) -> None:
    if len(m) != len(arrangement):
        raise ArrangementError(f"multiplicity has {len(m)} entries, arrangement has {len(arrangement)} hyperplanes")


def coxeter_spec(family: str, rank: int, facts: Optional[CoxeterFacts] = None) -> CoxeterSpec:
    facts = facts or default_facts()
    family = family.strip().upper()
    return CoxeterSpec(
        family=family,
        rank=rank,
        coxeter_number=facts.coxeter_number(family, rank),
        classical_exponents=tuple(facts.classical_exponents(family, rank)),
    )


def _unit(n: int, i: int, value: int = 1) -> List[int]:
    v = [0] * n
    v[i] = value
    return v


def _pair(n: int, i: int, j: int, sign: int) -> List[int]:
    v = _unit(n, i)
    v[j] = sign
    return v


def build_coxeter(family: str, rank: int, facts: Optional[CoxeterFacts] = None) -> Arrangement:
    """Essential rational realization of the Coxeter arrangement of type family_rank."""
    spec = coxeter_spec(family, rank, facts)
    n = rank
    forms: List[List[int]] = []
    if spec.family == "A":
        forms += [_unit(n, i) for i in range(n)]
        forms += [_pair(n, i, j, -1) for i, j in combinations(range(n), 2)]
    elif spec.family == "B":
        forms += [_unit(n, i) for i in range(n)]
        for i, j in combinations(range(n), 2):
            forms += [_pair(n, i, j, -1), _pair(n, i, j, 1)]
    else:
        for i, j in combinations(range(n), 2):
            forms += [_pair(n, i, j, -1), _pair(n, i, j, 1)]
    arrangement = Arrangement.from_forms(n, forms, spec)
    logger.debug(f"Built {spec.label} with {len(arrangement)} hyperplanes, h={spec.coxeter_number}")
    return arrangement


def expected_hyperplane_count(family: str, rank: int) -> int:
    family = family.upper()
    if family == "A":
        return rank * (rank + 1) // 2
    if family == "B":
        return rank * rank
    return rank * (rank - 1)


EXAMPLE18_FORMS = ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 1, 1])
EXAMPLE18_SUPPORT = (0, 1, 2, 5)


def example18_arrangement(facts: Optional[CoxeterFacts] = None) -> Arrangement:
    """xyz(x+y)(y+z)(x+y+z), a realization of A3 (h = 4)."""
    return Arrangement.from_forms(3, EXAMPLE18_FORMS, coxeter_spec("A", 3, facts))


def example18_multiplicity() -> Multiplicity:
    """Indicator of {x, y, z, x+y+z}."""
    return Multiplicity.from_support(len(EXAMPLE18_FORMS), EXAMPLE18_SUPPORT)


def defining_poly(arrangement: Arrangement, m: Multiplicity) -> MultiPoly:
    """Q(A, m) = prod alpha_H^m(H)."""
    check_multiplicity(arrangement, m)
    q = MultiPoly.one(arrangement.ambient_dim)
    for h, k in zip(arrangement.hyperplanes, m):
        if k:
            q = q * h.poly() ** k
    return q


def subarrangement(arrangement: Arrangement, m: Multiplicity) -> Arrangement:
    """Hyperplanes with positive multiplicity, same ambient space."""
    check_multiplicity(arrangement, m)
    chosen = tuple(h for h, k in zip(arrangement.hyperplanes, m) if k)
    return Arrangement(arrangement.ambient_dim, chosen)


# JSON arrangement files

class HyperplaneEntry(BaseModel):
    form: List[int]
    multiplicity: Optional[int] = None


class CoxeterEntry(BaseModel):
    family: str
    rank: int


class ArrangementFile(BaseModel):
    ambient_dim: int
    hyperplanes: List[HyperplaneEntry] = Field(default_factory=list)
    coxeter: Optional[CoxeterEntry] = None


def arrangement_from_model(model: ArrangementFile) -> Tuple[Arrangement, Optional[Multiplicity]]:
    if model.ambient_dim < 1:
        raise ArrangementError("ambient_dim must be positive")
    spec = None
    if model.coxeter is not None:
        spec = coxeter_spec(model.coxeter.family, model.coxeter.rank)
        if spec.rank != model.ambient_dim or len(model.hyperplanes) != expected_hyperplane_count(spec.family, spec.rank):
            raise ArrangementError(f"file does not match the shape of {spec.label}")
    hyperplanes = []
    for entry in model.hyperplanes:
        if len(entry.form) != model.ambient_dim:
            raise ArrangementError(f"form {entry.form} does not have {model.ambient_dim} coordinates")
        if not any(entry.form):
            raise ArrangementError("zero form does not define a hyperplane")
        hyperplanes.append(Hyperplane(LinearForm(entry.form)))
    arrangement = Arrangement(model.ambient_dim, tuple(hyperplanes), spec)
    if all(entry.multiplicity is None for entry in model.hyperplanes):
        return arrangement, None
    values = [1 if entry.multiplicity is None else entry.multiplicity for entry in model.hyperplanes]
    if any(v < 0 for v in values):
        raise ArrangementError(f"negative multiplicity in {values}")
    return arrangement, Multiplicity.of(values)


def arrangement_to_model(arrangement: Arrangement, m: Optional[Multiplicity] = None) -> ArrangementFile:
    if m is not None:
        check_multiplicity(arrangement, m)
    entries = [
        HyperplaneEntry(form=list(h.normal.coefficients), multiplicity=None if m is None else m[i])
        for i, h in enumerate(arrangement.hyperplanes)
    ]
    spec = arrangement.coxeter_spec
    return ArrangementFile(
        ambient_dim=arrangement.ambient_dim,
        hyperplanes=entries,
        coxeter=CoxeterEntry(family=spec.family, rank=spec.rank) if spec else None,
    )


def parse_arrangement(text: str) -> Tuple[Arrangement, Optional[Multiplicity]]:
    try:
        model = ArrangementFile.model_validate_json(text)
    except ValidationError as e:
        raise ArrangementError(f"malformed arrangement file: {e.errors()[0]['msg']}") from e
    return arrangement_from_model(model)


def load_arrangement(path: Union[str, Path]) -> Tuple[Arrangement, Optional[Multiplicity]]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ArrangementError(f"cannot read {path}: {e}") from e
    return parse_arrangement(text)


def dump_arrangement(arrangement: Arrangement, m: Optional[Multiplicity] = None) -> str:
    return arrangement_to_model(arrangement, m).model_dump_json(indent=2, exclude_none=True)


def save_arrangement(path: Union[str, Path], arrangement: Arrangement, m: Optional[Multiplicity] = None) -> None:
    Path(path).write_text(dump_arrangement(arrangement, m) + "\n")
