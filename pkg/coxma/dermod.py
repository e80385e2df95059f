"""
Graded pieces of the logarithmic derivation module D(A,m) and of the
logarithmic 1-form module, computed by exact kernels; exponent detection,
Saito certification on both sides, and the duality pairing.

Membership conditions are turned into linear constraints by a change of
coordinates that makes the hyperplane's form a coordinate variable z_j:
alpha^k divides g exactly when g, rewritten in z, has no monomial whose
z_j-exponent is below k.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from coxma.algebra import (
    FactoredRationalFunction,
    LinearForm,
    MultiPoly,
    RatMatrix,
    Scalar,
    determinant,
    divide_by_linear_power,
    kernel_basis,
    matrix_rank,
    monomials,
    poly_det,
)
from coxma.arrangement import Arrangement, Multiplicity, check_multiplicity, defining_poly, subarrangement
from coxma.errors import ArrangementError, InputError, InternalCheckError, NotHomogeneousError, PolynomialParseError

logger = logging.getLogger(__name__)

FRF = FactoredRationalFunction
MAX_CERTIFY_ATTEMPTS = 8


# ---------------------------------------------------------------------------
# Vector fields and forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Derivation:
    """delta = sum f_i d/dx_i with homogeneous polynomial coefficients of one degree."""

    coefficients: Tuple[MultiPoly, ...]

    def __post_init__(self):
        degrees = set()
        for f in self.coefficients:
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise NotHomogeneousError(f"coefficient {f} is not homogeneous")
            degrees.add(f.degree())
        if len(degrees) > 1:
            raise NotHomogeneousError(f"coefficients have different degrees {sorted(degrees)}")

    @classmethod
    def of(cls, coefficients: Iterable[MultiPoly]) -> "Derivation":
        return cls(tuple(coefficients))

    @classmethod
    def euler(cls, nvars: int) -> "Derivation":
        return cls(tuple(MultiPoly.variable(nvars, i) for i in range(nvars)))

    @classmethod
    def coordinate(cls, nvars: int, index: int) -> "Derivation":
        """The constant field d/dx_index."""
        return cls(tuple(MultiPoly.constant(nvars, 1 if i == index else 0) for i in range(nvars)))

    @classmethod
    def parse(cls, text: str, nvars: int, names: Optional[Sequence[str]] = None) -> "Derivation":
        """Comma separated coefficients, e.g. ``"x^3, y^3"``."""
        parts = [p for p in text.split(",")]
        if len(parts) != nvars:
            raise PolynomialParseError(f"derivation {text!r} needs {nvars} comma separated coefficients")
        return cls(tuple(MultiPoly.parse(p, nvars, names) for p in parts))

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.coefficients)

    @property
    def degree(self) -> int:
        """Common polynomial degree; -1 for the zero field."""
        return max((f.degree() for f in self.coefficients), default=-1)

    def apply(self, f: MultiPoly) -> MultiPoly:
        result = MultiPoly.zero(self.nvars)
        for i, g in enumerate(self.coefficients):
            if not g.is_zero():
                result = result + g * f.partial(i)
        return result

    def apply_rf(self, f: FRF) -> FRF:
        result = FRF.zero(self.nvars)
        for i, g in enumerate(self.coefficients):
            if not g.is_zero():
                result = result + f.partial(i) * g
        return result

    def scale(self, factor: Union[Scalar, MultiPoly]) -> "Derivation":
        return Derivation(tuple(f * factor for f in self.coefficients))

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def to_strings(self, names: Optional[Sequence[str]] = None) -> List[str]:
        return [f.to_string(names) for f in self.coefficients]

    def __str__(self):
        return "(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class LogForm1:
    """omega = sum g_i dx_i with normalized rational coefficients."""

    coefficients: Tuple[FRF, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(g.normalize() for g in self.coefficients))

    @classmethod
    def of(cls, coefficients: Iterable[Union[FRF, MultiPoly]]) -> "LogForm1":
        return cls(tuple(g if isinstance(g, FRF) else FRF(g) for g in coefficients))

    @classmethod
    def differential(cls, f: MultiPoly) -> "LogForm1":
        """df = sum (df/dx_i) dx_i."""
        return cls.of(f.partial(i) for i in range(f.nvars))

    @classmethod
    def over_defining_poly(cls, numerators: Sequence[MultiPoly], exponents: Dict[LinearForm, int]) -> "LogForm1":
        """(1/Q) sum p_i dx_i for Q given by its form exponents."""
        return cls(tuple(FRF(p, exponents) for p in numerators))

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.coefficients)

    def is_homogeneous(self) -> bool:
        degrees = {g.degree() for g in self.coefficients if not g.is_zero()}
        return len(degrees) <= 1 and all(g.is_homogeneous() for g in self.coefficients)

    @property
    def degree(self) -> int:
        """Numerator degree minus denominator degree of the nonzero coefficients."""
        degrees = {g.degree() for g in self.coefficients if not g.is_zero()}
        if not degrees:
            raise ValueError("the zero form has no degree")
        if len(degrees) > 1 or not self.is_homogeneous():
            raise NotHomogeneousError(f"form {self} is not homogeneous")
        return degrees.pop()

    def pole_order(self, form: LinearForm) -> int:
        return max((g.exponent_of(form) for g in self.coefficients), default=0)

    def scale(self, factor: Union[Scalar, MultiPoly, FRF]) -> "LogForm1":
        return LogForm1(tuple(g * factor for g in self.coefficients))

    def __add__(self, other: "LogForm1") -> "LogForm1":
        return LogForm1(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "LogForm1") -> "LogForm1":
        return LogForm1(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "LogForm1":
        return LogForm1(tuple(-a for a in self.coefficients))

    def to_strings(self, names: Optional[Sequence[str]] = None) -> List[str]:
        return [g.to_string(names) for g in self.coefficients]

    def __str__(self):
        return " + ".join(f"({s}) dx{i + 1}" for i, s in enumerate(self.to_strings()))


@dataclass(frozen=True)
class LogForm2:
    """sum_{i<j} g_ij dx_i ^ dx_j."""

    nvars: int
    coefficients: Tuple[Tuple[Tuple[int, int], FRF], ...]

    @classmethod
    def of(cls, nvars: int, coefficients: Dict[Tuple[int, int], FRF]) -> "LogForm2":
        items = tuple(sorted((k, v.normalize()) for k, v in coefficients.items() if not v.is_zero()))
        return cls(nvars, items)

    def coefficient(self, i: int, j: int) -> FRF:
        for key, value in self.coefficients:
            if key == (i, j):
                return value
        return FRF.zero(self.nvars)

    def is_zero(self) -> bool:
        return not self.coefficients

    def pole_order(self, form: LinearForm) -> int:
        return max((g.exponent_of(form) for _, g in self.coefficients), default=0)


def wedge_linear(alpha: LinearForm, omega: LogForm1) -> LogForm2:
    """d(alpha) ^ omega for a linear form alpha."""
    a = alpha.coefficients
    n = omega.nvars
    out: Dict[Tuple[int, int], FRF] = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = omega.coefficients[j] * a[i] - omega.coefficients[i] * a[j]
            if not c.is_zero():
                out[(i, j)] = c
    return LogForm2.of(n, out)


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

def _exponent_map(arrangement: Arrangement, m: Multiplicity) -> Dict[LinearForm, int]:
    return {form: k for form, k in zip(arrangement.forms, m) if k}


def derivation_in_module(arrangement: Arrangement, m: Multiplicity, delta: Derivation) -> bool:
    """alpha_H^m(H) divides delta(alpha_H) for every H."""
    check_multiplicity(arrangement, m)
    for form, k in zip(arrangement.forms, m):
        if not k:
            continue
        image = delta.apply(form.to_poly())
        if image.is_zero():
            continue
        if divide_by_linear_power(image, form, k) is None:
            return False
    return True


def form_in_module(arrangement: Arrangement, m: Multiplicity, omega: LogForm1) -> bool:
    """Poles bounded by Q(A,m), and d(alpha_H) ^ omega regular along each H."""
    check_multiplicity(arrangement, m)
    q = defining_poly(arrangement, m)
    for g in omega.coefficients:
        if not (g * q).is_polynomial():
            return False
    for form, k in zip(arrangement.forms, m):
        if k and wedge_linear(form, omega).pole_order(form):
            return False
    return True


# ---------------------------------------------------------------------------
# Linear constraint systems
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _substitution(coefficients: Tuple[int, ...], degree: int) -> Tuple[Dict[Tuple[int, ...], Fraction], ...]:
    """Images of the degree-d monomials under x -> x(z), where the form becomes z_pivot."""
    n = len(coefficients)
    j = next(i for i, a in enumerate(coefficients) if a)
    aj = coefficients[j]
    images = []
    for i in range(n):
        if i != j:
            images.append(MultiPoly.variable(n, i))
            continue
        terms = {tuple(1 if t == j else 0 for t in range(n)): Fraction(1, aj)}
        for t, a in enumerate(coefficients):
            if t != j and a:
                terms[tuple(1 if s == t else 0 for s in range(n))] = Fraction(-a, aj)
        images.append(MultiPoly(n, terms))
    out = []
    for mono in monomials(n, degree):
        out.append(dict(MultiPoly(n, {mono: 1}).compose(images).items()))
    return tuple(out)


def _divisibility_rows(
    form: LinearForm,
    power: int,
    degree: int,
    combination: Sequence[Tuple[int, Fraction]],
    block: int,
    ncols: int,
) -> List[List[Fraction]]:
    """Rows forcing form^power to divide sum c_k g_k, g_k stored in unknown block k."""
    j = form.pivot
    rows: Dict[Tuple[int, ...], List[Fraction]] = {}
    for t, image in enumerate(_substitution(form.coefficients, degree)):
        for mono, coef in image.items():
            if mono[j] >= power:
                continue
            row = rows.get(mono)
            if row is None:
                row = rows[mono] = [Fraction(0)] * ncols
            for k, c in combination:
                row[k * block + t] += c * coef
    return list(rows.values())


@dataclass
class _System:
    degree: int
    block: int
    blocks: int
    rows: List[List[Fraction]] = field(default_factory=list)

    @property
    def ncols(self) -> int:
        return self.block * self.blocks

    def dimension(self) -> int:
        if not self.ncols:
            return 0
        if not self.rows:
            return self.ncols
        return self.ncols - matrix_rank(RatMatrix(self.rows, self.ncols))

    def kernel(self) -> List[Tuple[Fraction, ...]]:
        if not self.ncols:
            return []
        return kernel_basis(RatMatrix(self.rows, self.ncols))


def _derivation_system(arrangement: Arrangement, m: Multiplicity, d: int) -> _System:
    check_multiplicity(arrangement, m)
    n = arrangement.ambient_dim
    block = len(monomials(n, d))
    system = _System(d, block, n)
    for form, k in zip(arrangement.forms, m):
        if not k:
            continue
        combination = [(i, Fraction(a)) for i, a in enumerate(form.coefficients) if a]
        system.rows += _divisibility_rows(form, k, d, combination, block, system.ncols)
    return system


def _form_system(arrangement: Arrangement, m: Multiplicity, d: int) -> _System:
    check_multiplicity(arrangement, m)
    n = arrangement.ambient_dim
    top = d + m.total
    block = len(monomials(n, top))
    system = _System(top, block, n)
    for form, k in zip(arrangement.forms, m):
        if not k:
            continue
        a = form.coefficients
        p = form.pivot
        # the pairs through the pivot index generate all the others
        for i in range(n):
            if i == p:
                continue
            combination = [(i, Fraction(a[p])), (p, Fraction(-a[i]))]
            system.rows += _divisibility_rows(form, k, top, combination, block, system.ncols)
    return system


def _split(vector: Sequence[Fraction], n: int, degree: int) -> List[MultiPoly]:
    mons = monomials(n, degree)
    block = len(mons)
    return [
        MultiPoly(n, {mono: vector[k * block + t] for t, mono in enumerate(mons)})
        for k in range(n)
    ]


def derivation_space_dim(arrangement: Arrangement, m: Multiplicity, d: int) -> int:
    if d < 0:
        return 0
    system = _derivation_system(arrangement, m, d)
    dim = system.dimension()
    logger.debug(f"D(A,m)_{d}: {len(system.rows)} constraints on {system.ncols} unknowns, dim {dim}")
    return dim


def derivation_space_basis(arrangement: Arrangement, m: Multiplicity, d: int) -> List[Derivation]:
    if d < 0:
        return []
    n = arrangement.ambient_dim
    return [Derivation(tuple(_split(v, n, d))) for v in _derivation_system(arrangement, m, d).kernel()]


def form_space_dim(arrangement: Arrangement, m: Multiplicity, d: int) -> int:
    """Degree counts numerator minus denominator, so d may be as low as -|m|."""
    if d + m.total < 0:
        return 0
    system = _form_system(arrangement, m, d)
    dim = system.dimension()
    logger.debug(f"Omega1(A,m)_{d}: {len(system.rows)} constraints on {system.ncols} unknowns, dim {dim}")
    return dim


def form_space_basis(arrangement: Arrangement, m: Multiplicity, d: int) -> List[LogForm1]:
    if d + m.total < 0:
        return []
    n = arrangement.ambient_dim
    exponents = _exponent_map(arrangement, m)
    system = _form_system(arrangement, m, d)
    return [LogForm1.over_defining_poly(_split(v, n, system.degree), exponents) for v in system.kernel()]


def divisible_space_dim(arrangement: Arrangement, m: Multiplicity, d: int) -> int:
    """dim of {f in S_d : alpha_H^m(H) | f for all H}."""
    check_multiplicity(arrangement, m)
    if d < 0:
        return 0
    n = arrangement.ambient_dim
    block = len(monomials(n, d))
    system = _System(d, block, 1)
    for form, k in zip(arrangement.forms, m):
        if k:
            system.rows += _divisibility_rows(form, k, d, [(0, Fraction(1))], block, block)
    return system.dimension()


def hilbert_function(
    arrangement: Arrangement, m: Multiplicity, side: str = "derivation", d_max: int = 0
) -> Dict[int, int]:
    if side == "derivation":
        return {d: derivation_space_dim(arrangement, m, d) for d in range(0, d_max + 1)}
    if side == "form":
        return {d: form_space_dim(arrangement, m, d) for d in range(-m.total, d_max + 1)}
    raise InputError(f"unknown side {side!r}; expected 'derivation' or 'form'")


def free_hilbert_value(exponents: Iterable[int], nvars: int, d: int) -> int:
    """sum_i dim S_{d - e_i}, the graded dimension of a free module."""
    return sum(comb(d - e + nvars - 1, nvars - 1) for e in exponents if d >= e)


# ---------------------------------------------------------------------------
# Saito certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SaitoCertificate:
    ok: bool
    constant: Optional[Fraction] = None
    determinant: str = ""
    reason: str = ""

    def __bool__(self):
        return self.ok

    def describe(self, side: str = "derivation") -> str:
        if not self.ok:
            return self.reason
        c = self.constant
        text = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        return f"{text}*Q" if side == "derivation" else f"{text}/Q"


def saito_check(arrangement: Arrangement, m: Multiplicity, thetas: Sequence[Derivation]) -> SaitoCertificate:
    n = arrangement.ambient_dim
    if len(thetas) != n:
        return SaitoCertificate(False, reason=f"need {n} derivations, got {len(thetas)}")
    for i, theta in enumerate(thetas):
        if not derivation_in_module(arrangement, m, theta):
            return SaitoCertificate(False, reason=f"theta{i + 1} is not in D(A,m)")
    det = poly_det([theta.coefficients for theta in thetas])
    if det.is_zero():
        return SaitoCertificate(False, determinant="0", reason="determinant vanishes")
    q = defining_poly(arrangement, m)
    det_mono, det_lead = det.leading()
    q_mono, q_lead = q.leading()
    c = det_lead / q_lead
    if det_mono != q_mono or det != q.scale(c):
        return SaitoCertificate(False, determinant=str(det), reason="determinant is not a constant multiple of Q")
    return SaitoCertificate(True, c, str(det))


def saito_check_forms(arrangement: Arrangement, m: Multiplicity, omegas: Sequence[LogForm1]) -> SaitoCertificate:
    n = arrangement.ambient_dim
    if len(omegas) != n:
        return SaitoCertificate(False, reason=f"need {n} forms, got {len(omegas)}")
    for i, omega in enumerate(omegas):
        if not form_in_module(arrangement, m, omega):
            return SaitoCertificate(False, reason=f"omega{i + 1} is not in Omega1(A,m)")
    det = determinant([list(omega.coefficients) for omega in omegas]).normalize()
    if det.is_zero():
        return SaitoCertificate(False, determinant="0", reason="determinant vanishes")
    scaled = det * defining_poly(arrangement, m)
    if not scaled.is_polynomial() or not scaled.to_poly().is_constant():
        return SaitoCertificate(False, determinant=str(det), reason="determinant is not a constant over Q")
    return SaitoCertificate(True, scaled.to_poly().constant_value(), str(det))


# ---------------------------------------------------------------------------
# Exponents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentSet:
    values: Tuple[int, ...]
    basis: Tuple[Derivation, ...]
    certificate: SaitoCertificate
    hilbert: Dict[int, int] = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def fit_exponents(arrangement: Arrangement, m: Multiplicity, max_degree: Optional[int] = None) -> Tuple[Optional[List[int]], Dict[int, int]]:
    """Greedy fit of the free Hilbert pattern; stops once ambient_dim generators are placed."""
    n = arrangement.ambient_dim
    cap = m.total if max_degree is None else min(m.total, max_degree)
    fitted: List[int] = []
    hilbert: Dict[int, int] = {}
    for d in range(0, cap + 1):
        dim = derivation_space_dim(arrangement, m, d)
        hilbert[d] = dim
        extra = dim - free_hilbert_value(fitted, n, d)
        if extra < 0:
            return None, hilbert
        fitted += [d] * extra
        if len(fitted) >= n:
            break
    if len(fitted) != n or sum(fitted) != m.total:
        return None, hilbert
    return fitted, hilbert


def _random_scalar(rng: random.Random) -> Fraction:
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, 97), rng.randint(1, 7))


def detect_exponents(
    arrangement: Arrangement,
    m: Multiplicity,
    seed: int = 0,
    max_degree: Optional[int] = None,
) -> Optional[ExponentSet]:
    """Certified exponents of a free (A,m), or None."""
    check_multiplicity(arrangement, m)
    if not arrangement.spans_ambient():
        logger.warning(f"Refusing exponent detection: normals of {arrangement.describe()} do not span the ambient space")
        return None
    fitted, hilbert = fit_exponents(arrangement, m, max_degree)
    if fitted is None:
        logger.debug(f"No free Hilbert pattern for m={list(m)}: {hilbert}")
        return None
    spaces = {e: derivation_space_basis(arrangement, m, e) for e in set(fitted)}
    counts = {e: fitted.count(e) for e in spaces}
    for attempt in range(MAX_CERTIFY_ATTEMPTS):
        rng = random.Random(seed + attempt)
        thetas: List[Derivation] = []
        for e in sorted(spaces):
            basis = spaces[e]
            for _ in range(counts[e]):
                combo = basis[0].scale(0)
                for b in basis:
                    combo = combo + b.scale(_random_scalar(rng))
                thetas.append(combo)
        certificate = saito_check(arrangement, m, thetas)
        if certificate:
            logger.debug(f"Certified exponents {fitted} on attempt {attempt + 1}")
            return ExponentSet(tuple(fitted), tuple(thetas), certificate, hilbert)
        logger.debug(f"Certification attempt {attempt + 1} failed: {certificate.reason}")
    return None


def subarrangement_exponents_agree(arrangement: Arrangement, m: Multiplicity) -> bool:
    """(A, m) and (m^-1(1), 1) have the same Hilbert fit, freeness included."""
    if not m.is_zero_one():
        raise InputError("subarrangement comparison needs a {0,1}-valued multiplicity")
    sub = subarrangement(arrangement, m)
    left = fit_exponents(arrangement, m)
    right = fit_exponents(sub, Multiplicity.constant(len(sub), 1))
    return left == right


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------

def pairing(
    delta: Derivation,
    omega: LogForm1,
    arrangement: Optional[Arrangement] = None,
    m: Optional[Multiplicity] = None,
) -> FRF:
    """<delta, omega> = sum f_i g_i; polynomial whenever both lie in the (A,m) modules."""
    if delta.nvars != omega.nvars:
        raise InputError("derivation and form live in different dimensions")
    result = FRF.zero(delta.nvars)
    for f, g in zip(delta.coefficients, omega.coefficients):
        if not f.is_zero():
            result = result + g * f
    if arrangement is not None and m is not None and not result.is_polynomial():
        if derivation_in_module(arrangement, m, delta) and form_in_module(arrangement, m, omega):
            raise InternalCheckError(f"pairing of module members is not polynomial: {result}")
    return result


def pairing_matrix(thetas: Sequence[Derivation], omegas: Sequence[LogForm1]) -> List[List[FRF]]:
    return [[pairing(theta, omega) for omega in omegas] for theta in thetas]


def pairing_determinant(thetas: Sequence[Derivation], omegas: Sequence[LogForm1]) -> FRF:
    return determinant(pairing_matrix(thetas, omegas)).normalize()


# ---------------------------------------------------------------------------
# Degree-shift isomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShiftRow:
    degree: int
    plus: Tuple[int, int]
    minus: Tuple[int, int]

    @property
    def ok(self) -> bool:
        return self.plus[0] == self.plus[1] and self.minus[0] == self.minus[1]


@dataclass(frozen=True)
class ShiftReport:
    k: int
    h: int
    rows: Tuple[ShiftRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)


def isomorphism_shift_check(arrangement: Arrangement, m: Multiplicity, k: int, d_max: int) -> ShiftReport:
    """
    Compare graded dimensions of D(A,2k+m) with D(A,m) shifted by kh, and of
    D(A,2k-m) with Omega1(A,m) shifted by kh, for d = 0..d_max.
    """
    spec = arrangement.coxeter_spec
    if spec is None:
        raise ArrangementError("isomorphism shift check needs a Coxeter arrangement")
    if not m.is_zero_one() or k < 1:
        raise InputError("needs a {0,1}-valued multiplicity and k >= 1")
    shift = k * spec.coxeter_number
    plus_m = m.shifted(2 * k)
    minus_m = m.reflected(2 * k)
    rows = []
    for d in range(d_max + 1):
        plus = (derivation_space_dim(arrangement, plus_m, d), derivation_space_dim(arrangement, m, d - shift))
        minus = (derivation_space_dim(arrangement, minus_m, d), form_space_dim(arrangement, m, d - shift))
        rows.append(ShiftRow(d, plus, minus))
    return ShiftReport(k, spec.coxeter_number, tuple(rows))
