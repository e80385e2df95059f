"""
Characteristic polynomials of multiarrangements.

multi_char_poly applies the degree-shift formulas for quasi-constant
multiplicities on a Coxeter arrangement; rank2_char_poly_oracle computes the
same polynomial from brute-forced Hilbert series, independently of them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import List, Optional, Sequence, Tuple

from coxma.algebra import UniPoly
from coxma.arrangement import Arrangement, Multiplicity, check_multiplicity, subarrangement
from coxma.dermod import derivation_space_dim, detect_exponents, divisible_space_dim, form_space_dim
from coxma.errors import ArrangementError, InputError, InternalCheckError, NotQuasiConstantError
from coxma.lattice import char_poly

logger = logging.getLogger(__name__)


class Sign(str, Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class QCDecomp:
    """m~ = 2k + m (plus) or 2k - m (minus) with m valued in {0, 1}."""

    k: int
    m: Multiplicity
    sign: Sign
    canonical: bool = True
    alternate: Optional["QCDecomp"] = None

    def __post_init__(self):
        if not self.m.is_zero_one():
            raise InputError(f"decomposition needs a {{0,1}}-valued m, got {list(self.m)}")
        if self.sign is Sign.MINUS and self.k < 1:
            raise InputError("a minus decomposition needs k >= 1")

    def reconstruct(self) -> Multiplicity:
        if self.sign is Sign.PLUS:
            return self.m.shifted(2 * self.k)
        return self.m.reflected(2 * self.k)


def decompose_quasi_constant(mt: Multiplicity) -> QCDecomp:
    if not len(mt):
        return QCDecomp(0, mt, Sign.PLUS)
    spread = mt.spread()
    if spread >= 2:
        raise NotQuasiConstantError(spread)
    a = min(mt)
    size = len(mt)
    if a % 2 == 0:
        return QCDecomp(a // 2, mt.shifted(-a), Sign.PLUS)
    if spread == 1:
        return QCDecomp((a + 1) // 2, mt.reflected(a + 1), Sign.MINUS)
    ones = Multiplicity.constant(size, 1)
    alternate = QCDecomp((a + 1) // 2, ones, Sign.MINUS, canonical=False)
    return QCDecomp((a - 1) // 2, ones, Sign.PLUS, canonical=True, alternate=alternate)


@dataclass(frozen=True)
class MultiCharPoly:
    polynomial: UniPoly
    provenance: str
    decomposition: Optional[QCDecomp] = None
    exponents: Optional[Tuple[int, ...]] = None

    def coefficients(self) -> List[int]:
        """Integer coefficients, highest degree first."""
        return self.polynomial.to_int_list()

    def __str__(self):
        return self.polynomial.to_string("t")


def _coxeter_number(arrangement: Arrangement) -> int:
    if arrangement.coxeter_spec is None:
        raise ArrangementError("this computation needs a Coxeter arrangement (no Coxeter type attached)")
    return arrangement.coxeter_spec.coxeter_number


def shifted_char_poly(arrangement: Arrangement, decomposition: QCDecomp) -> UniPoly:
    h = _coxeter_number(arrangement)
    base = char_poly(subarrangement(arrangement, decomposition.m))
    kh = decomposition.k * h
    if decomposition.sign is Sign.PLUS:
        return base.compose_affine(1, -kh)
    sign = -1 if arrangement.ambient_dim % 2 else 1
    return base.compose_affine(-1, kh) * sign


def multi_char_poly(arrangement: Arrangement, mt: Multiplicity, decomposition: Optional[QCDecomp] = None) -> MultiCharPoly:
    """chi((A, m~), t) through chi(t - kh) or (-1)^l chi(kh - t) of the subarrangement m^-1(1)."""
    check_multiplicity(arrangement, mt)
    _coxeter_number(arrangement)
    decomposition = decomposition or decompose_quasi_constant(mt)
    if decomposition.reconstruct() != mt:
        raise InputError(f"decomposition does not reconstruct {list(mt)}")
    poly = shifted_char_poly(arrangement, decomposition)
    logger.debug(f"chi for m~={list(mt)} via k={decomposition.k} {decomposition.sign.value}: {poly}")
    return MultiCharPoly(poly, "theorem15", decomposition)


def odd_constant_polynomials(arrangement: Arrangement, value: int) -> Tuple[UniPoly, UniPoly]:
    """The canonical and the alternate route for the constant odd multiplicity ``value``."""
    if value < 1 or value % 2 == 0:
        raise InputError("needs an odd positive constant")
    mt = Multiplicity.constant(len(arrangement), value)
    decomposition = decompose_quasi_constant(mt)
    return (
        multi_char_poly(arrangement, mt, decomposition).polynomial,
        multi_char_poly(arrangement, mt, decomposition.alternate).polynomial,
    )


# ---------------------------------------------------------------------------
# Rank-2 oracle from Hilbert series
# ---------------------------------------------------------------------------

# polynomials in t whose coefficients are UniPoly in q, lowest power of t first
TPoly = List[UniPoly]


def _tpoly_mul(a: TPoly, b: TPoly) -> TPoly:
    out = [UniPoly() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _numerator(dims: Sequence[int], degree: int) -> UniPoly:
    """(1 - q)^2 * sum dims[s] q^s, checked to vanish above ``degree``."""
    coeffs = []
    for s in range(len(dims)):
        coeffs.append(dims[s] - 2 * (dims[s - 1] if s >= 1 else 0) + (dims[s - 2] if s >= 2 else 0))
    if any(coeffs[degree + 1:]):
        raise InternalCheckError(f"Hilbert numerator {coeffs} has terms above degree {degree}")
    return UniPoly(coeffs[: degree + 1])


def _evaluate_at_one(numerators: Sequence[UniPoly], variable: TPoly) -> UniPoly:
    """sum_p N_p(q) * variable^p / (1 - q)^2 at q = 1, by exact division."""
    total: TPoly = [UniPoly()]
    power: TPoly = [UniPoly([1])]
    for p, n in enumerate(numerators):
        if p:
            power = _tpoly_mul(power, variable)
        term = [n * c for c in power]
        size = max(len(total), len(term))
        total = [
            (total[i] if i < len(total) else UniPoly()) + (term[i] if i < len(term) else UniPoly())
            for i in range(size)
        ]
    values = []
    for j, c in enumerate(total):
        for _ in range(2):
            c, remainder = c.deflate(1)
            if remainder:
                raise InternalCheckError(f"t^{j} coefficient is not a polynomial in q")
        values.append(c.evaluate(1))
    return UniPoly(values)


def rank2_char_poly_oracle(arrangement: Arrangement, m: Multiplicity, seed: int = 0) -> MultiCharPoly:
    """
    chi((A,m),t) = (-1)^2 psi(A,m;t,1) with the Hilbert series of D^0, D^1,
    D^2 brute-forced degree by degree; the form side phi(A,m;t,1) is
    computed the same way and must agree.

    Derivations are graded by the polynomial degree of their coefficients,
    bivectors f d1^d2 by deg f, forms by numerator minus denominator degree.
    """
    if arrangement.ambient_dim != 2:
        raise ArrangementError(f"the rank-2 oracle needs ambient dimension 2, got {arrangement.ambient_dim}")
    check_multiplicity(arrangement, m)
    total = m.total
    top = total + 2
    d0 = [comb(d + 1, 1) for d in range(top + 1)]
    d1 = [derivation_space_dim(arrangement, m, d) for d in range(top + 1)]
    d2 = [divisible_space_dim(arrangement, m, d) for d in range(top + 1)]
    n1 = _numerator(d1, total)
    exponents = tuple(sorted(e for e, c in enumerate(n1.coefficients) for _ in range(int(c))))
    if len(exponents) != 2 or sum(exponents) != total or any(c < 0 for c in n1.coefficients):
        raise InternalCheckError(f"D(A,m) Hilbert numerator {n1} is not that of a free rank-2 module")
    if arrangement.spans_ambient():
        certified = detect_exponents(arrangement, m, seed)
        if certified is None or certified.values != exponents:
            raise InternalCheckError(f"Saito certification disagrees with Hilbert exponents {exponents}")
    psi = _evaluate_at_one(
        [_numerator(d0, 0), n1, _numerator(d2, total)],
        [UniPoly([-1]), UniPoly([-1, 1])],
    )
    chi = psi

    # form side, every Hilbert series multiplied by q^|m| to clear negative degrees;
    # generators of Omega1(A,m) sit in degrees -e_i within [-|m|, 0], tabulated with the same margin as top
    form_top = top - total
    f1 = [form_space_dim(arrangement, m, d) for d in range(-total, form_top + 1)]
    phi = _evaluate_at_one(
        [UniPoly.monomial(total), _numerator(f1, total), UniPoly([1])],
        [UniPoly([-1]), UniPoly([1, -1])],
    )
    if phi != chi:
        raise InternalCheckError(f"psi side {chi} and phi side {phi} disagree for m={list(m)}")
    logger.debug(f"Oracle chi for m={list(m)}: {chi} (exponents {exponents})")
    return MultiCharPoly(chi, "rank2_oracle", exponents=exponents)


# ---------------------------------------------------------------------------
# Shift scan for non-quasi-constant multiplicities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    k: int
    lhs: UniPoly
    rhs: UniPoly

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class ScanReport:
    multiplicity: Tuple[int, ...]
    h: int
    rows: Tuple[ScanRow, ...]

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows)


def conjecture19_scan(arrangement: Arrangement, m: Multiplicity, k_max: int, seed: int = 0) -> ScanReport:
    """Per k, chi(A, m + 2k + 2) against chi(A, m + 2k) shifted by h; reported, never asserted."""
    if k_max < 1:
        raise InputError("k_max must be positive")
    h = _coxeter_number(arrangement)
    rows = []
    for k in range(k_max + 1):
        lhs = rank2_char_poly_oracle(arrangement, m.shifted(2 * k + 2), seed).polynomial
        rhs = rank2_char_poly_oracle(arrangement, m.shifted(2 * k), seed).polynomial.compose_affine(1, -h)
        row = ScanRow(k, lhs, rhs)
        if not row.equal:
            logger.info(f"Shift differs at k={k} for m={list(m)}: {lhs} vs {rhs}")
        rows.append(row)
    return ScanReport(tuple(m), h, tuple(rows))
