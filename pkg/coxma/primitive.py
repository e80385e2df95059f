"""
Rank-2 invariant charts, the primitive derivation D = d/dP2, the flat
connection on forms, the iterated forms nabla_D^k dP1, Terao bases of the
constant multiplicities and the transport map phi_k.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from coxma.algebra import FactoredRationalFunction, LinearForm, MultiPoly, factor_over_forms, poly_det
from coxma.arrangement import Arrangement, Hyperplane, Multiplicity, coxeter_spec
from coxma.coxeter_facts import CoxeterFacts, default_facts
from coxma.dermod import (
    Derivation,
    LogForm1,
    LogForm2,
    SaitoCertificate,
    derivation_in_module,
    form_in_module,
    saito_check_forms,
)
from coxma.errors import InputError, InternalCheckError, MembershipError

logger = logging.getLogger(__name__)

FRF = FactoredRationalFunction


@dataclass(frozen=True)
class InvariantChart:
    chart_type: str
    variables: Tuple[str, ...]
    arrangement: Arrangement
    p1: MultiPoly
    p2: MultiPoly

    @property
    def coxeter_number(self) -> int:
        return self.arrangement.coxeter_spec.coxeter_number

    @property
    def forms(self) -> List[LinearForm]:
        return self.arrangement.forms

    def jacobian(self) -> List[List[MultiPoly]]:
        """Row i holds the gradient of P_(i+1)."""
        return [[p.partial(j) for j in range(2)] for p in (self.p1, self.p2)]

    def jacobian_det(self) -> MultiPoly:
        return poly_det(self.jacobian())

    def ones(self) -> Multiplicity:
        return Multiplicity.constant(len(self.arrangement), 1)


def _linear_coefficients(poly: MultiPoly) -> List[int]:
    if not poly.is_homogeneous() or poly.degree() != 1:
        raise InternalCheckError(f"chart form {poly} is not linear")
    coeffs = []
    for i in range(poly.nvars):
        c = poly.coefficient(tuple(1 if j == i else 0 for j in range(poly.nvars)))
        if c.denominator != 1:
            raise InternalCheckError(f"chart form {poly} has non-integer coefficients")
        coeffs.append(c.numerator)
    return coeffs


@lru_cache(maxsize=None)
def _cached_chart(chart_type: str) -> InvariantChart:
    return _build_chart(chart_type, default_facts())


def invariant_chart(chart_type: str, facts: Optional[CoxeterFacts] = None) -> InvariantChart:
    chart_type = chart_type.strip().upper()
    if facts is None:
        return _cached_chart(chart_type)
    return _build_chart(chart_type, facts)


def _build_chart(chart_type: str, facts: CoxeterFacts) -> InvariantChart:
    record = facts.chart_record(chart_type)
    names = tuple(record["variables"])
    spec = coxeter_spec(record["family"], 2, facts)
    forms = [_linear_coefficients(MultiPoly.parse(f, 2, names)) for f in record["forms"]]
    arrangement = Arrangement.from_forms(2, forms, spec)
    chart = InvariantChart(
        chart_type=chart_type,
        variables=names,
        arrangement=arrangement,
        p1=MultiPoly.parse(record["p1"], 2, names),
        p2=MultiPoly.parse(record["p2"], 2, names),
    )
    if (chart.p1.degree(), chart.p2.degree()) != (2, spec.coxeter_number):
        raise InternalCheckError(f"{chart_type}: invariant degrees {chart.p1.degree()}, {chart.p2.degree()}")
    det = chart.jacobian_det()
    if det.is_zero():
        raise InternalCheckError(f"{chart_type}: basic invariants are dependent")
    _, exponents = factor_over_forms(det, chart.forms)
    if any(exponents.get(f, 0) != 1 for f in chart.forms):
        raise InternalCheckError(f"{chart_type}: Jacobian {det} is not a multiple of Q(A,1)")
    logger.debug(f"Chart {chart_type}: P1={chart.p1.to_string(names)}, P2={chart.p2.to_string(names)}")
    return chart


@dataclass(frozen=True)
class RationalVectorField:
    coefficients: Tuple[FRF, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(g.normalize() for g in self.coefficients))

    @classmethod
    def of(cls, coefficients: Iterable[Union[FRF, MultiPoly]]) -> "RationalVectorField":
        return cls(tuple(g if isinstance(g, FRF) else FRF(g) for g in coefficients))

    @classmethod
    def from_derivation(cls, delta: Derivation) -> "RationalVectorField":
        return cls.of(delta.coefficients)

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def apply(self, f: Union[FRF, MultiPoly]) -> FRF:
        if isinstance(f, MultiPoly):
            f = FRF(f)
        result = FRF.zero(self.nvars)
        for i, g in enumerate(self.coefficients):
            if not g.is_zero():
                result = result + g * f.partial(i)
        return result

    def scale(self, factor: Union[FRF, MultiPoly, int]) -> "RationalVectorField":
        return RationalVectorField(tuple(g * factor for g in self.coefficients))

    def to_strings(self, names: Optional[Sequence[str]] = None) -> List[str]:
        return [g.to_string(names) for g in self.coefficients]


Field = Union[RationalVectorField, Derivation]
Form = Union[LogForm1, LogForm2, FRF, MultiPoly]


def _as_field(delta: Field) -> RationalVectorField:
    return delta if isinstance(delta, RationalVectorField) else RationalVectorField.from_derivation(delta)


def nabla(delta: Field, omega: Form):
    """Coefficient-wise action of delta in the fixed linear coordinates."""
    field = _as_field(delta)
    if isinstance(omega, LogForm1):
        return LogForm1(tuple(field.apply(g) for g in omega.coefficients))
    if isinstance(omega, LogForm2):
        return LogForm2.of(omega.nvars, {key: field.apply(g) for key, g in omega.coefficients})
    return field.apply(omega)


def coordinate_vector_fields(chart: InvariantChart) -> Tuple[RationalVectorField, RationalVectorField]:
    """d/dP1 and d/dP2 from the inverse of the invariant Jacobian."""
    (j00, j01), (j10, j11) = chart.jacobian()
    inverse = FRF.reciprocal(chart.jacobian_det(), chart.forms)
    d_p1 = RationalVectorField.of([inverse * j11, inverse * (-j10)])
    d_p2 = RationalVectorField.of([inverse * (-j01), inverse * j00])
    return d_p1, d_p2


def primitive_derivation(chart: InvariantChart) -> RationalVectorField:
    d = coordinate_vector_fields(chart)[1]
    if d.apply(chart.p1) != 0 or d.apply(chart.p2) != 1:
        raise InternalCheckError(f"{chart.chart_type}: D(P1), D(P2) = {d.apply(chart.p1)}, {d.apply(chart.p2)}")
    return d


def _check_supported(chart: InvariantChart, omega: LogForm1) -> None:
    allowed = set(chart.forms)
    for g in omega.coefficients:
        for form, _ in g.denominator:
            if form not in allowed:
                raise InternalCheckError(f"pole along {form}, which is not a hyperplane of {chart.chart_type}")


def pole_order(omega: Union[LogForm1, LogForm2], hyperplane: Union[Hyperplane, LinearForm]) -> int:
    form = hyperplane.normal if isinstance(hyperplane, Hyperplane) else hyperplane
    return omega.pole_order(form)


@lru_cache(maxsize=None)
def nabla_D_power(chart: InvariantChart, k: int) -> LogForm1:
    """nabla_D^k dP1, with the exact pole order 2k-1 and degree 1-kh asserted for k >= 1."""
    if k < 0:
        raise InputError("k must be nonnegative")
    if k == 0:
        return LogForm1.differential(chart.p1)
    omega = nabla(primitive_derivation(chart), nabla_D_power(chart, k - 1))
    _check_supported(chart, omega)
    for form in chart.forms:
        order = omega.pole_order(form)
        if order != 2 * k - 1:
            raise InternalCheckError(f"pole order {order} along {form} for k={k}, expected {2 * k - 1}")
    expected = 1 - k * chart.coxeter_number
    if omega.degree != expected:
        raise InternalCheckError(f"degree {omega.degree} for k={k}, expected {expected}")
    return omega


@dataclass(frozen=True)
class TeraoBasis:
    multiplicity: int
    forms: Tuple[LogForm1, ...]
    certificate: SaitoCertificate


def terao_basis(chart: InvariantChart, mbar: int) -> TeraoBasis:
    """Basis of Omega1(A, mbar) for a constant multiplicity."""
    if mbar < 0:
        raise InputError("multiplicity must be nonnegative")
    k, odd = divmod(mbar, 2)
    base = nabla_D_power(chart, k)
    if odd:
        fields = coordinate_vector_fields(chart)
    else:
        fields = tuple(RationalVectorField.from_derivation(Derivation.coordinate(2, i)) for i in range(2))
    forms = tuple(nabla(f, base) for f in fields)
    m = Multiplicity.constant(len(chart.arrangement), mbar)
    certificate = saito_check_forms(chart.arrangement, m, forms)
    if not certificate:
        raise InternalCheckError(f"{chart.chart_type}: Terao basis for m={mbar} fails: {certificate.reason}")
    return TeraoBasis(mbar, forms, certificate)


def phi_k(chart: InvariantChart, delta: Derivation, m: Multiplicity, k: int) -> LogForm1:
    """nabla_delta nabla_D^k dP1, a member of Omega1(A, 2k - m) of degree deg(delta) - kh."""
    if k < 1:
        raise InputError("k must be positive")
    if not m.is_zero_one():
        raise MembershipError("phi_k needs a {0,1}-valued multiplicity")
    if not derivation_in_module(chart.arrangement, m, delta):
        raise MembershipError(f"derivation {delta} is not in D(A,m) for m={list(m)}")
    image = nabla(delta, nabla_D_power(chart, k))
    target = m.reflected(2 * k)
    if not form_in_module(chart.arrangement, target, image):
        raise InternalCheckError(f"phi_{k}({delta}) is not in Omega1(A, {list(target)})")
    if not image.is_zero():
        expected = delta.degree - k * chart.coxeter_number
        if image.degree != expected:
            raise InternalCheckError(f"phi_{k}({delta}) has degree {image.degree}, expected {expected}")
    return image


def phi_k_basis(
    chart: InvariantChart, basis: Sequence[Derivation], m: Multiplicity, k: int
) -> Tuple[Tuple[LogForm1, ...], SaitoCertificate]:
    """Images of a basis of D(A,m), certified against Omega1(A, 2k - m)."""
    images = tuple(phi_k(chart, delta, m, k) for delta in basis)
    return images, saito_check_forms(chart.arrangement, m.reflected(2 * k), images)
