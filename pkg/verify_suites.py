"""
Named verification suites. Each suite is a fixed list of cases; cases may run
on a thread pool but the report keeps the declared order.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

from coxma.algebra import UniPoly
from coxma.arrangement import (
    Arrangement,
    Multiplicity,
    build_coxeter,
    example18_arrangement,
    example18_multiplicity,
    subarrangement,
)
from coxma.charpoly import (
    conjecture19_scan,
    multi_char_poly,
    odd_constant_polynomials,
    rank2_char_poly_oracle,
)
from coxma.dermod import detect_exponents, isomorphism_shift_check, pairing_determinant
from coxma.errors import InputError, InternalCheckError
from coxma.lattice import char_poly
from coxma.primitive import invariant_chart, nabla_D_power, phi_k_basis, terao_basis
from report_models import CaseResult, VerificationReport

logger = logging.getLogger(__name__)

Case = Tuple[str, Callable[[], CaseResult]]


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _guarded(name: str, body: Callable[[], CaseResult]) -> CaseResult:
    try:
        return body()
    except InternalCheckError as e:
        logger.error(f"Case {name} failed an internal check: {e}")
        return CaseResult(case=name, status="fail", witness={"error": str(e)})


def _run(suite: str, cases: Sequence[Case], threads: int, informational: bool = False) -> VerificationReport:
    logger.info(f"Running suite {suite} with {len(cases)} cases on {threads} thread(s)")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _guarded(*c), cases))
    else:
        results = [_guarded(*c) for c in cases]
    ok = all(r.status == "pass" for r in results)
    return VerificationReport(suite=suite, cases=results, status=_status(ok), informational=informational)


def _coeffs(p: UniPoly) -> List[int]:
    return p.to_int_list()


# -- example18 -----------------------------------------------------------------

EXAMPLE18_CHI = [1, -4, 6, -3]


def _example18_cases(seed: int) -> List[Case]:
    arrangement = example18_arrangement()
    m = example18_multiplicity()
    h = arrangement.coxeter_spec.coxeter_number

    def base() -> CaseResult:
        chi = _coeffs(char_poly(subarrangement(arrangement, m)))
        return CaseResult(case="chi(A,m)", status=_status(chi == EXAMPLE18_CHI), witness={"chi": chi})

    def shifted(k: int, plus: bool) -> Callable[[], CaseResult]:
        def body() -> CaseResult:
            mt = m.shifted(2 * k) if plus else m.reflected(2 * k)
            got = multi_char_poly(arrangement, mt).polynomial
            pattern = [1, -4, 6, -3] if plus else [1, 4, 6, 3]
            expected = UniPoly.from_high_first(pattern).compose_affine(1, -k * h)
            return CaseResult(
                case=f"k={k} {'plus' if plus else 'minus'}",
                status=_status(got == expected),
                witness={"chi": _coeffs(got), "expected": _coeffs(expected)},
            )
        return body

    cases: List[Case] = [("chi(A,m)", base)]
    for k in (1, 2):
        for plus in (True, False):
            cases.append((f"k={k} {'plus' if plus else 'minus'}", shifted(k, plus)))
    return cases


# -- solomon-terao ---------------------------------------------------------------

TABLE_TYPES = [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)]


def _solomon_terao_cases(seed: int) -> List[Case]:
    cases: List[Case] = []
    for family, rank in TABLE_TYPES:
        def table(family=family, rank=rank) -> CaseResult:
            arrangement = build_coxeter(family, rank)
            chi = char_poly(arrangement)
            expected = UniPoly.from_roots(arrangement.coxeter_spec.classical_exponents)
            return CaseResult(
                case=f"{family}{rank} exponents",
                status=_status(chi == expected),
                witness={"chi": _coeffs(chi), "exponents": list(arrangement.coxeter_spec.classical_exponents)},
            )
        cases.append((f"{family}{rank} exponents", table))
    for family in ("A", "B"):
        def oracle(family=family) -> CaseResult:
            arrangement = build_coxeter(family, 2)
            ones = Multiplicity.constant(len(arrangement), 1)
            got = rank2_char_poly_oracle(arrangement, ones, seed).polynomial
            chi = char_poly(arrangement)
            return CaseResult(
                case=f"{family}2 oracle m=1",
                status=_status(got == chi),
                witness={"oracle": _coeffs(got), "chi": _coeffs(chi)},
            )
        cases.append((f"{family}2 oracle m=1", oracle))
    return cases


# -- theorem15-rank2 -------------------------------------------------------------

def _theorem15_cases(seed: int) -> List[Case]:
    cases: List[Case] = []
    for family in ("A", "B"):
        arrangement = build_coxeter(family, 2)
        for bits in product((0, 1), repeat=len(arrangement)):
            m = Multiplicity.of(bits)
            for k in (1, 2):
                for plus in (True, False):
                    name = f"{family}2 m={list(bits)} k={k} {'plus' if plus else 'minus'}"

                    def body(arrangement=arrangement, m=m, k=k, plus=plus, name=name) -> CaseResult:
                        mt = m.shifted(2 * k) if plus else m.reflected(2 * k)
                        engine = multi_char_poly(arrangement, mt).polynomial
                        oracle = rank2_char_poly_oracle(arrangement, mt, seed).polynomial
                        return CaseResult(
                            case=name,
                            status=_status(engine == oracle),
                            witness={"engine": _coeffs(engine), "oracle": _coeffs(oracle)},
                        )
                    cases.append((name, body))
    return cases


# -- corollary12 -----------------------------------------------------------------

# free {0,1}-multiplicities given by their supports, in build_coxeter hyperplane order
COROLLARY12_SUPPORTS: Dict[Tuple[str, int], List[Tuple[int, ...]]] = {
    ("A", 2): [(), (0,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)],
    ("A", 3): [(), (0, 1, 2, 3, 4, 5), (0,), (0, 1), (0, 1, 2), (0, 1, 3), (0, 1, 2, 3, 4)],
    ("B", 2): [(), (0,), (2,), (0, 1), (2, 3), (0, 2), (0, 1, 2), (0, 1, 2, 3)],
    ("B", 3): [(), tuple(range(9)), (0,), (0, 1, 2), (0, 1, 3, 4), (3, 4, 5, 6, 7, 8)],
}


def _corollary12_cases(seed: int) -> List[Case]:
    cases: List[Case] = []
    for (family, rank), supports in COROLLARY12_SUPPORTS.items():
        for support in supports:
            name = f"{family}{rank} support={list(support)}"

            def body(family=family, rank=rank, support=support, name=name) -> CaseResult:
                arrangement = build_coxeter(family, rank)
                h = arrangement.coxeter_spec.coxeter_number
                m = Multiplicity.from_support(len(arrangement), support)
                base = detect_exponents(arrangement, m, seed)
                if base is None:
                    return CaseResult(case=name, status="fail", witness={"error": "base multiplicity not certified free"})
                plus = detect_exponents(arrangement, m.shifted(2), seed)
                minus = detect_exponents(arrangement, m.reflected(2), seed)
                want_plus = sorted(h + e for e in base.values)
                want_minus = sorted(h - e for e in base.values)
                got_plus = list(plus.values) if plus else None
                got_minus = list(minus.values) if minus else None
                return CaseResult(
                    case=name,
                    status=_status(got_plus == want_plus and got_minus == want_minus),
                    witness={
                        "base": list(base.values),
                        "plus": got_plus,
                        "minus": got_minus,
                        "certificates": [
                            plus.certificate.describe() if plus else None,
                            minus.certificate.describe() if minus else None,
                        ],
                    },
                )
            cases.append((name, body))
    return cases


# -- lemma8 / theorem6 -------------------------------------------------------------

CHARTS = ("A2", "B2")


def _lemma8_cases(seed: int) -> List[Case]:
    cases: List[Case] = []
    for chart_type in CHARTS:
        for k in (1, 2, 3):
            name = f"{chart_type} k={k}"

            def body(chart_type=chart_type, k=k, name=name) -> CaseResult:
                chart = invariant_chart(chart_type)
                omega = nabla_D_power(chart, k)
                orders = [omega.pole_order(f) for f in chart.forms]
                ok = all(o == 2 * k - 1 for o in orders)
                return CaseResult(case=name, status=_status(ok), witness={"pole_orders": orders, "degree": omega.degree})
            cases.append((name, body))
    return cases


def _theorem6_cases(seed: int) -> List[Case]:
    cases: List[Case] = []
    for chart_type in CHARTS:
        for mbar in range(1, 6):
            name = f"{chart_type} m={mbar}"

            def body(chart_type=chart_type, mbar=mbar, name=name) -> CaseResult:
                basis = terao_basis(invariant_chart(chart_type), mbar)
                return CaseResult(
                    case=name,
                    status=_status(basis.certificate.ok),
                    witness={"certificate": basis.certificate.describe("form")},
                )
            cases.append((name, body))
    return cases


# -- theorem10 / duality-pairing ---------------------------------------------------

def _transport_multiplicities(size: int) -> List[Tuple[str, Multiplicity]]:
    return [
        ("m=0", Multiplicity.constant(size, 0)),
        ("m=[x]", Multiplicity.indicator(size, 0)),
        ("m=1", Multiplicity.constant(size, 1)),
    ]


def _theorem10_cases(seed: int) -> List[Case]:
    cases: List[Case] = []
    chart = invariant_chart("B2")
    for label, m in _transport_multiplicities(len(chart.arrangement)):
        for k in (1, 2):
            name = f"B2 {label} k={k}"

            def body(m=m, k=k, name=name) -> CaseResult:
                base = detect_exponents(chart.arrangement, m, seed)
                if base is None:
                    return CaseResult(case=name, status="fail", witness={"error": "D(A,m) not certified free"})
                images, certificate = phi_k_basis(chart, base.basis, m, k)
                shift = k * chart.coxeter_number
                degrees = [w.degree for w in images]
                expected = [e - shift for e in base.values]
                return CaseResult(
                    case=name,
                    status=_status(certificate.ok and degrees == expected),
                    witness={"degrees": degrees, "expected": expected, "certificate": certificate.describe("form")},
                )
            cases.append((name, body))
    return cases


def _duality_cases(seed: int) -> List[Case]:
    cases: List[Case] = []
    chart = invariant_chart("B2")
    arrangement = chart.arrangement
    for label, m in _transport_multiplicities(len(arrangement)):
        for k in (1, 2):
            name = f"B2 {label} k={k}"

            def body(m=m, k=k, name=name) -> CaseResult:
                shift = k * chart.coxeter_number
                base = detect_exponents(arrangement, m, seed)
                minus = detect_exponents(arrangement, m.reflected(2 * k), seed)
                plus = detect_exponents(arrangement, m.shifted(2 * k), seed)
                if base is None or minus is None or plus is None:
                    return CaseResult(case=name, status="fail", witness={"error": "exponents not certified"})
                images, form_certificate = phi_k_basis(chart, base.basis, m, k)
                det = pairing_determinant(minus.basis, images)
                constant = det.is_polynomial() and det.to_poly().is_constant() and not det.is_zero()
                product_ok = constant and det.to_poly().constant_value() == (
                    minus.certificate.constant * form_certificate.constant
                )
                reflect_ok = (
                    list(minus.values) == sorted(shift - e for e in base.values)
                    and list(plus.values) == sorted(shift + e for e in base.values)
                )
                return CaseResult(
                    case=name,
                    status=_status(form_certificate.ok and constant and product_ok and reflect_ok),
                    witness={
                        "pairing_det": str(det),
                        "minus_exponents": list(minus.values),
                        "plus_exponents": list(plus.values),
                    },
                )
            cases.append((name, body))
    return cases


# -- odd-constant ----------------------------------------------------------------

def _odd_constant_cases(seed: int) -> List[Case]:
    cases: List[Case] = []
    for family, rank in TABLE_TYPES:
        for value in (1, 3, 5):
            name = f"{family}{rank} m={value}"

            def body(family=family, rank=rank, value=value, name=name) -> CaseResult:
                canonical, alternate = odd_constant_polynomials(build_coxeter(family, rank), value)
                return CaseResult(
                    case=name,
                    status=_status(canonical == alternate),
                    witness={"canonical": _coeffs(canonical), "alternate": _coeffs(alternate)},
                )
            cases.append((name, body))
    return cases


# -- conjecture19 ----------------------------------------------------------------

def _conjecture19_cases(seed: int) -> List[Case]:
    inputs = [
        ("A2 m=1", "A", [1, 1, 1]),
        ("B2 m=(3,1,1,1)", "B", [3, 1, 1, 1]),
        ("B2 m=0", "B", [0, 0, 0, 0]),
    ]
    cases: List[Case] = []
    for name, family, values in inputs:
        def body(name=name, family=family, values=values) -> CaseResult:
            report = conjecture19_scan(build_coxeter(family, 2), Multiplicity.of(values), 2, seed)
            rows = [
                {"k": r.k, "equal": r.equal, "lhs": _coeffs(r.lhs), "rhs": _coeffs(r.rhs)}
                for r in report.rows
            ]
            return CaseResult(case=name, status=_status(report.all_equal), witness={"rows": rows})
        cases.append((name, body))
    return cases


# -- isomorphism-shift -------------------------------------------------------------

def _isomorphism_shift_cases(seed: int) -> List[Case]:
    inputs = [
        ("A2 m=1", lambda: (build_coxeter("A", 2), Multiplicity.constant(3, 1)), 6),
        ("B2 m=[x]", lambda: (build_coxeter("B", 2), Multiplicity.indicator(4, 0)), 7),
        ("A3 example18", lambda: (example18_arrangement(), example18_multiplicity()), 6),
    ]
    cases: List[Case] = []
    for name, make, d_max in inputs:
        def body(name=name, make=make, d_max=d_max) -> CaseResult:
            arrangement, m = make()
            report = isomorphism_shift_check(arrangement, m, 1, d_max)
            rows = [{"d": r.degree, "plus": list(r.plus), "minus": list(r.minus)} for r in report.rows]
            return CaseResult(case=name, status=_status(report.ok), witness={"rows": rows})
        cases.append((name, body))
    return cases


SUITES: Dict[str, Callable[[int], List[Case]]] = {
    "example18": _example18_cases,
    "solomon-terao": _solomon_terao_cases,
    "theorem15-rank2": _theorem15_cases,
    "corollary12": _corollary12_cases,
    "lemma8": _lemma8_cases,
    "theorem6": _theorem6_cases,
    "theorem10": _theorem10_cases,
    "duality-pairing": _duality_cases,
    "odd-constant": _odd_constant_cases,
    "conjecture19": _conjecture19_cases,
    "isomorphism-shift": _isomorphism_shift_cases,
}

INFORMATIONAL = {"conjecture19"}


def run_suite(name: str, threads: int = 1, seed: int = 0) -> VerificationReport:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    return _run(name, SUITES[name](seed), threads, informational=name in INFORMATIONAL)
