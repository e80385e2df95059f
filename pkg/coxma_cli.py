#!/usr/bin/env python3
"""
coxma: characteristic polynomials and structure checks for Coxeter
multiarrangements.

    python coxma_cli.py build --type B2
    python coxma_cli.py charpoly --type A2
    python coxma_cli.py multicharpoly --arr data/example18.json --mult "[3,3,3,2,2,3]"
    python coxma_cli.py exponents --type B2 --mult const:2
    python coxma_cli.py saito --type B2 --mult const:1 --theta "x,y" --theta "x^3,y^3"
    python coxma_cli.py primitive --type B2 --k 2 --show form
    python coxma_cli.py verify lemma8 --json
"""

import argparse
import json
import logging
import re
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel

from coxma.arrangement import (
    Arrangement,
    Multiplicity,
    build_coxeter,
    check_multiplicity,
    dump_arrangement,
    example18_arrangement,
    example18_multiplicity,
    load_arrangement,
    parse_arrangement,
    save_arrangement,
)
from coxma.charpoly import multi_char_poly, rank2_char_poly_oracle
from coxma.config import Settings, configure_logging, load_settings
from coxma.dermod import Derivation, detect_exponents, fit_exponents, hilbert_function, saito_check
from coxma.errors import ArrangementError, CoxmaError, InputError, InternalCheckError
from coxma.lattice import char_poly, intersection_lattice
from coxma.primitive import (
    invariant_chart,
    nabla_D_power,
    phi_k_basis,
    terao_basis,
)
from report_models import (
    CharPolyResponse,
    Decomposition,
    ErrorResponse,
    ExponentsResponse,
    LatticeFlat,
    MultiCharPolyResponse,
    PolePrint,
    PrimitiveResponse,
    SaitoResponse,
)
from verify_suites import SUITES, run_suite

logger = logging.getLogger("coxma.cli")

TYPE_PATTERN = re.compile(r"^\s*([A-Za-z]+)\s*(\d+)\s*$")


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def parse_type(text: str) -> Tuple[str, int]:
    match = TYPE_PATTERN.match(text)
    if not match:
        raise InputError(f"cannot read Coxeter type {text!r}; expected something like A3 or B2")
    return match.group(1).upper(), int(match.group(2))


def resolve_arrangement(args) -> Tuple[Arrangement, Optional[Multiplicity]]:
    """--type / --realization or --arr, with the file's own multiplicity if it has one."""
    if getattr(args, "arr", None):
        return load_arrangement(args.arr)
    if not getattr(args, "type", None):
        raise InputError("give an arrangement with --type or --arr")
    family, rank = parse_type(args.type)
    if getattr(args, "realization", None) == "example18":
        if (family, rank) != ("A", 3):
            raise InputError("the example18 realization exists for type A3 only")
        return example18_arrangement(), None
    return build_coxeter(family, rank), None


def parse_multiplicity(spec: Optional[str], arrangement: Arrangement, default: Optional[Multiplicity]) -> Multiplicity:
    """const:K, an inline JSON list, or a file holding a list or an arrangement file."""
    if spec is None:
        m = default or Multiplicity.constant(len(arrangement), 1)
    elif spec.startswith("const:"):
        try:
            value = int(spec[len("const:"):])
        except ValueError as e:
            raise ArrangementError(f"bad constant multiplicity {spec!r}") from e
        m = Multiplicity.constant(len(arrangement), value)
    elif spec.lstrip().startswith("["):
        m = _multiplicity_from_json(spec)
    else:
        path = Path(spec)
        try:
            text = path.read_text()
        except OSError as e:
            raise ArrangementError(f"cannot read multiplicity file {spec}: {e}") from e
        if text.lstrip().startswith("["):
            m = _multiplicity_from_json(text)
        else:
            _, m = parse_arrangement(text)
            if m is None:
                raise ArrangementError(f"{spec} carries no multiplicities")
    check_multiplicity(arrangement, m)
    return m


def _multiplicity_from_json(text: str) -> Multiplicity:
    try:
        values = json.loads(text)
    except json.JSONDecodeError as e:
        raise ArrangementError(f"multiplicity is not valid JSON: {e}") from e
    if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise ArrangementError("multiplicity must be a JSON list of integers")
    return Multiplicity.of(values)


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def emit(model: BaseModel, args, started: float, human: List[str]) -> None:
    if args.timing and hasattr(model, "elapsed"):
        model.elapsed = round(time.perf_counter() - started, 6)
    if args.json:
        print(model.model_dump_json(exclude_none=True))
        return
    for line in human:
        print(line)
    if args.timing:
        print(f"elapsed: {time.perf_counter() - started:.3f}s")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_build(args, settings: Settings) -> int:
    arrangement, m = resolve_arrangement(args)
    if args.mult is not None:
        m = parse_multiplicity(args.mult, arrangement, m)
    elif args.realization == "example18":
        m = example18_multiplicity()
    text = dump_arrangement(arrangement, m)
    if args.out:
        save_arrangement(args.out, arrangement, m)
        logger.info(f"Wrote {len(arrangement)} hyperplanes to {args.out}")
    else:
        print(text)
    return 0


def cmd_charpoly(args, settings: Settings) -> int:
    started = time.perf_counter()
    arrangement, _ = resolve_arrangement(args)
    chi = char_poly(arrangement)
    flats = None
    if args.lattice:
        flats = [LatticeFlat(**record) for record in intersection_lattice(arrangement).to_records()]
    response = CharPolyResponse(chi=chi.to_int_list(), polynomial=chi.to_string("t"), lattice=flats)
    human = [f"chi(t) = {response.polynomial}", f"coefficients: {response.chi}"]
    if flats:
        human += [f"  codim {f.codim} mu={f.mobius} hyperplanes={f.hyperplanes}" for f in flats]
    emit(response, args, started, human)
    return 0


def cmd_multicharpoly(args, settings: Settings) -> int:
    started = time.perf_counter()
    arrangement, file_m = resolve_arrangement(args)
    mt = parse_multiplicity(args.mult, arrangement, file_m)
    if args.oracle:
        result = rank2_char_poly_oracle(arrangement, mt, settings.seed)
        response = MultiCharPolyResponse(chi=result.coefficients(), polynomial=str(result), provenance=result.provenance)
    else:
        result = multi_char_poly(arrangement, mt)
        decomposition = result.decomposition
        alternate_checked = False
        if decomposition.alternate is not None:
            other = multi_char_poly(arrangement, mt, decomposition.alternate)
            if other.polynomial != result.polynomial:
                raise InternalCheckError(f"alternate decomposition gives {other}, canonical gives {result}")
            alternate_checked = True
        response = MultiCharPolyResponse(
            chi=result.coefficients(),
            polynomial=str(result),
            provenance=result.provenance,
            decomposition=Decomposition(k=decomposition.k, sign=decomposition.sign.value, m=list(decomposition.m)),
            alternate_checked=alternate_checked,
        )
    human = [f"chi(t) = {response.polynomial}", f"coefficients: {response.chi}"]
    if response.decomposition:
        d = response.decomposition
        human.append(f"decomposition: k={d.k} {d.sign} m={d.m}")
    emit(response, args, started, human)
    return 0


def cmd_exponents(args, settings: Settings) -> int:
    started = time.perf_counter()
    arrangement, file_m = resolve_arrangement(args)
    m = parse_multiplicity(args.mult, arrangement, file_m)
    found = detect_exponents(arrangement, m, settings.seed, settings.max_degree)
    if settings.max_degree is not None:
        hilbert = hilbert_function(arrangement, m, "derivation", settings.max_degree)
    elif found is not None:
        hilbert = found.hilbert
    else:
        hilbert = fit_exponents(arrangement, m)[1]
    response = ExponentsResponse(
        free=found is not None,
        exponents=list(found.values) if found else [],
        hilbert={str(d): v for d, v in sorted(hilbert.items())},
        certificate=found.certificate.describe() if found else None,
        basis=[theta.to_strings() for theta in found.basis] if found and args.basis else [],
    )
    human = [f"free: {response.free}"]
    if found:
        human += [f"exponents: {response.exponents}", f"certificate: det = {response.certificate}"]
    human.append("hilbert: " + ", ".join(f"{d}:{v}" for d, v in response.hilbert.items()))
    emit(response, args, started, human)
    return 0


def cmd_saito(args, settings: Settings) -> int:
    started = time.perf_counter()
    arrangement, file_m = resolve_arrangement(args)
    m = parse_multiplicity(args.mult, arrangement, file_m)
    thetas = [Derivation.parse(text, arrangement.ambient_dim) for text in args.theta or []]
    certificate = saito_check(arrangement, m, thetas)
    response = SaitoResponse(
        ok=certificate.ok,
        determinant=certificate.determinant,
        certificate=certificate.describe() if certificate.ok else None,
        reason=certificate.reason or None,
    )
    human = [f"basis: {response.ok}", f"determinant: {response.determinant or '-'}"]
    human.append(f"certificate: {response.certificate}" if response.ok else f"reason: {response.reason}")
    emit(response, args, started, human)
    return 0


def cmd_primitive(args, settings: Settings) -> int:
    started = time.perf_counter()
    if args.k < 0:
        raise InputError(f"--k must be nonnegative, got {args.k}")
    if args.check == "theorem10" and args.k < 1:
        raise InputError(f"--check theorem10 needs --k >= 1, got {args.k}")
    chart = invariant_chart(args.type)
    names = chart.variables
    response = PrimitiveResponse(chart=chart.chart_type, k=args.k, show=args.show, check=args.check)
    human: List[str] = []
    if args.show == "form" or args.check == "lemma8" or not (args.show or args.check):
        try:
            omega = nabla_D_power(chart, args.k)
        except InternalCheckError as e:
            response.passed = False
            response.details.append(str(e))
            omega = None
        if omega is not None:
            response.form = omega.to_strings(names)
            response.pole_orders = [PolePrint(hyperplane=f.to_poly().to_string(names), order=omega.pole_order(f)) for f in chart.forms]
            response.degree = omega.degree
            if args.check == "lemma8" and args.k >= 1:
                response.passed = all(p.order == 2 * args.k - 1 for p in response.pole_orders)
            human.append(f"nabla_D^{args.k} dP1 = ({response.form[0]}) d{names[0]} + ({response.form[1]}) d{names[1]}")
            human += [f"  pole order along {p.hyperplane}: {p.order}" for p in response.pole_orders]
            human.append(f"  degree: {response.degree}")
    if args.check == "theorem6":
        for mbar in (2 * args.k, 2 * args.k + 1):
            try:
                basis = terao_basis(chart, mbar)
                response.details.append(f"m={mbar}: det = {basis.certificate.describe('form')}")
            except InternalCheckError as e:
                response.passed = False
                response.details.append(f"m={mbar}: {e}")
    elif args.check == "theorem10":
        m = parse_multiplicity(args.mult, chart.arrangement, None)
        base = detect_exponents(chart.arrangement, m, settings.seed)
        if base is None:
            response.passed = False
            response.details.append(f"D(A,m) is not certified free for m={list(m)}")
        else:
            images, certificate = phi_k_basis(chart, base.basis, m, args.k)
            response.passed = certificate.ok
            for delta, omega in zip(base.basis, images):
                response.details.append(f"deg {delta.degree} -> deg {omega.degree}")
            response.details.append(f"Omega1(A,2k-m) certificate: {certificate.describe('form')}")
    human += response.details
    if args.check:
        human.append(f"{args.check}: {'pass' if response.passed else 'FAIL'}")
    emit(response, args, started, human)
    if args.check and not response.passed:
        return InternalCheckError.exit_code
    return 0


def cmd_verify(args, settings: Settings) -> int:
    started = time.perf_counter()
    report = run_suite(args.suite, settings.threads, settings.seed)
    human = [f"suite {report.suite}: {report.status}"]
    for case in report.cases:
        marker = "pass" if case.status == "pass" else ("DIFF" if report.informational else "FAIL")
        human.append(f"  {marker}  {case.case}")
    if report.informational and report.status != "pass":
        human.append("  differences above are reported only; the statement is not a theorem")
    emit(report, args, started, human)
    if report.status == "pass" or report.informational:
        return 0
    return InternalCheckError.exit_code


COMMANDS = {
    "build": cmd_build,
    "charpoly": cmd_charpoly,
    "multicharpoly": cmd_multicharpoly,
    "exponents": cmd_exponents,
    "saito": cmd_saito,
    "primitive": cmd_primitive,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for certification retries")
    common.add_argument("--max-degree", type=int, default=argparse.SUPPRESS, dest="max_degree")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--log-level", default=argparse.SUPPRESS, dest="log_level")

    parser = argparse.ArgumentParser(prog="coxma", description=__doc__.strip().splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_source(p):
        p.add_argument("--type", help="Coxeter type such as A3, B2, D4")
        p.add_argument("--arr", help="arrangement JSON file")
        return p

    p = with_source(sub.add_parser("build", parents=[common], help="print a Coxeter arrangement as JSON"))
    p.add_argument("--realization", choices=["standard", "example18"], default="standard")
    p.add_argument("--mult")
    p.add_argument("--out")

    p = with_source(sub.add_parser("charpoly", parents=[common], help="Moebius characteristic polynomial"))
    p.add_argument("--realization", choices=["standard", "example18"], default="standard")
    p.add_argument("--lattice", action="store_true", help="include the flats and Moebius values")

    p = with_source(sub.add_parser("multicharpoly", parents=[common], help="chi((A,m),t)"))
    p.add_argument("--realization", choices=["standard", "example18"], default="standard")
    p.add_argument("--mult")
    p.add_argument("--oracle", action="store_true", help="use the rank-2 Hilbert series oracle")

    p = with_source(sub.add_parser("exponents", parents=[common], help="brute-force exponents of D(A,m)"))
    p.add_argument("--realization", choices=["standard", "example18"], default="standard")
    p.add_argument("--mult")
    p.add_argument("--basis", action="store_true", help="include the certified basis")

    p = with_source(sub.add_parser("saito", parents=[common], help="Saito criterion for given derivations"))
    p.add_argument("--realization", choices=["standard", "example18"], default="standard")
    p.add_argument("--mult")
    p.add_argument("--theta", action="append", help="comma separated coefficients, repeat once per derivation")

    p = sub.add_parser("primitive", parents=[common], help="rank-2 primitive derivation computations")
    p.add_argument("--type", required=True, choices=["A2", "B2", "a2", "b2"])
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--show", choices=["form"])
    p.add_argument("--check", choices=["lemma8", "theorem6", "theorem10"])
    p.add_argument("--mult")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    return parser


def resolve_settings(args) -> Settings:
    settings = load_settings()
    overrides = {}
    for name in ("seed", "max_degree", "threads", "log_level"):
        if hasattr(args, name):
            overrides[name] = getattr(args, name)
    if "threads" in overrides:
        overrides["threads"] = max(1, overrides["threads"])
    if "log_level" in overrides:
        overrides["log_level"] = overrides["log_level"].upper()
    return replace(settings, **overrides)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.timing = getattr(args, "timing", False)
    settings = resolve_settings(args)
    configure_logging(settings)
    try:
        return COMMANDS[args.command](args, settings)
    except CoxmaError as e:
        logger.error(f"{type(e).__name__}: {e}")
        if args.json:
            print(ErrorResponse(error=type(e).__name__, details=str(e), exit_code=e.exit_code).model_dump_json())
        else:
            print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
