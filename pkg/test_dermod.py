#!/usr/bin/env python3
"""
Test script for logarithmic derivations and forms
Membership, graded dimensions, exponent detection, Saito certificates, duality
"""

import os
import random
import sys
from itertools import product

# Add the current directory to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from coxma.algebra import FactoredRationalFunction, LinearForm, MultiPoly, poly_det
from coxma.arrangement import (
    Arrangement,
    Multiplicity,
    build_coxeter,
    defining_poly,
    example18_arrangement,
    example18_multiplicity,
    subarrangement,
)
from coxma.dermod import (
    Derivation,
    LogForm1,
    derivation_in_module,
    derivation_space_dim,
    detect_exponents,
    form_in_module,
    form_space_dim,
    free_hilbert_value,
    hilbert_function,
    isomorphism_shift_check,
    pairing,
    pairing_determinant,
    saito_check,
    saito_check_forms,
    subarrangement_exponents_agree,
)
from coxma.errors import InputError, NotHomogeneousError, PolynomialParseError

FX, FY = LinearForm([1, 0]), LinearForm([0, 1])
COORDINATE_LINES = Arrangement.from_forms(2, [[1, 0], [0, 1]])


def _inverse(form: LinearForm) -> FactoredRationalFunction:
    return FactoredRationalFunction(MultiPoly.one(form.nvars), {form: 1})


def test_derivations():
    """Parsing, homogeneity and membership of derivations."""
    print("🧭 Testing derivations...")

    b2 = build_coxeter("B", 2)
    ones = Multiplicity.constant(4, 1)
    assert derivation_in_module(b2, ones, Derivation.euler(2))
    assert derivation_in_module(b2, ones, Derivation.parse("x^3, y^3", 2))
    assert not derivation_in_module(b2, ones, Derivation.parse("y, x", 2))
    assert not derivation_in_module(b2, Multiplicity.constant(4, 2), Derivation.euler(2))
    assert Derivation.parse("x^3, y^3", 2).degree == 3

    try:
        Derivation.parse("x, y^2", 2)
        raise AssertionError("mixed degrees are rejected")
    except NotHomogeneousError:
        pass
    try:
        Derivation.parse("x, y, x", 2)
        raise AssertionError("wrong coefficient count is rejected")
    except PolynomialParseError:
        pass
    print("   ✅ Derivations correct")


def test_graded_dimensions():
    """Graded pieces of free modules follow the free Hilbert pattern."""
    print("\n📏 Testing graded dimensions...")

    cases = [
        (build_coxeter("B", 2), Multiplicity.constant(4, 1), [1, 3], 5),
        (build_coxeter("A", 2), Multiplicity.constant(3, 1), [1, 2], 5),
        (build_coxeter("A", 3), Multiplicity.constant(6, 1), [1, 2, 3], 4),
        (build_coxeter("B", 2), Multiplicity.constant(4, 2), [4, 4], 6),
    ]
    for arrangement, m, exponents, top in cases:
        for d in range(top + 1):
            dim = derivation_space_dim(arrangement, m, d)
            assert dim == free_hilbert_value(exponents, arrangement.ambient_dim, d), (exponents, d, dim)
        print(f"   exponents {exponents}: dims match up to degree {top}")

    b2 = build_coxeter("B", 2)
    for d in range(-4, 2):
        # dual exponents of B2 with m = 1 are -3 and -1
        assert form_space_dim(b2, Multiplicity.constant(4, 1), d) == free_hilbert_value([-3, -1], 2, d), d
    assert form_space_dim(b2, Multiplicity.constant(4, 1), -1) == 4

    table = hilbert_function(b2, Multiplicity.constant(4, 1), "derivation", 3)
    assert table == {0: 0, 1: 1, 2: 2, 3: 4}
    try:
        hilbert_function(b2, Multiplicity.constant(4, 1), "bivector", 3)
        raise AssertionError("unknown side is rejected")
    except InputError as e:
        assert e.exit_code == 2
    print("   ✅ Graded dimensions correct")


def test_saito_criterion():
    """Certificates for bases and reasons for everything else."""
    print("\n📜 Testing Saito criterion...")

    b2 = build_coxeter("B", 2)
    ones = Multiplicity.constant(4, 1)
    good = saito_check(b2, ones, [Derivation.euler(2), Derivation.parse("x^3, y^3", 2)])
    assert good and good.constant == -1, good
    assert good.describe() == "-1*Q"

    degenerate = saito_check(b2, ones, [Derivation.euler(2), Derivation.parse("x^3, x^2*y", 2)])
    assert not degenerate and degenerate.reason == "determinant vanishes"

    outside = saito_check(b2, ones, [Derivation.euler(2), Derivation.parse("y, x", 2)])
    assert not outside and "theta2" in outside.reason
    assert not saito_check(b2, ones, [Derivation.euler(2)])
    print("   ✅ Saito criterion correct")


def test_forms_and_pairing():
    """Form membership, form certificates and the derivation-form pairing."""
    print("\n🔗 Testing forms and pairing...")

    ones = Multiplicity.constant(2, 1)
    dx_over_x = LogForm1((_inverse(FX), FactoredRationalFunction.zero(2)))
    dy_over_y = LogForm1((FactoredRationalFunction.zero(2), _inverse(FY)))
    dy_over_x = LogForm1((FactoredRationalFunction.zero(2), _inverse(FX)))

    assert form_in_module(COORDINATE_LINES, ones, dx_over_x)
    assert not form_in_module(COORDINATE_LINES, ones, dy_over_x)
    assert dx_over_x.degree == -1 and dx_over_x.pole_order(FX) == 1

    certificate = saito_check_forms(COORDINATE_LINES, ones, [dx_over_x, dy_over_y])
    assert certificate and certificate.constant == 1
    assert certificate.describe("form") == "1/Q"

    x_dx = Derivation.parse("x, 0", 2)
    y_dy = Derivation.parse("0, y", 2)
    assert saito_check(COORDINATE_LINES, ones, [x_dx, y_dy]).constant == 1
    assert pairing(Derivation.euler(2), dx_over_x, COORDINATE_LINES, ones) == 1
    assert pairing_determinant([x_dx, y_dy], [dx_over_x, dy_over_y]) == 1
    print("   ✅ Forms and pairing correct")


def test_exponent_detection():
    """Certified exponents for free pairs and None otherwise."""
    print("\n🎯 Testing exponent detection...")

    found = detect_exponents(build_coxeter("B", 2), Multiplicity.constant(4, 1), seed=3)
    assert found is not None and found.values == (1, 3)
    assert found.certificate and len(found.basis) == 2

    assert detect_exponents(build_coxeter("A", 2), Multiplicity.constant(3, 1)).values == (1, 2)
    assert detect_exponents(build_coxeter("B", 2), Multiplicity.constant(4, 2)).values == (4, 4)

    # four generic planes in three-space are not free
    assert detect_exponents(example18_arrangement(), example18_multiplicity()) is None
    assert detect_exponents(Arrangement.from_forms(2, [[1, 0]]), Multiplicity.of([1])) is None
    print("   ✅ Exponent detection correct")


def test_zero_one_multiplicities():
    """A {0,1} multiplicity behaves like its subarrangement."""
    print("\n🎲 Testing {0,1} multiplicities against subarrangements...")

    b2 = build_coxeter("B", 2)
    rng = random.Random(2024)
    for _ in range(6):
        support = sorted(rng.sample(range(4), rng.randint(2, 4)))
        m = Multiplicity.from_support(4, support)
        found = detect_exponents(b2, m, seed=rng.randint(0, 100))
        assert found is not None and found.values == (1, len(support) - 1), (support, found)
        sub = subarrangement(b2, m)
        assert detect_exponents(sub, Multiplicity.constant(len(sub), 1)).values == found.values
        assert subarrangement_exponents_agree(b2, m)
        print(f"   support {support}: exponents {found.values}")
    print("   ✅ Subarrangement comparison correct")


def test_isomorphism_shift():
    """Graded dimensions line up under the kh shifts."""
    print("\n🔁 Testing degree-shift dimensions...")

    report = isomorphism_shift_check(build_coxeter("A", 2), Multiplicity.constant(3, 1), 1, 5)
    assert report.h == 3 and report.ok, report
    assert report.rows[4].plus == (1, 1)
    print("   ✅ Shift dimensions correct")


def test_module_properties():
    """Euler membership, monotonicity in m and the degree of a Saito determinant."""
    print("\n📏 Testing module properties...")

    for family, rank in (("A", 2), ("B", 2), ("A", 3)):
        arrangement = build_coxeter(family, rank)
        euler = Derivation.euler(rank)
        for values in product((0, 1, 2), repeat=len(arrangement)):
            m = Multiplicity.of(values)
            assert derivation_in_module(arrangement, m, euler) == (max(values) <= 1), values
        print(f"   {family}{rank}: Euler field checked on every m with entries 0..2")

    rng = random.Random(77)
    b2 = build_coxeter("B", 2)
    for _ in range(12):
        small = [rng.randint(0, 2) for _ in range(4)]
        large = [v + rng.randint(0, 1) for v in small]
        for d in range(0, 7):
            assert derivation_space_dim(b2, Multiplicity.of(large), d) <= derivation_space_dim(b2, Multiplicity.of(small), d)

    for trial in range(10):
        m = Multiplicity.of([rng.randint(0, 3) for _ in range(4)])
        found = detect_exponents(b2, m, seed=trial)
        assert found is not None, list(m)
        assert sum(found.values) == m.total
        det = poly_det([list(delta.coefficients) for delta in found.basis])
        assert not det.is_zero() and det.degree() == m.total, (list(m), det)
        assert det == defining_poly(b2, m).scale(found.certificate.constant)
    print("   ✅ Module properties hold")


def main():
    """Run all tests."""
    print("🧮 Logarithmic Module Test Suite 🧮")
    print("=" * 50)

    try:
        test_derivations()
        test_graded_dimensions()
        test_saito_criterion()
        test_forms_and_pairing()
        test_exponent_detection()
        test_zero_one_multiplicities()
        test_isomorphism_shift()
        test_module_properties()

        print("\n🎉 All logarithmic module tests passed!")

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
