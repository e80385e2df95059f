#!/usr/bin/env python3
"""
Test script for multiarrangement characteristic polynomials
Quasi-constant decompositions, the degree-shift formulas and the rank-2 Hilbert series oracle
"""

import os
import sys
from itertools import product

# Add the current directory to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from coxma.algebra import UniPoly
from coxma.arrangement import (
    Arrangement,
    Multiplicity,
    build_coxeter,
    example18_arrangement,
)
from coxma.charpoly import (
    Sign,
    conjecture19_scan,
    decompose_quasi_constant,
    multi_char_poly,
    odd_constant_polynomials,
    rank2_char_poly_oracle,
)
from coxma.errors import ArrangementError, InputError, NotQuasiConstantError


def test_decompositions():
    """Canonical decompositions of quasi-constant multiplicities."""
    print("🧩 Testing quasi-constant decompositions...")

    d = decompose_quasi_constant(Multiplicity.of([3, 3, 3, 2, 2, 3]))
    assert (d.k, d.sign, tuple(d.m)) == (1, Sign.PLUS, (1, 1, 1, 0, 0, 1))
    assert d.alternate is None

    d = decompose_quasi_constant(Multiplicity.of([1, 1, 2]))
    assert (d.k, d.sign, tuple(d.m)) == (1, Sign.MINUS, (1, 1, 0))
    assert d.reconstruct() == Multiplicity.of([1, 1, 2])

    d = decompose_quasi_constant(Multiplicity.constant(3, 3))
    assert (d.k, d.sign, tuple(d.m)) == (1, Sign.PLUS, (1, 1, 1))
    assert (d.alternate.k, d.alternate.sign) == (2, Sign.MINUS)
    assert d.alternate.reconstruct() == Multiplicity.constant(3, 3)

    d = decompose_quasi_constant(Multiplicity.constant(4, 2))
    assert (d.k, d.sign, tuple(d.m)) == (1, Sign.PLUS, (0, 0, 0, 0))

    try:
        decompose_quasi_constant(Multiplicity.of([0, 2, 1]))
        raise AssertionError("spread 2 is not quasi-constant")
    except NotQuasiConstantError as e:
        assert e.exit_code == 2
    print("   ✅ Decompositions correct")


def test_exhaustive_round_trip():
    """Every quasi-constant m~ up to 5 on A2, B2 and A3: reconstruct, monic of degree l, t^(l-1) coefficient -|m~|."""
    print("\n🔄 Testing decompositions exhaustively...")

    for family, rank in (("A", 2), ("B", 2), ("A", 3)):
        arrangement = build_coxeter(family, rank)
        checked = 0
        for base in range(5):
            for bits in product((0, 1), repeat=len(arrangement)):
                mt = Multiplicity.of(base + b for b in bits)
                d = decompose_quasi_constant(mt)
                assert d.m.is_zero_one() and d.reconstruct() == mt, list(mt)
                if d.alternate is not None:
                    assert mt.is_constant() and d.alternate.reconstruct() == mt
                chi = multi_char_poly(arrangement, mt, d).polynomial
                assert chi.degree == rank and chi.leading() == 1, (list(mt), chi)
                assert chi.coefficient(rank - 1) == -mt.total, (list(mt), chi)
                checked += 1
        print(f"   {family}{rank}: {checked} multiplicities")
    print("   ✅ Round trips correct")


def test_example18():
    """Both shifted formulas on the A3 realization xyz(x+y)(y+z)(x+y+z)."""
    print("\n🎯 Testing the A3 golden example...")

    arrangement = example18_arrangement()
    plus = multi_char_poly(arrangement, Multiplicity.of([3, 3, 3, 2, 2, 3]))
    assert plus.coefficients() == [1, -16, 86, -155], plus.coefficients()
    assert plus.provenance == "theorem15"

    minus = multi_char_poly(arrangement, Multiplicity.of([1, 1, 1, 2, 2, 1]))
    assert minus.coefficients() == [1, -8, 22, -21], minus.coefficients()

    base = UniPoly.from_high_first([1, -4, 6, -3])
    for k in (1, 2):
        s = UniPoly([-4 * k, 1])
        expected_minus = s ** 3 + s ** 2 * 4 + s * 6 + 3
        got = multi_char_poly(arrangement, Multiplicity.of([1, 1, 1, 0, 0, 1]).reflected(2 * k)).polynomial
        assert got == expected_minus, (k, got)
        assert multi_char_poly(arrangement, Multiplicity.of([1, 1, 1, 0, 0, 1]).shifted(2 * k)).polynomial == base.compose_affine(1, -4 * k)
        print(f"   k={k}: plus and minus formulas reproduced")
    print("   ✅ Golden example correct")


def test_constant_multiplicities():
    """Odd constants agree along both decompositions."""
    print("\n⚖️ Testing constant multiplicities...")

    a2 = build_coxeter("A", 2)
    assert multi_char_poly(a2, Multiplicity.constant(3, 1)).polynomial == UniPoly.from_roots([1, 2])
    assert multi_char_poly(a2, Multiplicity.constant(3, 3)).polynomial == UniPoly.from_roots([4, 5])
    assert multi_char_poly(a2, Multiplicity.constant(3, 2)).polynomial == UniPoly.from_roots([3, 3])

    for family, rank in (("A", 2), ("B", 2), ("A", 3)):
        arrangement = build_coxeter(family, rank)
        for value in (1, 3, 5):
            canonical, alternate = odd_constant_polynomials(arrangement, value)
            assert canonical == alternate, (family, rank, value)

    b3 = build_coxeter("B", 3)
    chi = multi_char_poly(b3, Multiplicity.constant(9, 3)).polynomial
    assert chi == UniPoly.from_roots([7, 9, 11])
    print("   ✅ Constant multiplicities correct")


def test_rejections():
    """Arrangements without Coxeter data and non-quasi-constant input are refused."""
    print("\n🚫 Testing rejections...")

    plain = Arrangement.from_forms(2, [[1, 0], [0, 1]])
    try:
        multi_char_poly(plain, Multiplicity.of([1, 1]))
        raise AssertionError("needs a Coxeter arrangement")
    except ArrangementError:
        pass
    try:
        multi_char_poly(build_coxeter("B", 2), Multiplicity.of([0, 2, 1, 1]))
        raise AssertionError("spread 2 has no closed formula")
    except NotQuasiConstantError:
        pass
    try:
        rank2_char_poly_oracle(build_coxeter("A", 3), Multiplicity.constant(6, 1))
        raise AssertionError("oracle is rank 2 only")
    except ArrangementError:
        pass
    print("   ✅ Rejections correct")


def test_rank2_oracle():
    """Hilbert series oracle against known answers and the closed formula."""
    print("\n🔮 Testing the rank-2 oracle...")

    a2 = build_coxeter("A", 2)
    result = rank2_char_poly_oracle(a2, Multiplicity.constant(3, 1))
    assert result.polynomial == UniPoly.from_roots([1, 2]) and result.exponents == (1, 2)
    assert result.provenance == "rank2_oracle"

    b2 = build_coxeter("B", 2)
    for values in ([1, 1, 1, 1], [3, 3, 2, 2], [1, 2, 1, 2], [2, 2, 2, 2]):
        m = Multiplicity.of(values)
        oracle = rank2_char_poly_oracle(b2, m).polynomial
        closed = multi_char_poly(b2, m).polynomial
        assert oracle == closed, (values, oracle, closed)
        print(f"   m={values}: {oracle}")

    # (3,1,1,1) is not quasi-constant; the oracle still answers with two roots summing to |m|
    odd = rank2_char_poly_oracle(b2, Multiplicity.of([3, 1, 1, 1]), seed=5)
    assert odd.polynomial.degree == 2 and sum(odd.exponents) == 6
    print("   ✅ Oracle correct")


def test_shift_scan():
    """The shift scan reports rows and validates its range."""
    print("\n🔭 Testing the shift scan...")

    report = conjecture19_scan(build_coxeter("B", 2), Multiplicity.constant(4, 0), 1)
    assert report.h == 4 and len(report.rows) == 2
    assert report.all_equal, [(str(r.lhs), str(r.rhs)) for r in report.rows]

    try:
        conjecture19_scan(build_coxeter("B", 2), Multiplicity.constant(4, 0), 0)
        raise AssertionError("k_max must be positive")
    except InputError:
        pass
    print("   ✅ Shift scan correct")


def main():
    """Run all tests."""
    print("📈 Characteristic Polynomial Test Suite 📈")
    print("=" * 50)

    try:
        test_decompositions()
        test_exhaustive_round_trip()
        test_example18()
        test_constant_multiplicities()
        test_rejections()
        test_rank2_oracle()
        test_shift_scan()

        print("\n🎉 All characteristic polynomial tests passed!")

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
