#!/usr/bin/env python3
"""
Test script for arrangements, multiplicities and the Coxeter knowledge space
"""

import os
import sys

# Add the current directory to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from hyperon import MeTTa

from coxma.algebra import MultiPoly
from coxma.arrangement import (
    Arrangement,
    Multiplicity,
    build_coxeter,
    defining_poly,
    dump_arrangement,
    example18_arrangement,
    example18_multiplicity,
    load_arrangement,
    parse_arrangement,
    subarrangement,
)
from coxma.coxeter_facts import CoxeterFacts
from coxma.errors import ArrangementError, UnsupportedTypeError
from coxma.knowledge import initialize_coxeter_knowledge

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def test_knowledge_queries():
    """Coxeter numbers, exponents and charts come out of the MeTTa space."""
    print("🧠 Testing MeTTa knowledge queries...")

    metta = MeTTa()
    initialize_coxeter_knowledge(metta)
    facts = CoxeterFacts(metta)

    table = {
        ("A", 3): (4, [1, 2, 3]),
        ("A", 4): (5, [1, 2, 3, 4]),
        ("B", 2): (4, [1, 3]),
        ("B", 3): (6, [1, 3, 5]),
        ("D", 4): (6, [1, 3, 3, 5]),
    }
    for (family, rank), (h, exponents) in table.items():
        assert facts.coxeter_number(family, rank) == h, (family, rank)
        assert facts.classical_exponents(family, rank) == exponents, (family, rank)
        print(f"   {family}{rank}: h={h}, exponents={exponents}")

    record = facts.chart_record("b2")
    assert record["variables"] == ["x", "y"]
    assert record["p2"] == "x^2*y^2"
    assert len(facts.chart_record("A2")["forms"]) == 3

    for bad in (("H", 3), ("D", 3)):
        try:
            facts.coxeter_number(*bad)
            raise AssertionError(f"{bad} should be unsupported")
        except UnsupportedTypeError:
            pass
    print("   ✅ Knowledge queries correct")


def test_coxeter_builds():
    """Hyperplane counts and attached Coxeter data."""
    print("\n🏗️ Testing Coxeter arrangement builds...")

    counts = {("A", 2): 3, ("A", 3): 6, ("A", 4): 10, ("B", 2): 4, ("B", 3): 9, ("D", 4): 12}
    for (family, rank), count in counts.items():
        arrangement = build_coxeter(family, rank)
        assert len(arrangement) == count, (family, rank, len(arrangement))
        assert arrangement.spans_ambient()
        assert arrangement.coxeter_spec.label == f"{family}{rank}"

    b2 = build_coxeter("B", 2)
    assert defining_poly(b2, Multiplicity.constant(4, 1)) == MultiPoly.parse("x*y*(x - y)*(x + y)", 2)
    assert defining_poly(b2, Multiplicity.of([2, 0, 0, 1])) == MultiPoly.parse("x^2*(x + y)", 2)

    try:
        build_coxeter("H", 3)
        raise AssertionError("H3 is not a supported family")
    except UnsupportedTypeError as e:
        assert "unsupported family" in str(e)

    try:
        Arrangement.from_forms(2, [[1, 0], [2, 0]])
        raise AssertionError("proportional normals are one hyperplane")
    except ArrangementError:
        pass
    print("   ✅ Builds correct")


def test_multiplicities():
    """Arithmetic on multiplicities and quasi-constant predicates."""
    print("\n🔢 Testing multiplicities...")

    m = Multiplicity.of([3, 3, 3, 2, 2, 3])
    assert m.total == 16 and m.spread() == 1 and m.is_quasi_constant()
    assert m.reflected(4) == Multiplicity.of([1, 1, 1, 2, 2, 1])
    assert m.shifted(-2) == Multiplicity.of([1, 1, 1, 0, 0, 1])
    assert Multiplicity.of([0, 2]).spread() == 2 and not Multiplicity.of([0, 2]).is_quasi_constant()
    assert example18_multiplicity().support() == [0, 1, 2, 5]

    sub = subarrangement(example18_arrangement(), example18_multiplicity())
    assert len(sub) == 4 and sub.ambient_dim == 3 and sub.coxeter_spec is None

    try:
        Multiplicity.of([1, -1])
        raise AssertionError("negative multiplicities are rejected")
    except ArrangementError:
        pass
    print("   ✅ Multiplicities correct")


def test_arrangement_files():
    """JSON files load with their multiplicities; malformed files are rejected."""
    print("\n📄 Testing arrangement files...")

    arrangement, m = load_arrangement(os.path.join(DATA_DIR, "example18.json"))
    assert arrangement.forms == example18_arrangement().forms
    assert m == example18_multiplicity()
    assert arrangement.coxeter_spec.coxeter_number == 4

    b2 = build_coxeter("B", 2)
    again, m2 = parse_arrangement(dump_arrangement(b2, Multiplicity.constant(4, 2)))
    assert again.forms == b2.forms and m2 == Multiplicity.constant(4, 2)
    assert parse_arrangement(dump_arrangement(b2))[1] is None

    bad_files = [
        '{"ambient_dim": 2, "hyperplanes": [{"form": [1, 0, 0]}]}',
        '{"ambient_dim": 2, "hyperplanes": [{"form": [0, 0]}]}',
        '{"ambient_dim": 2, "hyperplanes": [{"form": [1, 0]}], "coxeter": {"family": "B", "rank": 2}}',
        '{"ambient_dim": 2, "hyperplanes": "nope"}',
        '{"ambient_dim": 2, "hyperplanes": [{"form": [1, 0], "multiplicity": -1}]}',
    ]
    for text in bad_files:
        try:
            parse_arrangement(text)
            raise AssertionError(f"accepted malformed file {text}")
        except ArrangementError:
            pass
    print("   ✅ Files correct")


def main():
    """Run all tests."""
    print("📐 Arrangement Test Suite 📐")
    print("=" * 50)

    try:
        test_knowledge_queries()
        test_coxeter_builds()
        test_multiplicities()
        test_arrangement_files()

        print("\n🎉 All arrangement tests passed!")

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
