#!/usr/bin/env python3
"""
Test script for the coxma command line
Runs commands in-process and checks JSON output and exit codes
"""

import io
import json
import os
import sys
from contextlib import redirect_stdout

# Add the current directory to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from coxma_cli import main as cli_main

EXAMPLE18_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "example18.json")


def run_cli(*argv):
    """Run one command; returns (exit code, stdout)."""
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = cli_main(list(argv))
    return code, buffer.getvalue()


def run_json(*argv):
    code, out = run_cli(*argv, "--json")
    return code, json.loads(out)


def test_build_and_charpoly():
    """Arrangement JSON and the Moebius polynomial."""
    print("🏗️ Testing build and charpoly...")

    code, out = run_cli("build", "--type", "B2")
    data = json.loads(out)
    assert code == 0 and len(data["hyperplanes"]) == 4
    assert data["coxeter"] == {"family": "B", "rank": 2}

    code, data = run_json("charpoly", "--type", "A3")
    assert code == 0 and data["chi"] == [1, -6, 11, -6]
    assert "elapsed" not in data

    code, data = run_json("charpoly", "--type", "B2", "--lattice")
    assert [f["codim"] for f in data["lattice"]] == [0, 1, 1, 1, 1, 2]
    assert data["lattice"][-1]["mobius"] == 3
    print("   ✅ build and charpoly correct")


def test_multicharpoly():
    """Closed formula, alternate decomposition and oracle."""
    print("\n📈 Testing multicharpoly...")

    code, data = run_json("multicharpoly", "--arr", EXAMPLE18_FILE, "--mult", "[3,3,3,2,2,3]")
    assert code == 0 and data["chi"] == [1, -16, 86, -155]
    assert data["decomposition"] == {"k": 1, "sign": "plus", "m": [1, 1, 1, 0, 0, 1]}

    code, data = run_json("multicharpoly", "--arr", EXAMPLE18_FILE)
    assert data["chi"] == [1, -4, 6, -3], data

    code, data = run_json("multicharpoly", "--type", "A2", "--mult", "const:3")
    assert data["chi"] == [1, -9, 20] and data["alternate_checked"]

    code, data = run_json("multicharpoly", "--type", "B2", "--mult", "const:1", "--oracle")
    assert data["chi"] == [1, -4, 3] and data["provenance"] == "rank2_oracle"
    print("   ✅ multicharpoly correct")


def test_modules():
    """Exponents, Saito certificates and primitive derivation checks."""
    print("\n🧮 Testing exponents, saito and primitive...")

    code, data = run_json("exponents", "--type", "B2", "--mult", "const:1")
    assert code == 0 and data["free"] and data["exponents"] == [1, 3]
    assert data["certificate"].endswith("*Q")
    assert data["hilbert"]["1"] == 1

    code, data = run_json("saito", "--type", "B2", "--theta", "x,y", "--theta", "x^3,y^3")
    assert data["ok"] and data["certificate"] == "-1*Q"
    code, data = run_json("saito", "--type", "B2", "--theta", "x,y", "--theta", "y,x")
    assert code == 0 and not data["ok"] and "theta2" in data["reason"]

    code, data = run_json("primitive", "--type", "B2", "--k", "2", "--check", "lemma8")
    assert code == 0 and data["passed"]
    assert [p["order"] for p in data["pole_orders"]] == [3, 3, 3, 3]
    assert data["degree"] == -7

    code, data = run_json("primitive", "--type", "A2", "--k", "1", "--check", "theorem6")
    assert code == 0 and data["passed"] and len(data["details"]) == 2

    code, data = run_json("primitive", "--type", "B2", "--k", "1", "--check", "theorem10", "--mult", "[1,0,0,0]")
    assert code == 0 and data["passed"]
    print("   ✅ Module commands correct")


def test_verify_and_errors():
    """Suites report through the exit code; input errors exit with 2."""
    print("\n🚦 Testing verify and error exits...")

    code, data = run_json("verify", "example18")
    assert code == 0 and data["status"] == "pass" and len(data["cases"]) == 5

    code, data = run_json("charpoly", "--type", "H3")
    assert code == 2 and data["error"] == "UnsupportedTypeError" and not data["success"]
    assert "unsupported family" in data["details"]

    code, data = run_json("multicharpoly", "--type", "B2", "--mult", "[0,2,1,1]")
    assert code == 2 and data["error"] == "NotQuasiConstantError"

    code, data = run_json("exponents", "--type", "B2", "--mult", "[1,1]")
    assert code == 2 and data["error"] == "ArrangementError"

    code, data = run_json("verify", "theorem99")
    assert code == 2

    # out-of-range --k is an input error, never a traceback
    for argv in (
        ("primitive", "--type", "B2", "--k", "-1"),
        ("primitive", "--type", "B2", "--k", "-1", "--check", "theorem6"),
        ("primitive", "--type", "B2", "--k", "0", "--check", "theorem10", "--mult", "const:1"),
    ):
        code, data = run_json(*argv)
        assert code == 2 and data["error"] == "InputError", (argv, data)
    code, data = run_json("primitive", "--type", "B2", "--k", "1", "--check", "theorem10", "--mult", "const:2")
    assert code == 2 and data["error"] == "MembershipError"

    # global flags work before the command too
    code, out = run_cli("--json", "charpoly", "--type", "B2")
    assert json.loads(out)["chi"] == [1, -4, 3]
    print("   ✅ verify and errors correct")


def test_deterministic_output():
    """Same command, same bytes."""
    print("\n🔁 Testing deterministic output...")
    first = run_cli("exponents", "--type", "A2", "--mult", "const:2", "--json", "--seed", "4")
    second = run_cli("exponents", "--type", "A2", "--mult", "const:2", "--json", "--seed", "4")
    assert first == second
    _, data = run_json("charpoly", "--type", "A2", "--timing")
    assert "elapsed" in data
    print("   ✅ Output is deterministic")


def main():
    """Run all tests."""
    print("💻 Command Line Test Suite 💻")
    print("=" * 50)

    try:
        test_build_and_charpoly()
        test_multicharpoly()
        test_modules()
        test_verify_and_errors()
        test_deterministic_output()

        print("\n🎉 All command line tests passed!")

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
