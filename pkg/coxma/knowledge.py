from hyperon import MeTTa, E, S, ValueAtom


def initialize_coxeter_knowledge(metta: MeTTa):
    """Initialize the MeTTa knowledge graph with Coxeter tables and rank-2 invariant charts."""

    # Smallest irreducible rank per supported family
    metta.space().add_atom(E(S("min_rank"), S("A"), ValueAtom(1)))
    metta.space().add_atom(E(S("min_rank"), S("B"), ValueAtom(2)))
    metta.space().add_atom(E(S("min_rank"), S("D"), ValueAtom(4)))

    # Coxeter number h = slope * rank + offset
    metta.space().add_atom(E(S("h_slope"), S("A"), ValueAtom(1)))
    metta.space().add_atom(E(S("h_offset"), S("A"), ValueAtom(1)))
    metta.space().add_atom(E(S("h_slope"), S("B"), ValueAtom(2)))
    metta.space().add_atom(E(S("h_offset"), S("B"), ValueAtom(0)))
    metta.space().add_atom(E(S("h_slope"), S("D"), ValueAtom(2)))
    metta.space().add_atom(E(S("h_offset"), S("D"), ValueAtom(-2)))

    # Classical exponents: arithmetic progression start, step, (rank + count_offset) terms
    metta.space().add_atom(E(S("exponent_start"), S("A"), ValueAtom(1)))
    metta.space().add_atom(E(S("exponent_step"), S("A"), ValueAtom(1)))
    metta.space().add_atom(E(S("exponent_count_offset"), S("A"), ValueAtom(0)))
    metta.space().add_atom(E(S("exponent_start"), S("B"), ValueAtom(1)))
    metta.space().add_atom(E(S("exponent_step"), S("B"), ValueAtom(2)))
    metta.space().add_atom(E(S("exponent_count_offset"), S("B"), ValueAtom(0)))
    metta.space().add_atom(E(S("exponent_start"), S("D"), ValueAtom(1)))
    metta.space().add_atom(E(S("exponent_step"), S("D"), ValueAtom(2)))
    metta.space().add_atom(E(S("exponent_count_offset"), S("D"), ValueAtom(-1)))
    # D carries one extra exponent rank + offset
    metta.space().add_atom(E(S("exponent_extra_offset"), S("D"), ValueAtom(-1)))

    # Rank-2 invariant charts; forms separated by ';'
    metta.space().add_atom(E(S("chart_family"), S("B2"), ValueAtom("B")))
    metta.space().add_atom(E(S("chart_variables"), S("B2"), ValueAtom("x y")))
    metta.space().add_atom(E(S("chart_forms"), S("B2"), ValueAtom("x; y; x - y; x + y")))
    metta.space().add_atom(E(S("chart_p1"), S("B2"), ValueAtom("x^2 + y^2")))
    metta.space().add_atom(E(S("chart_p2"), S("B2"), ValueAtom("x^2*y^2")))

    # A2 in chart coordinates (u, v) with braid coordinates (u, v - u, -v)
    metta.space().add_atom(E(S("chart_family"), S("A2"), ValueAtom("A")))
    metta.space().add_atom(E(S("chart_variables"), S("A2"), ValueAtom("u v")))
    metta.space().add_atom(E(S("chart_forms"), S("A2"), ValueAtom("2*u - v; 2*v - u; u + v")))
    metta.space().add_atom(E(S("chart_p1"), S("A2"), ValueAtom("2*u^2 - 2*u*v + 2*v^2")))
    metta.space().add_atom(E(S("chart_p2"), S("A2"), ValueAtom("u^2*v - u*v^2")))
