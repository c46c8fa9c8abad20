import pytest

from pohp.cnf import CnfFormula, emit_dimacs, parse_dimacs, satisfying_assignments
from pohp.errors import ClauseArityError, LiteralOutOfRangeError, MalformedHeaderError
from pohp.instances import validate_solution
from pohp.oracle import oracle_solve
from pohp.reductions import cycle_via_path, path_via_cycle

from helpers import build_instance, complete_graph, cycle_graph


def test_parse_basic():
    f = parse_dimacs("p cnf 2 1\n1 -2 0\n")
    assert f.num_vars == 2
    assert f.clauses == ((1, -2),)


def test_parse_repeated_literals_ok():
    f = parse_dimacs("p cnf 1 1\n1 1 -1 0\n")
    assert f.clauses == ((1, 1, -1),)
    f.require_three_sat()


def test_parse_literal_out_of_range():
    with pytest.raises(LiteralOutOfRangeError):
        parse_dimacs("p cnf 2 1\n1 3 0\n")


def test_parse_header_errors():
    with pytest.raises(MalformedHeaderError):
        parse_dimacs("1 2 0\n")
    with pytest.raises(MalformedHeaderError):
        parse_dimacs("p cnf x 1\n1 0\n")
    with pytest.raises(MalformedHeaderError):
        parse_dimacs("p cnf 2 2\n1 0\n")


def test_arity_checks():
    f = parse_dimacs("p cnf 2 1\n1 -2 0\n")
    with pytest.raises(ClauseArityError):
        f.require_three_sat()
    with pytest.raises(Exception):
        f.require_monotone_two_sat()
    g = parse_dimacs("p cnf 2 1\n1 2 0\n")
    g.require_monotone_two_sat()


def test_roundtrip_emit_parse():
    f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n")
    assert parse_dimacs(emit_dimacs(f)) == CnfFormula(f.num_vars, f.clauses)


def test_satisfying_assignments():
    f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n")
    sols = set(satisfying_assignments(f))
    assert sols == {(True, False), (False, True)}


def path_oracle(inst):
    res = oracle_solve(inst)
    assert res.status != "unknown"
    return res.solution


def cycle_oracle(inst):
    res = oracle_solve(inst)
    assert res.status != "unknown"
    return res.solution


def test_cycle_via_path_c4():
    names, edges = cycle_graph(4)
    inst = build_instance(names, edges, kind="cycle")
    sol = cycle_via_path(inst, path_oracle)
    assert sol is not None and validate_solution(inst, sol).valid


def test_cycle_via_path_k3_chain():
    inst = build_instance("abc", [("a", "b"), ("b", "c"), ("a", "c")],
                          [("a", "b"), ("b", "c")], kind="cycle")
    sol = cycle_via_path(inst, path_oracle)
    assert sol is not None and sol.order == ("a", "b", "c")


def test_reductions_match_direct_solvers():
    import random
    from helpers import random_instance_from_layout

    rng = random.Random(55)
    for trial in range(25):
        n = rng.randint(4, 9)
        cyc = random_instance_from_layout(n, 3, 0.25, rng, kind="cycle")
        direct = oracle_solve(cyc)
        via = cycle_via_path(cyc, path_oracle)
        if direct.status == "infeasible":
            assert via is None
        else:
            assert via is not None and via.weight == direct.solution.weight

        pat = random_instance_from_layout(n, 3, 0.25, rng, kind="path")
        direct = oracle_solve(pat)
        via = path_via_cycle(pat, cycle_oracle)
        if direct.status == "infeasible":
            assert via is None
        else:
            assert via is not None and via.weight == direct.solution.weight
