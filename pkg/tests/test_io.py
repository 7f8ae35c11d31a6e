import pytest

from xsat import (
    BOTTOM,
    XsatFormula,
    emit_report,
    parse_dimacs_cnf,
    parse_xsat,
    serialize_xsat,
    solve,
)
from xsat.generator import GenSpec, gen_random
from xsat.io import ParseError, sniff_format
from xsat.reductions import reduce_cnf_to_xsat


def test_parse_dimacs_basic():
    f = parse_dimacs_cnf(b"p cnf 3 1\n1 -2 3 0\n")
    assert f.num_vars == 3
    assert f.clauses == ((1, -2, 3),)


def test_parse_dimacs_width_error():
    with pytest.raises(ParseError, match="width 2"):
        parse_dimacs_cnf("p cnf 3 1\n1 2 0\n")


def test_parse_dimacs_range_error():
    with pytest.raises(ParseError, match="out of range"):
        parse_dimacs_cnf("c x\np cnf 2 1\n1 2 3 0\n")


def test_parse_dimacs_count_mismatch():
    with pytest.raises(ParseError, match="promises 2"):
        parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n")


def test_parse_dimacs_error_carries_line_number():
    with pytest.raises(ParseError) as err:
        parse_dimacs_cnf("c one\np cnf 3 1\n1 x 3 0\n")
    assert err.value.line == 3


def test_parse_xsat_positive(two_clause_sat):
    f = parse_xsat(b"p xsat+ 4 2\n1 2 3 0\n2 3 4 0\n")
    assert f == two_clause_sat
    assert f.positive


def test_parse_xsat_bottom_token():
    f = parse_xsat("p xsat+ 3 2\n1 2 B 0\n1 2 3 0\n")
    assert (1, 2, BOTTOM) in f.clauses


def test_parse_xsat_rejects_negation_in_positive():
    with pytest.raises(ParseError, match="negated literal"):
        parse_xsat("p xsat+ 4 1\n-1 2 3 0\n")


def test_parse_xsat_allows_negation_in_general_format():
    f = parse_xsat("p xsat 3 2\n-1 2 3 0\n1 2 3 0\n")
    assert not f.positive
    assert (-1, 2, 3) in f.clauses


def test_parse_xsat_rejects_what_validate_rejects():
    with pytest.raises(ParseError, match="duplicate-clause"):
        parse_xsat("p xsat+ 3 2\n1 2 3 0\n3 2 1 0\n")
    with pytest.raises(ParseError, match="uncovered-variable"):
        parse_xsat("p xsat+ 4 2\n1 2 3 0\n1 2 B 0\n")


def test_parse_xsat_zero_literal():
    with pytest.raises(ParseError, match="terminator"):
        parse_xsat("p xsat+ 3 1\n1 2 0 0\n")


def test_round_trip_random_instances():
    for seed in range(12):
        f = gen_random(GenSpec(r=9, k=4 + seed % 3, seed=seed))
        assert parse_xsat(serialize_xsat(f)) == f


def test_round_trip_bottom_and_negations():
    f = XsatFormula(3, ((1, 2, BOTTOM), (-1, 2, 3)), positive=False)
    assert parse_xsat(serialize_xsat(f)) == f


def test_round_trip_cnf_reduction_output():
    cnf = parse_dimacs_cnf("p cnf 3 1\n1 -2 3 0\n")
    f, _ = reduce_cnf_to_xsat(cnf)
    assert parse_xsat(serialize_xsat(f)) == f


def test_sniff_format():
    assert sniff_format("c hi\np cnf 3 1\n1 2 3 0\n") == "cnf"
    assert sniff_format("p xsat+ 3 1\n1 2 3 0\n") == "xsat"
    with pytest.raises(ParseError):
        sniff_format("p wat 1 1\n")


def test_emit_report_fixed_field_order(six_var):
    rep = solve(six_var, method="subst")
    line = emit_report(rep).decode()
    keys = [kv.split("=")[0] for kv in line.split()]
    assert keys == ["sat", "count", "rank", "nullity", "kernel_vars",
                    "kernel_clauses", "repr_size_bits", "method", "elapsed_ms"]
    fields = dict(kv.split("=") for kv in line.split())
    assert fields["sat"] == "true"
    assert fields["count"] == "3"
    assert fields["rank"] == "3"
    assert fields["nullity"] == "3"
    assert fields["method"] == "subst"


def test_emit_report_unsat(dense_unsat):
    line = emit_report(solve(dense_unsat)).decode()
    fields = dict(kv.split("=") for kv in line.split())
    assert fields["sat"] == "false"
    assert fields["count"] == "0"
