import math
from fractions import Fraction

import pytest

from xsat import (
    BOTTOM,
    CapacityError,
    ValidationError,
    XsatFormula,
    count_kernel,
    encode_sys,
    eval_xsat,
    extract_kernel,
    gauss_jordan,
    kernel_from_substitution,
    naive_count,
    repr_size,
    solve,
)
from xsat.generator import GenSpec, SplitMix64, gen_partition, gen_random
from xsat.kernel import profile_total_within_bounds, size_bounds
from xsat.oracle import naive_models
from xsat.substitution import expansion_profile, initial_state, substitute

F = Fraction


def _gauss_kernel(f):
    return extract_kernel(gauss_jordan(encode_sys(f)))


def _subst_kernel(f):
    return kernel_from_substitution(substitute(initial_state(f)))


def test_extract_six_var_gauss(six_var):
    kern = _gauss_kernel(six_var)
    assert kern.free_vars == (5, 6)
    assert [row.pivot_var for row in kern.rows] == [1, 2, 3, 4]
    assert [(row.coeffs, row.rhs) for row in kern.rows] == [
        ((F(0), F(-1)), F(0)),
        ((F(1), F(1)), F(1)),
        ((F(-1), F(0)), F(0)),
        ((F(1), F(1)), F(1)),
    ]


def test_extract_six_var_subst(six_var):
    kern = _subst_kernel(six_var)
    assert kern.free_vars == (3, 5, 6)
    assert [row.pivot_var for row in kern.rows] == [1, 1, 2, 4]


def test_extract_partition():
    kern = _gauss_kernel(gen_partition(6))
    assert kern.width == 4
    assert len(kern.rows) == 2


def test_count_six_var_both_paths(six_var):
    expected = sorted(naive_models(six_var))
    for kern in (_gauss_kernel(six_var), _subst_kernel(six_var)):
        count, wit = count_kernel(kern, want_witnesses=True)
        assert count == 3
        assert sorted(wit) == expected


def test_count_zero_width_sat():
    # full-rank system whose unique rational solution is 0/1 valued
    f = XsatFormula(3, ((1, 2, BOTTOM), (2, 3, BOTTOM), (1, 2, 3)))
    assert naive_count(f) == 1
    kern = _gauss_kernel(f)
    assert kern.width == 0
    count, wit = count_kernel(kern, want_witnesses=True)
    assert count == 1
    assert wit == ((0, 1, 0),)


def test_count_zero_width_unsat(dense_unsat):
    kern = _gauss_kernel(dense_unsat)
    assert kern.width == 0
    assert count_kernel(kern)[0] == 0


def test_count_capacity():
    kern = _gauss_kernel(gen_partition(9))
    with pytest.raises(CapacityError):
        count_kernel(kern, max_free=5)


def test_prefix_partition_counts_add_up(six_var):
    for kern in (_gauss_kernel(six_var), _subst_kernel(six_var),
                 _gauss_kernel(gen_partition(9))):
        full = count_kernel(kern)[0]
        for plen in (1, 2):
            total = 0
            for mask in range(1 << plen):
                prefix = tuple((mask >> i) & 1 for i in range(plen))
                total += count_kernel(kern, prefix=prefix)[0]
            assert total == full


def test_witnesses_satisfy_formula():
    rng = SplitMix64(3)
    for trial in range(15):
        r = 6 + rng.randbelow(5)
        k = -(-r // 3) + rng.randbelow(3)
        f = gen_random(GenSpec(r=r, k=min(k, r), seed=trial + 60))
        rep = solve(f, method="gauss", want_witnesses=True)
        if rep.witnesses is None:
            continue
        assert len(rep.witnesses) == rep.count
        for w in rep.witnesses:
            assert eval_xsat(f, w)


def test_witness_sets_match_oracle_models_both_methods():
    rng = SplitMix64(14)
    for trial in range(10):
        r = 6 + rng.randbelow(4)
        k_lo = -(-r // 3)
        k = k_lo + rng.randbelow(r - k_lo + 1)
        f = gen_random(GenSpec(r=r, k=k, seed=trial + 7100))
        expected = sorted(naive_models(f))
        for method in ("gauss", "subst"):
            rep = solve(f, method=method, want_witnesses=True)
            assert sorted(rep.witnesses) == expected


def test_count_larger_partition():
    # 3^9 models through an 18-bit enumeration, exercising bigger counts
    f = gen_partition(27)
    rep = solve(f, method="gauss")
    assert rep.count == 3 ** 9
    assert (rep.rank, rep.nullity) == (9, 18)


def test_witness_cap_suppresses_listing():
    f = gen_partition(12)  # 81 models
    count, wit = count_kernel(_gauss_kernel(f), want_witnesses=True,
                              witness_cap=10)
    assert count == 81
    assert wit is None


def test_methods_agree_with_oracle_small():
    rng = SplitMix64(4)
    for trial in range(25):
        r = 6 + rng.randbelow(7)
        k_lo = -(-r // 3)
        k = k_lo + rng.randbelow(r - k_lo + 1)
        f = gen_random(GenSpec(r=r, k=k, seed=trial + 5000))
        expect = naive_count(f)
        assert solve(f, method="gauss").count == expect
        assert solve(f, method="subst").count == expect


def test_solve_report_invariants(six_var, dense_unsat):
    for f in (six_var, dense_unsat, gen_partition(9)):
        for method in ("gauss", "subst"):
            rep = solve(f, method=method)
            assert rep.sat == (rep.count > 0)
            assert rep.kernel_vars == rep.nullity
            assert rep.method == method
            assert rep.elapsed_ms >= 0


def test_solve_rejects_invalid():
    with pytest.raises(ValidationError):
        solve(XsatFormula(4, ((1, 2, 3),)))  # variable 4 uncovered
    with pytest.raises(ValidationError):
        solve(XsatFormula(3, ()))  # declared variables, no clauses at all


def test_solve_empty_formula_counts_the_empty_assignment():
    rep = solve(XsatFormula(0, ()))
    assert rep.count == 1 and rep.rank == 0 and rep.kernel_vars == 0


def test_repr_size_values(six_var):
    f = gen_partition(6)
    st = substitute(initial_state(f))
    assert repr_size(_gauss_kernel(f), expansion_profile(st)) == pytest.approx(
        6 * math.log2(4))
    one = XsatFormula(3, ((1, 2, 3),))
    st1 = substitute(initial_state(one))
    assert repr_size(_gauss_kernel(one), expansion_profile(st1)) == pytest.approx(3.0)
    st6 = substitute(initial_state(six_var))
    assert repr_size(_gauss_kernel(six_var), expansion_profile(st6)) == pytest.approx(
        6 * math.log2(10))
    assert repr_size(_gauss_kernel(one), []) == 0.0


def test_size_bounds_partition_sits_on_lower_edge():
    # a partition's profile total is exactly 2r/3: inclusive lower bound
    for r in (6, 9, 12):
        f = gen_partition(r)
        total = sum(expansion_profile(substitute(initial_state(f))))
        assert total == 2 * r // 3
        lo_ok, hi_ok = profile_total_within_bounds(r, total)
        assert lo_ok and hi_ok
        lo, hi = size_bounds(r)
        assert lo <= repr_size(_gauss_kernel(f), [total]) <= hi + 1e-9


def test_solve_report_phase_timings(six_var):
    rep = solve(six_var)
    assert len(rep.phase_us) == 3
    assert all(t >= 0 for t in rep.phase_us)


def test_enumeration_cost_tracks_free_vars_not_total_vars():
    # same nullity, four more total variables: were enumeration exponential
    # in r the ratio would be 16x; tracking only the free side keeps it small
    from xsat.cli import timed_enumeration
    from xsat.generator import gen_fixed_rank

    nullity = 14
    small = _gauss_kernel(gen_fixed_rank(7 + nullity, 7))
    large = _gauss_kernel(gen_fixed_rank(11 + nullity, 11))
    assert small.width == large.width == nullity
    _, t_small = timed_enumeration(small)
    _, t_large = timed_enumeration(large)
    assert t_large < 6 * t_small
