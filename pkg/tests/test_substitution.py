import pytest

from xsat import BOTTOM, EncodingError, XsatFormula, rank_of
from xsat.generator import GenSpec, SplitMix64, gen_partition, gen_random
from xsat.oracle import naive_models
from xsat.substitution import (
    ContractError,
    DegenerateClauseError,
    LinearConstraint,
    _make_state,
    _sweep,
    expansion_profile,
    initial_state,
    normalize_clause,
    rank_of_subst,
    substitute,
)


def test_normalize_solves_for_lowest():
    c = normalize_clause((2, 5, 6))
    assert (c.lhs, c.const) == (2, 1)
    assert c.body == {5: -1, 6: -1}
    assert dict(c.expansion) == {5: 1, 6: 1}


def test_normalize_drops_bottom():
    c = normalize_clause((1, 2, BOTTOM))
    assert (c.lhs, c.const, c.body) == (1, 1, {2: -1})


def test_normalize_degenerate():
    with pytest.raises(DegenerateClauseError):
        normalize_clause((BOTTOM, BOTTOM, BOTTOM))


def test_normalize_rejects_negation():
    with pytest.raises(EncodingError):
        normalize_clause((-1, 2, 3))


def test_six_var_fixpoint_table(six_var):
    st = substitute(initial_state(six_var))
    assert st.fixpoint and not st.inconsistent
    assert sorted(st.independent) == [1, 2, 4]
    assert sorted(st.dependent) == [3, 5, 6]
    assert rank_of_subst(st) == (3, 3)
    table = [(c.lhs, c.const, c.body, dict(c.expansion))
             for c in st.constraints]
    assert table == [
        (1, 0, {3: -1, 5: 1, 6: 1}, {3: 1, 5: 1, 6: 1}),
        (1, 0, {6: 1}, {5: 2, 6: 1}),
        (2, 1, {5: -1, 6: -1}, {5: 1, 6: 1}),
        (4, 1, {5: -1, 6: -1}, {5: 1, 6: 1}),
    ]
    assert expansion_profile(st) == [3, 3, 2, 2]


def test_partition_needs_no_substitution():
    st0 = initial_state(gen_partition(6))
    assert st0.fixpoint
    st1 = substitute(st0)
    assert st1 == st0
    assert expansion_profile(st1) == [2, 2]
    assert rank_of_subst(st1) == (2, 4)


def test_single_clause():
    st = substitute(initial_state(XsatFormula(3, ((1, 2, 3),))))
    assert rank_of_subst(st) == (1, 2)


def test_idempotence_random():
    rng = SplitMix64(5)
    for trial in range(40):
        r = 6 + rng.randbelow(7)
        k_lo = -(-r // 3)
        k = k_lo + rng.randbelow(r - k_lo + 1)
        f = gen_random(GenSpec(r=r, k=k, seed=trial * 13 + 1))
        once = substitute(initial_state(f))
        assert substitute(once) == once


def test_solutions_satisfy_fixpoint_constraints():
    rng = SplitMix64(6)
    for trial in range(15):
        r = 6 + rng.randbelow(4)
        k = -(-r // 3) + rng.randbelow(3)
        f = gen_random(GenSpec(r=r, k=min(k, r), seed=trial + 400))
        st = substitute(initial_state(f))
        for model in naive_models(f):
            for con in st.constraints:
                assert con.satisfied_by(model)


def test_independent_count_never_exceeds_elimination_rank(six_var):
    rng = SplitMix64(7)
    for trial in range(25):
        r = 6 + rng.randbelow(7)
        k = -(-r // 3) + rng.randbelow(4)
        f = gen_random(GenSpec(r=r, k=min(k, r), seed=trial + 900))
        subst_rank, _ = rank_of_subst(substitute(initial_state(f)))
        gauss_rank, _ = rank_of(f)
        assert subst_rank <= gauss_rank
    # the two ranks genuinely disagree on this instance: the rewrite keeps
    # two constraints solved for variable 1, so it reports 3 against 4
    st = substitute(initial_state(six_var))
    assert rank_of_subst(st)[0] == 3
    assert rank_of(six_var)[0] == 4


def test_fixpoint_invariant_no_solved_var_in_any_body():
    rng = SplitMix64(8)
    for trial in range(20):
        r = 6 + rng.randbelow(6)
        k = -(-r // 3) + rng.randbelow(4)
        f = gen_random(GenSpec(r=r, k=min(k, r), seed=trial + 50))
        st = substitute(initial_state(f))
        solved = st.independent
        for con in st.constraints:
            assert all(v not in solved for v, _ in con.coeffs)
        assert st.dependent == frozenset(range(1, r + 1)) - solved


def test_sweep_is_quadratically_bounded():
    rng = SplitMix64(9)
    for trial in range(15):
        r = 9 + rng.randbelow(4)
        k = -(-r // 3) + rng.randbelow(5)
        f = gen_random(GenSpec(r=r, k=min(k, r), seed=trial + 800))
        st = initial_state(f)
        cons = [{"lhs": c.lhs, "const": c.const, "coeffs": dict(c.coeffs),
                 "expansion": dict(c.expansion)} for c in st.constraints]
        assert _sweep(cons) <= f.num_clauses ** 2
        assert _sweep(cons) == 0  # second pass is a no-op


def test_substitute_requires_sorted_state(six_var):
    st = initial_state(six_var)
    scrambled = type(st)(st.num_vars, tuple(reversed(st.constraints)),
                         st.independent, st.dependent, st.fixpoint,
                         st.inconsistent)
    with pytest.raises(ContractError):
        substitute(scrambled)


def test_rank_and_profile_require_fixpoint():
    f = XsatFormula(4, ((1, 2, 3), (2, 3, 4)))
    st = initial_state(f)
    assert not st.fixpoint
    with pytest.raises(ContractError):
        rank_of_subst(st)
    with pytest.raises(ContractError):
        expansion_profile(st)


def test_conflicting_empty_bodies_flagged():
    a = LinearConstraint(1, 1, (), ())
    b = LinearConstraint(1, 0, (), ())
    assert _make_state(1, [a, b]).inconsistent
    assert not _make_state(1, [a, a]).inconsistent
