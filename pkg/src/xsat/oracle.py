"""Ground truth by exhaustive enumeration over all 2^r assignments.

This module is the arbiter of correctness for the algebraic pipeline.  It
must stay trivially auditable, so there are two independent counters: a
Gray-code walk with incremental clause bookkeeping (fast enough for the
full test suite) and a plain double loop over assignments and clauses.
The two are cross-checked against each other in the tests, so the oracle
itself has an oracle.
"""

from __future__ import annotations

from .formula import (
    BOTTOM,
    Assignment,
    CapacityError,
    CnfFormula,
    XsatFormula,
    eval_xsat,
)

ORACLE_CAP = 24


def _check_cap(num_vars: int, cap: int):
    if num_vars > cap:
        raise CapacityError(
            f"{num_vars} variables exceed enumeration cap {cap}")


def naive_count(f: XsatFormula, cap: int = ORACLE_CAP) -> int:
    """Exact model count by walking all 2^r assignments in Gray-code order.

    Works on negation-bearing formulas as well as positive ones.  Flipping
    one bit per step, each clause's count of true literals is maintained
    incrementally, along with the number of clauses currently sitting at
    exactly one true literal.
    """
    r = f.num_vars
    _check_cap(r, cap)
    k = f.num_clauses

    # occurrences[v] = [(clause index, +1 for plain / -1 for negated), ...]
    occurrences: list[list[tuple[int, int]]] = [[] for _ in range(r)]
    true_lits = [0] * k
    for ci, clause in enumerate(f.clauses):
        for lit in clause:
            if lit == BOTTOM:
                continue
            occurrences[abs(lit) - 1].append((ci, 1 if lit > 0 else -1))
            if lit < 0:
                true_lits[ci] += 1  # negated literals are true at all-zeros

    exactly_one = sum(1 for t in true_lits if t == 1)
    count = 1 if exactly_one == k else 0
    bits = 0
    for step in range(1, 1 << r):
        v = (step & -step).bit_length() - 1
        bits ^= 1 << v
        rising = bits >> v & 1
        for ci, sign in occurrences[v]:
            delta = sign if rising else -sign
            old = true_lits[ci]
            new = old + delta
            true_lits[ci] = new
            if old == 1:
                exactly_one -= 1
            if new == 1:
                exactly_one += 1
        if exactly_one == k:
            count += 1
    return count


def naive_count_reference(f: XsatFormula, cap: int = 16) -> int:
    """Straightforward double-loop counter; the check on naive_count."""
    _check_cap(f.num_vars, cap)
    r = f.num_vars
    return sum(
        1 for m in range(1 << r)
        if eval_xsat(f, tuple((m >> i) & 1 for i in range(r))))


def naive_models(f: XsatFormula, cap: int = 20) -> list[Assignment]:
    """All satisfying assignments, in lexicographic order of the bit tuple."""
    _check_cap(f.num_vars, cap)
    r = f.num_vars
    out = []
    for m in range(1 << r):
        a = tuple((m >> i) & 1 for i in range(r))
        if eval_xsat(f, a):
            out.append(a)
    return out


def naive_count_cnf(f: CnfFormula, cap: int = ORACLE_CAP) -> int:
    """Satisfying-assignment count under ordinary disjunctive semantics."""
    _check_cap(f.num_vars, cap)
    pos_masks = []
    neg_masks = []
    for clause in f.clauses:
        p = n = 0
        for lit in clause:
            if lit > 0:
                p |= 1 << (lit - 1)
            else:
                n |= 1 << (-lit - 1)
        pos_masks.append(p)
        neg_masks.append(n)
    full = (1 << f.num_vars) - 1
    count = 0
    for m in range(1 << f.num_vars):
        inv = m ^ full
        if all(m & p or inv & n for p, n in zip(pos_masks, neg_masks)):
            count += 1
    return count
