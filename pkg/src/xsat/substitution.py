"""Constraint-rewriting preprocessor: the substitution method.

Each positive clause is first put in normal form: solve for its lowest
variable, so {p2, p5, p6} reads p2 = 1 - p5 - p6.  Constraints are sorted
ascending by their solved variable, then rewritten to a fixpoint: whenever
some constraint's solved variable occurs in another constraint's body, the
occurrence is replaced by the defining right-hand side and the result is
normalized (like terms combined, constants folded, zero coefficients
dropped).  Body coefficients are signed integers; chains of rewrites
produce coefficients other than -1, including cancellations.

At the fixpoint the solved variables form the independent set N and the
remaining variables the dependent set; enumeration only ever needs to
search the dependent side.  Two constraints may share a solved variable
(the rewrite keeps both); the extra one acts as a consistency filter when
the kernel is enumerated.

Alongside the exact algebra, every constraint carries an unsigned
occurrence multiset: substituting a variable splices in the source body's
occurrences without sign cancellation.  Its total is the constraint's
expansion size, the cost measure used for representation-size reporting,
and on adversarial chains it grows like a Fibonacci sequence even though
the signed bodies collapse.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import BOTTOM, Assignment, Triple, XsatError, XsatFormula
from .linsys import EncodingError


class DegenerateClauseError(XsatError):
    """Clause has no variable to solve for (all literals are bottom)."""


class ContractError(XsatError):
    """Operation requires a fixpoint state."""


@dataclass(frozen=True)
class LinearConstraint:
    """``lhs = const + sum(coeff * var)`` with an occurrence multiset.

    ``coeffs`` maps body variables to signed integer coefficients (no zero
    entries, lhs never among them); ``expansion`` maps body variables to
    unsigned occurrence counts accumulated by the rewrite process.
    """

    lhs: int
    const: int
    coeffs: tuple[tuple[int, int], ...]
    expansion: tuple[tuple[int, int], ...]

    @property
    def body(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def expansion_size(self) -> int:
        return sum(n for _, n in self.expansion)

    def satisfied_by(self, a: Assignment) -> bool:
        """Exact integer identity check against a full 0/1 assignment."""
        rhs = self.const + sum(c * a[v - 1] for v, c in self.coeffs)
        return a[self.lhs - 1] == rhs


def _freeze(d: dict[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(d.items()))


@dataclass(frozen=True)
class SubstitutionState:
    """Ordered constraints plus the independent/dependent variable split."""

    num_vars: int
    constraints: tuple[LinearConstraint, ...]
    independent: frozenset[int]
    dependent: frozenset[int]
    fixpoint: bool
    inconsistent: bool


def normalize_clause(t: Triple) -> LinearConstraint:
    """Solve a positive clause for its lowest variable; bottom is dropped."""
    vs = sorted(l for l in t if l != BOTTOM)
    if not vs:
        raise DegenerateClauseError(f"clause {t} has no variable to solve for")
    if vs[0] < 0:
        raise EncodingError(f"negated literal in clause {t}")
    lhs, rest = vs[0], vs[1:]
    coeffs = {v: -1 for v in rest}
    return LinearConstraint(lhs, 1, _freeze(coeffs), _freeze({v: 1 for v in rest}))


def _make_state(num_vars: int, cons: list[LinearConstraint]) -> SubstitutionState:
    independent = frozenset(c.lhs for c in cons)
    dependent = frozenset(range(1, num_vars + 1)) - independent
    fixpoint = all(v not in independent for c in cons for v, _ in c.coeffs)
    by_lhs: dict[int, list[LinearConstraint]] = {}
    for c in cons:
        by_lhs.setdefault(c.lhs, []).append(c)
    inconsistent = any(
        a.coeffs == b.coeffs and a.const != b.const
        for group in by_lhs.values()
        for i, a in enumerate(group)
        for b in group[i + 1:])
    return SubstitutionState(num_vars, tuple(cons), independent, dependent,
                             fixpoint, inconsistent)


def initial_state(f: XsatFormula) -> SubstitutionState:
    """Normalize every clause and sort ascending by solved variable."""
    cons = [normalize_clause(t) for t in f.clauses]
    cons.sort(key=lambda c: c.lhs)  # stable: ties keep clause order
    return _make_state(f.num_vars, cons)


def _sweep(cons: list[dict]) -> int:
    """One full rewrite pass, highest-index source first; returns the number
    of elementary substitutions performed."""
    performed = 0
    n = len(cons)
    for i in range(n - 1, -1, -1):
        src = cons[i]
        for j in range(n - 1, -1, -1):
            if j == i:
                continue
            tgt = cons[j]
            g = tgt["coeffs"].get(src["lhs"], 0)
            if g == 0:
                continue
            del tgt["coeffs"][src["lhs"]]
            tgt["const"] += g * src["const"]
            for v, c in src["coeffs"].items():
                nv = tgt["coeffs"].get(v, 0) + g * c
                if nv:
                    tgt["coeffs"][v] = nv
                else:
                    tgt["coeffs"].pop(v, None)
            m = tgt["expansion"].pop(src["lhs"], 0)
            if m:
                for v, c in src["expansion"].items():
                    tgt["expansion"][v] = tgt["expansion"].get(v, 0) + m * c
            performed += 1
    return performed


def substitute(state: SubstitutionState) -> SubstitutionState:
    """Rewrite to a fixpoint; idempotent and solution-set preserving.

    Every elementary step subtracts one constraint from another, so the
    integer solution set never changes.  With constraints sorted ascending
    by solved variable, one highest-source-first pass already reaches the
    fixpoint; passes repeat until nothing changes, bounded by the
    constraint count, and exceeding the bound is an internal error.
    """
    lhss = [c.lhs for c in state.constraints]
    if lhss != sorted(lhss):
        raise ContractError("constraints must be sorted ascending by solved variable")
    cons = [
        {"lhs": c.lhs, "const": c.const, "coeffs": dict(c.coeffs),
         "expansion": dict(c.expansion)}
        for c in state.constraints
    ]
    for _ in range(len(cons) + 1):
        if _sweep(cons) == 0:
            break
    else:
        raise AssertionError("substitution failed to reach a fixpoint")
    out = [
        LinearConstraint(c["lhs"], c["const"], _freeze(c["coeffs"]),
                         _freeze(c["expansion"]))
        for c in cons
    ]
    return _make_state(state.num_vars, out)


def _require_fixpoint(state: SubstitutionState):
    if not state.fixpoint:
        raise ContractError("state is not a substitution fixpoint")


def rank_of_subst(state: SubstitutionState) -> tuple[int, int]:
    """(|independent set|, |dependent set|) of a fixpoint state."""
    _require_fixpoint(state)
    return len(state.independent), state.num_vars - len(state.independent)


def expansion_profile(state: SubstitutionState) -> list[int]:
    """Per-constraint expansion sizes (occurrences counted with multiplicity),
    in state order."""
    _require_fixpoint(state)
    return [c.expansion_size for c in state.constraints]
