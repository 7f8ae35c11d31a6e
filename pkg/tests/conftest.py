import pytest

from xsat import XsatFormula


@pytest.fixture
def six_var():
    # Four overlapping clauses over six variables.  Elimination rank is 4;
    # the substitution method solves two constraints for variable 1 and
    # reports independent set {1, 2, 4}.  Exactly three models.
    return XsatFormula(6, ((1, 2, 3), (4, 5, 6), (2, 5, 6), (1, 2, 5)))


@pytest.fixture
def dense_unsat():
    # The equation system is rationally consistent (all entries 1/3) and
    # full rank, yet no 0/1 solution exists.
    return XsatFormula(4, ((1, 2, 3), (2, 3, 4), (1, 2, 4), (1, 3, 4)))


@pytest.fixture
def two_clause_sat():
    return XsatFormula(4, ((1, 2, 3), (2, 3, 4)))
