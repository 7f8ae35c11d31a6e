"""Exact one-in-three satisfiability: solving, counting, kernelization."""

from .formula import (
    BOTTOM,
    Assignment,
    CapacityError,
    CnfFormula,
    DimensionError,
    EmptyFormulaError,
    Triple,
    ValidationError,
    XsatError,
    XsatFormula,
    eval_xsat,
    kappa,
    validate,
)
from .generator import (
    GenSpec,
    SpecError,
    SplitMix64,
    gen_fib_chain,
    gen_fixed_rank,
    gen_partition,
    gen_random,
    generate,
)
from .io import (
    ParseError,
    emit_report,
    parse_dimacs_cnf,
    parse_xsat,
    serialize_cnf,
    serialize_xsat,
)
from .kernel import (
    KernelInstance,
    KernelRow,
    SolveReport,
    count_kernel,
    extract_kernel,
    kernel_from_substitution,
    repr_size,
    solve,
)
from .linsys import EncodingError, LinearSystem, RrefResult, encode_sys, gauss_jordan, rank_of
from .oracle import naive_count, naive_count_cnf, naive_models
from .reductions import (
    ReductionTrace,
    check_parsimony,
    reduce_cnf_to_xsat,
    reduce_xsat_to_positive,
)
from .substitution import (
    ContractError,
    LinearConstraint,
    SubstitutionState,
    expansion_profile,
    initial_state,
    normalize_clause,
    rank_of_subst,
    substitute,
)

__version__ = "0.1.0"
