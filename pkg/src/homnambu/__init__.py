"""Exact structure-constant computations for n-ary Hom-Nambu algebras."""

from .catalog import build_heisenberg, build_q_hv, build_sl2, check_graded_identities
from .dersolve import (
    commutator,
    inner_space,
    solve_centroid,
    solve_derivations,
    solve_generalized,
    solve_quasiderivations,
)
from .errors import (
    ArityError,
    DimensionError,
    FormatError,
    HomNambuError,
    PreconditionError,
    SemanticError,
)
from .exactlin import Matrix, Subspace, kernel_basis, rref, solve_block_system
from .fileformat import parse_algebra_file, parse_cochain_file, serialize_algebra
from .homcore import (
    CheckReport,
    HomAlgebra,
    ad,
    ad_k,
    check_hom_nambu,
    check_multiplicative,
    check_skew,
    eval_bracket,
    skew_symmetrize,
)
from .induce import Cochain, check_trace, coboundary, induce_nbracket
from .nuplet import build_nuplet, check_lts_axioms, check_nuplet_axioms, iterated_bracket

__version__ = "0.1.0"

__all__ = [
    "ad",
    "ad_k",
    "ArityError",
    "build_heisenberg",
    "build_nuplet",
    "build_q_hv",
    "build_sl2",
    "check_graded_identities",
    "check_hom_nambu",
    "check_lts_axioms",
    "check_multiplicative",
    "check_nuplet_axioms",
    "check_skew",
    "check_trace",
    "CheckReport",
    "coboundary",
    "Cochain",
    "commutator",
    "DimensionError",
    "eval_bracket",
    "FormatError",
    "HomAlgebra",
    "HomNambuError",
    "induce_nbracket",
    "inner_space",
    "iterated_bracket",
    "kernel_basis",
    "Matrix",
    "parse_algebra_file",
    "parse_cochain_file",
    "PreconditionError",
    "rref",
    "SemanticError",
    "serialize_algebra",
    "skew_symmetrize",
    "solve_block_system",
    "solve_centroid",
    "solve_derivations",
    "solve_generalized",
    "solve_quasiderivations",
    "Subspace",
]
