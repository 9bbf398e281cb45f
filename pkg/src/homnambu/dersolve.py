"""Derivation-type spaces of multiplicative Hom-Nambu algebras.

Each space is the kernel of a linear system in the entries of one or more
unknown endomorphisms.  Unknowns are ordered by endomorphism, then by
matrix entry in row-major order: entry ``(r, c)`` of map ``u`` is column
``u*d*d + r*d + c``.  ``D(e_c) = sum_r D[r, c] e_r``.

Only the derivation solver imposes commutation with alpha; the
quasiderivation, centroid and generalized solvers impose exactly their
displayed identity and nothing more.

Every solver also has a direct evaluator (``check_*``) that tests a
concrete map against the same identity on all basis tuples.  The
evaluators are what the transfer checks in :mod:`homnambu.induce` and
:mod:`homnambu.nuplet` use, and they accept an explicit ``power`` matrix
in place of ``alpha**k``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DimensionError, PreconditionError
from .exactlin import ONE, ZERO, Matrix, Subspace, kernel_basis, kernel_from_rows
from .homcore import (
    CheckReport,
    Counterexample,
    HomAlgebra,
    _apply_cols,
    _axpy,
    _columns,
    _dense,
    ad_k,
    alpha_power,
    check_multiplicative,
    combine,
    failing,
    passing,
)

KINDS = ("derivation", "quasiderivation", "centroid", "generalized", "inner")


@dataclass(frozen=True)
class SolutionSpace:
    kind: str
    k: int
    tuple_width: int
    dim_algebra: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def maps(self) -> list[tuple[Matrix, ...]]:
        """Basis elements reshaped into tuples of endomorphisms."""
        d = self.dim_algebra
        out = []
        for v in self.space.basis:
            out.append(tuple(Matrix.from_flat(v[u * d * d:(u + 1) * d * d], d)
                             for u in range(self.tuple_width)))
        return out

    def contains(self, *maps: Matrix) -> bool:
        if len(maps) != self.tuple_width:
            raise DimensionError(f"expected {self.tuple_width} maps")
        return self.space.contains(flatten_maps(maps))


def flatten_maps(maps: Sequence[Matrix]) -> tuple[Fraction, ...]:
    return tuple(x for m in maps for x in m.flatten())


def _require_multiplicative(A: HomAlgebra) -> Matrix:
    if not A.has_single_twist():
        raise PreconditionError("algebra has distinct twisting maps")
    report = check_multiplicative(A)
    if not report.passed:
        raise PreconditionError("algebra is not multiplicative", report)
    return A.alpha


# ---------------------------------------------------------------------------
# direct evaluators
# ---------------------------------------------------------------------------

def _power_cols(A: HomAlgebra, k: int, power: Matrix | None):
    if power is None:
        power = alpha_power(A.alpha, k)
    return _columns(power)


def _leibniz_terms(A: HomAlgebra, t, slot_maps, pcols):
    """``sum_i [P x_1, .., M_i x_i, .., P x_n]`` for basis tuple ``t``."""
    total = {}
    for i, mcols in enumerate(slot_maps):
        args = [pcols[j] if p != i else mcols[j] for p, j in enumerate(t)]
        if args[i]:
            _axpy(total, ONE, A._eval(args))
    return total


def check_commutes(D: Matrix, alpha: Matrix, name: str = "commutes-with-alpha") -> CheckReport:
    diff = D @ alpha - alpha @ D
    for r in range(diff.rows):
        for c in range(diff.cols):
            if diff[r, c]:
                return failing(name, Counterexample((r, c), ((D @ alpha)[r, c],),
                                                    ((alpha @ D)[r, c],), "matrix entry"),
                               r * diff.cols + c + 1)
    return passing(name, diff.rows * diff.cols)


def _scan_identity(A: HomAlgebra, name: str, outer: Matrix, slot_maps: Sequence[Matrix],
                   pcols) -> CheckReport:
    ocols = _columns(outer)
    scols = [_columns(m) for m in slot_maps]
    count = 0
    for t in A.basis_tuples():
        count += 1
        lhs = _apply_cols(ocols, A._table.get(t, {}))
        rhs = _leibniz_terms(A, t, scols, pcols)
        if lhs != rhs:
            return failing(name, Counterexample(t, _dense(lhs, A.dim), _dense(rhs, A.dim)),
                           count)
    return passing(name, count)


def check_derivation(A: HomAlgebra, D: Matrix, k: int, power: Matrix | None = None,
                     commute_with: Matrix | None = None) -> CheckReport:
    """``D alpha == alpha D`` and ``D[x] == sum_i [P x_1, .., D x_i, .., P x_n]``."""
    pcols = _power_cols(A, k, power)
    alpha = A.alpha if commute_with is None else commute_with
    comm = check_commutes(D, alpha)
    leib = _scan_identity(A, "leibniz", D, [D] * A.arity, pcols)
    return combine(f"alpha^{k}-derivation", [comm, leib])


def check_quasiderivation(A: HomAlgebra, D: Matrix, Dp: Matrix, k: int,
                          power: Matrix | None = None) -> CheckReport:
    """``sum_i [P x_1, .., D x_i, .., P x_n] == Dp[x]``."""
    pcols = _power_cols(A, k, power)
    return _scan_identity(A, f"alpha^{k}-quasiderivation", Dp, [D] * A.arity, pcols)


def check_centroid(A: HomAlgebra, th: Matrix, k: int, power: Matrix | None = None,
                   slot: int = 0) -> CheckReport:
    """``th[x] == [P x_1, .., th x_slot, .., P x_n]`` (``slot`` 0-based)."""
    pcols = _power_cols(A, k, power)
    ocols = _columns(th)
    tcols = _columns(th)
    count = 0
    name = f"alpha^{k}-centroid" + (f"[slot {slot + 1}]" if slot else "")
    for t in A.basis_tuples():
        count += 1
        lhs = _apply_cols(ocols, A._table.get(t, {}))
        args = [tcols[j] if p == slot else pcols[j] for p, j in enumerate(t)]
        rhs = A._eval(args)
        if lhs != rhs:
            return failing(name, Counterexample(t, _dense(lhs, A.dim), _dense(rhs, A.dim)),
                           count)
    return passing(name, count)


def check_centroid_all_slots(A: HomAlgebra, th: Matrix, k: int) -> CheckReport:
    """Derived check: the centroid identity holds with theta in every slot."""
    return combine(f"alpha^{k}-centroid-all-slots",
                   [check_centroid(A, th, k, slot=p) for p in range(A.arity)])


def check_generalized(A: HomAlgebra, Ds: Sequence[Matrix], k: int,
                      power: Matrix | None = None) -> CheckReport:
    """``Ds[n]([x]) == sum_i [P x_1, .., Ds[i-1] x_i, .., P x_n]``."""
    if len(Ds) != A.arity + 1:
        raise DimensionError(f"need {A.arity + 1} maps, got {len(Ds)}")
    pcols = _power_cols(A, k, power)
    return _scan_identity(A, f"(n+1)-ary alpha^{k}-derivation", Ds[-1], list(Ds[:-1]), pcols)


# ---------------------------------------------------------------------------
# linear system assembly
# ---------------------------------------------------------------------------

class _System:
    def __init__(self, d: int, width: int):
        self.d = d
        self.width = width
        self.ncols = width * d * d
        self.rows: dict[tuple, dict[int, Fraction]] = {}

    def col(self, u: int, r: int, c: int) -> int:
        return u * self.d * self.d + r * self.d + c

    def add(self, row: dict[int, Fraction]):
        row = {j: x for j, x in row.items() if x}
        if not row:
            return
        lead = row[min(row)]
        key = tuple(sorted((j, x / lead) for j, x in row.items()))
        self.rows.setdefault(key, row)

    def kernel(self) -> Subspace:
        return kernel_from_rows(self.rows.values(), self.ncols)


def _assemble(A: HomAlgebra, sys: _System, pcols, outer: Sequence[tuple[int, int]],
              slots: Sequence[tuple[int, int, int]]):
    """Add rows ``sum sign*outer(u)[x] + sum sign*[.., M_u x_i, ..] = 0``.

    ``outer`` holds ``(sign, u)``; ``slots`` holds ``(sign, u, i)``.
    """
    d = A.dim
    units = [{r: ONE} for r in range(d)]
    for t in A.basis_tuples():
        eqs: list[dict[int, Fraction]] = [dict() for _ in range(d)]
        val = A._table.get(t, {})
        for sign, u in outer:
            for s in range(d):
                row = eqs[s]
                for c, x in val.items():
                    j = sys.col(u, s, c)
                    row[j] = row.get(j, ZERO) + sign * x
        for sign, u, i in slots:
            base = [pcols[j] for j in t]
            for r in range(d):
                args = list(base)
                args[i] = units[r]
                w = A._eval(args)
                for s, x in w.items():
                    j = sys.col(u, r, t[i])
                    eqs[s][j] = eqs[s].get(j, ZERO) + sign * x
        for row in eqs:
            sys.add(row)


def _assemble_commutation(sys: _System, u: int, alpha: Matrix):
    d = sys.d
    for r in range(d):
        for c in range(d):
            row: dict[int, Fraction] = {}
            for m in range(d):
                a = alpha[m, c]
                if a:
                    j = sys.col(u, r, m)
                    row[j] = row.get(j, ZERO) + a
                b = alpha[r, m]
                if b:
                    j = sys.col(u, m, c)
                    row[j] = row.get(j, ZERO) - b
            sys.add(row)


def solve_derivations(A: HomAlgebra, k: int) -> SolutionSpace:
    alpha = _require_multiplicative(A)
    pcols = _columns(alpha_power(alpha, k))
    sys = _System(A.dim, 1)
    _assemble_commutation(sys, 0, alpha)
    _assemble(A, sys, pcols, outer=[(1, 0)], slots=[(-1, 0, i) for i in range(A.arity)])
    return SolutionSpace("derivation", k, 1, A.dim, sys.kernel())


def solve_quasiderivations(A: HomAlgebra, k: int) -> SolutionSpace:
    alpha = _require_multiplicative(A)
    pcols = _columns(alpha_power(alpha, k))
    sys = _System(A.dim, 2)
    _assemble(A, sys, pcols, outer=[(-1, 1)], slots=[(1, 0, i) for i in range(A.arity)])
    return SolutionSpace("quasiderivation", k, 2, A.dim, sys.kernel())


def solve_centroid(A: HomAlgebra, k: int) -> SolutionSpace:
    alpha = _require_multiplicative(A)
    pcols = _columns(alpha_power(alpha, k))
    sys = _System(A.dim, 1)
    _assemble(A, sys, pcols, outer=[(1, 0)], slots=[(-1, 0, 0)])
    return SolutionSpace("centroid", k, 1, A.dim, sys.kernel())


def solve_generalized(A: HomAlgebra, k: int) -> SolutionSpace:
    alpha = _require_multiplicative(A)
    pcols = _columns(alpha_power(alpha, k))
    n = A.arity
    sys = _System(A.dim, n + 1)
    _assemble(A, sys, pcols, outer=[(1, n)], slots=[(-1, i, i) for i in range(n)])
    return SolutionSpace("generalized", k, n + 1, A.dim, sys.kernel())


def fixed_subspace(alpha: Matrix) -> Subspace:
    """``{x : alpha x == x}``."""
    return kernel_basis(alpha - Matrix.identity(alpha.rows))


def inner_space(A: HomAlgebra, k: int) -> SolutionSpace:
    """Span of ``ad_k(A, X, k)`` over alpha-fixed tuples ``X``."""
    alpha = _require_multiplicative(A)
    fix = fixed_subspace(alpha).basis
    mats = []
    for X in product(fix, repeat=A.arity - 1):
        mats.append(ad_k(A, list(X), k).flatten())
    return SolutionSpace("inner", k, 1, A.dim, Subspace(A.dim * A.dim, mats))


def solve(A: HomAlgebra, kind: str, k: int) -> SolutionSpace:
    solvers = {
        "derivation": solve_derivations,
        "quasiderivation": solve_quasiderivations,
        "centroid": solve_centroid,
        "generalized": solve_generalized,
        "inner": inner_space,
    }
    if kind not in solvers:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return solvers[kind](A, k)


def verify_space(A: HomAlgebra, sol: SolutionSpace) -> CheckReport:
    """Substitute every basis element back into its defining identity."""
    reports = []
    for maps in sol.maps():
        if sol.kind == "derivation":
            reports.append(check_derivation(A, maps[0], sol.k))
        elif sol.kind == "quasiderivation":
            reports.append(check_quasiderivation(A, maps[0], maps[1], sol.k))
        elif sol.kind == "centroid":
            reports.append(check_centroid(A, maps[0], sol.k))
        elif sol.kind == "generalized":
            reports.append(check_generalized(A, maps, sol.k))
        elif sol.kind == "inner":
            reports.append(check_derivation(A, maps[0], sol.k + 1))
    reports = [replace(r, identity_name=f"basis-{i}") for i, r in enumerate(reports, start=1)]
    return combine(f"{sol.kind}-basis-soundness", reports)


def commutator(D1: Matrix, D2: Matrix) -> Matrix:
    if D1.shape != D2.shape or not D1.is_square():
        raise DimensionError("commutator needs square maps of equal size")
    return D1 @ D2 - D2 @ D1
