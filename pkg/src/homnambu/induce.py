"""n-ary brackets induced on a Hom-Lie algebra by an alternating form.

Given a multiplicative Hom-Lie algebra ``(g, [ , ], alpha)`` and an
alternating ``(n-2)``-form ``phi``, the induced bracket is

    [x_1, .., x_n]_phi = sum_{i<j} (-1)^(i+j+1) phi(x_1, .., ^x_i, .., ^x_j, .., x_n) [x_i, x_j]

with 1-based ``i < j`` and the remaining arguments kept in their original
order.  For ``n = 3`` this is ``phi(x)[y,z] + phi(y)[z,x] + phi(z)[x,y]``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from .dersolve import check_centroid, check_derivation, check_quasiderivation
from .errors import ArityError, DimensionError, PreconditionError
from .exactlin import ONE, ZERO, Matrix, scalar, vector
from .homcore import (
    CheckReport,
    Counterexample,
    HomAlgebra,
    Provenance,
    _axpy,
    _columns,
    _dense,
    _sparse,
    alpha_power,
    check_hom_nambu,
    check_multiplicative,
    check_skew,
    combine,
    failing,
    passing,
)


def _sort_sign(t: tuple) -> tuple[int, tuple]:
    """Sign of the sorting permutation, or 0 when an index repeats."""
    if len(set(t)) != len(t):
        return 0, t
    inversions = sum(1 for a, b in combinations(t, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(t))


class Cochain:
    """Alternating ``degree``-linear form, stored on strictly increasing tuples."""

    def __init__(self, dim: int, degree: int, values: Mapping[tuple, object] | None = None,
                 name: str = "phi"):
        if degree < 0:
            raise ArityError("negative cochain degree")
        self.dim = dim
        self.degree = degree
        self.name = name
        stored: dict[tuple, Fraction] = {}
        for key, val in (values or {}).items():
            key = tuple(int(i) for i in key)
            if len(key) != degree:
                raise ArityError(f"cochain tuple {key} has length {len(key)}, degree is {degree}")
            if any(not 0 <= i < dim for i in key):
                raise DimensionError(f"index out of range in cochain tuple {key}")
            if any(b <= a for a, b in zip(key, key[1:])):
                raise ValueError(f"cochain tuple {key} is not strictly increasing")
            val = scalar(val)
            if val:
                stored[key] = val
        self.values = dict(sorted(stored.items()))

    @classmethod
    def dual_wedge(cls, dim: int, *indices: int, name: str = "phi") -> "Cochain":
        """``e_{i_1}^* ^ .. ^ e_{i_p}^*`` normalised to value 1 on the sorted tuple."""
        sign, key = _sort_sign(tuple(indices))
        if sign == 0:
            return cls(dim, len(indices), {}, name)
        return cls(dim, len(indices), {key: sign}, name)

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Cochain":
        return cls(dim, degree, {})

    def on_basis(self, t: Sequence[int]) -> Fraction:
        sign, key = _sort_sign(tuple(t))
        if sign == 0:
            return ZERO
        v = self.values.get(key)
        return ZERO if v is None else (v if sign > 0 else -v)

    def _eval_sparse(self, args: Sequence[dict]) -> Fraction:
        if self.degree == 0:
            return self.values.get((), ZERO)
        total = ZERO
        for combo in product(*(a.items() for a in args)):
            v = self.on_basis(tuple(i for i, _ in combo))
            if v:
                c = v
                for _, x in combo:
                    c *= x
                total += c
        return total

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.dim, self.degree, self.values) == (other.dim, other.degree, other.values)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Cochain(dim={self.dim}, degree={self.degree}, nonzero={len(self.values)})"


def eval_cochain(c: Cochain, args: Sequence[Sequence]) -> Fraction:
    if len(args) != c.degree:
        raise ArityError(f"cochain of degree {c.degree} given {len(args)} arguments")
    sparse = []
    for a in args:
        a = vector(a)
        if len(a) != c.dim:
            raise DimensionError(f"argument of length {len(a)} in dimension {c.dim}")
        sparse.append(_sparse(a))
    return c._eval_sparse(sparse)


def _require_binary(g: HomAlgebra):
    if g.arity != 2:
        raise ArityError(f"expected a binary algebra, got arity {g.arity}")


def _units(d: int):
    return [{i: ONE} for i in range(d)]


# ---------------------------------------------------------------------------
# coboundary and the wedge condition
# ---------------------------------------------------------------------------

def coboundary(g: HomAlgebra, c: Cochain) -> Cochain:
    """``df(u_1..u_{p+1}) = sum_{i<j} (-1)^(i+j+1) f([u_i,u_j], a u_1, .., ^u_i, .., ^u_j, .., a u_{p+1})``."""
    _require_binary(g)
    d, p = g.dim, c.degree
    units = _units(d)
    acols = _columns(g.alpha)
    values = {}
    for t in combinations(range(d), p + 1):
        total = ZERO
        for i, j in combinations(range(p + 1), 2):
            br = g._eval([units[t[i]], units[t[j]]])
            if not br:
                continue
            rest = [acols[t[m]] for m in range(p + 1) if m != i and m != j]
            sign = 1 if (i + j) % 2 else -1  # (-1)^((i+1)+(j+1)+1)
            total += sign * c._eval_sparse([br] + rest)
        if total:
            values[t] = total
    return Cochain(d, p + 1, values, name=f"d{c.name}")


def wedge_phi_dphi(g: HomAlgebra, c: Cochain, X: Sequence[Sequence], Y: Sequence[Sequence]
                   ) -> Fraction:
    """``sum_{i<j} (-1)^(i+j+1) phi(Y without y_i, y_j) phi(X, [y_i, y_j])``.

    For ``n = 3`` (empty ``X``) this is
    ``phi(x)phi([y,z]) + phi(y)phi([z,x]) + phi(z)phi([x,y])``.
    """
    _require_binary(g)
    n = c.degree + 2
    if len(X) != n - 3:
        raise ArityError(f"X must have {n - 3} entries for a degree-{c.degree} cochain")
    if len(Y) != n:
        raise ArityError(f"Y must have {n} entries for a degree-{c.degree} cochain")
    xs = [_sparse(vector(x)) for x in X]
    ys = [_sparse(vector(y)) for y in Y]
    return _wedge_sparse(g, c, xs, ys)


def _wedge_sparse(g, c, xs, ys) -> Fraction:
    n = len(ys)
    total = ZERO
    for i, j in combinations(range(n), 2):
        br = g._eval([ys[i], ys[j]])
        if not br:
            continue
        inner = c._eval_sparse(xs + [br])
        if not inner:
            continue
        rest = [ys[m] for m in range(n) if m != i and m != j]
        sign = 1 if (i + j) % 2 else -1  # (-1)^((i+1)+(j+1)+1)
        total += sign * c._eval_sparse(rest) * inner
    return total


def check_wedge_condition(g: HomAlgebra, c: Cochain) -> CheckReport:
    """``phi ^ d phi_X == 0`` for every basis ``(n-3)``-tuple X and n-tuple Y."""
    _require_binary(g)
    n = c.degree + 2
    d = g.dim
    units = _units(d)
    count = 0
    for x in product(range(d), repeat=n - 3):
        for y in product(range(d), repeat=n):
            count += 1
            v = _wedge_sparse(g, c, [units[i] for i in x], [units[i] for i in y])
            if v:
                return failing("wedge-condition", Counterexample(x + y, (v,), (ZERO,),
                                                                 "X-slots then Y-slots"), count)
    return passing("wedge-condition", count)


def check_alpha_invariance(g: HomAlgebra, c: Cochain) -> CheckReport:
    """``phi(alpha x_1, x_2, ..) == phi(x_1, x_2, ..)`` on basis tuples."""
    d = g.dim
    units = _units(d)
    acols = _columns(g.alpha)
    count = 0
    if c.degree == 0:
        return passing("alpha-invariance", 0)
    for t in product(range(d), repeat=c.degree):
        count += 1
        lhs = c._eval_sparse([acols[t[0]]] + [units[i] for i in t[1:]])
        rhs = c.on_basis(t)
        if lhs != rhs:
            return failing("alpha-invariance", Counterexample(t, (lhs,), (rhs,)), count)
    return passing("alpha-invariance", count)


def check_bracket_annihilation(g: HomAlgebra, c: Cochain) -> CheckReport:
    """``phi(x_1, .., x_{p-1}, [y, z]) == 0`` on basis tuples."""
    _require_binary(g)
    d = g.dim
    units = _units(d)
    count = 0
    if c.degree == 0:
        return passing("bracket-annihilation", 0)
    for t in product(range(d), repeat=c.degree + 1):
        count += 1
        br = g._eval([units[t[-2]], units[t[-1]]])
        v = c._eval_sparse([units[i] for i in t[:-2]] + [br]) if br else ZERO
        if v:
            return failing("bracket-annihilation", Counterexample(t, (v,), (ZERO,)), count)
    return passing("bracket-annihilation", count)


def check_trace(g: HomAlgebra, c: Cochain) -> CheckReport:
    """Both trace conditions: phi kills brackets and is alpha-invariant."""
    _require_binary(g)
    return combine("trace", [check_bracket_annihilation(g, c), check_alpha_invariance(g, c)])


def theorem_conditions(g: HomAlgebra, c: Cochain) -> CheckReport:
    """The two conditions characterising when the induced bracket is n-Hom-Lie."""
    return combine("induced-n-hom-lie-conditions",
                   [check_wedge_condition(g, c), check_alpha_invariance(g, c)])


# ---------------------------------------------------------------------------
# the induced bracket
# ---------------------------------------------------------------------------

def _induced_value(g: HomAlgebra, c: Cochain, args: Sequence[dict]) -> dict:
    n = len(args)
    out: dict = {}
    for i, j in combinations(range(n), 2):
        rest = [args[m] for m in range(n) if m != i and m != j]
        w = c._eval_sparse(rest)
        if not w:
            continue
        br = g._eval([args[i], args[j]])
        if br:
            sign = 1 if (i + j) % 2 else -1  # (-1)^((i+1)+(j+1)+1)
            _axpy(out, sign * w, br)
    return out


def induce_nbracket(g: HomAlgebra, c: Cochain, n: int | None = None,
                    verify: bool = False) -> HomAlgebra:
    """The algebra ``(g, [..]_phi, alpha)`` of arity ``degree + 2``.

    With ``verify`` the theorem conditions are evaluated, and when ``phi``
    is a trace the skew-symmetry and Hom-Nambu identity of the result are
    checked; all reports end up in ``result.provenance.reports``.
    """
    _require_binary(g)
    if n is None:
        n = c.degree + 2
    if n < 3:
        raise ArityError("induced brackets need n >= 3")
    if c.degree != n - 2:
        raise ArityError(f"cochain of degree {c.degree} cannot induce a {n}-ary bracket")
    if c.dim != g.dim:
        raise DimensionError("cochain and algebra dimensions differ")
    mult = check_multiplicative(g)
    if not mult.passed:
        raise PreconditionError("induced brackets need a multiplicative Hom-Lie algebra", mult)
    units = _units(g.dim)
    table = {}
    for t in product(range(g.dim), repeat=n):
        v = _induced_value(g, c, [units[i] for i in t])
        if v:
            table[t] = _dense(v, g.dim)
    invariant = check_alpha_invariance(g, c)
    result = HomAlgebra(g.dim, n, table, twists=g.alpha, labels=g.labels,
                        name=f"{g.name}_{c.name}", skew=g.skew,
                        multiplicative=g.multiplicative and invariant.passed)
    reports: tuple = ()
    if verify:
        conditions = theorem_conditions(g, c)
        trace = check_trace(g, c)
        reports = (conditions, trace)
        if trace.passed:
            reports += (combine("corollary", [check_skew(result), check_multiplicative(result),
                                              check_hom_nambu(result)]),)
    result.provenance = Provenance("induced", n=n, source=g, reports=reports,
                                   extra={"cochain": c})
    return result


# ---------------------------------------------------------------------------
# transfer of derivation-type maps
# ---------------------------------------------------------------------------

def _stage_failure(name: str, status: str, stage: CheckReport, notes=()) -> CheckReport:
    cex = stage.counterexample
    return failing(name, Counterexample(cex.indices, cex.lhs, cex.rhs,
                                        f"{stage.identity_name}: {cex.detail}".rstrip(": ")),
                   stage.instances, status=status, notes=notes, details=(stage,))


def check_form_hypothesis(c: Cochain, D: Matrix) -> CheckReport:
    """``sum_i phi(x_1, .., D x_i, .., x_p) == 0`` on basis p-tuples."""
    d = c.dim
    units = _units(d)
    dcols = _columns(D)
    count = 0
    for t in product(range(d), repeat=c.degree):
        count += 1
        total = ZERO
        for i in range(c.degree):
            args = [units[j] for j in t]
            args[i] = dcols[t[i]]
            total += c._eval_sparse(args)
        if total:
            return failing("form-hypothesis", Counterexample(t, (total,), (ZERO,)), count)
    return passing("form-hypothesis", count)


def check_transfer_derivation(g: HomAlgebra, c: Cochain, D: Matrix, k: int) -> CheckReport:
    """An alpha^k-derivation of g killed by phi is one of the induced algebra."""
    name = "transfer-derivation"
    pre = check_derivation(g, D, k)
    if not pre.passed:
        return _stage_failure(name, "precondition-failed", pre)
    hyp = check_form_hypothesis(c, D)
    if not hyp.passed:
        return _stage_failure(name, "hypothesis-failed", hyp, notes=("no claim made",))
    induced = induce_nbracket(g, c)
    concl = check_derivation(induced, D, k)
    details = (pre, hyp, concl)
    if not concl.passed:
        return failing(name, concl.counterexample, concl.instances, details=details)
    return passing(name, pre.instances + hyp.instances + concl.instances, details=details)


def check_transfer_quasi(g: HomAlgebra, c: Cochain, D: Matrix, Dp: Matrix, k: int
                         ) -> CheckReport:
    """A quasiderivation pair of g killed by phi stays one, same associate."""
    name = "transfer-quasiderivation"
    pre = check_quasiderivation(g, D, Dp, k)
    if not pre.passed:
        return _stage_failure(name, "precondition-failed", pre)
    hyp = check_form_hypothesis(c, D)
    if not hyp.passed:
        return _stage_failure(name, "hypothesis-failed", hyp, notes=("no claim made",))
    induced = induce_nbracket(g, c)
    concl = check_quasiderivation(induced, D, Dp, k)
    details = (pre, hyp, concl)
    if not concl.passed:
        return failing(name, concl.counterexample, concl.instances, details=details)
    return passing(name, pre.instances + hyp.instances + concl.instances, details=details)


def check_centroid_hypothesis(g: HomAlgebra, c: Cochain, th: Matrix, k: int) -> CheckReport:
    """``phi(th x_1, x_2, ..) [alpha^k x, y] == phi(x_1, x_2, ..) [th x, y]``.

    Quantified over all basis choices of ``x_1 .. x_{n-2}, x, y``; this
    reading of the implicit quantifiers is an interpretation.
    """
    d = g.dim
    units = _units(d)
    tcols = _columns(th)
    pcols = _columns(alpha_power(g.alpha, k))
    count = 0
    p = c.degree
    for t in product(range(d), repeat=p + 2):
        count += 1
        xs, x, y = t[:p], t[p], t[p + 1]
        args = [units[i] for i in xs]
        if p:
            args[0] = tcols[xs[0]]
        w1 = c._eval_sparse(args)
        w2 = c.on_basis(xs)
        lhs = {}
        rhs = {}
        if w1:
            _axpy(lhs, w1, g._eval([pcols[x], units[y]]))
        if w2:
            _axpy(rhs, w2, g._eval([tcols[x], units[y]]))
        if lhs != rhs:
            return failing("centroid-hypothesis",
                           Counterexample(t, _dense(lhs, d), _dense(rhs, d)), count)
    return passing("centroid-hypothesis", count,
                   notes=("quantifiers read as: for all basis x_1..x_{n-2}, x, y",))


def check_transfer_centroid(g: HomAlgebra, c: Cochain, th: Matrix, k: int) -> CheckReport:
    """An alpha^k-centroid of g satisfying the phi-compatibility stays one."""
    name = "transfer-centroid"
    pre = check_centroid(g, th, k)
    if not pre.passed:
        return _stage_failure(name, "precondition-failed", pre)
    hyp = check_centroid_hypothesis(g, c, th, k)
    if not hyp.passed:
        return _stage_failure(name, "hypothesis-failed", hyp, notes=("no claim made",))
    induced = induce_nbracket(g, c)
    concl = check_centroid(induced, th, k)
    details = (pre, hyp, concl)
    if not concl.passed:
        return failing(name, concl.counterexample, concl.instances, details=details,
                       notes=hyp.notes)
    return passing(name, pre.instances + hyp.instances + concl.instances, details=details,
                   notes=hyp.notes)
