"""Finite-dimensional n-ary Hom-Nambu algebras given by structure constants.

An algebra of dimension ``d`` and arity ``n`` stores, for each ordered
basis index tuple ``(i_1, ..., i_n)``, the coordinates of
``[e_{i_1}, ..., e_{i_n}]``.  Only nonzero values are kept.  Twisting maps
are square :class:`~homnambu.exactlin.Matrix` objects, one per slot
``1 .. n-1``.

Every checker quantifies over basis tuples only, which is exhaustive by
multilinearity, and reports the lexicographically first failing tuple.
Indices are 0-based everywhere in the API; labels are used for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from types import MappingProxyType
from typing import Any, Mapping, Sequence

from .errors import ArityError, DimensionError, PreconditionError
from .exactlin import ONE, ZERO, Matrix, scalar, unit_vector, vector

SparseVec = dict  # {index: Fraction}, zeros dropped


# ---------------------------------------------------------------------------
# sparse vector helpers (internal)
# ---------------------------------------------------------------------------

def _sparse(v: Sequence) -> SparseVec:
    return {i: x for i, x in enumerate(v) if x}


def _dense(v: SparseVec, dim: int) -> tuple[Fraction, ...]:
    return tuple(v.get(i, ZERO) for i in range(dim))


def _axpy(out: SparseVec, c: Fraction, v: SparseVec) -> None:
    for i, x in v.items():
        y = out.get(i, ZERO) + c * x
        if y:
            out[i] = y
        else:
            out.pop(i, None)


def _add(u: SparseVec, v: SparseVec, c: Fraction = ONE) -> SparseVec:
    out = dict(u)
    _axpy(out, c, v)
    return out


def _columns(m: Matrix) -> list[SparseVec]:
    return [{i: m[i, j] for i in range(m.rows) if m[i, j]} for j in range(m.cols)]


def _apply_cols(cols: list[SparseVec], v: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for j, c in v.items():
        _axpy(out, c, cols[j])
    return out


def _matrix_from_images(images: Sequence[SparseVec], dim: int) -> Matrix:
    return Matrix([[images[j].get(i, ZERO) for j in range(dim)] for i in range(dim)], dim)


def alpha_power(alpha: Matrix, k: int) -> Matrix:
    """``alpha**k`` with the conventions ``alpha**0 = id`` and ``alpha**-1 = 0``."""
    if k == -1:
        return Matrix.zeros(alpha.rows)
    if k < -1:
        raise ValueError("twist exponent must be >= -1")
    return alpha.power(k)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    """A failing instance of an identity.

    ``indices`` is the basis index tuple (0-based) that was plugged in;
    ``lhs`` and ``rhs`` are the coordinate vectors (or 1-tuples for scalar
    identities) that should have been equal.
    """

    indices: tuple
    lhs: tuple
    rhs: tuple
    detail: str = ""


@dataclass(frozen=True)
class CheckReport:
    identity_name: str
    passed: bool
    counterexample: Counterexample | None = None
    instances: int = 0
    status: str = ""
    notes: tuple[str, ...] = ()
    details: tuple["CheckReport", ...] = ()
    informational: bool = False

    def __post_init__(self):
        if self.passed != (self.counterexample is None):
            raise ValueError("a report passes exactly when it has no counterexample")
        if not self.status:
            object.__setattr__(self, "status", "pass" if self.passed else "fail")

    def __bool__(self) -> bool:
        return self.passed


def passing(name: str, instances: int, notes=(), details=(), informational=False) -> CheckReport:
    return CheckReport(name, True, None, instances, "pass", tuple(notes), tuple(details),
                       informational)


def failing(name: str, cex: Counterexample, instances: int, status: str = "fail",
            notes=(), details=(), informational=False) -> CheckReport:
    return CheckReport(name, False, cex, instances, status, tuple(notes), tuple(details),
                       informational)


def combine(name: str, reports: Sequence[CheckReport], notes=()) -> CheckReport:
    """Aggregate sub-reports; the first non-informational failure is surfaced."""
    reports = tuple(reports)
    total = sum(r.instances for r in reports)
    for r in reports:
        if not r.passed and not r.informational:
            cex = r.counterexample
            cex = Counterexample(cex.indices, cex.lhs, cex.rhs,
                                 f"{r.identity_name}: {cex.detail}".rstrip(": "))
            return failing(name, cex, total, status=r.status, notes=notes, details=reports)
    return passing(name, total, notes=notes, details=reports)


# ---------------------------------------------------------------------------
# the algebra type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Provenance:
    """How an algebra was constructed; not part of algebra equality."""

    construction: str
    n: int | None = None
    source: Any = None
    reports: tuple = ()
    extra: Mapping = field(default_factory=dict)


class HomAlgebra:
    """An n-ary algebra with twisting maps, given by structure constants.

    ``table`` maps ordered index tuples to coordinate vectors; tuples not
    present evaluate to zero.  ``twists`` is either one matrix (used for
    every slot) or a sequence of ``arity - 1`` matrices; it defaults to
    the identity.  ``skew`` and ``multiplicative`` are claims carried as
    metadata and are verified by :func:`check_skew` and
    :func:`check_multiplicative`, never assumed.
    """

    def __init__(self, dim: int, arity: int, table: Mapping[tuple, Sequence] | None = None,
                 twists: Matrix | Sequence[Matrix] | None = None,
                 labels: Sequence[str] | None = None, name: str = "A",
                 skew: bool = False, multiplicative: bool = False,
                 provenance: Provenance | None = None):
        if dim < 1:
            raise DimensionError("dimension must be positive")
        if arity < 2:
            raise ArityError("arity must be at least 2")
        self.dim = dim
        self.arity = arity
        self.name = name
        self.skew = bool(skew)
        self.multiplicative = bool(multiplicative)
        self.provenance = provenance
        if labels is None:
            labels = [f"e{i + 1}" for i in range(dim)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != dim or len(set(labels)) != dim:
            raise DimensionError("need exactly dim distinct basis labels")
        self.labels = labels

        if twists is None:
            twists = Matrix.identity(dim)
        if isinstance(twists, Matrix):
            twists = (twists,) * (arity - 1)
        twists = tuple(twists)
        if len(twists) != arity - 1:
            raise ArityError(f"need {arity - 1} twisting maps, got {len(twists)}")
        for t in twists:
            if t.shape != (dim, dim):
                raise DimensionError(f"twisting map of shape {t.shape} in dimension {dim}")
        self.twists = twists
        self._twist_cols = [_columns(t) for t in twists]

        sparse: dict[tuple, SparseVec] = {}
        for key, val in (table or {}).items():
            key = tuple(int(i) for i in key)
            if len(key) != arity:
                raise ArityError(f"bracket tuple {key} has length {len(key)}, arity is {arity}")
            if any(not 0 <= i < dim for i in key):
                raise DimensionError(f"index out of range in bracket tuple {key}")
            val = vector(val)
            if len(val) != dim:
                raise DimensionError(f"bracket value for {key} has length {len(val)}")
            sv = _sparse(val)
            if sv:
                sparse[key] = sv
        self._table = sparse
        self._dense_table = None

    # accessors
    @property
    def table(self) -> Mapping[tuple, tuple[Fraction, ...]]:
        """Nonzero structure constants as ``{index tuple: dense vector}``."""
        if self._dense_table is None:
            self._dense_table = MappingProxyType(
                {k: _dense(v, self.dim) for k, v in sorted(self._table.items())})
        return self._dense_table

    @property
    def alpha(self) -> Matrix:
        """The common twisting map; raises if the twists differ."""
        first = self.twists[0]
        if any(t != first for t in self.twists[1:]):
            raise PreconditionError("twisting maps differ; no single alpha")
        return first

    def has_single_twist(self) -> bool:
        return all(t == self.twists[0] for t in self.twists[1:])

    def basis_tuples(self, length: int | None = None):
        return product(range(self.dim), repeat=self.arity if length is None else length)

    def structure_constant(self, key: tuple) -> tuple[Fraction, ...]:
        v = self._table.get(tuple(key))
        return _dense(v, self.dim) if v else (ZERO,) * self.dim

    def is_zero(self) -> bool:
        return not self._table

    def replace(self, **changes) -> "HomAlgebra":
        kw = dict(dim=self.dim, arity=self.arity, table=self.table, twists=self.twists,
                  labels=self.labels, name=self.name, skew=self.skew,
                  multiplicative=self.multiplicative, provenance=self.provenance)
        kw.update(changes)
        return HomAlgebra(**kw)

    # internal evaluation on sparse vectors
    def _eval(self, args: Sequence[SparseVec]) -> SparseVec:
        out: SparseVec = {}
        table = self._table
        for combo in product(*(a.items() for a in args)):
            key = tuple(i for i, _ in combo)
            val = table.get(key)
            if val is None:
                continue
            c = ONE
            for _, x in combo:
                c *= x
            _axpy(out, c, val)
        return out

    def _twist(self, slot: int, v: SparseVec) -> SparseVec:
        return _apply_cols(self._twist_cols[slot], v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomAlgebra):
            return NotImplemented
        return (self.dim == other.dim and self.arity == other.arity
                and self._table == other._table and self.twists == other.twists
                and self.labels == other.labels and self.name == other.name
                and self.skew == other.skew and self.multiplicative == other.multiplicative)

    __hash__ = None

    def __repr__(self) -> str:
        return (f"HomAlgebra(name={self.name!r}, dim={self.dim}, arity={self.arity}, "
                f"nonzero={len(self._table)})")


NupletSystem = HomAlgebra


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _check_args(A: HomAlgebra, args: Sequence[Sequence], count: int) -> list[SparseVec]:
    if len(args) != count:
        raise ArityError(f"expected {count} arguments, got {len(args)}")
    out = []
    for a in args:
        a = vector(a)
        if len(a) != A.dim:
            raise DimensionError(f"argument of length {len(a)} in dimension {A.dim}")
        out.append(_sparse(a))
    return out


def eval_bracket(A: HomAlgebra, args: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Multilinear extension of the structure constants."""
    return _dense(A._eval(_check_args(A, args, A.arity)), A.dim)


def apply_twist(A: HomAlgebra, slot: int, v: Sequence) -> tuple[Fraction, ...]:
    return A.twists[slot].apply(v)


def skew_symmetrize(dim: int, arity: int, raw, **kwargs) -> HomAlgebra:
    """Build a skew algebra from values on strictly increasing tuples.

    ``raw`` is a mapping or an iterable of ``(tuple, vector)`` pairs; every
    other ordering is filled in with the sign of its sorting permutation
    and tuples with a repeated index are zero.
    """
    items = raw.items() if isinstance(raw, Mapping) else raw
    seen = {}
    for key, val in items:
        key = tuple(int(i) for i in key)
        if len(key) != arity:
            raise ArityError(f"tuple {key} does not have length {arity}")
        if any(b <= a for a, b in zip(key, key[1:])):
            raise ValueError(f"tuple {key} is not strictly increasing")
        if key in seen:
            raise ValueError(f"duplicate specification of tuple {key}")
        seen[key] = vector(val)
    table = {}
    for key, val in seen.items():
        for perm in _permutations_with_sign(arity):
            sign, order = perm
            permuted = tuple(key[i] for i in order)
            table[permuted] = val if sign > 0 else tuple(-x for x in val)
    kwargs.setdefault("skew", True)
    return HomAlgebra(dim, arity, table, **kwargs)


def _permutations_with_sign(n: int):
    from itertools import permutations
    for order in permutations(range(n)):
        inv = sum(1 for i, j in combinations(range(n), 2) if order[i] > order[j])
        yield (-1 if inv % 2 else 1), order


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def check_skew(A: HomAlgebra) -> CheckReport:
    """Swapping any two slots of any basis tuple negates the bracket."""
    n = A.arity
    count = 0
    for t in A.basis_tuples():
        base = A._table.get(t, {})
        for i, j in combinations(range(n), 2):
            s = list(t)
            s[i], s[j] = s[j], s[i]
            s = tuple(s)
            count += 1
            swapped = A._table.get(s, {})
            if _add(base, swapped) != {}:
                return failing("skew-symmetry",
                               Counterexample(t, _dense(swapped, A.dim),
                                              _dense({k: -x for k, x in base.items()}, A.dim),
                                              f"swap slots {i + 1},{j + 1}"),
                               count)
    return passing("skew-symmetry", count)


def check_multiplicative(A: HomAlgebra) -> CheckReport:
    """All twists equal and ``alpha[x_1..x_n] == [alpha x_1 .. alpha x_n]``."""
    if not A.has_single_twist():
        first = next(i for i, t in enumerate(A.twists) if t != A.twists[0])
        return failing("multiplicativity",
                       Counterexample((0, first), (), (), "twisting maps are not all equal"), 0)
    cols = A._twist_cols[0]
    count = 0
    for t in A.basis_tuples():
        count += 1
        lhs = _apply_cols(cols, A._table.get(t, {}))
        rhs = A._eval([cols[i] for i in t])
        if lhs != rhs:
            return failing("multiplicativity",
                           Counterexample(t, _dense(lhs, A.dim), _dense(rhs, A.dim)), count)
    return passing("multiplicativity", count)


def _nambu_scan(A: HomAlgebra, name: str) -> CheckReport:
    """Exhaustive Hom-Nambu identity over basis (2n-1)-tuples.

    ``[a_1 x_1, .., a_{n-1} x_{n-1}, [y_1..y_n]]
       == sum_i [a_1 y_1, .., a_{i-1} y_{i-1}, [x, y_i], a_i y_{i+1}, .., a_{n-1} y_n]``
    """
    n, d = A.arity, A.dim
    units = [{i: ONE} for i in range(d)]
    twisted = [[A._twist(s, units[j]) for j in range(d)] for s in range(n - 1)]
    ytuples = list(A.basis_tuples())
    inner = {t: A._table.get(t, {}) for t in ytuples}
    count = 0
    for x in product(range(d), repeat=n - 1):
        xs = [units[i] for i in x]
        ax = [twisted[s][x[s]] for s in range(n - 1)]
        adx = [A._eval(xs + [units[j]]) for j in range(d)]
        adax = [A._eval(ax + [units[j]]) for j in range(d)]
        if not any(adx) and not any(adax):
            count += len(ytuples)
            continue
        for y in ytuples:
            count += 1
            lhs = _apply_cols(adax, inner[y])
            rhs: SparseVec = {}
            for i in range(n):
                args = []
                for p in range(n):
                    if p < i:
                        args.append(twisted[p][y[p]])
                    elif p == i:
                        args.append(adx[y[p]])
                    else:
                        args.append(twisted[p - 1][y[p]])
                if args[i]:
                    _axpy(rhs, ONE, A._eval(args))
            if lhs != rhs:
                return failing(name, Counterexample(x + y, _dense(lhs, d), _dense(rhs, d),
                                                    "x-slots then y-slots"), count)
    return passing(name, count)


def check_hom_nambu(A: HomAlgebra) -> CheckReport:
    """Hom-Nambu identity on all basis tuples (Hom-Jacobi when n = 2)."""
    return _nambu_scan(A, "hom-nambu")


def check_hom_jacobi(A: HomAlgebra) -> CheckReport:
    """Cyclic form of the Hom-Jacobi condition for binary algebras."""
    if A.arity != 2:
        raise ArityError("Hom-Jacobi is defined for binary algebras")
    d = A.dim
    units = [{i: ONE} for i in range(d)]
    a = A.alpha
    acols = _columns(a)
    count = 0
    for x, y, z in product(range(d), repeat=3):
        count += 1
        total: SparseVec = {}
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            _axpy(total, ONE, A._eval([acols[p], A._eval([units[q], units[r]])]))
        if total:
            return failing("hom-jacobi", Counterexample((x, y, z), _dense(total, d),
                                                         (ZERO,) * d, "cyclic sum"), count)
    return passing("hom-jacobi", count)


def hom_lie_suite(A: HomAlgebra) -> CheckReport:
    """Skew-symmetry, Hom-Nambu and (when claimed) multiplicativity."""
    reports = [check_skew(A)]
    if A.multiplicative:
        reports.append(check_multiplicative(A))
    reports.append(check_hom_nambu(A))
    return combine("n-hom-lie" if A.arity > 2 else "hom-lie", reports)


# ---------------------------------------------------------------------------
# adjoint maps
# ---------------------------------------------------------------------------

def ad(A: HomAlgebra, X: Sequence[Sequence]) -> Matrix:
    """Matrix of ``y -> [x_1, .., x_{n-1}, y]``."""
    xs = _check_args(A, X, A.arity - 1)
    images = [A._eval(xs + [{j: ONE}]) for j in range(A.dim)]
    return _matrix_from_images(images, A.dim)


def is_alpha_fixed(A: HomAlgebra, x: Sequence) -> bool:
    x = vector(x)
    return A.alpha.apply(x) == x


def ad_k(A: HomAlgebra, X: Sequence[Sequence], k: int) -> Matrix:
    """Matrix of ``y -> [x_1, .., x_{n-1}, alpha^k(y)]`` for alpha-fixed ``X``."""
    _check_args(A, X, A.arity - 1)
    alpha = A.alpha
    for i, x in enumerate(X):
        if not is_alpha_fixed(A, x):
            raise PreconditionError(f"argument {i + 1} of X is not fixed by alpha")
    report = check_multiplicative(A)
    if not report.passed:
        raise PreconditionError("ad_k requires a multiplicative algebra", report)
    return ad(A, X) @ alpha_power(alpha, k)


# ---------------------------------------------------------------------------
# basis changes
# ---------------------------------------------------------------------------

def permute_basis(A: HomAlgebra, perm: Sequence[int]) -> HomAlgebra:
    """Relabel ``e_i -> e_{perm[i]}`` in structure constants and twists."""
    d = A.dim
    perm = list(perm)
    if sorted(perm) != list(range(d)):
        raise ValueError("not a permutation of the basis")
    table = {}
    for key, val in A.table.items():
        new = [ZERO] * d
        for i, x in enumerate(val):
            new[perm[i]] = x
        table[tuple(perm[i] for i in key)] = new
    twists = []
    for t in A.twists:
        m = [[ZERO] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                m[perm[i]][perm[j]] = t[i, j]
        twists.append(Matrix(m, d))
    labels = [None] * d
    for i, lbl in enumerate(A.labels):
        labels[perm[i]] = lbl
    return A.replace(table=table, twists=twists, labels=labels)


def basis_vector(A: HomAlgebra, i: int | str) -> tuple[Fraction, ...]:
    if isinstance(i, str):
        i = A.labels.index(i)
    return unit_vector(A.dim, i)


def combination(A: HomAlgebra, **coeffs) -> tuple[Fraction, ...]:
    """Vector from label keywords, e.g. ``combination(A, H=1, X=2)``."""
    v = [ZERO] * A.dim
    for lbl, c in coeffs.items():
        v[A.labels.index(lbl)] += scalar(c)
    return tuple(v)
