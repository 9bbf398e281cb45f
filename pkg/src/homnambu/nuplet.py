"""Hom-Lie triple systems and Hom-Lie n-uplet systems.

The main construction takes a multiplicative Hom-Lie algebra
``(g, [ , ], alpha)`` to ``g_n = (g, [..]_n, alpha^(n-1))`` with the
left-nested bracket

    [x_1, .., x_n]_n = [[..[[x_1, x_2], alpha x_3], alpha^2 x_4] .., alpha^(n-2) x_n]

The short recursion ``[x_1..x_n]_n = [[x_1..x_{n-1}]_{n-1}, x_n]`` drops
the alpha power on the last slot; it is available as
``reading="literal-recursion"`` for diagnostics only.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .dersolve import check_derivation, check_generalized, check_quasiderivation
from .errors import ArityError, DimensionError, PreconditionError
from .exactlin import ONE, ZERO, Matrix, vector
from .homcore import (
    CheckReport,
    Counterexample,
    HomAlgebra,
    Provenance,
    _add,
    _apply_cols,
    _axpy,
    _columns,
    _dense,
    _nambu_scan,
    _sparse,
    alpha_power,
    check_hom_nambu,
    check_multiplicative,
    check_skew,
    combine,
    failing,
    passing,
)

READINGS = ("closed", "literal-recursion")


def _require_binary(g: HomAlgebra):
    if g.arity != 2:
        raise ArityError(f"expected a binary algebra, got arity {g.arity}")


def _iterated_sparse(g: HomAlgebra, power_cols, args, reading: str = "closed"):
    acc = args[0]
    for m in range(1, len(args)):
        x = args[m]
        if reading == "closed" and m >= 2:
            x = _apply_cols(power_cols[m - 1], x)
        acc = g._eval([acc, x])
        if not acc:
            break
    return acc


def _power_table(g: HomAlgebra, n: int):
    alpha = g.alpha
    return [_columns(alpha_power(alpha, p)) for p in range(max(n - 1, 1))]


def iterated_bracket(g: HomAlgebra, n: int, args: Sequence[Sequence],
                     reading: str = "closed") -> tuple:
    """Left-nested bracket with ``alpha^(m-2)`` applied to argument ``m``."""
    _require_binary(g)
    if n < 2:
        raise ArityError("n must be at least 2")
    if len(args) != n:
        raise ArityError(f"expected {n} arguments, got {len(args)}")
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    sparse = []
    for a in args:
        a = vector(a)
        if len(a) != g.dim:
            raise DimensionError(f"argument of length {len(a)} in dimension {g.dim}")
        sparse.append(_sparse(a))
    return _dense(_iterated_sparse(g, _power_table(g, n), sparse, reading), g.dim)


def _nuplet_table(g: HomAlgebra, n: int, reading: str = "closed") -> dict:
    units = [{i: ONE} for i in range(g.dim)]
    powers = _power_table(g, n)
    table = {}
    for t in product(range(g.dim), repeat=n):
        v = _iterated_sparse(g, powers, [units[i] for i in t], reading)
        if v:
            table[t] = _dense(v, g.dim)
    return table


def build_nuplet(g: HomAlgebra, n: int, verify_source: bool = True) -> HomAlgebra:
    """``g_n``: structure constants of the iterated bracket, twist ``alpha^(n-1)``."""
    _require_binary(g)
    if n < 2:
        raise ArityError("n must be at least 2")
    if verify_source:
        reports = [check_skew(g), check_multiplicative(g), check_hom_nambu(g)]
        for r in reports:
            if not r.passed:
                raise PreconditionError(
                    f"source algebra fails {r.identity_name}; g_n needs a multiplicative "
                    "Hom-Lie algebra", r)
    twist = alpha_power(g.alpha, n - 1)
    return HomAlgebra(g.dim, n, _nuplet_table(g, n), twists=twist, labels=g.labels,
                      name=f"{g.name}_{n}", skew=(n == 2 and g.skew),
                      multiplicative=g.multiplicative,
                      provenance=Provenance("nuplet", n=n, source=g))


def recursion_discrepancies(g: HomAlgebra, n: int) -> list[tuple]:
    """Basis tuples where the literal recursion differs from the closed form."""
    closed = _nuplet_table(g, n, "closed")
    literal = _nuplet_table(g, n, "literal-recursion")
    return sorted(t for t in set(closed) | set(literal) if closed.get(t) != literal.get(t))


# ---------------------------------------------------------------------------
# axiom checkers
# ---------------------------------------------------------------------------

def check_first_pair_alternation(S: HomAlgebra) -> CheckReport:
    """``[x, x, y_1, ..] == 0`` for basis x and for sums of two basis vectors."""
    d, n = S.dim, S.arity
    units = [{i: ONE} for i in range(d)]
    count = 0
    for rest in product(range(d), repeat=n - 2):
        tail = [units[i] for i in rest]
        for i in range(d):
            count += 1
            v = S._table.get((i, i) + rest, {})
            if v:
                return failing("first-pair-alternation",
                               Counterexample((i, i) + rest, _dense(v, d), (ZERO,) * d), count)
        for i in range(d):
            for j in range(i + 1, d):
                count += 1
                s = {i: ONE, j: ONE}
                v = S._eval([s, s] + tail)
                if v:
                    return failing("first-pair-alternation",
                                   Counterexample((i, j) + rest, _dense(v, d), (ZERO,) * d,
                                                  "first two slots hold e_i + e_j"), count)
    return passing("first-pair-alternation", count)


def check_nuplet_axioms(S: HomAlgebra) -> CheckReport:
    """Axiom (1) first-two-slot alternation and axiom (2) the twisted fundamental identity."""
    reports = [check_first_pair_alternation(S), _nambu_scan(S, "fundamental-identity")]
    if S.multiplicative:
        reports.append(check_multiplicative(S))
    return combine("hom-lie-nuplet-system", reports)


def check_cyclic(S: HomAlgebra) -> CheckReport:
    """``[x,y,z] + [y,z,x] + [z,x,y] == 0``."""
    d = S.dim
    count = 0
    t = S._table
    for x, y, z in product(range(d), repeat=3):
        count += 1
        total = _add(_add(t.get((x, y, z), {}), t.get((y, z, x), {})), t.get((z, x, y), {}))
        if total:
            return failing("cyclic-sum", Counterexample((x, y, z), _dense(total, d),
                                                        (ZERO,) * d), count)
    return passing("cyclic-sum", count)


def check_lts_fundamental(S: HomAlgebra) -> CheckReport:
    """``[a u, a v, [x,y,z]] == [[u,v,x], a y, a z] + [a x, [u,v,y], a z] + [a x, a y, [u,v,z]]``."""
    d = S.dim
    units = [{i: ONE} for i in range(d)]
    acols = _columns(S.alpha)
    count = 0
    for u, v in product(range(d), repeat=2):
        adx = [S._eval([units[u], units[v], units[j]]) for j in range(d)]
        adax = [S._eval([acols[u], acols[v], units[j]]) for j in range(d)]
        for x, y, z in product(range(d), repeat=3):
            count += 1
            lhs = _apply_cols(adax, S._table.get((x, y, z), {}))
            rhs = {}
            _axpy(rhs, ONE, S._eval([adx[x], acols[y], acols[z]]))
            _axpy(rhs, ONE, S._eval([acols[x], adx[y], acols[z]]))
            _axpy(rhs, ONE, S._eval([acols[x], acols[y], adx[z]]))
            if lhs != rhs:
                return failing("lts-fundamental-identity",
                               Counterexample((u, v, x, y, z), _dense(lhs, d), _dense(rhs, d)),
                               count)
    return passing("lts-fundamental-identity", count)


def check_lts_axioms(S: HomAlgebra) -> CheckReport:
    """The three Hom-Lie triple system axioms, plus multiplicativity."""
    if S.arity != 3:
        raise ArityError("Lie triple system axioms need a ternary bracket")
    reports = [
        check_first_pair_alternation(S),
        check_cyclic(S),
        check_lts_fundamental(S),
        check_multiplicative(S),
    ]
    return combine("hom-lie-triple-system", reports)


# ---------------------------------------------------------------------------
# twisting and transfer
# ---------------------------------------------------------------------------

def twist_by_endo(A: HomAlgebra, a: Matrix) -> HomAlgebra:
    """``[x_1..x_n]_a = [a x_1, .., a x_n]`` with every twist replaced by ``a``."""
    if a.shape != (A.dim, A.dim):
        raise DimensionError("endomorphism has the wrong size")
    probe = A.replace(twists=a, multiplicative=True)
    compat = check_multiplicative(probe)
    if not compat.passed:
        raise PreconditionError("map does not commute with the bracket", compat)
    cols = _columns(a)
    table = {}
    for t in A.basis_tuples():
        v = A._eval([cols[i] for i in t])
        if v:
            table[t] = _dense(v, A.dim)
    return HomAlgebra(A.dim, A.arity, table, twists=a, labels=A.labels,
                      name=A.name, skew=A.skew, multiplicative=A.multiplicative,
                      provenance=Provenance("twist", n=A.arity, source=A))


def _precondition(name: str, stage: CheckReport) -> CheckReport:
    cex = stage.counterexample
    return failing(name, Counterexample(cex.indices, cex.lhs, cex.rhs,
                                        f"{stage.identity_name}: {cex.detail}".rstrip(": ")),
                   stage.instances, status="precondition-failed", details=(stage,))


def check_derivation_transfer_n(g: HomAlgebra, n: int, D: Matrix, k: int) -> CheckReport:
    """An alpha^k-derivation of g is an alpha^k-derivation of ``g_n``.

    The Leibniz rule on ``g_n`` inserts ``alpha^k`` of the source algebra
    in the untouched slots; commutation is required with the twist
    ``alpha^(n-1)`` of ``g_n``.
    """
    name = "transfer-derivation-nuplet"
    pre = check_derivation(g, D, k)
    if not pre.passed:
        return _precondition(name, pre)
    gn = build_nuplet(g, n)
    concl = check_derivation(gn, D, k, power=alpha_power(g.alpha, k))
    if not concl.passed:
        return failing(name, concl.counterexample, concl.instances, details=(pre, concl))
    return passing(name, pre.instances + concl.instances, details=(pre, concl))


def check_gder_chain(g: HomAlgebra, n: int, Ds: Sequence[Matrix], k: int) -> CheckReport:
    """A quasiderivation chain on g gives an (n+1)-ary derivation of ``g_n``.

    ``Ds = (D, D', .., D^(n-1))``; each ``(Ds[i], Ds[i+1])`` must be a
    binary alpha^k-quasiderivation pair.  The checked tuple on ``g_n`` is
    ``(D, D, D', .., D^(n-1))``.
    """
    name = "transfer-generalized-nuplet"
    if len(Ds) != n:
        raise DimensionError(f"a chain for n = {n} has {n} maps, got {len(Ds)}")
    pres = []
    for i in range(n - 1):
        r = check_quasiderivation(g, Ds[i], Ds[i + 1], k)
        pres.append(r)
        if not r.passed:
            bad = failing(f"pair {i}", r.counterexample, r.instances)
            out = _precondition(name, bad)
            return failing(name, Counterexample(out.counterexample.indices,
                                                out.counterexample.lhs, out.counterexample.rhs,
                                                f"pair ({i}, {i + 1}) is not a quasiderivation "
                                                "pair"),
                           r.instances, status="precondition-failed", details=tuple(pres))
    gn = build_nuplet(g, n)
    tuple_maps = [Ds[0]] + list(Ds)
    concl = check_generalized(gn, tuple_maps, k, power=alpha_power(g.alpha, k))
    details = tuple(pres) + (concl,)
    if not concl.passed:
        return failing(name, concl.counterexample, concl.instances, details=details)
    return passing(name, sum(r.instances for r in details), details=details)


def check_ad_lemma(g: HomAlgebra, n: int) -> CheckReport:
    """``ad_{alpha^(n-1) x}[y]_n == sum_k [alpha y_1, .., ad_x y_k, .., alpha y_n]_n``."""
    _require_binary(g)
    d = g.dim
    units = [{i: ONE} for i in range(d)]
    powers = _power_table(g, n)
    acols = _columns(g.alpha)
    top = _columns(alpha_power(g.alpha, n - 1))
    count = 0
    for x in range(d):
        adx = [g._eval([units[x], units[j]]) for j in range(d)]
        ax = top[x]
        for y in product(range(d), repeat=n):
            count += 1
            inner = _iterated_sparse(g, powers, [units[i] for i in y])
            lhs = g._eval([ax, inner]) if inner else {}
            rhs = {}
            for m in range(n):
                args = [acols[j] for j in y]
                args[m] = adx[y[m]]
                if args[m]:
                    _axpy(rhs, ONE, _iterated_sparse(g, powers, args))
            if lhs != rhs:
                return failing("ad-lemma", Counterexample((x,) + y, _dense(lhs, d),
                                                          _dense(rhs, d)), count)
    return passing("ad-lemma", count)
