"""Example algebras: the sl2 lambda-family, Heisenberg fixtures, the
q-deformed Heisenberg-Virasoro algebra as a symbolic graded rule, and
random nilpotent algebras with trace forms for property tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable

from .errors import PreconditionError
from .exactlin import ONE, ZERO, Matrix, Subspace, kernel_basis, scalar
from .homcore import (
    CheckReport,
    Counterexample,
    HomAlgebra,
    combine,
    failing,
    passing,
    skew_symmetrize,
)
from .induce import Cochain, induce_nbracket
from .nuplet import build_nuplet, twist_by_endo


# ---------------------------------------------------------------------------
# finite-dimensional examples
# ---------------------------------------------------------------------------

def build_sl2(lam=1) -> HomAlgebra:
    """sl2 with bracket twisted by ``alpha = diag(1, lam^2, lam^-2)`` on (H, X, Y)."""
    lam = scalar(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    l2 = lam * lam
    raw = {
        (0, 1): (ZERO, 2 * l2, ZERO),
        (0, 2): (ZERO, ZERO, -2 / l2),
        (1, 2): (ONE, ZERO, ZERO),
    }
    return skew_symmetrize(3, 2, raw, twists=Matrix.diag([ONE, l2, 1 / l2]),
                           labels=("H", "X", "Y"), name=f"sl2_lambda_{_tag(lam)}",
                           multiplicative=True)


def build_heisenberg(dimension: int = 3) -> HomAlgebra:
    """``[e1, e2] = e3``; any further basis vectors are central."""
    if dimension not in (3, 4, 5):
        raise ValueError(f"unsupported Heisenberg dimension {dimension}; use 3, 4 or 5")
    e3 = tuple(ONE if i == 2 else ZERO for i in range(dimension))
    return skew_symmetrize(dimension, 2, {(0, 1): e3}, name=f"heis{dimension}",
                           multiplicative=True)


def build_twisted_heisenberg(a=2, b=3) -> HomAlgebra:
    """h4 twisted by the automorphism ``diag(a, b, ab, 1)``: ``[e1, e2] = ab e3``."""
    a, b = scalar(a), scalar(b)
    auto = Matrix.diag([a, b, a * b, ONE])
    out = twist_by_endo(build_heisenberg(4), auto)
    return out.replace(name="heis4_twisted")


def _tag(x: Fraction) -> str:
    return str(x).replace("/", "_").replace("-", "m")


# ---------------------------------------------------------------------------
# the q-deformed Heisenberg-Virasoro algebra
# ---------------------------------------------------------------------------

def q_number(n: int, q) -> Fraction:
    """``{n} = (1 - q^n) / (1 - q)``, valid for negative n as well."""
    q = scalar(q)
    if q == 1:
        raise ValueError("q-numbers need q != 1")
    return (1 - q ** n) / (1 - q)


def _gen_key(g: tuple[str, int]):
    return (0 if g[0] == "L" else 1, g[1])


def _gen_label(g: tuple[str, int]) -> str:
    return f"{g[0]}{g[1]}"


@dataclass(frozen=True)
class GradedRule:
    """Closed-form bracket and twist on generators ``L_m, I_m`` (m in Z).

    Elements are sparse dicts ``{(kind, m): coeff}``.  Nothing is
    truncated: ``window`` only bounds which generators the checkers sample.
    """

    q: Fraction
    window: tuple[int, int] = (-4, 4)

    def generators(self, window: tuple[int, int] | None = None) -> list[tuple[str, int]]:
        lo, hi = window or self.window
        return [(kind, m) for kind in ("L", "I") for m in range(lo, hi + 1)]

    def qn(self, n: int) -> Fraction:
        return q_number(n, self.q)

    def bracket_gen(self, a: tuple[str, int], b: tuple[str, int]) -> dict:
        (ka, m), (kb, n) = a, b
        if ka == "L" and kb == "L":
            c, kind = self.qn(m) - self.qn(n), "L"
        elif ka == "L" and kb == "I":
            c, kind = -self.qn(n), "I"
        elif ka == "I" and kb == "L":
            c, kind = self.qn(m), "I"
        else:
            c, kind = ZERO, "I"
        return {(kind, m + n): c} if c else {}

    def twist_gen(self, a: tuple[str, int]) -> dict:
        return {a: 1 + self.q ** a[1]}

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for g, c in self.bracket_gen(a, b).items():
                    out[g] = out.get(g, ZERO) + ca * cb * c
        return {g: c for g, c in out.items() if c}

    def twist(self, u: dict) -> dict:
        out: dict = {}
        for a, ca in u.items():
            for g, c in self.twist_gen(a).items():
                out[g] = out.get(g, ZERO) + ca * c
        return {g: c for g, c in out.items() if c}


def build_q_hv(q, window: tuple[int, int] = (-4, 4)) -> GradedRule:
    q = scalar(q)
    if q in (0, 1):
        raise ValueError("q must differ from 0 and 1")
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window {lo}..{hi}")
    return GradedRule(q, (lo, hi))


def _formal(u: dict) -> tuple:
    return tuple((_gen_label(g), u[g]) for g in sorted(u, key=_gen_key))


def _add_formal(*terms: dict) -> dict:
    out: dict = {}
    for t in terms:
        for g, c in t.items():
            out[g] = out.get(g, ZERO) + c
    return {g: c for g, c in out.items() if c}


def _unit(g) -> dict:
    return {g: ONE}


def check_graded_hom_jacobi(r: GradedRule, window=None) -> CheckReport:
    """Cyclic sum of ``[alpha(x), [y, z]]`` over generator triples."""
    gens = r.generators(window)
    count = 0
    for x, y, z in product(gens, repeat=3):
        count += 1
        terms = [
            r.bracket(r.twist(_unit(a)), r.bracket(_unit(b), _unit(c)))
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y))
        ]
        total = _add_formal(*terms)
        if total:
            return failing("hom-jacobi", Counterexample(
                tuple(_gen_label(g) for g in (x, y, z)), _formal(total), (),
                "cyclic sum is nonzero"), count)
    return passing("hom-jacobi", count)


def check_graded_skew(r: GradedRule, window=None) -> CheckReport:
    gens = r.generators(window)
    count = 0
    for a, b in product(gens, repeat=2):
        count += 1
        lhs = r.bracket(_unit(a), _unit(b))
        rhs = {g: -c for g, c in r.bracket(_unit(b), _unit(a)).items()}
        if lhs != rhs:
            return failing("skew-symmetry", Counterexample(
                (_gen_label(a), _gen_label(b)), _formal(lhs), _formal(rhs)), count)
    return passing("skew-symmetry", count)


def multiplicativity_defect(r: GradedRule, a, b) -> tuple[dict, dict]:
    """``(alpha([a, b]), [alpha(a), alpha(b)])`` for two generators."""
    lhs = r.twist(r.bracket(_unit(a), _unit(b)))
    rhs = r.bracket(r.twist(_unit(a)), r.twist(_unit(b)))
    return lhs, rhs


def check_graded_multiplicative(r: GradedRule, window=None,
                                informational: bool = True) -> CheckReport:
    gens = r.generators(window)
    count = 0
    for a, b in product(gens, repeat=2):
        count += 1
        lhs, rhs = multiplicativity_defect(r, a, b)
        if lhs != rhs:
            return failing("multiplicativity", Counterexample(
                (_gen_label(a), _gen_label(b)), _formal(lhs), _formal(rhs),
                "twist does not commute with the bracket"), count,
                status="fail", informational=informational,
                notes=("expected: this algebra is not multiplicative",))
    return passing("multiplicativity", count, informational=informational)


def check_graded_identities(r: GradedRule, window=None) -> CheckReport:
    """Hom-Jacobi and skew-symmetry (required) plus multiplicativity (informational)."""
    reports = [
        check_graded_hom_jacobi(r, window),
        check_graded_skew(r, window),
        check_graded_multiplicative(r, window),
    ]
    return combine("q-heisenberg-virasoro", reports,
                   notes=("skew-symmetry is the plain (even) sign law",))


def truncated_q_hv(r: GradedRule, window=None) -> HomAlgebra:
    """Finite slice spanned by the window generators.

    Brackets landing outside the window are dropped, so this is not a
    Hom-Lie algebra; it serves only to expose the multiplicativity
    failure through the finite-dimensional checkers.
    """
    gens = r.generators(window)
    index = {g: i for i, g in enumerate(gens)}
    d = len(gens)
    table = {}
    for a, b in product(gens, repeat=2):
        out = [ZERO] * d
        for g, c in r.bracket_gen(a, b).items():
            if g in index:
                out[index[g]] = c
        if any(out):
            table[(index[a], index[b])] = out
    alpha = Matrix.diag([r.twist_gen(g)[g] for g in gens])
    return HomAlgebra(d, 2, table, twists=alpha, labels=[_gen_label(g).replace("-", "m") for g in gens],
                      name="q_hv_slice", skew=True, multiplicative=True)


# ---------------------------------------------------------------------------
# random fixtures
# ---------------------------------------------------------------------------

def _rand_q(rng: random.Random, lo: int = -3, hi: int = 3) -> Fraction:
    den = rng.choice((1, 1, 2, 3))
    return Fraction(rng.randint(lo, hi), den)


def random_nilpotent(rng: random.Random, dim: int, derived: int) -> HomAlgebra:
    """A 2-step nilpotent Lie algebra, ``alpha = id``.

    The last ``derived`` coordinates are central and bracket values lie in
    them, so the Jacobi identity holds for any choice of coefficients.
    """
    free = dim - derived
    raw = {}
    for i, j in combinations(range(free), 2):
        v = [ZERO] * free + [_rand_q(rng) for _ in range(derived)]
        if any(v):
            raw[(i, j)] = v
    return skew_symmetrize(dim, 2, raw, name=f"nil{dim}", multiplicative=True)


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    total = ZERO
    for perm in permutations(range(n)):
        inv = sum(1 for a, b in combinations(range(n), 2) if perm[a] > perm[b])
        term = ONE
        for r in range(n):
            term *= rows[r][perm[r]]
            if not term:
                break
        total += -term if inv % 2 else term
    return total


def annihilator(A: HomAlgebra) -> Subspace:
    """Linear forms vanishing on the span of all bracket values."""
    images = [v for v in A.table.values() if any(v)]
    if not images:
        return Subspace.full(A.dim)
    return kernel_basis(Matrix(images))


def random_trace_cochain(rng: random.Random, A: HomAlgebra, degree: int) -> Cochain:
    """Random combination of wedges of forms that kill ``[A, A]``.

    With ``alpha = id`` this is a trace form of the requested degree.
    """
    forms = list(annihilator(A).basis)
    if len(forms) < degree:
        raise PreconditionError(f"annihilator of [A, A] has dimension {len(forms)} < {degree}")
    values: dict = {}
    for pick in combinations(range(len(forms)), degree):
        c = _rand_q(rng)
        if not c:
            continue
        fs = [forms[i] for i in pick]
        for t in combinations(range(A.dim), degree):
            val = _det([[f[j] for j in t] for f in fs])
            if val:
                values[t] = values.get(t, ZERO) + c * val
    values = {t: v for t, v in values.items() if v}
    return Cochain(A.dim, degree, values, name=f"phi{degree}")


def random_trace_pair(seed: int, max_dim: int = 5) -> tuple[HomAlgebra, Cochain, int]:
    """Seeded (algebra, trace cochain, n) with a nonzero bracket and a nonzero form."""
    rng = random.Random(seed)
    arities = [n for n in (3, 4) if n - 2 + 3 <= max_dim]
    if not arities:
        raise ValueError("random trace fixtures need max_dim >= 4")
    while True:
        n = rng.choice(arities)
        degree = n - 2
        dim = rng.randint(degree + 3, max_dim)
        derived = rng.randint(1, dim - degree - 1)
        A = random_nilpotent(rng, dim, derived)
        if A.is_zero():
            continue
        c = random_trace_cochain(rng, A, degree)
        if not c.is_zero():
            return A, c, n


# ---------------------------------------------------------------------------
# named catalog
# ---------------------------------------------------------------------------

def heis_cochain(dim: int) -> Cochain:
    """``e4*`` on h4, ``e4* ^ e5*`` on h5."""
    if dim == 4:
        return Cochain.dual_wedge(4, 3, name="e4")
    if dim == 5:
        return Cochain.dual_wedge(5, 3, 4, name="e4e5")
    raise ValueError("trace fixtures exist for dimensions 4 and 5")


def example_algebras() -> dict[str, HomAlgebra]:
    sl2_2 = build_sl2(2)
    cat = {
        "sl2": build_sl2(1),
        "sl2_lambda_2": sl2_2,
        "sl2_lambda_3_5": build_sl2(Fraction(3, 5)),
        "heis3": build_heisenberg(3),
        "heis4": build_heisenberg(4),
        "heis5": build_heisenberg(5),
        "heis4_twisted": build_twisted_heisenberg(),
        "sl2_lambda_2_n3": build_nuplet(sl2_2, 3),
        "sl2_lambda_2_n4": build_nuplet(sl2_2, 4),
        "heis4_e4_n3": induce_nbracket(build_heisenberg(4), heis_cochain(4), 3),
        "heis5_e4e5_n4": induce_nbracket(build_heisenberg(5), heis_cochain(5), 4),
    }
    return {name: A.replace(name=name) for name, A in cat.items()}


def example_cochains() -> dict[str, Cochain]:
    return {"heis4_e4": heis_cochain(4), "heis5_e4e5": heis_cochain(5)}


def example_names() -> Iterable[str]:
    return list(example_algebras()) + list(example_cochains())
