from fractions import Fraction as F
from itertools import product

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from homnambu.catalog import build_heisenberg, build_sl2
from homnambu.dersolve import check_derivation, solve_derivations
from homnambu.errors import ArityError, DimensionError, PreconditionError
from homnambu.exactlin import Matrix
from homnambu.homcore import HomAlgebra, ad, ad_k, check_hom_nambu, eval_bracket
from homnambu.nuplet import (
    build_nuplet,
    check_ad_lemma,
    check_cyclic,
    check_derivation_transfer_n,
    check_first_pair_alternation,
    check_gder_chain,
    check_lts_axioms,
    check_lts_fundamental,
    check_nuplet_axioms,
    iterated_bracket,
    recursion_discrepancies,
    twist_by_endo,
)

import oracles

E = {"H": (1, 0, 0), "X": (0, 1, 0), "Y": (0, 0, 1)}
LAMBDAS = [1, 2, F(3, 5)]


def it(g, word, reading="closed"):
    return iterated_bracket(g, len(word), [E[c] for c in word], reading)


def zero_binary(dim=3):
    return HomAlgebra(dim, 2, skew=True, multiplicative=True)


# -- iterated bracket -------------------------------------------------------------

def test_ternary_spot_values(sl2_2):
    assert it(sl2_2, "HXY") == (2, 0, 0)
    assert it(sl2_2, "HXH") == (0, -64, 0)


def test_n2_is_the_plain_bracket(sl2_2):
    assert it(sl2_2, "HX") == (0, 8, 0)
    assert build_nuplet(sl2_2, 2).table == sl2_2.table


def test_quaternary_spot_values(sl2_2):
    assert it(sl2_2, "HXHH") == (0, 512, 0)
    assert it(sl2_2, "XYXY") == (2, 0, 0)


# each 3- and 4-letter word on (H, X, Y) with a nonzero value, as a closed form in lam
TABLE = {
    "HXY": lambda l: (2, 0, 0),
    "HXH": lambda l: (0, -4 * l ** 4, 0),
    "HYX": lambda l: (2, 0, 0),
    "HYH": lambda l: (0, 0, -4 / l ** 4),
    "XYY": lambda l: (0, 0, -2 / l ** 4),
    "XYX": lambda l: (0, 2 * l ** 4, 0),
    "HXHH": lambda l: (0, 8 * l ** 6, 0),
    "HXHY": lambda l: (-4, 0, 0),
    "HYHH": lambda l: (0, 0, -8 / l ** 6),
    "HYHX": lambda l: (4, 0, 0),
    "HXYX": lambda l: (0, 4 * l ** 6, 0),
    "HXYY": lambda l: (0, 0, -4 / l ** 6),
    "HYXX": lambda l: (0, 4 * l ** 6, 0),
    "HYXY": lambda l: (0, 0, -4 / l ** 6),
    "XYXY": lambda l: (2, 0, 0),
    "XYXH": lambda l: (0, -4 * l ** 6, 0),
    "XYYX": lambda l: (2, 0, 0),
    "XYYH": lambda l: (0, 0, -4 / l ** 6),
}


@pytest.mark.parametrize("lam", LAMBDAS)
@pytest.mark.parametrize("word", sorted(TABLE))
def test_bracket_table_closed_forms(lam, word):
    lam = F(lam)
    assert it(build_sl2(lam), word) == TABLE[word](lam)


@pytest.mark.parametrize("lam", LAMBDAS)
@pytest.mark.parametrize("n", [3, 4])
def test_every_basis_word_matches_the_matrix_model(lam, n):
    g = build_sl2(lam)
    for word in product("HXY", repeat=n):
        mine = it(g, word)
        ref = oracles.sl2_iterated(lam, word)
        assert tuple(sp.Rational(x.numerator, x.denominator) for x in mine) == ref, word


def test_ternary_equals_yau_composition(sl2_2):
    # [[x, y], alpha z] with the binary bracket evaluated independently
    g3 = build_nuplet(sl2_2, 3)
    tab = oracles.sym_table(sl2_2)
    alpha = oracles.sym_matrix(sl2_2.alpha)
    units = [sp.eye(3)[:, i] for i in range(3)]
    for x, y, z in product(range(3), repeat=3):
        inner = oracles.bracket(tab, 3, 2, [units[x], units[y]])
        ref = oracles.bracket(tab, 3, 2, [inner, alpha * units[z]])
        got = g3.table.get((x, y, z), (0, 0, 0))
        assert list(ref) == [sp.Rational(c.numerator, c.denominator) for c in map(F, got)]


def test_iterated_bracket_argument_errors(sl2_2):
    with pytest.raises(ArityError):
        iterated_bracket(sl2_2, 3, [E["H"], E["X"]])
    with pytest.raises(ArityError):
        iterated_bracket(sl2_2, 1, [E["H"]])
    with pytest.raises(DimensionError):
        iterated_bracket(sl2_2, 2, [(1, 0), (0, 1)])
    with pytest.raises(ValueError):
        iterated_bracket(sl2_2, 2, [E["H"], E["X"]], reading="sideways")


def test_iterated_bracket_needs_binary_input(sl2_2):
    with pytest.raises(ArityError):
        iterated_bracket(build_nuplet(sl2_2, 3), 3, [E["H"]] * 3)


# -- build_nuplet ---------------------------------------------------------

def test_build_nuplet_metadata(sl2_2):
    g4 = build_nuplet(sl2_2, 4)
    assert g4.arity == 4
    assert g4.alpha == sl2_2.alpha.power(3)
    assert g4.provenance.construction == "nuplet" and g4.provenance.n == 4
    assert g4.provenance.source is sl2_2
    assert not g4.skew
    assert g4.name == f"{sl2_2.name}_4"


def test_zero_binary_gives_zero_nuplet():
    assert build_nuplet(zero_binary(), 4).is_zero()


def test_bad_source_is_refused():
    g = build_sl2(2).replace(twists=Matrix.diag([1, 2, 3]))
    with pytest.raises(PreconditionError) as err:
        build_nuplet(g, 3)
    assert not err.value.report.passed


def test_nuplet_is_not_fully_skew(sl2_2):
    # only the first two slots alternate
    g3 = build_nuplet(sl2_2, 3)
    assert it(sl2_2, "HXH") != (0, 0, 0)
    assert g3.table.get((0, 1, 0)) != tuple(-x for x in g3.table.get((0, 0, 1), (0, 0, 0)))


# -- axioms ---------------------------------------------------------------

@pytest.mark.parametrize("lam", LAMBDAS)
def test_triple_system_axioms(lam):
    r = check_lts_axioms(build_nuplet(build_sl2(lam), 3))
    assert r.passed
    counts = {c.identity_name: c.instances for c in r.details}
    assert counts["cyclic-sum"] == 27
    assert counts["lts-fundamental-identity"] == 243


@pytest.mark.parametrize("n", [3, 4])
def test_nuplet_axioms(sl2_2, n):
    assert check_nuplet_axioms(build_nuplet(sl2_2, n)).passed


def test_cyclic_spot_value(sl2_2):
    total = [a + b + c for a, b, c in zip(it(sl2_2, "HXY"), it(sl2_2, "XYH"), it(sl2_2, "YHX"))]
    assert it(sl2_2, "XYH") == (0, 0, 0)
    assert it(sl2_2, "YHX") == (-2, 0, 0)
    assert total == [0, 0, 0]


def test_zero_ternary_passes():
    S = HomAlgebra(3, 3, skew=False, multiplicative=True)
    assert check_lts_axioms(S).passed
    assert check_nuplet_axioms(S).passed


def test_lts_axioms_need_arity_three(sl2_2):
    with pytest.raises(ArityError):
        check_lts_axioms(build_nuplet(sl2_2, 4))


def test_alternation_mutation_is_caught(sl2_2):
    g3 = build_nuplet(sl2_2, 3)
    tab = dict(g3.table)
    tab[(0, 0, 1)] = (1, 0, 0)
    bad = g3.replace(table=tab)
    r = check_first_pair_alternation(bad)
    assert not r.passed
    assert r.counterexample.indices == (0, 0, 1)


def test_alternation_checks_sums(sl2_2):
    # [e0, e1] = [e1, e0] leaves the diagonal zero but breaks alternation on e0 + e1
    S = HomAlgebra(2, 3, {(0, 1, 0): (1, 0), (1, 0, 0): (1, 0)}, skew=False)
    r = check_first_pair_alternation(S)
    assert not r.passed
    assert "e_i + e_j" in r.counterexample.detail


@pytest.mark.parametrize("t", list(product(range(3), repeat=3)))
def test_every_single_mutation_of_g3_is_caught(sl2_2, t):
    g3 = build_nuplet(sl2_2, 3)
    tab = dict(g3.table)
    old = list(tab.get(t, (0, 0, 0)))
    old[t[0]] += 1
    tab[t] = tuple(old)
    r = check_lts_axioms(g3.replace(table=tab))
    assert not r.passed
    assert r.counterexample is not None


def test_cyclic_and_fundamental_catch_separately(sl2_2):
    g3 = build_nuplet(sl2_2, 3)
    tab = dict(g3.table)
    tab[(0, 1, 2)] = (3, 0, 0)
    bad = g3.replace(table=tab)
    assert not check_cyclic(bad).passed
    assert check_lts_fundamental(g3).passed


# -- twist by an endomorphism ------------------------------------------------------

@pytest.mark.parametrize("lam", LAMBDAS)
def test_twisting_classical_sl2_gives_the_family(lam):
    lam = F(lam)
    a = Matrix.diag([1, lam ** 2, 1 / lam ** 2])
    out = twist_by_endo(build_sl2(1), a)
    ref = build_sl2(lam)
    assert out.table == ref.table
    assert out.alpha == ref.alpha


def test_twist_heisenberg():
    out = twist_by_endo(build_heisenberg(3), Matrix.diag([2, 1, 2]))
    assert eval_bracket(out, [(1, 0, 0), (0, 1, 0)]) == (0, 0, 2)
    assert check_hom_nambu(out).passed


def test_twist_by_identity_is_unchanged(h3):
    out = twist_by_endo(h3, Matrix.identity(3))
    assert out.table == h3.table and out.alpha == h3.alpha


def test_incompatible_map_is_refused(h3):
    with pytest.raises(PreconditionError):
        twist_by_endo(h3, Matrix.diag([2, 1, 1]))


def test_twist_wrong_size(h3):
    with pytest.raises(DimensionError):
        twist_by_endo(h3, Matrix.identity(2))


def test_twisted_nuplet_system_keeps_the_axioms(sl2_1):
    # a Lie triple system with twist id, twisted by an automorphism
    S = build_nuplet(sl2_1, 3)
    a = Matrix.diag([1, 4, F(1, 4)])
    out = twist_by_endo(S, a)
    assert out.alpha == a
    assert check_nuplet_axioms(out).passed
    assert check_lts_axioms(out).passed


# -- derivation transfer --------------------------------------------------------

def test_inner_derivation_transfers(sl2_1):
    r = check_derivation_transfer_n(sl2_1, 3, ad(sl2_1, [E["H"]]), 0)
    assert r.passed
    # 27 Leibniz triples plus 9 commutation entries
    assert r.details[1].instances == 36


def test_zero_map_transfers(sl2_2):
    assert check_derivation_transfer_n(sl2_2, 3, Matrix.zeros(3, 3), 0).passed


def test_twisted_inner_derivation_transfers(sl2_2):
    D = ad_k(sl2_2, [E["H"]], 0)
    assert check_derivation(sl2_2, D, 1).passed
    assert check_derivation_transfer_n(sl2_2, 3, D, 1).passed


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("k", [0, 1])
def test_every_solved_derivation_transfers(sl2_2, n, k):
    for (D,) in solve_derivations(sl2_2, k).maps():
        assert check_derivation_transfer_n(sl2_2, n, D, k).passed


def test_transfer_precondition(sl2_2):
    J = Matrix.from_columns([E["X"], E["H"], E["Y"]])
    r = check_derivation_transfer_n(sl2_2, 3, J, 0)
    assert r.status == "precondition-failed"
    assert not r.passed


def test_scaled_chain(sl2_2):
    I = Matrix.identity(3)
    assert check_gder_chain(sl2_2, 3, [I, I * 2, I * 4], 0).passed


def test_derivation_chain(sl2_2):
    (D,) = solve_derivations(sl2_2, 0).maps()[0]
    for n in (3, 4):
        assert check_gder_chain(sl2_2, n, [D] * n, 0).passed


def test_zero_chain(sl2_2):
    Z = Matrix.zeros(3, 3)
    assert check_gder_chain(sl2_2, 3, [Z, Z, Z], 0).passed


def test_chain_names_the_bad_pair(sl2_2):
    I = Matrix.identity(3)
    r = check_gder_chain(sl2_2, 3, [I, I * 2, I * 5], 0)
    assert r.status == "precondition-failed"
    assert "(1, 2)" in r.counterexample.detail


def test_chain_length(sl2_2):
    I = Matrix.identity(3)
    with pytest.raises(DimensionError):
        check_gder_chain(sl2_2, 3, [I, I], 0)


# -- lemma, recursion diagnostic ------------------------------------------------

@pytest.mark.parametrize("lam", LAMBDAS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_ad_lemma(lam, n):
    assert check_ad_lemma(build_sl2(lam), n).passed


def test_ad_lemma_on_heisenberg(h4):
    assert check_ad_lemma(h4, 3).passed


def test_readings_agree_when_the_twist_is_identity(sl2_1):
    assert recursion_discrepancies(sl2_1, 3) == []
    assert recursion_discrepancies(sl2_1, 4) == []


def test_literal_recursion_differs_for_nontrivial_twist(sl2_2):
    bad = recursion_discrepancies(sl2_2, 4)
    assert (0, 1, 0, 2) in bad
    # the literal reading loses the alpha^2 on the last slot
    assert it(sl2_2, "HXHY") == (-4, 0, 0)
    assert it(sl2_2, "HXHY", "literal-recursion") == (-64, 0, 0)
    assert (0, 1, 2) in recursion_discrepancies(sl2_2, 3)


# -- properties ---------------------------------------------------------------

lams = st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(lambda x: x != 0)


@settings(max_examples=15, deadline=None)
@given(lams)
def test_g3_is_a_triple_system_for_any_lambda(lam):
    assert check_lts_axioms(build_nuplet(build_sl2(lam), 3)).passed


@settings(max_examples=25, deadline=None)
@given(lams, st.lists(st.sampled_from("HXY"), min_size=2, max_size=4))
def test_first_pair_alternation_for_any_word(lam, tail):
    g = build_sl2(lam)
    word = [tail[0]] + tail
    assert it(g, word) == (0, 0, 0)
