from fractions import Fraction

import pytest

from eulerqp.algebra import tensor
from eulerqp.brackets import euler_bracket_table
from eulerqp.factorization import (
    OracleConfig,
    LocalisedAlgebraSpec,
    PREFIX_FAMILIES,
    a_to_b,
    alt_moment_map,
    b_to_a,
    cleared_factorisation,
    cleared_moment_map,
    factorisation_suite,
    prefix_bracket_expected,
    primed_factor_inverses,
    primed_factors,
    primed_generators,
    verify_cont_factorisation,
    verify_factorisation_iso,
    verify_last_pair_lemma,
    verify_prefix_brackets,
    verify_primed_forms,
)

CFG = OracleConfig()
H = Fraction(1, 2)


def test_localised_algebra_loops():
    spec = LocalisedAlgebraSpec(2)
    verts = spec.loop_vertices()
    assert verts[("a1", "b1")] == "2"
    assert verts[("a1", "b1", "a2", "b2")] == "2"
    assert verts[("b1", "a1")] == "1"
    assert verts[("b2", "a2", "b1", "a1")] == "1"
    assert len(verts) == 4
    with pytest.raises(ValueError):
        LocalisedAlgebraSpec(0)


def test_first_primed_generator_is_a1():
    pg = primed_generators(3)
    assert pg.a[1] == pg.algebra.gen("a1")
    assert pg.b[2] == pg.algebra.gen("b2")


def test_second_primed_generator():
    pg = primed_generators(2)
    alg = pg.algebra
    want = alg.gen("a2") + alg.gen("inv(<a1,b1>)") * alg.gen("a1")
    assert pg.a[2] == want
    # the other form agrees at matrix points
    assert CFG.is_zero(pg.a[2] - pg.a_alt[2])
    assert pg.a_alt[2] == alg.gen("a2") + alg.gen("a1") * alg.gen("inv(<b1,a1>)")


def test_factorisation_low_cases():
    pg = primed_generators(2)
    alg = pg.algebra
    f2, f1 = primed_factors(pg)
    assert a_to_b(alg, 1) == f2[1]
    assert CFG.is_zero(a_to_b(alg, 2) - f2[1] * f2[2])
    assert CFG.is_zero(b_to_a(alg, 2) - f1[2] * f1[1])


def test_factor_inverses():
    pg = primed_generators(3)
    f2, f1 = primed_factors(pg)
    g2, g1 = primed_factor_inverses(pg)
    alg = pg.algebra
    for l in range(1, 4):
        assert CFG.is_zero(f2[l] * g2[l] - alg.e(2))
        assert CFG.is_zero(g1[l] * f1[l] - alg.e(1))


def test_perturbed_generator_fails():
    pg = primed_generators(2)
    alg = pg.algebra
    f2, _ = primed_factors(pg)
    wrong = f2[1] * (alg.e(2) + alg.gen("a2") * alg.gen("b2"))
    assert not CFG.is_zero(a_to_b(alg, 2) - wrong)


def test_alt_moment_map_matches_continuants():
    pg = primed_generators(2)
    alg = pg.algebra
    phi = alt_moment_map(pg)
    assert CFG.is_zero(phi["2"] - a_to_b(alg, 2))
    assert CFG.is_zero(phi["1"] * b_to_a(alg, 2) - alg.e(1))


def test_primed_bracket_examples():
    pg = primed_generators(2)
    alg = pg.algebra
    db = euler_bracket_table(2, algebra=alg)
    a1 = alg.gen("a1")
    ap2 = pg.a[2]
    assert CFG.is_zero(db(ap2, ap2))
    assert CFG.is_zero(db(ap2, a1) - (tensor(ap2, a1) + tensor(a1, ap2)).scale(H))
    want = (tensor(ap2, alg.gen("a2")) + tensor(alg.gen("a2"), ap2)).scale(H) - tensor(ap2, ap2)
    assert CFG.is_zero(db(ap2, alg.gen("a2")) - want)


@pytest.mark.parametrize("family", PREFIX_FAMILIES)
def test_prefix_bracket_families_are_defined(family):
    alg = euler_bracket_table(3).algebra
    found = [prefix_bracket_expected(alg, family, i, j) for i in range(1, 4) for j in range(1, 4)]
    assert any(f is not None for f in found)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exact_lemmas(n):
    assert verify_prefix_brackets(n).passed
    assert verify_last_pair_lemma(n).passed
    assert cleared_factorisation(n).passed
    assert cleared_moment_map(n).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_oracle_factorisation(n):
    assert verify_primed_forms(n, CFG).passed
    assert verify_cont_factorisation(n, CFG).passed


def test_n1_isomorphism_is_identity():
    assert verify_factorisation_iso(1, CFG).passed


@pytest.mark.parametrize("n", [1, 2])
def test_full_suite(n):
    reports = factorisation_suite(n, CFG)
    assert len(reports) == 9
    bad = [(r.identity, r.failures[:2]) for r in reports if not r.passed]
    assert not bad
