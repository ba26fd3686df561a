from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerqp.algebra import gamma_algebra
from eulerqp.continuants import (
    ContinuantDescriptor,
    NotAlternating,
    NotDecomposable,
    alternating,
    boalch_product,
    continuant,
    continuant_head,
    continued_fraction_convergent,
    convenient_formula_a,
    convenient_formula_b,
    curious_identity,
    gauss_decompose,
    mat_mul,
    matrix_continuant,
    parse_descriptor,
    scalar_continuant,
    term_count,
)


def test_small_continuants(g2):
    a1, b1, a2, b2 = (g2.gen(x) for x in ("a1", "b1", "a2", "b2"))
    e2 = g2.e(2)
    assert continuant(g2, ("a1", "b1")) == e2 + a1 * b1
    assert continuant(g2, ("b1", "a1")) == g2.e(1) + b1 * a1
    assert continuant(g2, ("a1", "b1", "a2")) == a1 * b1 * a2 + a2 + a1
    assert continuant(g2, ("a1", "b1", "a2", "b2")) == a1 * b1 * a2 * b2 + a1 * b1 + a1 * b2 + a2 * b2 + e2


def test_empty_continuant_needs_anchor(g1):
    with pytest.raises(ValueError):
        continuant(g1, ())
    assert continuant(g1, ContinuantDescriptor((), "2")) == g1.e(2)


def test_non_alternating_rejected(g2):
    with pytest.raises(NotAlternating):
        continuant(g2, ("a1", "a2"))
    with pytest.raises(NotAlternating):
        continuant(g2, ("e1",))


def test_descriptor_parsing():
    assert parse_descriptor("<a1,b1,a2>").sequence == ("a1", "b1", "a2")
    assert parse_descriptor(" a1 , b1 ").sequence == ("a1", "b1")


def test_alternating_names():
    assert alternating("a", 1, 2) == ("a1", "b1", "a2", "b2")
    assert alternating("b", 2, 1) == ("b2", "a2", "b1", "a1")


@pytest.mark.parametrize("k,expected", [(1, 1), (3, 3), (5, 8), (12, 233)])
def test_term_count(k, expected):
    assert term_count(k) == expected


def test_term_count_matches_expansion():
    alg = gamma_algebra(6)
    for k in range(1, 13):
        seq = alternating("a", 1, (k + 1) // 2)[:k]
        assert len(continuant(alg, seq).terms) == term_count(k)


seqs = st.integers(1, 10).flatmap(
    lambda k: st.tuples(st.sampled_from("ab"), st.lists(st.integers(1, 3), min_size=k, max_size=k))
)


@settings(max_examples=80, deadline=None)
@given(seqs)
def test_tail_and_head_recursions_agree(spec):
    alg = gamma_algebra(3)
    start, idx = spec
    other = "b" if start == "a" else "a"
    seq = [f"{start if p % 2 == 0 else other}{i}" for p, i in enumerate(idx)]
    assert continuant(alg, seq) == continuant_head(alg, seq)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_identities_in_path_algebra(m):
    alg = gamma_algebra(m)
    lhs, rhs = convenient_formula_a(alg, m)
    assert lhs == rhs
    if m >= 2:
        lhs, rhs = convenient_formula_b(alg, m)
        assert lhs == rhs
    lhs, rhs = curious_identity(alg, m)
    assert lhs == rhs


def test_matrix_continuant_examples():
    prod, form = matrix_continuant([1, 1])
    assert prod == form == ((1, 1), (1, 2))
    x1, x2 = sp.symbols("x1 x2")
    prod, form = matrix_continuant([x1, x2])
    assert sp.expand(prod[1][1] - (x2 * x1 + 1)) == 0
    assert prod[0] == (1, x1) and prod[1][0] == x2


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=2, max_size=8))
def test_matrix_continuant_random(xs):
    prod, form = matrix_continuant(xs)
    assert prod == form


def test_gauss_examples():
    u, d, low = gauss_decompose(((1, 0), (0, 1)))
    assert u == ((1, 0), (0, 1)) and d == ((1, 0), (0, 1)) and low == ((1, 0), (0, 1))
    u, d, low = gauss_decompose(((0, 1), (1, 1)))
    assert u == ((1, 1), (0, 1)) and d == ((-1, 0), (0, 1)) and low == ((1, 0), (1, 1))
    with pytest.raises(NotDecomposable):
        gauss_decompose(((1, 2), (3, 0)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=4, max_size=4).filter(lambda v: v[3] != 0))
def test_gauss_reconstructs(v):
    m = ((Fraction(v[0]), Fraction(v[1])), (Fraction(v[2]), Fraction(v[3])))
    u, d, low = gauss_decompose(m)
    assert mat_mul(mat_mul(u, d), low) == m


def test_continued_fractions():
    assert continued_fraction_convergent([1, 1, 1]) == (3, 2)
    assert continued_fraction_convergent([Fraction(5)]) == (5, 1)
    x1, x2 = sp.symbols("x1 x2")
    num, den = continued_fraction_convergent([x1, x2])
    assert sp.expand(num - (x1 * x2 + 1)) == 0 and den == x2
    with pytest.raises(ZeroDivisionError):
        continued_fraction_convergent([1, 0])


def test_boalch_n1():
    A, B = sp.symbols("A B")
    bp = boalch_product([A], [B])
    assert bp.matrix[0] == (1, A) and bp.matrix[1][0] == B
    assert sp.expand(bp.matrix[1][1] - (1 + B * A)) == 0
    assert bp.entries_match


def test_boalch_trivial_and_random():
    bp = boalch_product([0, 0, 0], [0, 0, 0])
    assert bp.matrix == ((1, 0), (0, 1)) and bp.s_tilde == 1
    import random

    rng = random.Random(5)
    for _ in range(20):
        a = [Fraction(rng.randint(-9, 9)) for _ in range(4)]
        b = [Fraction(rng.randint(-9, 9)) for _ in range(4)]
        bp = boalch_product(a, b)
        assert bp.entries_match
        if bp.s_tilde is not None and bp.moment_value != 0:
            assert bp.inverse_ok


def test_scalar_continuant_is_symmetric():
    xs = [Fraction(v) for v in (3, -1, 4, 1, 5)]
    assert scalar_continuant(xs) == scalar_continuant(xs[::-1])
