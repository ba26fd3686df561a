import itertools
import random
from fractions import Fraction

import pytest

from eulerqp.algebra import Tensor, gamma_algebra, tensor
from eulerqp.brackets import (
    DoubleBracket,
    Polyvector,
    bracket_from_bivector,
    build_Pn,
    check_cyclic_antisymmetry,
    check_moment_map,
    check_quasi_poisson,
    check_S_equivariance,
    euler_bracket_table,
    h0_reduce,
    moment_map_inverse_rhs,
    moment_map_rhs,
    mu,
    mutate,
    partial,
    qp_triple_bracket,
    qp_via_mu,
    triple_bracket,
)
from eulerqp.continuants import alternating, continuant
from eulerqp.oracle import is_zero_probabilistic
from eulerqp.reports import random_loop

H = Fraction(1, 2)
Q = Fraction(1, 4)


@pytest.fixture(scope="module")
def db1():
    return euler_bracket_table(1)


@pytest.fixture(scope="module")
def db2():
    return euler_bracket_table(2)


def gens(alg, *names):
    return [alg.gen(x) for x in names]


def test_vanishes_on_same_arrow(db1):
    assert not db1("a1", "a1")


def test_a1_b1(db1):
    alg = db1.algebra
    a, b = gens(alg, "a1", "b1")
    e1, e2 = alg.e(1), alg.e(2)
    want = (tensor(b * a, e2) + tensor(e1, a * b)).scale(H) + tensor(e1, e2)
    assert db1(a, b) == want


def test_right_leibniz_example(db1):
    alg = db1.algebra
    a, b = gens(alg, "a1", "b1")
    e2 = alg.e(2)
    want = (tensor(a * b * a, e2) + tensor(a, a * b)).scale(H) + tensor(a, e2)
    assert db1(a, a * b) == want


def test_off_diagonal_entries(db2):
    alg = db2.algebra
    a1, a2, b1 = gens(alg, "a1", "a2", "b1")
    e1, e2 = alg.e(1), alg.e(2)
    assert db2(a2, b1) == (tensor(b1 * a2, e2) + tensor(e1, a2 * b1)).scale(-H) - tensor(e1, e2)
    assert db2(b1, a2) == (tensor(e2, b1 * a2) + tensor(a2 * b1, e1)).scale(H) + tensor(e2, e1)
    assert db2(a2, a1) == (tensor(a1, a2) + tensor(a2, a1)).scale(H)


def test_vanishes_on_idempotents(db2):
    alg = db2.algebra
    for v in alg.vertices:
        for x in alg.generators():
            assert not db2(alg.e(v), x)
            assert not db2(x, alg.e(v))


def test_cyclic_antisymmetry_and_S(n):
    db = euler_bracket_table(n)
    assert check_cyclic_antisymmetry(db) == []
    assert check_S_equivariance(db) == []


def test_triple_bracket_examples(db1):
    alg = db1.algebra
    a, b = gens(alg, "a1", "b1")
    e1, e2 = alg.e(1), alg.e(2)
    want = (tensor(b * a, a, e2) - tensor(e1, a, a * b)).scale(Q)
    assert triple_bracket(db1, a, a, b) == want
    assert qp_triple_bracket(alg, a, a, b) == want
    assert not triple_bracket(db1, e1, a, b)


def test_triple_bracket_three_distinct_a():
    db = euler_bracket_table(3)
    a1, a2, a3 = gens(db.algebra, "a1", "a2", "a3")
    want = (tensor(a3, a1, a2) - tensor(a1, a2, a3)).scale(Q)
    assert triple_bracket(db, a1, a2, a3) == want


def test_qp_triple_examples(g2):
    e2 = g2.e(2)
    assert not qp_triple_bracket(g2, e2, e2, e2)
    a1, a2, b1 = gens(g2, "a1", "a2", "b1")
    want = (tensor(b1 * a1, a2, g2.e(2)) - tensor(g2.e(1), a1, a2 * b1)).scale(Q)
    assert qp_triple_bracket(g2, a1, a2, b1) == want


def test_qp_closed_form_matches_mu(g2):
    via_mu = qp_via_mu(g2)
    for x, y, z in itertools.product(g2.generators(), repeat=3):
        assert qp_triple_bracket(g2, x, y, z) == via_mu(x, y, z)


def test_quasi_poisson(n):
    rep = check_quasi_poisson(euler_bracket_table(n))
    assert rep.passed, rep.failures[:3]
    assert rep.checked == (2 * n) ** 3


def test_a_triples_have_constant_coefficient():
    # every not-all-equal triple of a-arrows gives the same -1/4 coefficient
    db = euler_bracket_table(3)
    alg = db.algebra
    for i, j, k in itertools.product(range(1, 4), repeat=3):
        if i == j == k:
            continue
        x, y, z = gens(alg, f"a{i}", f"a{j}", f"a{k}")
        assert triple_bracket(db, x, y, z) == (tensor(z, x, y) - tensor(x, y, z)).scale(Q)


def test_mutation_breaks_quasi_poisson(db1):
    bad = mutate(db1, "a1", "b1")
    assert check_cyclic_antisymmetry(bad) == []
    rep = check_quasi_poisson(bad)
    assert not rep.passed
    assert "(a1,a1,b1)" in [lab for lab, _ in rep.failures]


def test_dropping_constant_term_keeps_quasi_poisson(db1):
    # the constant part e1⊗e2 has vanishing triple bracket with the rest
    alg = db1.algebra
    t = db1.entry("a1", "b1") - tensor(alg.e(1), alg.e(2))
    weak = db1.with_entry("a1", "b1", t).with_entry("b1", "a1", -t.tau12())
    assert check_quasi_poisson(weak).passed


def test_mutate_rejects_zero_entry(db1):
    with pytest.raises(ValueError):
        mutate(db1, "a1", "a1")


def test_moment_map_phi2_examples(n):
    db = euler_bracket_table(n)
    alg = db.algebra
    phi2 = continuant(alg, alternating("a", 1, n))
    e2 = alg.e(2)
    bn = alg.gen(f"b{n}")
    assert db(phi2, bn) == (tensor(bn, phi2) + tensor(bn * phi2, e2)).scale(H)
    for i in range(1, n + 1):
        ai = alg.gen(f"a{i}")
        assert db(phi2, ai) == (tensor(e2, phi2 * ai) + tensor(phi2, ai)).scale(-H)
    assert check_moment_map(db, phi2, 2).passed


def test_moment_map_phi1_inverse():
    n = 2
    alg = gamma_algebra(n, "moment")
    db = euler_bracket_table(n, algebra=alg)
    seq = alternating("b", n, 1)
    phi1 = alg.gen("inv(<" + ",".join(seq) + ">)")
    e1 = alg.e(1)
    for i in range(1, n + 1):
        b = alg.gen(f"b{n + 1 - i}")
        want = (tensor(phi1, b) + tensor(e1, phi1 * b)).scale(-H)
        assert is_zero_probabilistic(db(phi1, b) - want)
    for x in alg.generators():
        assert is_zero_probabilistic(db(phi1, x) - moment_map_rhs(alg, phi1, 1, x))
    # with the inverse cleared the identity is exact
    c = continuant(alg, seq)
    for x in alg.generators():
        assert db(c, x) == moment_map_inverse_rhs(alg, c, 1, x)


def test_moment_map_direct_rejects_inverses():
    alg = gamma_algebra(1, "moment")
    db = euler_bracket_table(1, algebra=alg)
    phi1 = alg.gen("inv(<b1,a1>)")
    with pytest.raises(ValueError):
        check_moment_map(db, phi1, 1)


def test_mu_on_basic_bivector(g1):
    p = Polyvector(g1, 2).add(1, partial(g1, "a1"), partial(g1, "b1"))
    assert mu(p)("a1", "b1") == tensor(g1.e(1), g1.e(2))
    assert not mu(Polyvector(g1, 2))("a1", "b1")
    with pytest.raises(ValueError):
        mu(Polyvector(g1, 4))


def test_bivector_reproduces_table(n):
    db = euler_bracket_table(n)
    got = bracket_from_bivector(build_Pn(n, db.algebra))
    for x, y in db.arrow_pairs():
        assert got.entry(x, y) == db.entry(x, y)


def test_bivector_entries():
    n = 3
    db = bracket_from_bivector(build_Pn(n))
    alg = db.algebra
    e1, e2 = alg.e(1), alg.e(2)
    a = {i: alg.gen(f"a{i}") for i in range(1, n + 1)}
    b = {i: alg.gen(f"b{i}") for i in range(1, n + 1)}
    assert db(a[3], a[1]) == (tensor(a[1], a[3]) + tensor(a[3], a[1])).scale(H)
    assert db(a[2], b[2]) == (tensor(e1, a[2] * b[2]) + tensor(b[2] * a[2], e2)).scale(H) + tensor(e1, e2)
    assert db(a[3], b[1]) == (tensor(e1, a[3] * b[1]) + tensor(b[1] * a[3], e2)).scale(-H)
    assert db(a[3], b[2]) == (tensor(e1, a[3] * b[2]) + tensor(b[2] * a[3], e2)).scale(-H) - tensor(e1, e2)


def test_associated_bracket_with_phi2(db2):
    alg = db2.algebra
    phi2 = continuant(alg, alternating("a", 1, 2))
    for x in alg.generators():
        assert db2.associated(phi2, x) == x * phi2 - phi2 * x


def test_h0_reduce(g1):
    a, b = gens(g1, "a1", "b1")
    assert not h0_reduce(a * b - b * a)
    assert not h0_reduce(a)
    assert h0_reduce(a * b) == h0_reduce(b * a)
    assert h0_reduce(a * b)


@pytest.mark.parametrize("n", [1, 2])
def test_h0_structure(n):
    db = euler_bracket_table(n)
    alg = db.algebra
    A = db.associated
    rng = random.Random(7)
    for _ in range(15):
        x, y, z = (random_loop(alg, n, rng, rng.choice((2, 4))) for _ in range(3))
        assert not h0_reduce(A(x, y) + A(y, x))
        assert not h0_reduce(A(x, A(y, z)) + A(y, A(z, x)) + A(z, A(x, y)))
