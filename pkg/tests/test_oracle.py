import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerqp.algebra import gamma_algebra, tensor
from eulerqp.brackets import euler_bracket_table
from eulerqp.continuants import continuant
from eulerqp.oracle import (
    RepPoint,
    SingularPoint,
    bareiss_inverse,
    entrywise_bracket,
    identity,
    is_zero_probabilistic,
    matrix,
    required_dimension,
    sample_rep,
)


def _sign(perm):
    s = 1
    for i, j in itertools.combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            s = -s
    return s


def standard_polynomial(xs):
    total = xs[0].algebra.zero()
    for perm in itertools.permutations(range(len(xs))):
        w = xs[perm[0]]
        for k in perm[1:]:
            w = w * xs[k]
        total = total + w.scale(_sign(perm))
    return total


def test_sample_shapes_and_determinism():
    alg = gamma_algebra(2)
    p = sample_rep(alg, (2, 3), seed=5)
    assert p.arrow_matrix("a1").shape == (3, 2)
    assert p.arrow_matrix("b2").shape == (2, 3)
    q = sample_rep(alg, (2, 3), seed=5)
    assert p.to_json() == q.to_json()
    assert sample_rep(alg, (2, 3), seed=6).to_json() != p.to_json()


def test_sample_respects_range():
    p = sample_rep(gamma_algebra(1), (3, 3), seed=1, rng_range=2)
    assert all(-2 <= x <= 2 for x in p.arrow_matrix("a1").flat)


def test_bad_dims_rejected():
    with pytest.raises(ValueError):
        sample_rep(gamma_algebra(1), (1, 1, 1))
    with pytest.raises(ValueError):
        sample_rep(gamma_algebra(1), (0, 1))


def test_point_evaluates_continuant():
    alg = gamma_algebra(1)
    p = RepPoint.from_matrices(alg, (1, 1), {"a1": [[2]], "b1": [[3]]})
    assert p.evaluate_block(continuant(alg, ("a1", "b1")))[0, 0] == 7


def test_singular_point_raises():
    alg = gamma_algebra(1, "moment")
    with pytest.raises(SingularPoint):
        RepPoint.from_matrices(alg, (1, 1), {"a1": [[1]], "b1": [[-1]]})


def test_inverse_symbol_is_matrix_inverse():
    alg = gamma_algebra(2, "moment")
    p = sample_rep(alg, (2, 2), seed=3)
    for i in alg.inverses:
        m = p.evaluate_block(alg.gen(alg.symbols[i].name))
        c = p.evaluate_block(alg.inverse_of[i])
        assert (m.dot(c) == identity(2)).all()


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10_000))
def test_bareiss_inverse(d, seed):
    rng = random.Random(seed)
    m = matrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(d)] for _ in range(d)])
    try:
        inv = bareiss_inverse(m)
    except SingularPoint:
        return
    assert (m.dot(inv) == identity(d)).all()


def test_bareiss_singular():
    with pytest.raises(SingularPoint):
        bareiss_inverse(matrix([[1, 2], [2, 4]]))


def test_required_dimension_counts_inverses_once():
    alg = gamma_algebra(1, "moment")
    x = alg.gen("inv(<b1,a1>)") * alg.gen("b1") * alg.gen("a1")
    assert required_dimension(x) == 2


def test_true_identity_is_zero():
    alg = gamma_algebra(2)
    a1, b1 = alg.gen("a1"), alg.gen("b1")
    lhs = continuant(alg, ("a1", "b1", "a2"))
    rhs = alg.gen("a2") + a1 + a1 * b1 * alg.gen("a2")
    assert is_zero_probabilistic(lhs - rhs)
    assert not is_zero_probabilistic(lhs - rhs + a1)


def test_commutator_is_visible_at_rank_one():
    # a1b1 and b1a1 live in different blocks, so the difference is nonzero
    alg = gamma_algebra(1)
    a, b = alg.gen("a1"), alg.gen("b1")
    v = is_zero_probabilistic(a * b - b * a, dims_list=[(1, 1)], augment=False)
    assert not v.zero


def test_polynomial_identity_control():
    alg = gamma_algebra(2)
    loops = [alg.gen(f"a{i}") * alg.gen(f"b{j}") for i in (1, 2) for j in (1, 2)]
    s4 = standard_polynomial(loops)
    assert s4.terms
    assert is_zero_probabilistic(s4, dims_list=[(2, 2)], augment=False).zero
    assert not is_zero_probabilistic(s4, dims_list=[(3, 3)], augment=False).zero
    assert not is_zero_probabilistic(s4, dims_list=[(2, 2)], augment=True).zero


def test_tensor_zero_test_uses_independent_slots():
    alg = gamma_algebra(1)
    a = alg.gen("a1")
    # a⊗a − a⊗a is zero, a⊗a is not
    assert is_zero_probabilistic(tensor(a, a) - tensor(a, a))
    assert not is_zero_probabilistic(tensor(a, a))


def test_entrywise_bracket_rank_one():
    alg = gamma_algebra(1)
    db = euler_bracket_table(1)
    p = RepPoint.from_matrices(alg, (1, 1), {"a1": [[2]], "b1": [[3]]})
    out = entrywise_bracket(p, db, "a1", "b1")
    assert out.shape == (1, 1, 1, 1)
    assert out[0, 0, 0, 0] == mpq(7)
    assert entrywise_bracket(p, db, "a1", "a1")[0, 0, 0, 0] == 0


def test_base_case_identity_and_inverse():
    alg = gamma_algebra(1, "moment")
    a = alg.gen("a1")
    ab, ba = continuant(alg, ("a1", "b1")), continuant(alg, ("b1", "a1"))
    assert is_zero_probabilistic(ab * a - a * ba)
    p = sample_rep(alg, (2, 2), seed=4)
    inv = alg.gen("inv(<b1,a1>)")
    assert (p.evaluate_block(inv * ba) == identity(2)).all()
    assert is_zero_probabilistic(alg.zero())


def test_entrywise_moment_map_sample():
    from eulerqp.brackets import moment_map_rhs

    alg = gamma_algebra(2)
    db = euler_bracket_table(2)
    phi2 = continuant(alg, ("a1", "b1", "a2", "b2"))
    p = sample_rep(alg, (2, 2), seed=9)
    for x in alg.generators():
        rhs = moment_map_rhs(alg, phi2, 2, x)
        got = entrywise_bracket(p, db, phi2, x)
        want = entrywise_bracket(p, lambda *_: rhs, phi2, x)
        assert (got == want).all()
