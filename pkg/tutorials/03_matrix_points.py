# Identities with inverses are tested by evaluating at random rational matrices.
import itertools

from eulerqp import gamma_algebra, is_zero_probabilistic, sample_rep
from eulerqp.continuants import continuant

alg = gamma_algebra(1, "moment")   # (a1,b1) and (b1,a1) inverted
p = sample_rep(alg, (2, 2), seed=1, rng_range=9)
print(p.arrow_matrix("a1"))
print(p.evaluate_block(alg.gen("inv(<b1,a1>)") * continuant(alg, ("b1", "a1"))))

# (a1,b1) a1 = a1 (b1,a1), so a1 (b1,a1)^-1 = (a1,b1)^-1 a1
x = alg.gen("a1") * alg.gen("inv(<b1,a1>)") - alg.gen("inv(<a1,b1>)") * alg.gen("a1")
v = is_zero_probabilistic(x)
print(v.label, len(v.evaluations))

# small matrices satisfy identities of their own: the standard polynomial s4
# vanishes on 2x2 matrices, so dimension 2 alone would miss it
g = gamma_algebra(2)
xs = [g.gen(f"a{i}") * g.gen(f"b{j}") for i in (1, 2) for j in (1, 2)]
s4 = g.zero()
for perm in itertools.permutations(range(4)):
    sign = (-1) ** sum(perm[i] > perm[j] for i, j in itertools.combinations(range(4), 2))
    s4 = s4 + (xs[perm[0]] * xs[perm[1]] * xs[perm[2]] * xs[perm[3]]).scale(sign)
print(is_zero_probabilistic(s4, [(2, 2)], augment=False).label)   # zero
print(is_zero_probabilistic(s4, [(2, 2)]).label)                  # nonzero, dims raised by degree
