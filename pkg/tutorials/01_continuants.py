# Euler continuants in the path algebra of the quiver with arrows a_i: 1 -> 2
# and b_i: 2 -> 1.  Words read right to left, so a1*b1 starts with b1.
from fractions import Fraction

from eulerqp import continuant, gamma_algebra, term_count
from eulerqp.continuants import curious_identity, matrix_continuant

alg = gamma_algebra(2)
print(continuant(alg, ("a1", "b1")))          # e2 + a1*b1
print(continuant(alg, ("a1", "b1", "a2")))    # a1 + a2 + a1*b1*a2

# number of monomials grows like the Fibonacci numbers
for k in range(1, 8):
    print(k, term_count(k))

# the same recursion for scalars gives the 2x2 matrix identity
prod, form = matrix_continuant([Fraction(2), Fraction(-1), Fraction(3)])
print(prod)
print(prod == form)

# an identity between products of continuants, exact in the free algebra
lhs, rhs = curious_identity(alg, 2)
print(lhs - rhs)  # 0
