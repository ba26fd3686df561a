# The double bracket on the arrows and what can be checked about it exactly.
from eulerqp import check_moment_map, check_quasi_poisson, euler_bracket_table, triple_bracket
from eulerqp.brackets import bracket_from_bivector, build_Pn, mutate
from eulerqp.continuants import alternating, continuant

db = euler_bracket_table(2)
print(db("a1", "b1"))
print(db("a2", "b1"))   # carries the extra -e1 (x) e2
print(db("a2", "a1"))

# brackets extend to words by the Leibniz rules
alg = db.algebra
a1, b1 = alg.gen("a1"), alg.gen("b1")
print(db(a1, a1 * b1))

# the triple bracket on generators agrees with the quasi-Poisson one
print(triple_bracket(db, "a1", "a1", "b1"))
rep = check_quasi_poisson(db)
print(rep.status, rep.checked)

# Phi2 = (a1,b1,a2,b2) is the moment map at vertex 2; checked without inverses
phi2 = continuant(alg, alternating("a", 1, 2))
print(check_moment_map(db, phi2, 2).status)

# the same bracket comes from a bivector
P = build_Pn(2, alg)
print(all(bracket_from_bivector(P).entry(x, y) == db.entry(x, y) for x, y in db.arrow_pairs()))

# doubling one entry breaks the identity
bad = mutate(db, "a1", "b1")
print(check_quasi_poisson(bad).status)
