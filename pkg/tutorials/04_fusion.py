# Fusing n copies of the one-arrow-pair quiver gives the same structure
# as the continuant one after a change of generators.
from eulerqp import build_Afus, primed_generators
from eulerqp.brackets import check_quasi_poisson
from eulerqp.factorization import OracleConfig, a_to_b, primed_factors, verify_factorisation_iso
from eulerqp.fusion import afus_closed_form, compare_tables

h = build_Afus(2)
print(h.bracket.entry("c2", "d1"))
print(h.moment["2"])
print(compare_tables(h.bracket, afus_closed_form(h.algebra, 2)))   # []
print(check_quasi_poisson(h.bracket).status)

# a'_2 = a_2 + (a1,b1)^-1 a1 and (a1,b1,a2,b2) = (e2 + a'_1 b1)(e2 + a'_2 b2)
pg = primed_generators(2)
print(pg.a[2])
f2, _ = primed_factors(pg)
cfg = OracleConfig()
print(cfg.is_zero(a_to_b(pg.algebra, 2) - f2[1] * f2[2]))

rep = verify_factorisation_iso(2, cfg)
print(rep.status, rep.checked)
