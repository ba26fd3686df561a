# On one-dimensional representations the double bracket becomes a Poisson
# bracket of polynomials in A_i, B_i.
import sympy as sp

from eulerqp import flaschka_newell_compare, rep11_bracket
from eulerqp.rep11 import coordinate_symbols, s_bracket, s_symbols

t = rep11_bracket(2)
(A1, A2), (B1, B2) = coordinate_symbols(2)
print(t.value(A1, B1), t.value(A2, B1), t.value(A2, A1))
lam = t.extras["lambda"]
print(sp.factor(t.bracket(lam, A1)))

# in the s-coordinates the bracket is minus the Flaschka-Newell one
st = s_bracket(2)
s = s_symbols(2)
print(st.value(s[1], s[2]))
cmp = flaschka_newell_compare(2)
print(cmp.factor, cmp.report.status)
