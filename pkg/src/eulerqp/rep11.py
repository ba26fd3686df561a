"""The Poisson bracket induced on one-dimensional representations and the Flaschka–Newell comparison.

At dimension (1,1) every generator is a scalar, so the bracket of two
coordinate functions is obtained by sending a_i ↦ A_i, b_i ↦ B_i, e_s ↦ 1 and
multiplying the two tensor slots.  Everything here is a commutative
polynomial computation in sympy.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp

from .algebra import PathAlgebra, Tensor, arrow_number, gamma_algebra, is_a
from .brackets import CheckReport, DoubleBracket, euler_bracket_table
from .continuants import IDENTITY, mat_mul, scalar_continuant


def _sgn(k: int) -> int:
    return (k > 0) - (k < 0)


def coordinate_symbols(n: int) -> Tuple[List[sp.Symbol], List[sp.Symbol]]:
    A = list(sp.symbols(f"A1:{n + 1}"))
    B = list(sp.symbols(f"B1:{n + 1}"))
    return A, B


def moment_polynomial(A: Sequence, B: Sequence):
    """λ = (A₁,B₁,…,Aₙ,Bₙ)."""
    seq = []
    for a, b in zip(A, B):
        seq += [a, b]
    return sp.expand(scalar_continuant(seq))


@dataclass
class ScalarBracketTable:
    """A Poisson bracket on polynomials in the coordinates, fixed by its values on pairs of coordinates."""

    coordinates: List[sp.Symbol]
    table: Dict[Tuple[sp.Symbol, sp.Symbol], sp.Expr]
    extras: Dict[str, sp.Expr] = field(default_factory=dict)

    def value(self, x: sp.Symbol, y: sp.Symbol) -> sp.Expr:
        return self.table.get((x, y), sp.Integer(0))

    def bracket(self, f, g) -> sp.Expr:
        """{f,g} = Σ ∂f/∂x ∂g/∂y {x,y}."""
        f, g = sp.sympify(f), sp.sympify(g)
        out = sp.Integer(0)
        df = {x: sp.diff(f, x) for x in self.coordinates}
        dg = {y: sp.diff(g, y) for y in self.coordinates}
        for x, y in itertools.product(self.coordinates, repeat=2):
            if df[x] == 0 or dg[y] == 0:
                continue
            v = self.value(x, y)
            if v != 0:
                out += df[x] * dg[y] * v
        return sp.expand(out)

    def antisymmetry_failures(self) -> List[Tuple[sp.Symbol, sp.Symbol]]:
        return [
            (x, y)
            for x, y in itertools.product(self.coordinates, repeat=2)
            if sp.expand(self.value(x, y) + self.value(y, x)) != 0
        ]

    def jacobiator(self, f, g, h) -> sp.Expr:
        return sp.expand(
            self.bracket(f, self.bracket(g, h)) + self.bracket(g, self.bracket(h, f)) + self.bracket(h, self.bracket(f, g))
        )

    def jacobi_failures(self) -> List[Tuple[sp.Symbol, ...]]:
        out = []
        for f, g, h in itertools.combinations(self.coordinates, 3):
            if self.jacobiator(f, g, h) != 0:
                out.append((f, g, h))
        return out


def _word_image(alg: PathAlgebra, w, images: Dict[str, sp.Expr]) -> sp.Expr:
    out = sp.Integer(1)
    for i in w:
        sym = alg.symbols[i]
        if sym.kind == "idempotent":
            continue
        out *= images[sym.name]
    return out


def scalar_image(t: Tensor, images: Dict[str, sp.Expr]) -> sp.Expr:
    """Substitute scalars and multiply the slots of a tensor."""
    alg = t.algebra
    out = sp.Integer(0)
    for key, c in t.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for w in key:
            term *= _word_image(alg, w, images)
        out += term
    return sp.expand(out)


def rep11_bracket(n: int, db: Optional[DoubleBracket] = None) -> ScalarBracketTable:
    """The (1,1) bracket derived from the double bracket by substitution."""
    db = db or euler_bracket_table(n)
    alg = db.algebra
    A, B = coordinate_symbols(n)
    images = {f"a{i}": A[i - 1] for i in range(1, n + 1)}
    images.update({f"b{i}": B[i - 1] for i in range(1, n + 1)})
    table = {}
    for x, y in itertools.product(images, repeat=2):
        table[(images[x], images[y])] = scalar_image(db(x, y), images)
    return ScalarBracketTable(A + B, table, {"lambda": moment_polynomial(A, B)})


def printed_rep11_value(n: int, x: str, y: str) -> sp.Expr:
    """The closed forms for {A_i,A_j}, {B_i,B_j}, {A_i,B_j} and {B_j,A_i}."""
    A, B = coordinate_symbols(n)
    i, j = arrow_number(x), arrow_number(y)
    X = A[i - 1] if is_a(x) else B[i - 1]
    Y = A[j - 1] if is_a(y) else B[j - 1]
    if is_a(x) == is_a(y):
        return _sgn(i - j) * X * Y
    if not is_a(x):
        return -printed_rep11_value(n, y, x)
    if i < j:
        return X * Y
    if i == j:
        return X * Y + 1
    return -X * Y - (1 if i - j == 1 else 0)


def check_rep11_printed(n: int, table: Optional[ScalarBracketTable] = None) -> CheckReport:
    """Derived (1,1) bracket against the closed forms, including {λ,A_i} = −λA_i and {λ,B_i} = λB_i."""
    table = table or rep11_bracket(n)
    A, B = coordinate_symbols(n)
    names = [f"a{i}" for i in range(1, n + 1)] + [f"b{i}" for i in range(1, n + 1)]
    sym = dict(zip(names, A + B))
    rep = CheckReport("rep(1,1) bracket")
    for x, y in itertools.product(names, repeat=2):
        rep.record(f"{{{x},{y}}}", sp.expand(table.value(sym[x], sym[y]) - printed_rep11_value(n, x, y)))
    lam = table.extras["lambda"]
    for i in range(n):
        rep.record(f"{{lambda,A{i + 1}}}", sp.expand(table.bracket(lam, A[i]) + lam * A[i]))
        rep.record(f"{{lambda,B{i + 1}}}", sp.expand(table.bracket(lam, B[i]) - lam * B[i]))
    for x, y in table.antisymmetry_failures():
        rep.failures.append((f"antisymmetry {x},{y}", "nonzero"))
    return rep


def check_rep11_jacobi(n: int, table: Optional[ScalarBracketTable] = None) -> CheckReport:
    table = table or rep11_bracket(n)
    rep = CheckReport("rep(1,1) Jacobi identity")
    for f, g, h in itertools.combinations(table.coordinates, 3):
        rep.record(f"{f},{g},{h}", table.jacobiator(f, g, h))
    return rep


# ---------------------------------------------------------------------------
# Stokes-type coordinates s_k


def s_symbols(n: int) -> List[sp.Symbol]:
    """s₁,…,s_{2n+2}; index k is at position k−1."""
    return list(sp.symbols(f"s1:{2 * n + 3}"))


def s_substitution(n: int) -> Dict[sp.Symbol, sp.Symbol]:
    """A_i = s_{2n+3−2i}, B_i = s_{2n+2−2i}."""
    A, B = coordinate_symbols(n)
    s = s_symbols(n)
    out = {}
    for i in range(1, n + 1):
        out[A[i - 1]] = s[2 * n + 3 - 2 * i - 1]
        out[B[i - 1]] = s[2 * n + 2 - 2 * i - 1]
    return out


def s_bracket(n: int, table: Optional[ScalarBracketTable] = None) -> ScalarBracketTable:
    """The (1,1) bracket rewritten in s₂,…,s_{2n+1}."""
    table = table or rep11_bracket(n)
    sub = s_substitution(n)
    coords = [sub[x] for x in table.coordinates]
    tab = {(sub[x], sub[y]): sp.expand(v.xreplace(sub)) for (x, y), v in table.table.items()}
    s = s_symbols(n)
    lam = sp.expand(scalar_continuant(s[1 : 2 * n + 1]))
    return ScalarBracketTable(sorted(coords, key=lambda q: int(q.name[1:])), tab, {"lambda": lam})


def svar_formula(s: Sequence[sp.Symbol], k: int, l: int) -> sp.Expr:
    """−δ_{k,l−1} + (−1)^{k−l}s_ks_l."""
    return -(1 if k == l - 1 else 0) + (-1) ** (k - l) * s[k - 1] * s[l - 1]


def fn_formula(s: Sequence[sp.Symbol], lam, k: int, l: int, n: int) -> sp.Expr:
    """The Flaschka–Newell value {s_k,s_l}_FN for 1 ≤ k < l ≤ 2n+2."""
    corner = 1 / lam**2 if (k == 1 and l == 2 * n + 2) else 0
    return (1 if k == l - 1 else 0) - corner + (-1) ** (k - l + 1) * s[k - 1] * s[l - 1]


def parity_table_value(s: Sequence[sp.Symbol], k: int, l: int) -> Optional[sp.Expr]:
    """The intermediate case tables for k < l of equal parity and for mixed parity."""
    sk, sl = s[k - 1], s[l - 1]
    if k % 2 == l % 2:
        return sk * sl if k < l else None
    if k % 2 == 1:  # k odd, l even
        if k == l + 1:
            return sk * sl + 1
        if k == l - 1:
            return -sk * sl - 1
        return sk * sl if k > l else -sk * sl
    if k == l - 1:
        return -sk * sl - 1
    if k == l + 1:
        return sk * sl + 1
    return -sk * sl if k < l else sk * sl


@dataclass
class FNComparison:
    n: int
    report: CheckReport
    factor: int = -1  # {s_k,s_l} = factor · {s_k,s_l}_FN on the compared range


def flaschka_newell_compare(n: int, samples: int = 5, seed=0) -> FNComparison:
    """Compare the s-coordinate bracket with the Flaschka–Newell one.

    Records {s_k,s_l} against the closed form and the parity tables, the
    vanishing of {s_k,s_l} + {s_k,s_l}_FN for 1<k<l<2n+2, the λ relations,
    and the closure of the product of unipotent factors at sampled points.
    """
    st = s_bracket(n)
    s = s_symbols(n)
    lam = st.extras["lambda"]
    rep = CheckReport("Flaschka-Newell comparison")
    for k in range(2, 2 * n + 2):
        for l in range(2, 2 * n + 2):
            if k == l:
                continue
            got = st.value(s[k - 1], s[l - 1])
            par = parity_table_value(s, k, l)
            if par is not None:
                rep.record(f"parity table s{k},s{l}", sp.expand(got - par))
            if k < l:
                rep.record(f"{{s{k},s{l}}}", sp.expand(got - svar_formula(s, k, l)))
                rep.record(f"{{s{k},s{l}}}+FN", sp.expand(got + fn_formula(s, lam, k, l, n)))
        got = st.bracket(s[k - 1], lam)
        rep.record(f"{{s{k},lambda}}", sp.expand(got - (-1) ** (k + 1) * s[k - 1] * lam))
        rep.record(f"{{s{k},lambda}}+FN", sp.expand(got + (-1) ** k * s[k - 1] * lam))
    rng = random.Random(f"fn|{seed}|{n}")
    done = 0
    while done < samples:
        vals = [Fraction(rng.randint(-20, 20)) for _ in range(2 * n)]
        if scalar_continuant(vals) == 0:
            continue
        res = closure_residual(vals)
        rep.record(f"closure at {[str(v) for v in vals]}", any(x != 0 for row in res for x in row))
        done += 1
    return FNComparison(n, rep)


def closure_product(values: Sequence[Fraction]) -> Tuple[Tuple, Tuple]:
    """[[1,s₁],[0,1]][[1,0],[s₂,1]]⋯[[1,0],[s_{2n+2},1]]·diag(λ,λ⁻¹) for given s₂,…,s_{2n+1}."""
    vals = list(values)
    lam = scalar_continuant(vals)
    if lam == 0:
        raise ZeroDivisionError("λ vanishes")
    s1 = -scalar_continuant(vals[1:]) / lam
    s_last = -scalar_continuant(vals[:-1]) / lam
    full = [s1] + vals + [s_last]
    prod = IDENTITY
    for k, v in enumerate(full, start=1):
        m = ((1, v), (0, 1)) if k % 2 == 1 else ((1, 0), (v, 1))
        prod = mat_mul(prod, m)
    return mat_mul(prod, ((lam, 0), (0, 1 / Fraction(lam))))


def closure_residual(values: Sequence[Fraction]):
    p = closure_product(values)
    return tuple(tuple(p[i][j] - IDENTITY[i][j] for j in range(2)) for i in range(2))


def gauss_form_residual(values: Sequence[Fraction]):
    """[[1,0],[s₂,1]][[1,s₃],[0,1]]⋯ minus its Gauss decomposition in λ, (s₃,…) and (…,s_{2n})."""
    vals = list(values)
    lam = Fraction(scalar_continuant(vals))
    prod = IDENTITY
    for k, v in enumerate(vals, start=2):
        m = ((1, 0), (v, 1)) if k % 2 == 0 else ((1, v), (0, 1))
        prod = mat_mul(prod, m)
    u = ((1, scalar_continuant(vals[1:]) / lam), (0, 1))
    d = ((1 / lam, 0), (0, lam))
    low = ((1, 0), (scalar_continuant(vals[:-1]) / lam, 1))
    rhs = mat_mul(mat_mul(u, d), low)
    return tuple(tuple(prod[i][j] - rhs[i][j] for j in range(2)) for i in range(2))
