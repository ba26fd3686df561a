"""Euler continuants, in the path algebra and over commutative rings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from .algebra import Element, PathAlgebra

Mat2 = Tuple[Tuple[Any, Any], Tuple[Any, Any]]


class NotAlternating(ValueError):
    """The generator sequence does not form a path."""


class NotDecomposable(ValueError):
    """The matrix has no Gauss decomposition of the required shape."""


@dataclass(frozen=True)
class ContinuantDescriptor:
    sequence: Tuple[str, ...]
    # vertex of the idempotent returned for the empty sequence
    anchor: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))


def parse_descriptor(text: str) -> ContinuantDescriptor:
    """Read ``a1,b1,a2`` or ``<a1,b1,a2>``."""
    body = text.strip()
    if body.startswith("<") and body.endswith(">"):
        body = body[1:-1]
    items = tuple(x.strip() for x in body.split(",") if x.strip())
    return ContinuantDescriptor(items)


def _check_sequence(alg: PathAlgebra, seq: Sequence[str]) -> List[int]:
    idx = []
    for nm in seq:
        if nm not in alg.index or alg.symbols[alg.index[nm]].kind != "arrow":
            raise NotAlternating(f"{nm!r} is not an arrow")
        idx.append(alg.index[nm])
    for x, y in zip(idx, idx[1:]):
        sx, sy = alg.symbols[x], alg.symbols[y]
        if sx.tail != sy.head:
            raise NotAlternating(f"{sx.name} and {sy.name} do not alternate")
    if len(idx) >= 2 and alg.symbols[idx[0]].head != alg.symbols[idx[1]].tail:
        raise NotAlternating("consecutive pairs must form loops")
    return idx


def continuant(alg: PathAlgebra, d, anchor: Optional[str] = None) -> Element:
    """Expand (y₁,…,y_k) by the tail recursion.

    ``d`` is a descriptor or a plain sequence of arrow names.  The degree-0
    term of each pair (y, y') is the idempotent at the head of y.
    """
    if not isinstance(d, ContinuantDescriptor):
        d = ContinuantDescriptor(tuple(d), anchor)
    seq = d.sequence
    idx = _check_sequence(alg, seq)
    if not seq:
        if d.anchor is None:
            raise ValueError("the empty continuant needs an anchor vertex")
        return alg.e(d.anchor)
    empty = alg.e(alg.symbols[idx[0]].head)
    prev2, prev1 = empty, alg.gen(seq[0])
    for nm in seq[1:]:
        prev2, prev1 = prev1, prev1 * alg.gen(nm) + prev2
    return prev1


def continuant_head(alg: PathAlgebra, seq: Sequence[str], anchor: Optional[str] = None) -> Element:
    """The same element, built by (x₁,…,x_k) = x₁(x₂,…,x_k) + (x₃,…,x_k)."""
    seq = tuple(seq)
    idx = _check_sequence(alg, seq)
    if not seq:
        if anchor is None:
            raise ValueError("the empty continuant needs an anchor vertex")
        return alg.e(anchor)
    # (∅) on the right end sits at the tail of the last symbol
    nxt2 = alg.e(alg.symbols[idx[-1]].tail)
    nxt1 = alg.gen(seq[-1])
    for nm in reversed(seq[:-1]):
        nxt2, nxt1 = nxt1, alg.gen(nm) * nxt1 + nxt2
    return nxt1


def alternating(start: str, first: int, last: int) -> Tuple[str, ...]:
    """Names for (a_first, b_first, …) or, for a descending range, (b_first, a_first, …).

    ``start`` is the letter of the first entry.  Example: ``alternating('a', 1, 2)``
    gives a1,b1,a2,b2 and ``alternating('b', 2, 1)`` gives b2,a2,b1,a1.
    """
    other = "b" if start == "a" else "a"
    step = 1 if last >= first else -1
    out: List[str] = []
    for i in range(first, last + step, step):
        out += [f"{start}{i}", f"{other}{i}"]
    return tuple(out)


def fibonacci(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def term_count(k: int) -> int:
    """Number of monomials in a continuant of length k: Fib(k+1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return fibonacci(k + 1)


# ---------------------------------------------------------------------------
# commutative continuants and the classical 2×2 facts


def scalar_continuant(xs: Sequence[Any], one: Any = 1) -> Any:
    """(x₁,…,x_k) over a commutative ring; the empty continuant is ``one``."""
    prev2, prev1 = 0 * one, one
    for x in xs:
        prev2, prev1 = prev1, prev1 * x + prev2
    return prev1


def mat_mul(m: Mat2, n: Mat2) -> Mat2:
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


IDENTITY: Mat2 = ((1, 0), (0, 1))


def matrix_continuant(xs: Sequence[Any]) -> Tuple[Mat2, Mat2]:
    """[[0,1],[1,x_k]]⋯[[0,1],[1,x₁]] and its continuant form.

    Returns ``(product, continuant_form)``; the two agree.
    """
    k = len(xs)
    if k < 2:
        raise ValueError("need at least two entries")
    prod: Mat2 = IDENTITY
    for x in xs:
        prod = mat_mul(((0, 1), (1, x)), prod)
    c = scalar_continuant
    inner = list(xs[1:k - 1])
    form: Mat2 = (
        (c(inner[::-1]), c(list(xs[: k - 1])[::-1])),
        (c(list(xs[1:])[::-1]), c(list(xs)[::-1])),
    )
    return prod, form


def gauss_decompose(m: Mat2) -> Tuple[Mat2, Mat2, Mat2]:
    """M = U·D·L with U upper unipotent, D diagonal, L lower unipotent."""
    (m11, m12), (m21, m22) = m
    if m22 == 0:
        raise NotDecomposable("M22 = 0")
    m22 = Fraction(m22) if isinstance(m22, int) else m22
    u = ((1, m12 / m22), (0, 1))
    d = ((m11 - m12 * m21 / m22, 0), (0, m22))
    low = ((1, 0), (m21 / m22, 1))
    return u, d, low


def continued_fraction_convergent(xs: Sequence[Any]) -> Tuple[Any, Any]:
    """Numerator and denominator of x₁ + 1/(x₂ + 1/(… + 1/x_k)).

    The nested fraction is also evaluated directly; a zero denominator on
    the way raises ZeroDivisionError.
    """
    if not xs:
        raise ValueError("empty continued fraction")
    num = scalar_continuant(xs)
    den = scalar_continuant(xs[1:])
    value = Fraction(xs[-1]) if isinstance(xs[-1], int) else xs[-1]
    for x in reversed(xs[:-1]):
        if value == 0:
            raise ZeroDivisionError("continued fraction hits a zero denominator")
        value = x + 1 / value
    if den == 0:
        raise ZeroDivisionError("continuant denominator vanishes")
    if isinstance(value, Fraction) and value * den != num:
        raise ArithmeticError("continuant form disagrees with the nested fraction")
    return num, den


@dataclass(frozen=True)
class BoalchProduct:
    matrix: Mat2
    continuant_form: Mat2
    s_tilde: Any
    moment_value: Any  # (A₁,B₁,…,Aₙ,Bₙ)

    @property
    def entries_match(self) -> bool:
        return self.matrix == self.continuant_form

    @property
    def inverse_ok(self) -> Optional[bool]:
        if self.s_tilde is None:
            return None
        return self.s_tilde * self.moment_value == 1


def boalch_product(a: Sequence[Any], b: Sequence[Any]) -> BoalchProduct:
    """S_{b,n}S_{a,n}⋯S_{b,1}S_{a,1} with S_a = [[1,A],[0,1]], S_b = [[1,0],[B,1]]."""
    if len(a) != len(b):
        raise ValueError("A and B must have the same length")
    n = len(a)
    prod: Mat2 = IDENTITY
    for ai, bi in zip(a, b):
        prod = mat_mul(((1, ai), (0, 1)), prod)
        prod = mat_mul(((1, 0), (bi, 1)), prod)
    # reversed interleavings (Aₙ,Bₙ₋₁,…,B₁) etc.
    def seq(first: str, last: str) -> List[Any]:
        out: List[Any] = []
        for i in range(n - 1, -1, -1):
            out += [b[i], a[i]]
        # out = (Bₙ, Aₙ, …, B₁, A₁)
        if first == "A":
            out = out[1:]
        if last == "B":
            out = out[:-1]
        return out

    c = scalar_continuant
    form: Mat2 = ((c(seq("A", "B")), c(seq("A", "A"))), (c(seq("B", "B")), c(seq("B", "A"))))
    fwd: List[Any] = []
    for ai, bi in zip(a, b):
        fwd += [ai, bi]
    moment = c(fwd)
    s_tilde = None
    den = form[1][1]
    if den != 0:
        den_f = Fraction(den) if isinstance(den, int) else den
        s_tilde = form[0][0] - form[0][1] * form[1][0] / den_f
    return BoalchProduct(prod, form, s_tilde, moment)


# ---------------------------------------------------------------------------
# identities in kΓ̄ₙ, returned as (lhs, rhs) pairs


def _prefix(alg: PathAlgebra, k: int, last: str) -> Element:
    """(a₁,b₁,…) ending with a_k (``last='a'``) or b_k; the empty one is e₂."""
    if k == 0:
        return alg.e(2)
    seq = alternating("a", 1, k)
    return continuant(alg, seq if last == "b" else seq[:-1])


def convenient_formula_a(alg: PathAlgebra, n: int) -> Tuple[Element, Element]:
    """(a₁,…,b_{n−1},a_n) = Σ_{ℓ=3}^{n+1} (a₁,…,b_{ℓ−2})a_{ℓ−1} + a₁."""
    rhs = alg.gen("a1")
    for l in range(3, n + 2):
        rhs = rhs + _prefix(alg, l - 2, "b") * alg.gen(f"a{l - 1}")
    return _prefix(alg, n, "a"), rhs


def convenient_formula_b(alg: PathAlgebra, n: int) -> Tuple[Element, Element]:
    """(a₁,…,a_n,b_n) = (a₁,…,b_{n−1})(a_n,b_n) + Σ_{ℓ=3}^{n} (a₁,…,b_{ℓ−2})a_{ℓ−1}b_n + a₁b_n, n ≥ 2."""
    if n < 2:
        raise ValueError("needs n ≥ 2")
    bn = alg.gen(f"b{n}")
    rhs = _prefix(alg, n - 1, "b") * continuant(alg, (f"a{n}", f"b{n}")) + alg.gen("a1") * bn
    for l in range(3, n + 1):
        rhs = rhs + _prefix(alg, l - 2, "b") * alg.gen(f"a{l - 1}") * bn
    return _prefix(alg, n, "b"), rhs


def curious_identity(alg: PathAlgebra, n: int) -> Tuple[Element, Element]:
    """(a₁,…,a_n)(b_n,…,a₁) = (a₁,…,b_n)(a_n,…,a₁)."""
    down = alternating("b", n, 1)
    lhs = _prefix(alg, n, "a") * continuant(alg, down)
    rhs = _prefix(alg, n, "b") * continuant(alg, down[1:])
    return lhs, rhs
