"""Path algebras over the vertex semisimple ring, with exact rational coefficients.

A word is a tuple of symbol indices.  Idempotents are stored as 1-tuples of
their own index; every other word is a nonempty composable sequence of arrow
or inverse symbols read right to left, so ``(x, y)`` means "first y, then x"
and requires ``tail(x) == head(y)``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Word = Tuple[int, ...]
Scalar = Union[int, Fraction]

IDEMPOTENT = "idempotent"
ARROW = "arrow"
INVERSE = "inverse"


class AlgebraMismatch(ValueError):
    """Raised when elements of different algebras are combined."""


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str
    head: str
    tail: str
    # for inverse symbols: the sequence of the inverted continuant
    sequence: Tuple[str, ...] = ()


def _frac(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def inverse_name(sequence: Sequence[str]) -> str:
    return "inv(<" + ",".join(sequence) + ">)"


class PathAlgebra:
    """The path algebra of a quiver, optionally with formal inverses of loops.

    Inverse symbols are opaque atoms: the algebra only knows which element
    they invert, which is what the bracket engine and the matrix oracle need.
    """

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]], name: str = ""):
        self.name = name
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self.symbols: List[Symbol] = []
        self.index: Dict[str, int] = {}
        self._head: List[str] = []
        self._tail: List[str] = []
        self._idem: List[bool] = []
        self.inverse_of: Dict[int, "Element"] = {}
        self.vertex_symbol: Dict[str, int] = {}
        for v in self.vertices:
            self.vertex_symbol[v] = self._add(Symbol("e" + v, IDEMPOTENT, v, v))
        for nm, tail, head in arrows:
            if tail not in self.vertex_symbol or head not in self.vertex_symbol:
                raise ValueError(f"arrow {nm} has unknown endpoint")
            self._add(Symbol(nm, ARROW, str(head), str(tail)))
        self.arrows: Tuple[int, ...] = tuple(i for i, s in enumerate(self.symbols) if s.kind == ARROW)
        self.inverses: Tuple[int, ...] = ()
        self.frozen = False

    def freeze(self) -> "PathAlgebra":
        """Forbid further inverse symbols; shared algebras are frozen."""
        self.frozen = True
        return self

    def _add(self, sym: Symbol) -> int:
        if sym.name in self.index:
            raise ValueError(f"duplicate symbol {sym.name}")
        idx = len(self.symbols)
        self.symbols.append(sym)
        self.index[sym.name] = idx
        self._head.append(sym.head)
        self._tail.append(sym.tail)
        self._idem.append(sym.kind == IDEMPOTENT)
        return idx

    def add_inverse(self, sequence: Sequence[str], element: "Element") -> "Element":
        """Adjoin a formal inverse of ``element``, a loop labelled by ``sequence``."""
        if self.frozen:
            raise ValueError("algebra is frozen")
        if element.algebra is not self:
            raise AlgebraMismatch("inverse of a foreign element")
        blocks = {self.word_ends(w) for w in element.terms}
        if len(blocks) != 1:
            raise ValueError("only elements of a single block e_s A e_s can be inverted")
        (h, t), = blocks
        if h != t:
            raise ValueError("inverted element must be a loop")
        idx = self._add(Symbol(inverse_name(sequence), INVERSE, h, t, tuple(sequence)))
        self.inverse_of[idx] = element
        self.inverses = self.inverses + (idx,)
        return self.gen(self.symbols[idx].name)

    # -- word level ----------------------------------------------------

    def is_idempotent_word(self, w: Word) -> bool:
        return len(w) == 1 and self._idem[w[0]]

    def word_ends(self, w: Word) -> Tuple[str, str]:
        return self._head[w[0]], self._tail[w[-1]]

    def mul_words(self, u: Word, v: Word) -> Optional[Word]:
        """Concatenate two words, or return None when they do not compose."""
        if not u:
            return v
        if not v:
            return u
        if self._tail[u[-1]] != self._head[v[0]]:
            return None
        if self._idem[u[0]] and len(u) == 1:
            return v
        if self._idem[v[0]] and len(v) == 1:
            return u
        return u + v

    def word_str(self, w: Word) -> str:
        return "*".join(self.symbols[i].name for i in w)

    def word_key(self, w: Word) -> Tuple[int, Word]:
        return (len(w), w)

    def word_from_names(self, names: Sequence[str]) -> Word:
        try:
            w = tuple(self.index[nm] for nm in names)
        except KeyError as exc:
            raise KeyError(f"unknown symbol {exc.args[0]!r}") from None
        if len(w) > 1 and any(self._idem[i] for i in w):
            raise ValueError("idempotents cannot appear inside a word")
        for x, y in zip(w, w[1:]):
            if self._tail[x] != self._head[y]:
                raise ValueError(f"non-composable word {names}")
        return w

    # -- element constructors -------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {(self.vertex_symbol[v],): Fraction(1) for v in self.vertices})

    def e(self, v) -> "Element":
        return Element(self, {(self.vertex_symbol[str(v)],): Fraction(1)})

    def gen(self, name: str) -> "Element":
        return Element(self, {(self.index[name],): Fraction(1)})

    def word(self, w: Word, c: Scalar = 1) -> "Element":
        c = _frac(c)
        return Element(self, {w: c} if c else {})

    def generators(self) -> List["Element"]:
        """The arrows as elements, in declaration order."""
        return [Element(self, {(i,): Fraction(1)}) for i in self.arrows]

    def has_inverses(self, w: Word) -> bool:
        return any(self.symbols[i].kind == INVERSE for i in w)

    def __repr__(self) -> str:
        return f"PathAlgebra({self.name or self.vertices!r})"


def _add_into(acc: Dict, key, c: Fraction) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class Element:
    """A finite rational combination of words."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: PathAlgebra, terms: Mapping[Word, Fraction]):
        self.algebra = algebra
        self.terms: Dict[Word, Fraction] = {w: c for w, c in terms.items() if c}

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                raise AlgebraMismatch("elements of different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.one() * other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return Element(self.algebra, acc)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Element":
        c = _frac(c)
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements of different algebras")
        mul = self.algebra.mul_words
        acc: Dict[Word, Fraction] = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                w = mul(u, v)
                if w is not None:
                    _add_into(acc, w, c * d)
        return Element(self.algebra, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.algebra.one() * other
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def has_inverses(self) -> bool:
        return any(self.algebra.has_inverses(w) for w in self.terms)

    def degree(self) -> int:
        """Longest word length, idempotents counting as 0."""
        alg = self.algebra
        return max((0 if alg.is_idempotent_word(w) else len(w) for w in self.terms), default=0)

    def block(self, s, t) -> "Element":
        """The component e_s x e_t."""
        alg = self.algebra
        return Element(alg, {w: c for w, c in self.terms.items() if alg.word_ends(w) == (str(s), str(t))})

    def map_words(self, f: Callable[[Word], "Element"], target: Optional[PathAlgebra] = None) -> "Element":
        """Apply a linear map given on words."""
        out = (target or self.algebra).zero()
        for w, c in self.terms.items():
            out = out + f(w).scale(c)
        return out

    def sorted_terms(self) -> List[Tuple[Word, Fraction]]:
        key = self.algebra.word_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def __iter__(self) -> Iterator[Tuple[Word, Fraction]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return format_terms([(self.algebra.word_str(w), c) for w, c in self.sorted_terms()])

    def __repr__(self) -> str:
        return f"Element({self})"


def format_coeff_prefix(c: Fraction) -> str:
    if c == 1:
        return ""
    if c.denominator == 1:
        return f"{c.numerator}*"
    return f"{c.numerator}/{c.denominator}*"


def format_terms(items: Sequence[Tuple[str, Fraction]]) -> str:
    """Render signed rational terms in the parser's syntax."""
    if not items:
        return "0"
    parts: List[str] = []
    for k, (body, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        text = format_coeff_prefix(abs(c)) + body
        if k == 0:
            parts.append(text if sign == "+" else "-" + text)
        else:
            parts.append(f" {sign} {text}")
    return "".join(parts)


def is_zero_free(x: Element) -> bool:
    """Exact zero test in the free path algebra (no inverse symbols allowed)."""
    if x.has_inverses():
        raise ValueError("element contains inverse symbols; use the representation oracle")
    return not x.terms


# ---------------------------------------------------------------------------
# tensors


class Tensor:
    """A rational combination of word tuples, the elements of A^{⊗k}."""

    __slots__ = ("algebra", "arity", "terms")

    def __init__(self, algebra: PathAlgebra, arity: int, terms: Mapping[Tuple[Word, ...], Fraction]):
        self.algebra = algebra
        self.arity = arity
        self.terms: Dict[Tuple[Word, ...], Fraction] = {k: c for k, c in terms.items() if c}

    @classmethod
    def zero(cls, algebra: PathAlgebra, arity: int = 2) -> "Tensor":
        return cls(algebra, arity, {})

    @classmethod
    def pure(cls, *factors: Element) -> "Tensor":
        """Expand x₁⊗…⊗x_k."""
        alg = factors[0].algebra
        acc: Dict[Tuple[Word, ...], Fraction] = {(): Fraction(1)}
        for f in factors:
            if f.algebra is not alg:
                raise AlgebraMismatch("tensor factors from different algebras")
            nxt: Dict[Tuple[Word, ...], Fraction] = {}
            for k, c in acc.items():
                for w, d in f.terms.items():
                    _add_into(nxt, k + (w,), c * d)
            acc = nxt
        return cls(alg, len(factors), acc)

    def _check(self, other: "Tensor") -> None:
        if other.algebra is not self.algebra or other.arity != self.arity:
            raise AlgebraMismatch("incompatible tensors")

    def __add__(self, other: "Tensor") -> "Tensor":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return Tensor(self.algebra, self.arity, acc)

    __radd__ = __add__

    def __neg__(self) -> "Tensor":
        return Tensor(self.algebra, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c: Scalar) -> "Tensor":
        c = _frac(c)
        return Tensor(self.algebra, self.arity, {k: c * v for k, v in self.terms.items()} if c else {})

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.algebra is other.algebra and self.arity == other.arity and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def has_inverses(self) -> bool:
        alg = self.algebra
        return any(alg.has_inverses(w) for k in self.terms for w in k)

    def degree(self) -> int:
        alg = self.algebra
        return max(
            (0 if alg.is_idempotent_word(w) else len(w) for k in self.terms for w in k),
            default=0,
        )

    def mul_slot(self, slot: int, left: Optional[Element] = None, right: Optional[Element] = None) -> "Tensor":
        """Multiply one slot by ``left`` on the left and/or ``right`` on the right."""
        mul = self.algebra.mul_words
        acc: Dict[Tuple[Word, ...], Fraction] = {}
        lterms = left.terms.items() if left is not None else [((), Fraction(1))]
        rterms = list(right.terms.items()) if right is not None else [((), Fraction(1))]
        for k, c in self.terms.items():
            x = k[slot]
            for lw, lc in lterms:
                y = mul(lw, x)
                if y is None:
                    continue
                for rw, rc in rterms:
                    z = mul(y, rw)
                    if z is None:
                        continue
                    _add_into(acc, k[:slot] + (z,) + k[slot + 1:], c * lc * rc)
        return Tensor(self.algebra, self.arity, acc)

    def outer(self, left: Optional[Element] = None, right: Optional[Element] = None) -> "Tensor":
        """a·(x⊗…⊗y)·b = ax⊗…⊗yb."""
        t = self
        if left is not None:
            t = t.mul_slot(0, left=left)
        if right is not None:
            t = t.mul_slot(self.arity - 1, right=right)
        return t

    def inner(self, left: Optional[Element] = None, right: Optional[Element] = None) -> "Tensor":
        """a∗(x⊗y)∗b = xb⊗ay."""
        if self.arity != 2:
            raise ValueError("inner action is defined on A⊗A")
        t = self
        if right is not None:
            t = t.mul_slot(0, right=right)
        if left is not None:
            t = t.mul_slot(1, left=left)
        return t

    def permute(self, perm: Sequence[int]) -> "Tensor":
        """New slot k holds old slot perm[k]."""
        return Tensor(self.algebra, self.arity, {tuple(k[p] for p in perm): c for k, c in self.terms.items()})

    def tau12(self) -> "Tensor":
        return self.permute((1, 0))

    def tau123(self) -> "Tensor":
        """x⊗y⊗z ↦ z⊗x⊗y."""
        return self.permute((2, 0, 1))

    def tau132(self) -> "Tensor":
        """x⊗y⊗z ↦ y⊗z⊗x."""
        return self.permute((1, 2, 0))

    def rotate(self, i: int = 1) -> "Tensor":
        """τ^i with τ(x₁⊗…⊗x_n) = x_n⊗x₁⊗…⊗x_{n−1}."""
        n = self.arity
        return self.permute(tuple((k - i) % n for k in range(n)))

    def multiply(self) -> Element:
        """m(x₁⊗…⊗x_k) = x₁⋯x_k."""
        mul = self.algebra.mul_words
        acc: Dict[Word, Fraction] = {}
        for k, c in self.terms.items():
            w: Optional[Word] = ()
            for x in k:
                w = mul(w, x)
                if w is None:
                    break
            if w:
                _add_into(acc, w, c)
        return Element(self.algebra, acc)

    def slot_map(self, f: Callable[[Word], Element], target: Optional[PathAlgebra] = None) -> "Tensor":
        """Apply a linear map, given on words, to every slot."""
        target = target or self.algebra
        acc: Dict[Tuple[Word, ...], Fraction] = {}
        for k, c in self.terms.items():
            part = Tensor.pure(*[f(w) for w in k]) if k else None
            if part is None:
                continue
            for kk, cc in part.terms.items():
                _add_into(acc, kk, c * cc)
        return Tensor(target, self.arity, acc)

    def extend(self, slot: int, f: Callable[[Element], "Tensor"]) -> "Tensor":
        """Replace slot ``slot`` by the tensor f(x); the arity grows by f's arity − 1."""
        acc: Dict[Tuple[Word, ...], Fraction] = {}
        arity = None
        for k, c in self.terms.items():
            img = f(Element(self.algebra, {k[slot]: Fraction(1)}))
            arity = self.arity + img.arity - 1
            for kk, cc in img.terms.items():
                _add_into(acc, k[:slot] + kk + k[slot + 1:], c * cc)
        if arity is None:
            arity = self.arity + 1
        return Tensor(self.algebra, arity, acc)

    def sorted_terms(self) -> List[Tuple[Tuple[Word, ...], Fraction]]:
        key = self.algebra.word_key
        return sorted(self.terms.items(), key=lambda kv: tuple(key(w) for w in kv[0]))

    def __len__(self) -> int:
        return len(self.terms)

    def to_text(self, sep: str = " (x) ") -> str:
        ws = self.algebra.word_str
        return format_terms([("(" + sep.join(ws(w) for w in k) + ")", c) for k, c in self.sorted_terms()])

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Tensor({self})"


def tensor(*factors: Element) -> Tensor:
    return Tensor.pure(*factors)


# ---------------------------------------------------------------------------
# JSON term lists


def _coeff_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def element_to_json(x: Element) -> List[dict]:
    names = x.algebra.symbols
    return [{"coeff": _coeff_str(c), "word": [names[i].name for i in w]} for w, c in x.sorted_terms()]


def element_from_json(alg: PathAlgebra, data: Iterable[Mapping]) -> Element:
    acc: Dict[Word, Fraction] = {}
    for item in data:
        _add_into(acc, alg.word_from_names(item["word"]), Fraction(item["coeff"]))
    return Element(alg, acc)


def tensor_to_json(t: Tensor) -> List[dict]:
    names = t.algebra.symbols
    return [
        {"coeff": _coeff_str(c), "words": [[names[i].name for i in w] for w in k]}
        for k, c in t.sorted_terms()
    ]


def tensor_from_json(alg: PathAlgebra, data: Sequence[Mapping], arity: Optional[int] = None) -> Tensor:
    acc: Dict[Tuple[Word, ...], Fraction] = {}
    for item in data:
        k = tuple(alg.word_from_names(w) for w in item["words"])
        if arity is None:
            arity = len(k)
        _add_into(acc, k, Fraction(item["coeff"]))
    return Tensor(alg, arity if arity is not None else 2, acc)


def dumps(x: Union[Element, Tensor]) -> str:
    data = element_to_json(x) if isinstance(x, Element) else tensor_to_json(x)
    return json.dumps(data, ensure_ascii=False)


# ---------------------------------------------------------------------------
# the quiver Γₙ


def is_a(name: str) -> bool:
    return name.startswith("a") and name[1:].isdigit()


def is_b(name: str) -> bool:
    return name.startswith("b") and name[1:].isdigit()


def arrow_number(name: str) -> int:
    return int(name[1:])


@dataclass(frozen=True)
class QuiverSpec:
    """Γₙ: vertices 1, 2, arrows aᵢ: 1→2 and bᵢ: 2→1, with some continuants inverted."""

    n: int
    inverted_continuants: Tuple[Tuple[str, ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "inverted_continuants", tuple(tuple(s) for s in self.inverted_continuants))

    def build(self) -> PathAlgebra:
        from .continuants import continuant

        arrows = [(f"a{i}", "1", "2") for i in range(1, self.n + 1)]
        arrows += [(f"b{i}", "2", "1") for i in range(1, self.n + 1)]
        alg = PathAlgebra(["1", "2"], arrows, name=f"Gamma{self.n}")
        alg.n = self.n  # type: ignore[attr-defined]
        for seq in self.inverted_continuants:
            for nm in seq:
                if not (is_a(nm) or is_b(nm)) or arrow_number(nm) > self.n:
                    raise ValueError(f"unknown generator {nm!r} in inverted continuant")
            alg.add_inverse(seq, continuant(alg, seq))
        return alg


def moment_sequences(n: int) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    """(a₁,b₁,…,aₙ,bₙ) and (bₙ,aₙ,…,b₁,a₁)."""
    fwd = tuple(x for i in range(1, n + 1) for x in (f"a{i}", f"b{i}"))
    return fwd, tuple(reversed(fwd))


def localising_sequences(n: int) -> Tuple[Tuple[str, ...], ...]:
    """(a₁,b₁,…,a_k,b_k) and (b_k,a_k,…,b₁,a₁) for k = 1..n."""
    out: List[Tuple[str, ...]] = []
    for k in range(1, n + 1):
        out += list(moment_sequences(k))
    return tuple(out)


@lru_cache(maxsize=None)
def gamma_algebra(n: int, inverted: str = "none") -> PathAlgebra:
    """The shared (frozen) algebra kΓ̄ₙ or one of its localisations.

    ``inverted`` is ``none``, ``moment`` (the two moment-map continuants) or
    ``all`` (the 2n continuants inverted in the factorisation).
    """
    if inverted == "none":
        spec = QuiverSpec(n)
    elif inverted == "moment":
        spec = QuiverSpec(n, moment_sequences(n))
    elif inverted == "all":
        spec = QuiverSpec(n, localising_sequences(n))
    else:
        raise ValueError(f"unknown localisation {inverted!r}")
    return spec.build().freeze()


def gamma_n(alg: PathAlgebra) -> int:
    n = getattr(alg, "n", None)
    if n is None:
        raise ValueError("not a Γₙ algebra")
    return n


def s_name(name: str, n: int) -> str:
    """a_ℓ ↦ b_{n+1−ℓ}, b_ℓ ↦ a_{n+1−ℓ}."""
    k = n + 1 - arrow_number(name)
    return f"b{k}" if is_a(name) else f"a{k}"


def apply_S(x: Element) -> Element:
    """The order-two automorphism swapping the two vertices."""
    alg = x.algebra
    n = gamma_n(alg)
    table: Dict[int, int] = {}
    for i, sym in enumerate(alg.symbols):
        if sym.kind == IDEMPOTENT:
            table[i] = alg.vertex_symbol["2" if sym.head == "1" else "1"]
        elif sym.kind == ARROW:
            table[i] = alg.index[s_name(sym.name, n)]
        else:
            target = inverse_name([s_name(nm, n) for nm in sym.sequence])
            if target not in alg.index:
                raise ValueError(f"S({sym.name}) is not a declared inverse")
            table[i] = alg.index[target]
    return Element(alg, {tuple(table[i] for i in w): c for w, c in x.terms.items()})


def apply_S_tensor(t: Tensor) -> Tensor:
    alg = t.algebra
    return t.slot_map(lambda w: apply_S(Element(alg, {w: Fraction(1)})))
