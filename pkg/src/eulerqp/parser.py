"""Text syntax for path algebra elements.

Grammar::

    sum     := ['-'] term (('+' | '-') term)*
    term    := factor (['*'] factor)*
    factor  := NUMBER | IDENT | 'inv' '(' cont ')' | cont | '(' sum ('(x)' sum)* ')'
    cont    := '<' IDENT (',' IDENT)* '>'

Identifiers are a letter followed by digits (``e1``, ``a3``, ``b12``), with an
optional ``_digits`` suffix for the vertices of fused algebras.  ``(x)`` and
``⊗`` separate tensor slots and may only appear inside parentheses.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .algebra import Element, PathAlgebra, Tensor, inverse_name
from .continuants import NotAlternating, continuant


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line, self.column, self.pos = line, col, pos


class ElaborationError(ValueError):
    pass


class NonComposableWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Ident:
    name: str


@dataclass(frozen=True)
class Cont:
    sequence: Tuple[str, ...]


@dataclass(frozen=True)
class Inverse:
    sequence: Tuple[str, ...]


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]  # (sign, term)


@dataclass(frozen=True)
class TensorNode:
    slots: Tuple["Node", ...]


Node = Union[Num, Ident, Cont, Inverse, Product, Sum, TensorNode]


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<tensor>\(x\)|⊗)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<inv>inv(?=\s*\())
  | (?P<ident>[a-z]\d+(?:_\d+)?)
  | (?P<op>[-+*(),<>])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind if kind != "op" else m.group(), m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def take(self, kind: Optional[str] = None) -> Token:
        t = self.cur
        if kind is not None and t.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {want}, found {got}", self.text, t.pos)
        self.i += 1
        return t

    def sum(self) -> Node:
        terms: List[Tuple[int, Node]] = []
        sign = 1
        if self.cur.kind == "-":
            self.take()
            sign = -1
        terms.append((sign, self.term()))
        while self.cur.kind in ("+", "-"):
            sign = 1 if self.take().kind == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    _STARTS = ("num", "ident", "inv", "<", "(")

    def term(self) -> Node:
        factors = [self.factor()]
        while True:
            if self.cur.kind == "*":
                self.take()
                factors.append(self.factor())
            elif self.cur.kind in self._STARTS:
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def cont(self) -> Tuple[str, ...]:
        self.take("<")
        names = [self.take("ident").text]
        while self.cur.kind == ",":
            self.take()
            names.append(self.take("ident").text)
        self.take(">")
        return tuple(names)

    def factor(self) -> Node:
        t = self.cur
        if t.kind == "num":
            self.take()
            return Num(Fraction(t.text))
        if t.kind == "ident":
            self.take()
            return Ident(t.text)
        if t.kind == "inv":
            self.take()
            self.take("(")
            seq = self.cont()
            self.take(")")
            return Inverse(seq)
        if t.kind == "<":
            return Cont(self.cont())
        if t.kind == "(":
            self.take()
            slots = [self.sum()]
            while self.cur.kind == "tensor":
                self.take()
                slots.append(self.sum())
            self.take(")")
            return slots[0] if len(slots) == 1 else TensorNode(tuple(slots))
        got = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {got}", self.text, t.pos)


def parse(text: str) -> Node:
    p = _Parser(text)
    node = p.sum()
    p.take("end")
    return node


# ---------------------------------------------------------------------------
# printing


def _num_text(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def to_text(node: Node) -> str:
    """Canonical text; parsing it gives back an equal AST."""
    if isinstance(node, Num):
        return _num_text(node.value)
    if isinstance(node, Ident):
        return node.name
    if isinstance(node, Cont):
        return "<" + ",".join(node.sequence) + ">"
    if isinstance(node, Inverse):
        return inverse_name(node.sequence)
    if isinstance(node, Product):
        return "*".join(_factor_text(f) for f in node.factors)
    if isinstance(node, Sum):
        out = []
        for k, (sign, t) in enumerate(node.terms):
            body = _term_text(t)
            if k == 0:
                out.append(body if sign == 1 else "-" + body)
            else:
                out.append((" + " if sign == 1 else " - ") + body)
        return "".join(out)
    if isinstance(node, TensorNode):
        return "(" + " (x) ".join(to_text(s) for s in node.slots) + ")"
    raise TypeError(f"not an AST node: {node!r}")


def _term_text(node: Node) -> str:
    return "(" + to_text(node) + ")" if isinstance(node, Sum) else to_text(node)


def _factor_text(node: Node) -> str:
    if isinstance(node, (Sum, Product)):
        return "(" + to_text(node) + ")"
    return to_text(node)


# ---------------------------------------------------------------------------
# elaboration


def _lookup(alg: PathAlgebra, name: str) -> Element:
    if name in alg.index:
        return alg.gen(name)
    if name.startswith("e") and name[1:] in alg.vertex_symbol:
        return alg.e(name[1:])
    raise ElaborationError(f"unknown symbol {name!r}")


def elaborate(node: Node, alg: PathAlgebra) -> Union[Element, Tensor, Fraction]:
    """Build the element (or tensor) an AST denotes.

    A product of two nonzero factors that do not compose is zero, as in the
    path algebra, and raises a NonComposableWarning naming the pair.
    """
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Ident):
        return _lookup(alg, node.name)
    if isinstance(node, Cont):
        try:
            return continuant(alg, node.sequence)
        except NotAlternating as exc:
            raise ElaborationError(str(exc)) from None
    if isinstance(node, Inverse):
        name = inverse_name(node.sequence)
        if name not in alg.index:
            raise ElaborationError(f"{name} is not inverted in this algebra")
        return alg.gen(name)
    if isinstance(node, TensorNode):
        slots = [_as_element(elaborate(s, alg), alg) for s in node.slots]
        return Tensor.pure(*slots)
    if isinstance(node, Product):
        acc = elaborate(node.factors[0], alg)
        prev = node.factors[0]
        for f in node.factors[1:]:
            val = elaborate(f, alg)
            acc = _multiply(acc, val, prev, f)
            prev = f
        return acc
    if isinstance(node, Sum):
        acc = None
        for sign, t in node.terms:
            val = elaborate(t, alg)
            if isinstance(val, Fraction):
                val = alg.one().scale(val)
            val = val.scale(sign) if sign < 0 else val
            acc = val if acc is None else _add(acc, val)
        return acc
    raise TypeError(f"not an AST node: {node!r}")


def _as_element(v, alg: PathAlgebra) -> Element:
    if isinstance(v, Fraction):
        return alg.one().scale(v)
    if isinstance(v, Tensor):
        raise ElaborationError("nested tensor")
    return v


def _add(x, y):
    if isinstance(x, Tensor) != isinstance(y, Tensor):
        raise ElaborationError("cannot add a tensor and an element")
    if isinstance(x, Tensor) and x.arity != y.arity:
        raise ElaborationError("cannot add tensors of different arity")
    return x + y


def _multiply(x, y, xn: Node, yn: Node):
    if isinstance(x, Fraction):
        return y * x if not isinstance(y, Fraction) else x * y
    if isinstance(y, Fraction):
        return x.scale(y)
    if isinstance(x, Tensor) or isinstance(y, Tensor):
        raise ElaborationError("tensors can only be scaled")
    out = x * y
    if x.terms and y.terms and not out.terms:
        warnings.warn(
            f"non-composable factors {to_text(xn)} and {to_text(yn)}; the product is zero",
            NonComposableWarning,
            stacklevel=3,
        )
    return out


def parse_element(text: str, alg: PathAlgebra) -> Element:
    v = elaborate(parse(text), alg)
    if isinstance(v, Tensor):
        raise ElaborationError("expected an element, got a tensor")
    return _as_element(v, alg)


def parse_tensor(text: str, alg: PathAlgebra) -> Tensor:
    v = elaborate(parse(text), alg)
    if not isinstance(v, Tensor):
        raise ElaborationError("expected a tensor")
    return v
