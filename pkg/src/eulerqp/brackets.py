"""Double brackets, triple brackets, moment maps and noncommutative polyvectors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import (
    ARROW,
    IDEMPOTENT,
    INVERSE,
    Element,
    PathAlgebra,
    Tensor,
    Word,
    _add_into,
    apply_S,
    apply_S_tensor,
    gamma_algebra,
    tensor,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

Pair = Tuple[str, str]


class UnknownSymbol(KeyError):
    pass


def _as_element(alg: PathAlgebra, x: Union[Element, str]) -> Element:
    if isinstance(x, str):
        if x not in alg.index:
            raise UnknownSymbol(x)
        return alg.gen(x)
    return x


class DoubleBracket:
    """A B-linear double bracket given by its values on pairs of arrows.

    Missing table entries are zero.  Values on words follow from the two
    Leibniz rules, and values on inverse symbols from the sandwich rules
    ⟪x, C⁻¹⟫ = −C⁻¹⟪x, C⟫C⁻¹ and ⟪C⁻¹, x⟫ = −C⁻¹∗⟪C, x⟫∗C⁻¹.
    """

    def __init__(self, algebra: PathAlgebra, table: Mapping[Pair, Tensor], name: str = ""):
        self.algebra = algebra
        self.name = name
        self._table: Dict[Tuple[int, int], Tensor] = {}
        for (x, y), t in table.items():
            i, j = algebra.index[x], algebra.index[y]
            if algebra.symbols[i].kind != ARROW or algebra.symbols[j].kind != ARROW:
                raise ValueError(f"table entries must be on arrows, got ({x}, {y})")
            if t.algebra is not algebra or t.arity != 2:
                raise ValueError(f"entry ({x}, {y}) is not in A⊗A")
            if t:
                self._table[(i, j)] = t
        self._pair_cache: Dict[Tuple[int, int], Tensor] = {}
        self._word_cache: Dict[Tuple[Word, Word], Dict[Tuple[Word, Word], Fraction]] = {}

    # -- table access ---------------------------------------------------

    def entry(self, x: str, y: str) -> Tensor:
        alg = self.algebra
        return self.pair(alg.index[x], alg.index[y])

    def table(self) -> Dict[Pair, Tensor]:
        names = self.algebra.symbols
        return {(names[i].name, names[j].name): t for (i, j), t in self._table.items()}

    def arrow_pairs(self) -> List[Pair]:
        names = [self.algebra.symbols[i].name for i in self.algebra.arrows]
        return [(x, y) for x in names for y in names]

    def with_entry(self, x: str, y: str, value: Tensor) -> "DoubleBracket":
        tab = self.table()
        tab[(x, y)] = value
        return DoubleBracket(self.algebra, tab, self.name + "*")

    def __add__(self, other: "DoubleBracket") -> "DoubleBracket":
        if other.algebra is not self.algebra:
            raise ValueError("brackets on different algebras")
        tab = self.table()
        for k, t in other.table().items():
            tab[k] = tab[k] + t if k in tab else t
        return DoubleBracket(self.algebra, tab, self.name)

    # -- evaluation -----------------------------------------------------

    def pair(self, i: int, j: int) -> Tensor:
        """⟪x, y⟫ for two symbols (by index)."""
        key = (i, j)
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        alg = self.algebra
        si, sj = alg.symbols[i], alg.symbols[j]
        if si.kind == IDEMPOTENT or sj.kind == IDEMPOTENT:
            val = Tensor.zero(alg)
        elif sj.kind == INVERSE:
            inv = alg.word((j,))
            val = -self(alg.word((i,)), alg.inverse_of[j]).outer(inv, inv)
        elif si.kind == INVERSE:
            inv = alg.word((i,))
            val = -self(alg.inverse_of[i], alg.word((j,))).inner(inv, inv)
        else:
            val = self._table.get(key, Tensor.zero(alg))
        self._pair_cache[key] = val
        return val

    def _words(self, u: Word, v: Word) -> Dict[Tuple[Word, Word], Fraction]:
        key = (u, v)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        alg = self.algebra
        mul = alg.mul_words
        acc: Dict[Tuple[Word, Word], Fraction] = {}
        if not (alg.is_idempotent_word(u) or alg.is_idempotent_word(v)):
            for k in range(len(u)):
                pre_u, post_u = u[:k], u[k + 1:]
                for l in range(len(v)):
                    pre_v, post_v = v[:l], v[l + 1:]
                    for (x1, x2), c in self.pair(u[k], v[l]).terms.items():
                        w1 = mul(pre_v, x1)
                        w1 = mul(w1, post_u) if w1 is not None else None
                        if w1 is None:
                            continue
                        w2 = mul(pre_u, x2)
                        w2 = mul(w2, post_v) if w2 is not None else None
                        if w2 is None:
                            continue
                        _add_into(acc, (w1, w2), c)
        self._word_cache[key] = acc
        return acc

    def __call__(self, x: Union[Element, str], y: Union[Element, str]) -> Tensor:
        alg = self.algebra
        x, y = _as_element(alg, x), _as_element(alg, y)
        acc: Dict[Tuple[Word, Word], Fraction] = {}
        for u, c in x.terms.items():
            for v, d in y.terms.items():
                cd = c * d
                for k, e in self._words(u, v).items():
                    _add_into(acc, k, cd * e)
        return Tensor(alg, 2, acc)

    def left_extended(self, a: Element, t: Tensor) -> Tensor:
        """⟪a, x⊗y⟫_L = ⟪a, x⟫⊗y."""
        return t.extend(0, lambda x: self(a, x))

    def associated(self, x: Union[Element, str], y: Union[Element, str]) -> Element:
        """{x, y} = m∘⟪x, y⟫."""
        return self(x, y).multiply()

    def __repr__(self) -> str:
        return f"DoubleBracket({self.name or self.algebra!r})"


# ---------------------------------------------------------------------------
# the bracket on Γₙ


def _sgn(k: int) -> int:
    return (k > 0) - (k < 0)


def euler_bracket_table(n: int, algebra: Optional[PathAlgebra] = None) -> DoubleBracket:
    """The double quasi-Poisson bracket of kΓ̄ₙ, stored on all ordered arrow pairs."""
    alg = algebra if algebra is not None else gamma_algebra(n)
    e1, e2 = alg.e(1), alg.e(2)
    a = {i: alg.gen(f"a{i}") for i in range(1, n + 1)}
    b = {i: alg.gen(f"b{i}") for i in range(1, n + 1)}
    tab: Dict[Pair, Tensor] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            s = _sgn(i - j)
            if i != j:
                tab[(f"a{i}", f"a{j}")] = (tensor(a[i], a[j]) + tensor(a[j], a[i])).scale(HALF * s)
                tab[(f"b{i}", f"b{j}")] = (tensor(b[i], b[j]) + tensor(b[j], b[i])).scale(HALF * s)
            ab = tensor(e1, a[i] * b[j]) + tensor(b[j] * a[i], e2)
            ba = tensor(e2, b[i] * a[j]) + tensor(a[j] * b[i], e1)
            if i < j:
                tab[(f"a{i}", f"b{j}")] = ab.scale(HALF)
                t = ba.scale(HALF)
                if j - i == 1:
                    t = t + tensor(e2, e1)
                tab[(f"b{i}", f"a{j}")] = t
            elif i == j:
                tab[(f"a{i}", f"b{j}")] = ab.scale(HALF) + tensor(e1, e2)
                tab[(f"b{i}", f"a{j}")] = ba.scale(-HALF) - tensor(e2, e1)
            else:
                t = ab.scale(-HALF)
                if i - j == 1:
                    t = t - tensor(e1, e2)
                tab[(f"a{i}", f"b{j}")] = t
                tab[(f"b{i}", f"a{j}")] = ba.scale(-HALF)
    return DoubleBracket(alg, tab, name=f"euler{n}")


def mutate(db: DoubleBracket, x: str, y: str, factor=2) -> DoubleBracket:
    """A deliberately broken copy of ``db``.

    The entry ⟪x, y⟫ is multiplied by ``factor``, and ⟪y, x⟫ is changed to
    match so that cyclic antisymmetry survives.  Dropping only the
    idempotent terms would not do: for n = 1 the result is still
    quasi-Poisson.
    """
    t = db.entry(x, y)
    if not t:
        raise ValueError(f"the entry {{{{{x},{y}}}}} is zero")
    new = t.scale(Fraction(factor))
    out = db.with_entry(x, y, new)
    if x != y:
        out = out.with_entry(y, x, -new.tau12())
    return out


def check_cyclic_antisymmetry(db: DoubleBracket) -> List[Tuple[Pair, Tensor]]:
    """Pairs where ⟪x, y⟫ + τ⟪y, x⟫ ≠ 0, with the residual."""
    out = []
    for x, y in db.arrow_pairs():
        r = db.entry(x, y) + db.entry(y, x).tau12()
        if r:
            out.append(((x, y), r))
    return out


def check_S_equivariance(db: DoubleBracket) -> List[Tuple[Pair, Tensor]]:
    """Pairs where (S⊗S)⟪x, y⟫ ≠ −⟪Sx, Sy⟫."""
    alg = db.algebra
    out = []
    for x, y in db.arrow_pairs():
        gx, gy = alg.gen(x), alg.gen(y)
        r = apply_S_tensor(db(gx, gy)) + db(apply_S(gx), apply_S(gy))
        if r:
            out.append(((x, y), r))
    return out


# ---------------------------------------------------------------------------
# triple brackets


def triple_bracket(db: DoubleBracket, a, b, c) -> Tensor:
    """⟪a,⟪b,c⟫⟫_L + τ₁₂₃⟪b,⟪c,a⟫⟫_L + τ₁₃₂⟪c,⟪a,b⟫⟫_L."""
    alg = db.algebra
    a, b, c = (_as_element(alg, z) for z in (a, b, c))
    t1 = db.left_extended(a, db(b, c))
    t2 = db.left_extended(b, db(c, a)).tau123()
    t3 = db.left_extended(c, db(a, b)).tau132()
    return t1 + t2 + t3


def qp_triple_bracket(alg: PathAlgebra, a, b, c) -> Tensor:
    """The quasi-Poisson triple bracket built from the idempotents."""
    a, b, c = (_as_element(alg, z) for z in (a, b, c))
    total = Tensor.zero(alg, 3)
    for v in alg.vertices:
        es = alg.e(v)
        terms = [
            (1, tensor(c * es * a, es * b, es)),
            (-1, tensor(c * es * a, es, b * es)),
            (-1, tensor(c * es, a * es * b, es)),
            (1, tensor(c * es, a * es, b * es)),
            (-1, tensor(es * a, es * b, es * c)),
            (1, tensor(es * a, es, b * es * c)),
            (1, tensor(es, a * es * b, es * c)),
            (-1, tensor(es, a * es, b * es * c)),
        ]
        for sign, t in terms:
            total = total + t.scale(sign)
    return total.scale(QUARTER)


@dataclass
class CheckReport:
    """Outcome of checking one identity on a family of inputs."""

    identity: str
    mode: str = "exact"
    checked: int = 0
    failures: List[Tuple[str, str]] = field(default_factory=list)
    log: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def record(self, label: str, residual) -> None:
        self.checked += 1
        if residual:
            self.failures.append((label, str(residual)))

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.failures += other.failures
        self.log += other.log
        return self


def check_quasi_poisson(db: DoubleBracket, generators: Optional[Sequence[str]] = None) -> CheckReport:
    """Compare the triple bracket with the quasi-Poisson one on all ordered generator triples."""
    alg = db.algebra
    names = list(generators) if generators is not None else [alg.symbols[i].name for i in alg.arrows]
    rep = CheckReport("quasi-Poisson identity")
    for x, y, z in itertools.product(names, repeat=3):
        r = triple_bracket(db, x, y, z) - qp_triple_bracket(alg, x, y, z)
        rep.record(f"({x},{y},{z})", r)
    return rep


def moment_map_rhs(alg: PathAlgebra, phi: Element, s, x: Element) -> Tensor:
    """½(xe_s⊗Φ_s − e_s⊗Φ_s x + xΦ_s⊗e_s − Φ_s⊗e_s x)."""
    es = alg.e(s)
    return (
        tensor(x * es, phi) - tensor(es, phi * x) + tensor(x * phi, es) - tensor(phi, es * x)
    ).scale(HALF)


def moment_map_inverse_rhs(alg: PathAlgebra, phi_inv: Element, s, x: Element) -> Tensor:
    """−½(xΦ_s⁻¹⊗e_s − Φ_s⁻¹⊗e_s x + xe_s⊗Φ_s⁻¹ − e_s⊗Φ_s⁻¹x)."""
    es = alg.e(s)
    return (
        tensor(x * phi_inv, es) - tensor(phi_inv, es * x) + tensor(x * es, phi_inv) - tensor(es, phi_inv * x)
    ).scale(-HALF)


def check_moment_map(
    db: DoubleBracket,
    phi: Element,
    s,
    mode: str = "direct",
    generators: Optional[Sequence[str]] = None,
    oracle: Optional[Callable[[Tensor], bool]] = None,
) -> CheckReport:
    """Check ⟪Φ_s, x⟫ against the moment map formula for every generator x.

    In ``direct`` mode the comparison is exact, so Φ_s must be inverse-free.
    In ``inverse`` mode ``oracle`` decides whether the residual vanishes; it
    defaults to the representation oracle with its standard settings.
    """
    alg = db.algebra
    names = list(generators) if generators is not None else [alg.symbols[i].name for i in alg.arrows]
    rep = CheckReport(f"moment map at vertex {s}", mode="exact" if mode == "direct" else "oracle")
    if mode == "direct":
        if phi.has_inverses():
            raise ValueError("direct mode needs an inverse-free moment map")
        for nm in names:
            x = alg.gen(nm)
            rep.record(nm, db(phi, x) - moment_map_rhs(alg, phi, s, x))
        return rep
    if mode != "inverse":
        raise ValueError(f"unknown mode {mode!r}")
    if oracle is None:
        from .oracle import is_zero_probabilistic

        def oracle(t: Tensor) -> bool:
            return is_zero_probabilistic(t).zero

    for nm in names:
        x = alg.gen(nm)
        r = db(phi, x) - moment_map_rhs(alg, phi, s, x)
        rep.checked += 1
        if not oracle(r):
            rep.failures.append((nm, f"oracle found a nonzero residual with {len(r)} terms"))
    return rep


# ---------------------------------------------------------------------------
# double derivations and polyvectors


class DoubleDerivation:
    """A B-linear derivation A → A⊗A (outer bimodule), given on the arrows."""

    def __init__(self, algebra: PathAlgebra, values: Mapping[str, Tensor], name: str = ""):
        self.algebra = algebra
        self.name = name
        self._values: Dict[int, Tensor] = {}
        for nm, t in values.items():
            i = algebra.index[nm]
            if algebra.symbols[i].kind != ARROW:
                raise ValueError("values are given on arrows")
            if t:
                self._values[i] = t
        self._cache: Dict[int, Tensor] = {}

    def atom(self, i: int) -> Tensor:
        hit = self._cache.get(i)
        if hit is not None:
            return hit
        alg = self.algebra
        sym = alg.symbols[i]
        if sym.kind == IDEMPOTENT:
            val = Tensor.zero(alg)
        elif sym.kind == INVERSE:
            inv = alg.word((i,))
            val = -self(alg.inverse_of[i]).outer(inv, inv)
        else:
            val = self._values.get(i, Tensor.zero(alg))
        self._cache[i] = val
        return val

    def __call__(self, x: Union[Element, str]) -> Tensor:
        alg = self.algebra
        x = _as_element(alg, x)
        mul = alg.mul_words
        acc: Dict[Tuple[Word, Word], Fraction] = {}
        for w, c in x.terms.items():
            if alg.is_idempotent_word(w):
                continue
            for k in range(len(w)):
                pre, post = w[:k], w[k + 1:]
                for (x1, x2), d in self.atom(w[k]).terms.items():
                    w1 = mul(pre, x1)
                    w2 = mul(x2, post)
                    if w1 is None or w2 is None:
                        continue
                    _add_into(acc, (w1, w2), c * d)
        return Tensor(alg, 2, acc)

    def decorate(self, left: Optional[Element] = None, right: Optional[Element] = None) -> "DoubleDerivation":
        """left·δ·right, acting by (left δ right)(x) = δ(x)′right ⊗ left δ(x)″."""
        alg = self.algebra
        vals = {alg.symbols[i].name: t.inner(left, right) for i, t in self._values.items()}
        return DoubleDerivation(alg, vals, self.name)

    def __repr__(self) -> str:
        return f"DoubleDerivation({self.name})"


def partial(alg: PathAlgebra, name: str) -> DoubleDerivation:
    """∂/∂x: x ↦ e_{h(x)}⊗e_{t(x)}, other arrows ↦ 0."""
    sym = alg.symbols[alg.index[name]]
    return DoubleDerivation(alg, {name: tensor(alg.e(sym.head), alg.e(sym.tail))}, name=f"d/d{name}")


def gauge(alg: PathAlgebra, s) -> DoubleDerivation:
    """E_s: x ↦ xe_s⊗e_s − e_s⊗e_s x."""
    es = alg.e(s)
    vals = {}
    for i in alg.arrows:
        x = alg.word((i,))
        vals[alg.symbols[i].name] = tensor(x * es, es) - tensor(es, es * x)
    return DoubleDerivation(alg, vals, name=f"E{s}")


@dataclass
class Polyvector:
    """A rational combination of products δ₁⋯δ_k of decorated double derivations."""

    algebra: PathAlgebra
    degree: int
    terms: List[Tuple[Fraction, Tuple[DoubleDerivation, ...]]] = field(default_factory=list)

    def add(self, coeff, *factors: DoubleDerivation) -> "Polyvector":
        if len(factors) != self.degree:
            raise ValueError("wrong number of factors")
        self.terms.append((Fraction(coeff), tuple(factors)))
        return self


Bivector = Polyvector


def _tilde(q: Polyvector, args: Sequence[Element]) -> Tensor:
    """δ_n(a_n)′δ₁(a₁)″ ⊗ δ₁(a₁)′δ₂(a₂)″ ⊗ … ⊗ δ_{n−1}(a_{n−1})′δ_n(a_n)″."""
    alg = q.algebra
    n = q.degree
    mul = alg.mul_words
    acc: Dict[Tuple[Word, ...], Fraction] = {}
    for coeff, ds in q.terms:
        vals = [list(ds[k](args[k]).terms.items()) for k in range(n)]
        if any(not v for v in vals):
            continue
        for combo in itertools.product(*vals):
            slots: List[Word] = []
            c = coeff
            ok = True
            for k in range(n):
                left = combo[k - 1][0][0]  # δ_k(a_k)′, wrapping to δ_n for slot 0
                right = combo[k][0][1]
                w = mul(left, right)
                if w is None:
                    ok = False
                    break
                slots.append(w)
                c *= combo[k][1]
            if ok:
                _add_into(acc, tuple(slots), c)
    return Tensor(alg, n, acc)


def mu(q: Polyvector) -> Callable[..., Tensor]:
    """The n-bracket Σᵢ (−1)^{(n−1)i} τ^i ∘ ⟪…⟫~ ∘ τ^{−i} attached to q (n = 2, 3)."""
    n = q.degree
    if n not in (2, 3):
        raise ValueError("only degrees 2 and 3 are supported")

    def bracket(*args) -> Tensor:
        if len(args) != n:
            raise TypeError(f"expected {n} arguments")
        xs = [_as_element(q.algebra, z) for z in args]
        total = Tensor.zero(q.algebra, n)
        for i in range(n):
            rotated = xs[i:] + xs[:i]
            t = _tilde(q, rotated).rotate(i)
            total = total + (t if ((n - 1) * i) % 2 == 0 else -t)
        return total

    return bracket


def mu_n(q: Polyvector) -> Callable[..., Tensor]:
    return mu(q)


def gauge_cube(alg: PathAlgebra) -> Polyvector:
    """Σ_s E_s³."""
    q = Polyvector(alg, 3)
    for v in alg.vertices:
        e = gauge(alg, v)
        q.add(1, e, e, e)
    return q


def qp_via_mu(alg: PathAlgebra) -> Callable[..., Tensor]:
    """The quasi-Poisson triple bracket as μ₃(Σ_s E_s³)/12."""
    m = mu(gauge_cube(alg))
    return lambda a, b, c: m(a, b, c).scale(Fraction(1, 12))


def build_Pn(n: int, algebra: Optional[PathAlgebra] = None) -> Polyvector:
    """The bivector whose bracket is the Γₙ double bracket.

    Decorations between the two derivations are attached to the first one;
    this is harmless since the product is taken over A.
    """
    alg = algebra if algebra is not None else gamma_algebra(n)
    a = {i: alg.gen(f"a{i}") for i in range(1, n + 1)}
    b = {i: alg.gen(f"b{i}") for i in range(1, n + 1)}
    da = {i: partial(alg, f"a{i}") for i in range(1, n + 1)}
    db_ = {i: partial(alg, f"b{i}") for i in range(1, n + 1)}
    p = Polyvector(alg, 2)
    for i in range(1, n + 1):
        for j in range(1, i):
            p.add(HALF, da[i].decorate(right=a[i]), da[j].decorate(right=a[j]))
            p.add(HALF, da[i].decorate(right=a[j]), da[j].decorate(right=a[i]))
            p.add(HALF, db_[i].decorate(right=b[i]), db_[j].decorate(right=b[j]))
            p.add(HALF, db_[i].decorate(right=b[j]), db_[j].decorate(right=b[i]))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            s = HALF * _sgn(j - i)
            p.add(s, da[i].decorate(right=a[i] * b[j]), db_[j])
            p.add(s, da[i].decorate(left=a[i]), db_[j].decorate(right=b[j]))
    for i in range(2, n + 1):
        p.add(-1, da[i], db_[i - 1])
    for i in range(1, n + 1):
        p.add(HALF, da[i].decorate(right=a[i] * b[i]), db_[i])
        p.add(HALF, da[i].decorate(left=a[i]), db_[i].decorate(right=b[i]))
        p.add(1, da[i], db_[i])
    return p


def bracket_from_bivector(p: Polyvector, name: str = "") -> DoubleBracket:
    """The double bracket μ(P), tabulated on arrow pairs."""
    if p.degree != 2:
        raise ValueError("need a bivector")
    alg = p.algebra
    m = mu(p)
    names = [alg.symbols[i].name for i in alg.arrows]
    tab = {(x, y): m(alg.gen(x), alg.gen(y)) for x in names for y in names}
    return DoubleBracket(alg, tab, name=name or "bivector")


# ---------------------------------------------------------------------------
# H₀


def h0_reduce(x: Element) -> Element:
    """Canonical representative of x in A/[A,A].

    A word that is not a loop equals the commutator [e_h, w] and goes to 0;
    a loop is replaced by its least cyclic rotation.
    """
    alg = x.algebra
    acc: Dict[Word, Fraction] = {}
    for w, c in x.terms.items():
        if alg.is_idempotent_word(w):
            _add_into(acc, w, c)
            continue
        h, t = alg.word_ends(w)
        if h != t:
            continue
        rot = min(w[k:] + w[:k] for k in range(len(w)))
        _add_into(acc, rot, c)
    return Element(alg, acc)


def associated_bracket(db: DoubleBracket, x, y) -> Element:
    return db.associated(x, y)
