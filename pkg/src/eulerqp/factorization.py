"""The localised algebra B_loc, the primed generators and the isomorphism with the fused algebra.

Identities that contain inverse symbols are decided by the representation
oracle.  Their inverse-free counterparts, obtained by clearing denominators,
are checked exactly next to them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import Element, PathAlgebra, Tensor, Word, gamma_algebra, localising_sequences, tensor
from .brackets import (
    HALF,
    CheckReport,
    DoubleBracket,
    euler_bracket_table,
    moment_map_inverse_rhs,
)
from .continuants import alternating, continuant
from .fusion import afus_closed_form, afus_moment_closed_form, build_Afus, compare_tables, euler_like_from_elements
from .oracle import is_zero_probabilistic

FACTORISATION_DIMS: Tuple[Tuple[int, int], ...] = ((1, 1), (2, 2), (2, 3))


@dataclass(frozen=True)
class OracleConfig:
    dims: Tuple[Tuple[int, ...], ...] = FACTORISATION_DIMS
    trials: int = 3
    seed: object = 0
    rng_range: int = 999
    augment: bool = True

    def is_zero(self, x) -> bool:
        return is_zero_probabilistic(
            x, self.dims, trials=self.trials, seed=self.seed, rng_range=self.rng_range, augment=self.augment
        ).zero


@dataclass(frozen=True)
class LocalisedAlgebraSpec:
    """B_loc(n): kΓ̄ₙ with (a₁,…,a_k,b_k) and (b_k,…,b₁,a₁) inverted for k = 1..n."""

    n: int
    sequences: Tuple[Tuple[str, ...], ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not self.sequences:
            object.__setattr__(self, "sequences", localising_sequences(self.n))

    def build(self) -> PathAlgebra:
        return gamma_algebra(self.n, "all")

    def loop_vertices(self) -> Dict[Tuple[str, ...], str]:
        """Vertex of each inverse symbol: 2 for the a-leading family, 1 for the b-leading one."""
        alg = self.build()
        out = {}
        for i in alg.inverses:
            sym = alg.symbols[i]
            if sym.head != sym.tail:
                raise ValueError(f"{sym.name} is not a loop")
            out[sym.sequence] = sym.head
        return out


def localised_algebra(n: int) -> PathAlgebra:
    return LocalisedAlgebraSpec(n).build()


def _inv(alg: PathAlgebra, seq: Sequence[str]) -> Element:
    return alg.gen("inv(<" + ",".join(seq) + ">)")


def _cont(alg: PathAlgebra, seq: Sequence[str], anchor: str) -> Element:
    return continuant(alg, tuple(seq), anchor=anchor)


# handy continuants of B_loc; empty ones are the idempotents fixed by the typing
def a_to_b(alg: PathAlgebra, k: int) -> Element:
    """(a₁,b₁,…,a_k,b_k); e₂ for k = 0."""
    return _cont(alg, alternating("a", 1, k) if k else (), "2")


def a_to_a(alg: PathAlgebra, k: int) -> Element:
    """(a₁,b₁,…,b_{k−1},a_k)."""
    return _cont(alg, alternating("a", 1, k)[:-1], "2")


def b_to_a(alg: PathAlgebra, k: int) -> Element:
    """(b_k,a_k,…,b₁,a₁); e₁ for k = 0."""
    return _cont(alg, alternating("b", k, 1) if k else (), "1")


def a_down(alg: PathAlgebra, k: int) -> Element:
    """(a_k,b_{k−1},…,b₁,a₁)."""
    return _cont(alg, alternating("b", k, 1)[1:], "1")


@dataclass
class PrimedGenerators:
    n: int
    algebra: PathAlgebra
    a: Dict[int, Element]
    b: Dict[int, Element]
    a_alt: Dict[int, Element]  # the form a_ℓ + (a_{ℓ−1},…,a₁)(b_{ℓ−1},…,a₁)⁻¹


def primed_generators(n: int) -> PrimedGenerators:
    """a′_ℓ = a_ℓ + (a₁,…,b_{ℓ−1})⁻¹(a₁,…,a_{ℓ−1}) and b′_ℓ = b_ℓ, in both forms."""
    alg = localised_algebra(n)
    a: Dict[int, Element] = {}
    a_alt: Dict[int, Element] = {}
    b: Dict[int, Element] = {}
    for l in range(1, n + 1):
        al = alg.gen(f"a{l}")
        b[l] = alg.gen(f"b{l}")
        if l == 1:
            a[l] = a_alt[l] = al
            continue
        a[l] = al + _inv(alg, alternating("a", 1, l - 1)) * a_to_a(alg, l - 1)
        a_alt[l] = al + a_down(alg, l - 1) * _inv(alg, alternating("b", l - 1, 1))
    return PrimedGenerators(n, alg, a, b, a_alt)


def primed_factors(pg: PrimedGenerators) -> Tuple[Dict[int, Element], Dict[int, Element]]:
    """e₂ + a′_ℓb′_ℓ and e₁ + b′_ℓa′_ℓ."""
    alg = pg.algebra
    f2 = {l: alg.e(2) + pg.a[l] * pg.b[l] for l in pg.a}
    f1 = {l: alg.e(1) + pg.b[l] * pg.a_alt[l] for l in pg.a}
    return f2, f1


def primed_factor_inverses(pg: PrimedGenerators) -> Tuple[Dict[int, Element], Dict[int, Element]]:
    """(e₂+a′_ℓb′_ℓ)⁻¹ = (a₁,…,b_ℓ)⁻¹(a₁,…,b_{ℓ−1}) and (e₁+b′_ℓa′_ℓ)⁻¹ = (b_{ℓ−1},…,a₁)(b_ℓ,…,a₁)⁻¹."""
    alg = pg.algebra
    g2, g1 = {}, {}
    for l in pg.a:
        g2[l] = _inv(alg, alternating("a", 1, l)) * a_to_b(alg, l - 1)
        g1[l] = b_to_a(alg, l - 1) * _inv(alg, alternating("b", l, 1))
    return g2, g1


def alt_moment_map(pg: PrimedGenerators) -> Dict[str, Element]:
    """Φ₁ = (e₁+b′₁a′₁)⁻¹⋯(e₁+b′ₙa′ₙ)⁻¹ and Φ₂ = (e₂+a′₁b′₁)⋯(e₂+a′ₙb′ₙ)."""
    alg = pg.algebra
    f2, _ = primed_factors(pg)
    _, g1 = primed_factor_inverses(pg)
    phi1, phi2 = alg.e(1), alg.e(2)
    for l in range(1, pg.n + 1):
        phi1 = phi1 * g1[l]
        phi2 = phi2 * f2[l]
    return {"1": phi1, "2": phi2}


def alt_table(pg: PrimedGenerators) -> Dict[Tuple[str, str], Tensor]:
    """The closed-form bracket on the primed generators, keyed by ("a'i", "b'j") etc."""
    return euler_like_from_elements(pg.algebra, pg.a, pg.b, delta_term=False, names=("a'", "b'"))


def _primed_element(pg: PrimedGenerators, key: str) -> Element:
    fam, idx = key[:2], int(key[2:])
    return pg.a[idx] if fam == "a'" else pg.b[idx]


def _oracle_record(rep: CheckReport, label: str, residual, cfg: OracleConfig) -> None:
    rep.checked += 1
    if not cfg.is_zero(residual):
        rep.failures.append((label, "oracle found a nonzero residual"))


# ---------------------------------------------------------------------------
# verification routines


def verify_cont_factorisation(n: int, cfg: Optional[OracleConfig] = None) -> CheckReport:
    """(a₁,…,b_ℓ) = Π(e₂+a′_kb′_k) and (b_ℓ,…,a₁) = (e₁+b′_ℓa′_ℓ)⋯(e₁+b′₁a′₁) for ℓ ≤ n."""
    cfg = cfg or OracleConfig()
    pg = primed_generators(n)
    alg = pg.algebra
    f2, f1 = primed_factors(pg)
    rep = CheckReport("continuant factorisation", mode="oracle")
    left, right = alg.e(2), alg.e(1)
    for l in range(1, n + 1):
        left = left * f2[l]
        right = f1[l] * right
        _oracle_record(rep, f"(a1..b{l})", a_to_b(alg, l) - left, cfg)
        _oracle_record(rep, f"(b{l}..a1)", b_to_a(alg, l) - right, cfg)
    return rep


def cleared_factorisation(n: int) -> CheckReport:
    """The inverse-free forms behind the factorisation, checked exactly in kΓ̄ₙ.

    With a′_ℓ written over its denominator each factor step becomes
    (a₁,…,b_ℓ) = (a₁,…,b_{ℓ−1}) + (a₁,…,a_ℓ)b_ℓ and
    (b_ℓ,…,a₁) = (b_{ℓ−1},…,a₁) + b_ℓ(a_ℓ,…,a₁); the two forms of a′_ℓ agree
    because (a₁,…,b_{ℓ−1})(a_{ℓ−1},…,a₁) = (a₁,…,a_{ℓ−1})(b_{ℓ−1},…,a₁).
    """
    alg = gamma_algebra(n)
    rep = CheckReport("cleared factorisation")
    for l in range(1, n + 1):
        b = alg.gen(f"b{l}")
        rep.record(f"(a1..b{l}) step", a_to_b(alg, l) - a_to_b(alg, l - 1) - a_to_a(alg, l) * b)
        rep.record(f"(b{l}..a1) step", b_to_a(alg, l) - b_to_a(alg, l - 1) - b * a_down(alg, l))
        if l < n:
            rep.record(
                f"a'{l + 1} forms",
                a_to_b(alg, l) * a_down(alg, l) - a_to_a(alg, l) * b_to_a(alg, l),
            )
    return rep


def verify_primed_forms(n: int, cfg: Optional[OracleConfig] = None) -> CheckReport:
    """The two expressions for a′_ℓ agree, and the factor inverses are inverses."""
    cfg = cfg or OracleConfig()
    pg = primed_generators(n)
    alg = pg.algebra
    rep = CheckReport("primed generators", mode="oracle")
    for l in range(2, n + 1):
        _oracle_record(rep, f"a'{l}", pg.a[l] - pg.a_alt[l], cfg)
    f2, f1 = primed_factors(pg)
    g2, g1 = primed_factor_inverses(pg)
    for l in range(1, n + 1):
        _oracle_record(rep, f"(e2+a'{l}b'{l}) inverse", f2[l] * g2[l] - alg.e(2), cfg)
        _oracle_record(rep, f"(e1+b'{l}a'{l}) inverse", g1[l] * f1[l] - alg.e(1), cfg)
    return rep


def verify_alt_structure(n: int, cfg: Optional[OracleConfig] = None) -> CheckReport:
    """The Γₙ bracket on the primed generators against the closed-form table, and the moment map.

    Φ is compared with the continuants it factorises; the moment map identity
    itself then follows from the one on a_ℓ, b_ℓ.
    """
    cfg = cfg or OracleConfig()
    pg = primed_generators(n)
    alg = pg.algebra
    db = euler_bracket_table(n, algebra=alg)
    rep = CheckReport("bracket and moment map on primed generators", mode="oracle")
    for (x, y), expected in alt_table(pg).items():
        if x[0] == "b" and y[0] == "a":
            continue  # follows from the (a', b') entry by antisymmetry
        got = db(_primed_element(pg, x), _primed_element(pg, y))
        _oracle_record(rep, f"{{{{{x},{y}}}}}", got - expected, cfg)
    phi = alt_moment_map(pg)
    _oracle_record(rep, "Phi2", phi["2"] - a_to_b(alg, n), cfg)
    _oracle_record(rep, "Phi1", phi["1"] - _inv(alg, alternating("b", n, 1)), cfg)
    return rep


def cleared_moment_map(n: int) -> CheckReport:
    """⟪(b_n,…,a₁), x⟫ matches the inverse formula with Φ₁⁻¹ = (b_n,…,a₁); exact."""
    alg = gamma_algebra(n)
    db = euler_bracket_table(n, algebra=alg)
    c = b_to_a(alg, n)
    rep = CheckReport("cleared moment map at vertex 1")
    for x in alg.generators():
        rep.record(str(x), db(c, x) - moment_map_inverse_rhs(alg, c, "1", x))
    return rep


def _substitution(target: PathAlgebra, images: Mapping[str, Element], source: PathAlgebra) -> Callable[[Word], Element]:
    """Algebra map on words of ``source`` given by images of its non-idempotent symbols."""
    img: Dict[int, Element] = {}
    for i, sym in enumerate(source.symbols):
        img[i] = target.e(sym.head) if sym.kind == "idempotent" else images[sym.name]

    def f(w: Word) -> Element:
        out = img[w[0]]
        for i in w[1:]:
            out = out * img[i]
        return out

    return f


def psi_inverse(pg: PrimedGenerators, fused: PathAlgebra) -> Callable[[Word], Element]:
    """ψ⁻¹: c_ℓ ↦ a′_ℓ, d_ℓ ↦ b′_ℓ, with the factor inverses as images of the inverse symbols."""
    g2, g1 = primed_factor_inverses(pg)
    images: Dict[str, Element] = {}
    for l in range(1, pg.n + 1):
        images[f"c{l}"] = pg.a[l]
        images[f"d{l}"] = pg.b[l]
        images[f"inv(<c{l},d{l}>)"] = g2[l]
        images[f"inv(<d{l},c{l}>)"] = g1[l]
    return _substitution(pg.algebra, images, fused)


def verify_factorisation_iso(n: int, cfg: Optional[OracleConfig] = None) -> CheckReport:
    """ψ: B_loc → Aₙ^fus, a′_ℓ ↦ c_ℓ, b′_ℓ ↦ d_ℓ preserves brackets and moment maps.

    The fused bracket is compared exactly with the primed table written in
    c, d; then every entry and both moment maps are pulled back along ψ⁻¹
    and compared in B_loc by the oracle.
    """
    cfg = cfg or OracleConfig()
    h = build_Afus(n)
    fus = h.algebra
    rep = CheckReport("factorisation isomorphism", mode="exact+oracle")
    for (x, y), r in compare_tables(h.bracket, afus_closed_form(fus, n)):
        rep.failures.append((f"table {{{{{x},{y}}}}}", str(r)))
    rep.checked += len(afus_closed_form(fus, n))
    closed_phi = afus_moment_closed_form(fus, n)
    for s in ("1", "2"):
        rep.record(f"Phi{s} closed form", h.moment[s] - closed_phi[s])

    pg = primed_generators(n)
    alg = pg.algebra
    db = euler_bracket_table(n, algebra=alg)
    back = psi_inverse(pg, fus)
    for (x, y), t in h.bracket.table().items():
        pulled = t.slot_map(back, target=alg)
        gx = back(fus.gen(x).sorted_terms()[0][0])
        gy = back(fus.gen(y).sorted_terms()[0][0])
        _oracle_record(rep, f"pullback {{{{{x},{y}}}}}", db(gx, gy) - pulled, cfg)
    phi = alt_moment_map(pg)
    for s in ("1", "2"):
        _oracle_record(rep, f"pullback Phi{s}", h.moment[s].map_words(back, target=alg) - phi[s], cfg)
    return rep


# ---------------------------------------------------------------------------
# auxiliary bracket lemmas


def _half(t: Tensor) -> Tensor:
    return t.scale(HALF)


def prefix_bracket_expected(alg: PathAlgebra, family: str, i: int, j: int) -> Optional[Tuple[Element, Element, Tensor]]:
    """(x, y, expected ⟪x,y⟫) for one of the inverse-free lemma families, or None outside its range.

    ``family`` is one of ``ab-b``, ``ab-a``, ``aa-b``, ``aa-a``.
    """
    e1, e2 = alg.e(1), alg.e(2)
    aj, bj = alg.gen(f"a{j}"), alg.gen(f"b{j}")
    if family == "ab-b":
        x = a_to_b(alg, i)
        sign = -1 if i < j else 1
        return x, bj, _half(tensor(bj * x, e2) + tensor(bj, x).scale(sign))
    if family == "ab-a":
        x = a_to_b(alg, i)
        if i < j:
            val = _half(tensor(e2, x * aj) - tensor(x, aj))
            if i == j - 1:
                val = val + tensor(e2, a_to_a(alg, i))
        else:
            val = _half(tensor(e2, x * aj) + tensor(x, aj)).scale(-1)
        return x, aj, val
    if family == "aa-b":
        x = a_to_a(alg, i)
        if i < j:
            val = _half(tensor(bj * x, e2) + tensor(e1, x * bj))
        elif i == j:
            val = _half(tensor(bj * x, e2) + tensor(e1, x * bj)) + tensor(e1, a_to_b(alg, i - 1))
        else:
            val = _half(tensor(bj * x, e2) - tensor(e1, x * bj))
        return x, bj, val
    if family == "aa-a":
        x = a_to_a(alg, i)
        if i >= j:
            return x, aj, _half(tensor(aj, x) - tensor(x, aj))
        if i == j - 1:
            return x, aj, _half(tensor(aj, x) + tensor(x, aj)).scale(-1)
        return None
    raise ValueError(f"unknown family {family!r}")


PREFIX_FAMILIES = ("ab-b", "ab-a", "aa-b", "aa-a")


def verify_prefix_brackets(n: int) -> CheckReport:
    """Brackets of (a₁,…,b_i) and (a₁,…,a_i) with a_j, b_j; exact in kΓ̄ₙ."""
    alg = gamma_algebra(n)
    db = euler_bracket_table(n, algebra=alg)
    rep = CheckReport("continuant bracket lemmas")
    for fam in PREFIX_FAMILIES:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                item = prefix_bracket_expected(alg, fam, i, j)
                if item is None:
                    continue
                x, y, val = item
                rep.record(f"{fam} i={i} j={j}", db(x, y) - val)
    return rep


def verify_last_pair_lemma(n: int) -> CheckReport:
    """⟪(a_n,b_n), a_i⟫ and ⟪(a_n,b_n), b_i⟫; exact in kΓ̄ₙ."""
    alg = gamma_algebra(n)
    db = euler_bracket_table(n, algebra=alg)
    e2 = alg.e(2)
    x = _cont(alg, (f"a{n}", f"b{n}"), "2")
    rep = CheckReport("last pair lemma")
    for i in range(1, n + 1):
        ai, bi = alg.gen(f"a{i}"), alg.gen(f"b{i}")
        if i < n:
            va = _half(tensor(x, ai) - tensor(e2, x * ai))
        else:
            va = _half(tensor(x, ai) + tensor(e2, x * ai)).scale(-1)
        if i < n:
            vb = _half(tensor(bi, x) - tensor(bi * x, e2))
            if i == n - 1:
                vb = vb - tensor(alg.gen(f"b{n}"), e2)
        else:
            vb = _half(tensor(bi, x) + tensor(bi * x, e2))
        rep.record(f"a{i}", db(x, ai) - va)
        rep.record(f"b{i}", db(x, bi) - vb)
    return rep


def verify_primed_lemmas(n: int, cfg: Optional[OracleConfig] = None) -> CheckReport:
    """Brackets of a′_i with a_j, (a_j,b_j), (a₁,…,b_j) and (a₁,…,a_j); by the oracle in B_loc."""
    cfg = cfg or OracleConfig()
    pg = primed_generators(n)
    alg = pg.algebra
    db = euler_bracket_table(n, algebra=alg)
    e2 = alg.e(2)
    rep = CheckReport("primed generator lemmas", mode="oracle")
    for i in range(1, n + 1):
        ap = pg.a[i]
        for j in range(1, i + 1):
            aj = alg.gen(f"a{j}")
            val = _half(tensor(ap, aj) + tensor(aj, ap))
            if i == j:
                val = val - tensor(ap, ap)
            _oracle_record(rep, f"a'{i},a{j}", db(ap, aj) - val, cfg)
            if i == j:
                continue
            pair = _cont(alg, (f"a{j}", f"b{j}"), "2")
            _oracle_record(rep, f"a'{i},(a{j},b{j})", db(ap, pair) - _half(tensor(ap, pair) - tensor(pair * ap, e2)), cfg)
            x = a_to_b(alg, j)
            _oracle_record(rep, f"a'{i},(a1..b{j})", db(ap, x) - _half(tensor(ap, x) - tensor(x * ap, e2)), cfg)
            x = a_to_a(alg, j)
            _oracle_record(rep, f"a'{i},(a1..a{j})", db(ap, x) - _half(tensor(ap, x) + tensor(x, ap)), cfg)
    return rep


def factorisation_suite(n: int, cfg: Optional[OracleConfig] = None) -> List[CheckReport]:
    cfg = cfg or OracleConfig()
    return [
        verify_prefix_brackets(n),
        verify_last_pair_lemma(n),
        cleared_factorisation(n),
        cleared_moment_map(n),
        verify_primed_forms(n, cfg),
        verify_cont_factorisation(n, cfg),
        verify_primed_lemmas(n, cfg),
        verify_alt_structure(n, cfg),
        verify_factorisation_iso(n, cfg),
    ]
