"""Fusion of idempotents and the algebra obtained by fusing n copies of Γ₁."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .algebra import ARROW, IDEMPOTENT, Element, PathAlgebra, Tensor, Word, tensor
from .brackets import HALF, DoubleBracket, _sgn
from .continuants import continuant

T_TYPE, U_TYPE, V_TYPE, W_TYPE = "t", "u", "v", "w"


@dataclass
class HamiltonianAlgebra:
    """An algebra with a double bracket and a moment map given per vertex."""

    algebra: PathAlgebra
    bracket: DoubleBracket
    moment: Dict[str, Element] = field(default_factory=dict)


def classify(alg: PathAlgebra, name: str, j: str) -> str:
    """Type of an arrow with respect to fusing vertex j away."""
    sym = alg.symbols[alg.index[name]]
    h, t = sym.head == j, sym.tail == j
    if h and t:
        return W_TYPE
    if h:
        return U_TYPE
    if t:
        return V_TYPE
    return T_TYPE


class Relabel:
    """The map sending paths of A to paths of the fused algebra."""

    def __init__(self, old: PathAlgebra, new: PathAlgebra, j: str, i: str, rename: Mapping[str, str]):
        self.old, self.new = old, new
        self.table: Dict[int, int] = {}
        for k, sym in enumerate(old.symbols):
            if sym.kind == IDEMPOTENT:
                v = i if sym.head == j else sym.head
                self.table[k] = new.vertex_symbol[rename.get(v, v)]
            elif sym.name in new.index:
                self.table[k] = new.index[sym.name]

    def refresh(self) -> None:
        """Pick up inverse symbols added to the new algebra after construction."""
        for k, sym in enumerate(self.old.symbols):
            if k not in self.table:
                self.table[k] = self.new.index[sym.name]

    def word(self, w: Word) -> Word:
        return tuple(self.table[k] for k in w)

    def element(self, x: Element) -> Element:
        return Element(self.new, {self.word(w): c for w, c in x.terms.items()})

    def tensor(self, t: Tensor) -> Tensor:
        return Tensor(self.new, t.arity, {tuple(self.word(w) for w in k): c for k, c in t.terms.items()})


def fused_algebra(alg: PathAlgebra, j: str, i: str, new_label: Optional[str] = None) -> Tuple[PathAlgebra, Relabel]:
    """Identify vertex j with vertex i (optionally renaming the survivor)."""
    if i == j or i not in alg.vertex_symbol or j not in alg.vertex_symbol:
        raise ValueError("fusion needs two distinct vertices of the algebra")
    rename = {i: new_label} if new_label else {}

    def vmap(v: str) -> str:
        v = i if v == j else v
        return rename.get(v, v)

    verts = [vmap(v) for v in alg.vertices if v != j]
    arrows = [(alg.symbols[k].name, vmap(alg.symbols[k].tail), vmap(alg.symbols[k].head)) for k in alg.arrows]
    new = PathAlgebra(verts, arrows, name=f"{alg.name}/{j}->{i}")
    rel = Relabel(alg, new, j, i, rename)
    for k in alg.inverses:
        sym = alg.symbols[k]
        new.add_inverse(sym.sequence, rel.element(alg.inverse_of[k]))
    rel.refresh()
    return new, rel


def fusion_term(new: PathAlgebra, i: str, x: str, tx: str, y: str, ty: str) -> Tensor:
    """The added bracket ⟪x, y⟫_fus in the fused algebra, after projection.

    ``tx``/``ty`` are the types of x and y before fusing.  Pairs not listed
    in the table follow from cyclic antisymmetry.
    """
    ei = new.e(i)
    X, Y = new.gen(x), new.gen(y)
    key = tx + ty
    if key in ("tt", "ww"):
        return Tensor.zero(new)
    if key == "tu":
        t, u = X, Y
        return (tensor(ei, t * u) - tensor(ei * t, u)).scale(HALF)
    if key == "tv":
        t, v = X, Y
        return (tensor(v * t, ei) - tensor(v, t * ei)).scale(HALF)
    if key == "tw":
        t, w = X, Y
        return (tensor(w * t, ei) + tensor(ei, t * w) - tensor(w, t * ei) - tensor(ei * t, w)).scale(HALF)
    if key == "uu":
        u, u2 = X, Y
        return (tensor(ei, u * u2) - tensor(u2 * u, ei)).scale(HALF)
    if key == "uv":
        u, v = X, Y
        return (tensor(u, ei * v) - tensor(v, u * ei)).scale(HALF)
    if key == "uw":
        u, w = X, Y
        return (tensor(ei, u * w) - tensor(w, u * ei)).scale(HALF)
    if key == "vv":
        v, v2 = X, Y
        return (tensor(v2 * v, ei) - tensor(ei, v * v2)).scale(HALF)
    if key == "vw":
        v, w = X, Y
        return (tensor(w * v, ei) - tensor(ei * v, w)).scale(HALF)
    # reversed order: ⟪y, x⟫ = −τ⟪x, y⟫
    return -fusion_term(new, i, y, ty, x, tx).tau12()


def fuse_step(h: HamiltonianAlgebra, j: str, i: str, new_label: Optional[str] = None) -> HamiltonianAlgebra:
    """Fuse vertex j onto vertex i: ⟪−,−⟫ᶠ = ⟪−,−⟫ + ⟪−,−⟫_fus and Φ_i ↦ Φ_i Φ_j."""
    alg = h.algebra
    new, rel = fused_algebra(alg, j, i, new_label)
    target = new_label or i
    names = [alg.symbols[k].name for k in alg.arrows]
    types = {nm: classify(alg, nm, j) for nm in names}
    tab: Dict[Tuple[str, str], Tensor] = {}
    for x in names:
        for y in names:
            tab[(x, y)] = rel.tensor(h.bracket.entry(x, y)) + fusion_term(new, target, x, types[x], y, types[y])
    moment = fused_moment_map({k: rel.element(v) for k, v in h.moment.items()}, i, j, new, rename=new_label)
    return HamiltonianAlgebra(new, DoubleBracket(new, tab, name=new.name), moment)


def fused_moment_map(
    phi: Mapping[str, Element], i: str, j: str, algebra: Optional[PathAlgebra] = None, rename: Optional[str] = None
) -> Dict[str, Element]:
    """Φᶠᶠ: the component at i becomes Φ_i Φ_j, the others are kept.

    ``phi`` must already be expressed in the fused algebra.
    """
    out: Dict[str, Element] = {}
    for s, val in phi.items():
        if s in (i, j):
            continue
        out[s] = val
    pi = phi.get(i)
    pj = phi.get(j)
    if pi is None or pj is None:
        if algebra is None:
            raise ValueError("missing moment map components")
        pi = pi if pi is not None else algebra.e(i)
        pj = pj if pj is not None else algebra.e(i)
    out[rename or i] = pi * pj
    return out


# ---------------------------------------------------------------------------
# n copies of Γ₁


def copy_vertex(s: int, l: int) -> str:
    return str(s) if l == 1 else f"{s}_{l}"


def separated(n: int) -> HamiltonianAlgebra:
    """n disjoint copies of Γ₁ with arrows c_ℓ, d_ℓ and their Van den Bergh structure."""
    verts: List[str] = []
    arrows = []
    for l in range(1, n + 1):
        v1, v2 = copy_vertex(1, l), copy_vertex(2, l)
        verts += [v1, v2]
        arrows += [(f"c{l}", v1, v2), (f"d{l}", v2, v1)]
    alg = PathAlgebra(verts, arrows, name=f"sep{n}")
    for l in range(1, n + 1):
        alg.add_inverse((f"c{l}", f"d{l}"), continuant(alg, (f"c{l}", f"d{l}")))
        alg.add_inverse((f"d{l}", f"c{l}"), continuant(alg, (f"d{l}", f"c{l}")))
    tab: Dict[Tuple[str, str], Tensor] = {}
    moment: Dict[str, Element] = {}
    for l in range(1, n + 1):
        e1, e2 = alg.e(copy_vertex(1, l)), alg.e(copy_vertex(2, l))
        c, d = alg.gen(f"c{l}"), alg.gen(f"d{l}")
        cd = tensor(e1, e2) + (tensor(e1, c * d) + tensor(d * c, e2)).scale(HALF)
        tab[(f"c{l}", f"d{l}")] = cd
        tab[(f"d{l}", f"c{l}")] = -cd.tau12()
        moment[copy_vertex(2, l)] = e2 + c * d
        moment[copy_vertex(1, l)] = alg.gen(f"inv(<d{l},c{l}>)")
    return HamiltonianAlgebra(alg, DoubleBracket(alg, tab, name=f"sep{n}"), moment)


def build_Afus(n: int) -> HamiltonianAlgebra:
    """Fuse e_{1,ℓ} onto e₁ and then e_{2,ℓ} onto e₂, for ℓ = 2, …, n."""
    h = separated(n)
    for l in range(2, n + 1):
        h = fuse_step(h, copy_vertex(1, l), "1")
        h = fuse_step(h, copy_vertex(2, l), "2")
    h.algebra.n = n  # type: ignore[attr-defined]
    h.algebra.freeze()
    return h


def euler_like_table(alg: PathAlgebra, n: int, x: str, y: str, delta_term: bool) -> Dict[Tuple[str, str], Tensor]:
    """The bracket pattern shared by Γₙ, the fused algebra and the primed generators.

    ``x``/``y`` name the two arrow families (e.g. ``c``/``d``).  With
    ``delta_term`` the extra −δ_{i−j,1}e₁⊗e₂ of the Γₙ table is included.
    """
    X = {i: alg.gen(f"{x}{i}") for i in range(1, n + 1)}
    Y = {i: alg.gen(f"{y}{i}") for i in range(1, n + 1)}
    return euler_like_from_elements(alg, X, Y, delta_term, names=(x, y))


def euler_like_from_elements(alg: PathAlgebra, X, Y, delta_term: bool, names=("x", "y")) -> Dict[Tuple[str, str], Tensor]:
    """Same pattern with arbitrary elements standing for the generators.

    Keys are ``(f"{names[0]}{i}", f"{names[1]}{j}")`` and so on.
    """
    e1, e2 = alg.e(1), alg.e(2)
    n = len(X)
    x, y = names
    tab: Dict[Tuple[str, str], Tensor] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            s = _sgn(i - j)
            tab[(f"{x}{i}", f"{x}{j}")] = (tensor(X[i], X[j]) + tensor(X[j], X[i])).scale(HALF * s)
            tab[(f"{y}{i}", f"{y}{j}")] = (tensor(Y[i], Y[j]) + tensor(Y[j], Y[i])).scale(HALF * s)
            xy = (tensor(e1, X[i] * Y[j]) + tensor(Y[j] * X[i], e2)).scale(HALF)
            if i < j:
                val = xy
            elif i == j:
                val = xy + tensor(e1, e2)
            else:
                val = -xy
                if delta_term and i - j == 1:
                    val = val - tensor(e1, e2)
            tab[(f"{x}{i}", f"{y}{j}")] = val
            tab[(f"{y}{j}", f"{x}{i}")] = -val.tau12()
    return tab


def afus_closed_form(alg: PathAlgebra, n: int) -> Dict[Tuple[str, str], Tensor]:
    """The expected bracket of the fused algebra on all ordered generator pairs."""
    return euler_like_table(alg, n, "c", "d", delta_term=False)


def afus_moment_closed_form(alg: PathAlgebra, n: int) -> Dict[str, Element]:
    """Φ₁ = (e₁+d₁c₁)⁻¹⋯(e₁+dₙcₙ)⁻¹ and Φ₂ = (e₂+c₁d₁)⋯(e₂+cₙdₙ)."""
    phi1, phi2 = alg.e(1), alg.e(2)
    for l in range(1, n + 1):
        phi1 = phi1 * alg.gen(f"inv(<d{l},c{l}>)")
        phi2 = phi2 * (alg.e(2) + alg.gen(f"c{l}") * alg.gen(f"d{l}"))
    return {"1": phi1, "2": phi2}


def compare_tables(db: DoubleBracket, expected: Mapping[Tuple[str, str], Tensor]) -> List[Tuple[Tuple[str, str], Tensor]]:
    """Pairs where the bracket differs from the expected table, with residuals."""
    out = []
    for (x, y), t in expected.items():
        r = db.entry(x, y) - t
        if r:
            out.append(((x, y), r))
    return out
