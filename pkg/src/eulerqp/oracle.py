"""Evaluation at exact rational matrix points and the probabilistic zero test.

Every element is evaluated block by block: a word from vertex t to vertex s
becomes a d_s × d_t matrix.  Entries are ``gmpy2.mpq`` rationals held in
numpy object arrays, so all arithmetic is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from gmpy2 import mpq, mpz

from .algebra import IDEMPOTENT, INVERSE, Element, PathAlgebra, Tensor, Word

DEFAULT_DIMS: Tuple[Tuple[int, ...], ...] = ((1, 1), (2, 2), (3, 3))
DEFAULT_RANGE = 999
DEFAULT_TRIALS = 3
MAX_RESAMPLES = 100


class SamplingError(RuntimeError):
    """No point with all declared inverses invertible was found."""


class SingularPoint(ValueError):
    """A declared-invertible element evaluates to a singular matrix."""


def to_mpq(c) -> mpq:
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    return mpq(c)


def matrix(rows: Sequence[Sequence]) -> np.ndarray:
    """An exact matrix from nested sequences of ints or rationals."""
    rows = [list(r) for r in rows]
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = to_mpq(x)
    return out


def zeros(r: int, c: int) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(mpq(0))
    return out


def identity(d: int) -> np.ndarray:
    out = zeros(d, d)
    for i in range(d):
        out[i, i] = mpq(1)
    return out


def is_zero_matrix(m: np.ndarray) -> bool:
    return all(x == 0 for x in m.flat)


def bareiss_inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse by fraction-free Gauss–Jordan elimination.

    The rational matrix is scaled to an integer one first; elimination then
    only performs exact integer divisions.  Raises SingularPoint when the
    determinant vanishes.
    """
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("square matrix expected")
    scale = mpz(1)
    for x in m.flat:
        q = to_mpq(x)
        scale = scale * q.denominator // _gcd(scale, q.denominator)
    rows = [[mpz(to_mpq(m[i, j]) * scale) for j in range(d)] + [mpz(1 if i == j else 0) for j in range(d)] for i in range(d)]
    prev = mpz(1)
    for k in range(d):
        piv = next((r for r in range(k, d) if rows[r][k] != 0), None)
        if piv is None:
            raise SingularPoint("matrix is singular")
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
        pk = rows[k]
        akk = pk[k]
        for i in range(d):
            if i == k:
                continue
            ri = rows[i]
            aik = ri[k]
            rows[i] = [(akk * ri[j] - aik * pk[j]) // prev for j in range(2 * d)]
        prev = akk
    det = rows[0][0]
    out = zeros(d, d)
    for i in range(d):
        if rows[i][i] != det:
            raise ArithmeticError("elimination did not reach a scalar diagonal")
        for j in range(d):
            out[i, j] = mpq(rows[i][d + j] * scale, det)
    return out


def _gcd(a, b):
    import gmpy2

    return gmpy2.gcd(a, b)


# ---------------------------------------------------------------------------
# points


def _dims_map(alg: PathAlgebra, dims) -> Dict[str, int]:
    if isinstance(dims, Mapping):
        out = {str(k): int(v) for k, v in dims.items()}
    else:
        dims = tuple(dims)
        if len(dims) != len(alg.vertices):
            raise ValueError(f"need one dimension per vertex {alg.vertices}")
        out = dict(zip(alg.vertices, (int(d) for d in dims)))
    if set(out) != set(alg.vertices) or any(d < 1 for d in out.values()):
        raise ValueError("dimensions must be positive and cover every vertex")
    return out


class RepPoint:
    """A representation: a matrix for every arrow, inverses for inverse symbols."""

    def __init__(self, algebra: PathAlgebra, dims, arrow_matrices: Mapping[str, np.ndarray]):
        self.algebra = algebra
        self.dims = _dims_map(algebra, dims)
        self.blocks: Dict[int, np.ndarray] = {}
        for v, i in algebra.vertex_symbol.items():
            self.blocks[i] = identity(self.dims[v])
        for i in algebra.arrows:
            sym = algebra.symbols[i]
            m = arrow_matrices[sym.name]
            m = m if isinstance(m, np.ndarray) and m.dtype == object else matrix(m)
            if m.shape != (self.dims[sym.head], self.dims[sym.tail]):
                raise ValueError(f"{sym.name} needs shape {(self.dims[sym.head], self.dims[sym.tail])}")
            self.blocks[i] = m
        self._cache: Dict[Word, np.ndarray] = {}
        for i in algebra.inverses:
            val = self.evaluate_block(algebra.inverse_of[i])
            self.blocks[i] = bareiss_inverse(val)

    @classmethod
    def from_matrices(cls, algebra: PathAlgebra, dims, arrow_matrices: Mapping[str, Sequence]) -> "RepPoint":
        return cls(algebra, dims, {k: matrix(v) if not isinstance(v, np.ndarray) else v for k, v in arrow_matrices.items()})

    def word(self, w: Word) -> np.ndarray:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        if len(w) == 1:
            val = self.blocks[w[0]]
        else:
            val = self.word(w[:-1]).dot(self.blocks[w[-1]])
        self._cache[w] = val
        return val

    def evaluate_block(self, x: Element) -> np.ndarray:
        """The matrix of an element supported in a single block e_s A e_t."""
        alg = self.algebra
        blocks = {alg.word_ends(w) for w in x.terms}
        if len(blocks) > 1:
            raise ValueError("element spans several blocks")
        if not blocks:
            return zeros(1, 1)
        (h, t), = blocks
        out = zeros(self.dims[h], self.dims[t])
        for w, c in x.terms.items():
            out = out + self.word(w) * to_mpq(c)
        return out

    def evaluate(self, x: Element) -> np.ndarray:
        """The full D × D matrix, blocks ordered by vertex."""
        alg = self.algebra
        offs: Dict[str, int] = {}
        total = 0
        for v in alg.vertices:
            offs[v] = total
            total += self.dims[v]
        out = zeros(total, total)
        for w, c in x.terms.items():
            h, t = alg.word_ends(w)
            m = self.word(w) * to_mpq(c)
            out[offs[h]:offs[h] + self.dims[h], offs[t]:offs[t] + self.dims[t]] += m
        return out

    def arrow_matrix(self, name: str) -> np.ndarray:
        return self.blocks[self.algebra.index[name]]

    def to_json(self) -> dict:
        alg = self.algebra
        return {
            "dims": [self.dims[v] for v in alg.vertices],
            "matrices": {
                alg.symbols[i].name: [[str(x) for x in row] for row in self.blocks[i].tolist()]
                for i in alg.arrows
            },
        }


def sample_rep(
    algebra: PathAlgebra,
    dims,
    seed=0,
    rng_range: int = DEFAULT_RANGE,
    max_tries: int = MAX_RESAMPLES,
) -> RepPoint:
    """A random integer point at which every declared inverse exists.

    The same seed always gives the same point.
    """
    dmap = _dims_map(algebra, dims)
    rng = random.Random(f"{seed}|{sorted(dmap.items())}")
    for _ in range(max_tries):
        mats = {}
        for i in algebra.arrows:
            sym = algebra.symbols[i]
            r, c = dmap[sym.head], dmap[sym.tail]
            mats[sym.name] = matrix([[rng.randint(-rng_range, rng_range) for _ in range(c)] for _ in range(r)])
        try:
            return RepPoint(algebra, dmap, mats)
        except SingularPoint:
            continue
    raise SamplingError(f"no invertible point after {max_tries} attempts")


# ---------------------------------------------------------------------------
# tensors


def _block_shape(p: RepPoint, w: Word) -> Tuple[str, str]:
    return p.algebra.word_ends(w)


def evaluate_tensor(t: Tensor, points: Sequence[RepPoint]) -> Dict[Tuple[Tuple[str, str], ...], np.ndarray]:
    """Σ c·W₁⊗…⊗W_k with slot k evaluated at points[k].

    The result is grouped by block signature; each value is the array of
    shape (size₁, …, size_k) of flattened block outer products.
    """
    k = t.arity
    if len(points) != k:
        raise ValueError("one point per slot")
    acc: Dict[Tuple[Tuple[Word, ...], Tuple], np.ndarray] = {}
    last = points[-1]
    for key, c in t.terms.items():
        w = key[-1]
        sig = (key[:-1], (_block_shape(last, w),))
        val = last.word(w).ravel() * to_mpq(c)
        acc[sig] = acc[sig] + val if sig in acc else val
    for slot in range(k - 2, -1, -1):
        p = points[slot]
        nxt: Dict[Tuple[Tuple[Word, ...], Tuple], np.ndarray] = {}
        for (prefix, blks), arr in acc.items():
            w = prefix[-1]
            sig = (prefix[:-1], (_block_shape(p, w),) + blks)
            val = np.multiply.outer(p.word(w).ravel(), arr)
            nxt[sig] = nxt[sig] + val if sig in nxt else val
        acc = nxt
    return {blks: arr for (_, blks), arr in acc.items()}


def evaluate_any(x: Union[Element, Tensor], points: Sequence[RepPoint]):
    if isinstance(x, Element):
        return points[0].evaluate(x)
    return evaluate_tensor(x, points)


def _is_zero_at(x: Union[Element, Tensor], points: Sequence[RepPoint]) -> bool:
    if isinstance(x, Element):
        return is_zero_matrix(points[0].evaluate(x))
    return all(is_zero_matrix(a) for a in evaluate_tensor(x, points).values())


@dataclass
class Verdict:
    zero: bool
    evaluations: List[dict] = field(default_factory=list)

    @property
    def label(self) -> str:
        return "zero" if self.zero else "nonzero"

    def __bool__(self) -> bool:
        return self.zero


def required_dimension(x: Union[Element, Tensor]) -> int:
    """⌊deg/2⌋ + 1, with inverse symbols counted with weight one."""
    return x.degree() // 2 + 1


def is_zero_probabilistic(
    x: Union[Element, Tensor],
    dims_list: Optional[Sequence] = None,
    trials: int = DEFAULT_TRIALS,
    seed=0,
    rng_range: int = DEFAULT_RANGE,
    augment: bool = True,
    stop_early: bool = True,
) -> Verdict:
    """Decide x = 0 by evaluation at random exact matrix points.

    Each tensor slot gets its own independent point.  With ``augment`` the
    dimension list is extended so that some entry has every vertex of size
    at least ⌊deg/2⌋ + 1.
    """
    alg = x.algebra
    nv = len(alg.vertices)
    dims = [tuple(d) if not isinstance(d, Mapping) else tuple(d[v] for v in alg.vertices) for d in (dims_list or DEFAULT_DIMS)]
    if any(len(d) != nv for d in dims):
        raise ValueError("dimension vectors must match the vertices")
    if augment:
        need = required_dimension(x)
        if not any(min(d) >= need for d in dims):
            dims.append((need,) * nv)
    arity = 1 if isinstance(x, Element) else x.arity
    verdict = Verdict(True)
    if not x.terms:
        verdict.evaluations.append({"dims": None, "zero": True, "note": "structurally zero"})
        return verdict
    for d in dims:
        for trial in range(trials):
            pts = [sample_rep(alg, d, seed=f"{seed}|{trial}|{slot}", rng_range=rng_range) for slot in range(arity)]
            z = _is_zero_at(x, pts)
            verdict.evaluations.append({"dims": list(d), "trial": trial, "zero": z})
            if not z:
                verdict.zero = False
                if stop_early:
                    return verdict
    return verdict


# ---------------------------------------------------------------------------
# brackets between matrix entries


def entrywise_bracket(p: RepPoint, db, x: Union[Element, str], y: Union[Element, str]) -> np.ndarray:
    """{x_ij, y_uv} = ⟪x,y⟫′_uj ⟪x,y⟫″_iv at the point p.

    ``x`` and ``y`` must each live in a single block.  The result has shape
    (rows of x, cols of x, rows of y, cols of y).
    """
    alg = p.algebra
    x = alg.gen(x) if isinstance(x, str) else x
    y = alg.gen(y) if isinstance(y, str) else y
    (hx, tx), = {alg.word_ends(w) for w in x.terms}
    (hy, ty), = {alg.word_ends(w) for w in y.terms}
    out = np.empty((p.dims[hx], p.dims[tx], p.dims[hy], p.dims[ty]), dtype=object)
    out.fill(mpq(0))
    for (w1, w2), c in db(x, y).terms.items():
        m1, m2 = p.word(w1), p.word(w2)
        cq = to_mpq(c)
        for i in range(out.shape[0]):
            for j in range(out.shape[1]):
                for u in range(out.shape[2]):
                    for v in range(out.shape[3]):
                        out[i, j, u, v] += cq * m1[u, j] * m2[i, v]
    return out
