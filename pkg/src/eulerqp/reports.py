"""Verification suites and their reports."""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import Element, gamma_algebra
from .brackets import (
    CheckReport,
    bracket_from_bivector,
    build_Pn,
    check_cyclic_antisymmetry,
    check_moment_map,
    check_quasi_poisson,
    check_S_equivariance,
    euler_bracket_table,
    h0_reduce,
    mutate,
    qp_triple_bracket,
    qp_via_mu,
)
from .continuants import (
    NotDecomposable,
    alternating,
    boalch_product,
    continuant,
    continuant_head,
    convenient_formula_a,
    convenient_formula_b,
    curious_identity,
    gauss_decompose,
    mat_mul,
    matrix_continuant,
    term_count,
)
from .factorization import OracleConfig, factorisation_suite
from .fusion import afus_closed_form, afus_moment_closed_form, build_Afus, compare_tables
from .oracle import DEFAULT_DIMS, is_zero_probabilistic
from .rep11 import check_rep11_jacobi, check_rep11_printed, flaschka_newell_compare, rep11_bracket

SCHEMA_VERSION = 1
SUITES = (
    "classical",
    "quasi-poisson",
    "moment-map",
    "bivector",
    "fusion",
    "factorization",
    "rep11",
    "flaschka-newell",
    "h0",
)


@dataclass
class SuiteConfig:
    n: int = 2
    dims: Optional[Tuple[Tuple[int, int], ...]] = None  # None: each suite's default
    trials: int = 3
    seed: object = 0
    rng_range: int = 999
    mutate: Optional[Tuple[str, str]] = None
    samples: int = 50

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.dims is not None:
            self.dims = tuple(tuple(d) for d in self.dims)
            if any(len(d) != 2 or min(d) < 1 for d in self.dims):
                raise ValueError("dimension vectors are pairs of positive integers")

    def oracle(self, default=DEFAULT_DIMS) -> OracleConfig:
        return OracleConfig(self.dims or tuple(default), self.trials, self.seed, self.rng_range)


@dataclass
class IdentityRecord:
    id: str
    anchor: str
    mode: str
    status: str
    checked: int
    failures: List[List[str]] = field(default_factory=list)
    samples: Optional[dict] = None


@dataclass
class VerificationReport:
    suite: str
    n: int
    seed: str
    config: dict
    records: List[IdentityRecord] = field(default_factory=list)
    timing: Optional[Dict[str, float]] = None

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "n": self.n,
            "seed": self.seed,
            "config": self.config,
            "status": "pass" if self.passed else "fail",
            "records": [asdict(r) for r in self.records],
        }
        if include_timing and self.timing is not None:
            d["timing"] = self.timing
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  n={self.n}  seed={self.seed}"]
        for r in self.records:
            lines.append(f"  [{r.status}] {r.id}  ({r.mode}, {r.checked} checked)  {r.anchor}")
            for label, res in r.failures[:5]:
                lines.append(f"      {label}: {res}")
            if len(r.failures) > 5:
                lines.append(f"      ... {len(r.failures) - 5} more")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _record(rid: str, anchor: str, rep: CheckReport, samples: Optional[dict] = None) -> IdentityRecord:
    return IdentityRecord(
        rid, anchor, rep.mode, rep.status, rep.checked, [[a, b] for a, b in rep.failures], samples
    )


def _samples(cfg: OracleConfig) -> dict:
    return {"dims": [list(d) for d in cfg.dims], "trials": cfg.trials, "seed": str(cfg.seed), "range": cfg.rng_range}


def _table(cfg: SuiteConfig, n: Optional[int] = None):
    db = euler_bracket_table(n or cfg.n)
    if cfg.mutate:
        db = mutate(db, *cfg.mutate)
    return db


# ---------------------------------------------------------------------------
# suites


def suite_classical(cfg: SuiteConfig) -> List[IdentityRecord]:
    n = cfg.n
    rng = random.Random(f"classical|{cfg.seed}")
    out = []

    rep = CheckReport("term counts")
    alg = gamma_algebra(max(n, 6))
    for k in range(1, 13):
        seq = alternating("a", 1, (k + 1) // 2)[:k]
        rep.record(f"k={k}", len(continuant(alg, seq).terms) - term_count(k))
    out.append(_record("continuant.term-count", "number of monomials is a Fibonacci number", rep))

    rep = CheckReport("tail and head recursions")
    alg = gamma_algebra(n)
    for k in range(1, 11):
        for _ in range(3):
            start = rng.choice("ab")
            seq = []
            for pos in range(k):
                letter = start if pos % 2 == 0 else ("b" if start == "a" else "a")
                seq.append(f"{letter}{rng.randint(1, n)}")
            rep.record(",".join(seq), continuant(alg, seq) - continuant_head(alg, seq))
    out.append(_record("continuant.recursions", "the two defining recursions agree", rep))

    rep = CheckReport("convenient formulas")
    for m in range(1, n + 1):
        alg = gamma_algebra(m)
        lhs, rhs = convenient_formula_a(alg, m)
        rep.record(f"odd m={m}", lhs - rhs)
        if m >= 2:
            lhs, rhs = convenient_formula_b(alg, m)
            rep.record(f"even m={m}", lhs - rhs)
    out.append(_record("continuant.convenient-formulas", "expansion of (a1,...,an) and (a1,...,bn) in prefixes", rep))

    rep = CheckReport("curious identity")
    for m in range(1, n + 1):
        lhs, rhs = curious_identity(gamma_algebra(m), m)
        rep.record(f"m={m}", lhs - rhs)
    out.append(_record("continuant.curious-identity", "(a1..an)(bn..a1) = (a1..bn)(an..a1)", rep))

    rep = CheckReport("matrix continuant")
    for trial in range(100):
        k = rng.randint(2, 8)
        xs = [rng.randint(-50, 50) for _ in range(k)]
        prod, form = matrix_continuant(xs)
        rep.record(str(xs), prod != form)
    out.append(_record("classical.matrix-continuant", "product of [[0,1],[1,x]] in continuant form", rep))

    rep = CheckReport("Gauss decomposition")
    done = 0
    while done < 50:
        m = tuple(tuple(Fraction(rng.randint(-30, 30)) for _ in range(2)) for _ in range(2))
        try:
            u, d, low = gauss_decompose(m)
        except NotDecomposable:
            continue
        rep.record(str(m), mat_mul(mat_mul(u, d), low) != m)
        done += 1
    out.append(_record("classical.gauss", "M = U D L reconstructs M", rep))

    rep = CheckReport("Boalch product")
    done = 0
    while done < 30:
        a = [Fraction(rng.randint(-20, 20)) for _ in range(n)]
        b = [Fraction(rng.randint(-20, 20)) for _ in range(n)]
        bp = boalch_product(a, b)
        rep.record(f"A={a} B={b} entries", not bp.entries_match)
        if bp.s_tilde is None or bp.moment_value == 0:
            continue
        rep.record(f"A={a} B={b} inverse", not bp.inverse_ok)
        done += 1
    out.append(_record("classical.boalch", "product of unipotent factors in continuants; s~ inverts (A1,...,Bn)", rep))
    return out


def suite_quasi_poisson(cfg: SuiteConfig) -> List[IdentityRecord]:
    db = _table(cfg)
    out = [_record("brackets.quasi-poisson", "triple bracket equals the quasi-Poisson bracket on generators", check_quasi_poisson(db))]
    rep = CheckReport("cyclic antisymmetry")
    rep.checked = len(db.arrow_pairs())
    rep.failures = [(f"{x},{y}", str(r)) for (x, y), r in check_cyclic_antisymmetry(db)]
    out.append(_record("brackets.antisymmetry", "cyclic antisymmetry of the table", rep))
    rep = CheckReport("S-equivariance")
    rep.checked = len(db.arrow_pairs())
    rep.failures = [(f"{x},{y}", str(r)) for (x, y), r in check_S_equivariance(db)]
    out.append(_record("brackets.S-equivariance", "automorphism a_i <-> b_(n+1-i) negates the bracket", rep))
    return out


def suite_moment_map(cfg: SuiteConfig) -> List[IdentityRecord]:
    from .factorization import cleared_moment_map

    n = cfg.n
    db = _table(cfg)
    alg = db.algebra
    phi2 = continuant(alg, alternating("a", 1, n))
    out = [_record("moment.phi2", "moment map component (a1,...,bn) at vertex 2", check_moment_map(db, phi2, "2"))]
    oc = cfg.oracle()
    loc = gamma_algebra(n, "moment")
    dbl = euler_bracket_table(n, algebra=loc)
    if cfg.mutate:
        dbl = mutate(dbl, *cfg.mutate)
    phi1 = loc.gen("inv(<" + ",".join(alternating("b", n, 1)) + ">)")
    rep = check_moment_map(dbl, phi1, "1", mode="inverse", oracle=oc.is_zero)
    out.append(_record("moment.phi1", "moment map component (bn,...,a1)^-1 at vertex 1", rep, _samples(oc)))
    out.append(_record("moment.phi1-cleared", "bracket of (bn,...,a1) with generators, inverse cleared", cleared_moment_map(n)))
    return out


def suite_bivector(cfg: SuiteConfig) -> List[IdentityRecord]:
    n = cfg.n
    db = _table(cfg)
    rep = CheckReport("bivector bracket")
    got = bracket_from_bivector(build_Pn(n, db.algebra))
    for x, y in db.arrow_pairs():
        rep.record(f"{x},{y}", got.entry(x, y) - db.entry(x, y))
    out = [_record("brackets.bivector", "double bracket induced by the bivector P_n", rep)]
    if n <= 2:
        rep = CheckReport("gauge cube")
        alg = db.algebra
        qp = qp_via_mu(alg)
        names = [alg.symbols[i].name for i in alg.arrows]
        for x, y, z in itertools.product(names, repeat=3):
            rep.record(f"{x},{y},{z}", qp(x, y, z) - qp_triple_bracket(alg, x, y, z))
        out.append(_record("brackets.mu-consistency", "mu of the gauge cube over 12 is the quasi-Poisson bracket", rep))
    return out


def suite_fusion(cfg: SuiteConfig) -> List[IdentityRecord]:
    n = cfg.n
    h = build_Afus(n)
    alg = h.algebra
    rep = CheckReport("fused bracket table")
    expected = afus_closed_form(alg, n)
    rep.checked = len(expected)
    rep.failures = [(f"{x},{y}", str(r)) for (x, y), r in compare_tables(h.bracket, expected)]
    out = [_record("fusion.table", "bracket of the fused algebra in closed form", rep)]
    rep = CheckReport("fused moment map")
    closed = afus_moment_closed_form(alg, n)
    for s in ("1", "2"):
        rep.record(s, h.moment[s] - closed[s])
    out.append(_record("fusion.moment-form", "fused moment map as a product of copies", rep))
    out.append(_record("fusion.quasi-poisson", "the fused bracket is quasi-Poisson", check_quasi_poisson(h.bracket)))
    out.append(_record("fusion.phi2", "fused moment map at vertex 2", check_moment_map(h.bracket, h.moment["2"], "2")))
    oc = cfg.oracle()
    rep = check_moment_map(h.bracket, h.moment["1"], "1", mode="inverse", oracle=oc.is_zero)
    out.append(_record("fusion.phi1", "fused moment map at vertex 1", rep, _samples(oc)))
    return out


_FACTOR_ANCHORS = {
    "continuant bracket lemmas": ("factorization.prefix-brackets", "brackets of (a1,...,bi) and (a1,...,ai) with generators"),
    "last pair lemma": ("factorization.last-pair", "brackets of (an,bn) with generators"),
    "cleared factorisation": ("factorization.cleared", "factorisation steps with denominators cleared"),
    "cleared moment map at vertex 1": ("factorization.cleared-moment", "moment map at vertex 1 with inverse cleared"),
    "primed generators": ("factorization.primed-forms", "two expressions of a'_l and the factor inverses"),
    "continuant factorisation": ("factorization.cont", "(a1,...,bl) as a product of (e2 + a'_k b'_k)"),
    "primed generator lemmas": ("factorization.primed-lemmas", "brackets of a'_i with a_j and continuants"),
    "bracket and moment map on primed generators": ("factorization.alt-structure", "bracket table in primed generators"),
    "factorisation isomorphism": ("factorization.iso", "psi: a'_l -> c_l, b'_l -> d_l"),
}


def suite_factorization(cfg: SuiteConfig) -> List[IdentityRecord]:
    from .factorization import FACTORISATION_DIMS

    oc = cfg.oracle(FACTORISATION_DIMS)
    out = []
    for rep in factorisation_suite(cfg.n, oc):
        rid, anchor = _FACTOR_ANCHORS[rep.identity]
        out.append(_record(rid, anchor, rep, _samples(oc) if "oracle" in rep.mode else None))
    return out


def suite_rep11(cfg: SuiteConfig) -> List[IdentityRecord]:
    table = rep11_bracket(cfg.n, _table(cfg))
    out = [_record("rep11.printed", "closed forms of the (1,1) bracket", check_rep11_printed(cfg.n, table))]
    out.append(_record("rep11.jacobi", "the (1,1) bracket is Poisson", check_rep11_jacobi(cfg.n, table)))
    return out


def suite_flaschka_newell(cfg: SuiteConfig) -> List[IdentityRecord]:
    cmp = flaschka_newell_compare(cfg.n, seed=cfg.seed)
    return [_record("rep11.flaschka-newell", f"s-coordinate bracket is {cmp.factor} times the Flaschka-Newell bracket", cmp.report)]


def random_loop(alg, n: int, rng: random.Random, length: int) -> Element:
    """A random alternating word that is a loop (even length)."""
    start = rng.choice("ab")
    other = "b" if start == "a" else "a"
    out = None
    for pos in range(length):
        g = alg.gen(f"{start if pos % 2 == 0 else other}{rng.randint(1, n)}")
        out = g if out is None else out * g
    return out


def suite_h0(cfg: SuiteConfig) -> List[IdentityRecord]:
    n = cfg.n
    db = _table(cfg)
    alg = db.algebra
    rng = random.Random(f"h0|{cfg.seed}|{n}")
    A = db.associated
    anti = CheckReport("H0 antisymmetry")
    jac = CheckReport("H0 Jacobi identity")
    for _ in range(cfg.samples):
        x, y, z = (random_loop(alg, n, rng, rng.choice((2, 4))) for _ in range(3))
        anti.record(f"{x} | {y}", h0_reduce(A(x, y) + A(y, x)))
        jac.record(f"{x} | {y} | {z}", h0_reduce(A(x, A(y, z)) + A(y, A(z, x)) + A(z, A(x, y))))
    out = [
        _record("h0.antisymmetry", "induced bracket on A/[A,A] is antisymmetric", anti),
        _record("h0.jacobi", "induced bracket on A/[A,A] satisfies Jacobi", jac),
    ]
    phi2 = continuant(alg, alternating("a", 1, n))
    rep = CheckReport("moment map after multiplication")
    for x in alg.generators():
        rep.record(str(x), A(phi2, x) - (x * phi2 - phi2 * x))
    out.append(_record("h0.moment", "m({{Phi2, x}}) = x Phi2 - Phi2 x", rep))
    return out


_RUNNERS: Dict[str, Callable[[SuiteConfig], List[IdentityRecord]]] = {
    "classical": suite_classical,
    "quasi-poisson": suite_quasi_poisson,
    "moment-map": suite_moment_map,
    "bivector": suite_bivector,
    "fusion": suite_fusion,
    "factorization": suite_factorization,
    "rep11": suite_rep11,
    "flaschka-newell": suite_flaschka_newell,
    "h0": suite_h0,
}


def run_suite(name: str, config: Optional[SuiteConfig] = None) -> VerificationReport:
    """Run one suite (or ``all``) and collect its records."""
    config = config or SuiteConfig()
    names = list(SUITES) if name == "all" else [name]
    for nm in names:
        if nm not in _RUNNERS:
            raise ValueError(f"unknown suite {nm!r}; expected one of {', '.join(SUITES + ('all',))}")
    cfg_dict = {
        "dims": [list(d) for d in config.dims] if config.dims else None,
        "trials": config.trials,
        "range": config.rng_range,
        "mutate": list(config.mutate) if config.mutate else None,
        "samples": config.samples,
    }
    report = VerificationReport(name, config.n, str(config.seed), cfg_dict, timing={})
    for nm in names:
        t0 = time.perf_counter()
        report.records += _RUNNERS[nm](config)
        report.timing[nm] = round(time.perf_counter() - t0, 3)
    return report
