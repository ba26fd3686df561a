"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

Every criterion is an exact identity, so there are no tolerances: a check
passes only with a zero residual (exactly, or at every oracle point).
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from eulerqp.algebra import gamma_algebra, tensor
from eulerqp.brackets import (
    bracket_from_bivector,
    build_Pn,
    check_moment_map,
    check_quasi_poisson,
    euler_bracket_table,
    h0_reduce,
    mutate,
    qp_triple_bracket,
    qp_via_mu,
)
from eulerqp.continuants import alternating, continuant
from eulerqp.factorization import FACTORISATION_DIMS, OracleConfig, factorisation_suite
from eulerqp.fusion import afus_closed_form, afus_moment_closed_form, build_Afus, compare_tables
from eulerqp.oracle import is_zero_probabilistic
from eulerqp.rep11 import check_rep11_jacobi, check_rep11_printed, flaschka_newell_compare
from eulerqp.reports import SuiteConfig, run_suite

H = Fraction(1, 2)


@pytest.fixture
def verdict(capsys):
    """Collect (label, ok) checks and print one line for the criterion."""

    def emit(number, title, checks, started):
        failed = [label for label, ok in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        with capsys.disabled():
            extra = f" failed: {', '.join(failed[:4])}" if failed else ""
            print(f"\n[criterion {number:2d}] {status}  {title}  ({len(checks)} checks, {time.perf_counter() - started:.1f}s){extra}")
        assert not failed, failed

    return emit


def test_criterion_01_n1_regression(verdict):
    t0 = time.perf_counter()
    db = euler_bracket_table(1)
    alg = db.algebra
    a, b = alg.gen("a1"), alg.gen("b1")
    e1, e2 = alg.e(1), alg.e(2)
    checks = [
        ("{{a,b}}", db(a, b) == (tensor(b * a, e2) + tensor(e1, a * b)).scale(H) + tensor(e1, e2)),
        ("{{a,a}}", not db(a, a)),
        ("{{b,b}}", not db(b, b)),
        ("{{b,a}}", db(b, a) == -db(a, b).tau12()),
    ]
    checks.append(("under 1s", time.perf_counter() - t0 < 1.0))
    verdict(1, "n=1 bracket table", checks, t0)


def test_criterion_02_quasi_poisson(verdict):
    t0 = time.perf_counter()
    checks = []
    for n in (1, 2, 3):
        rep = check_quasi_poisson(euler_bracket_table(n))
        checks.append((f"n={n}", rep.passed and rep.checked == (2 * n) ** 3))
    checks.append(("under 5 min", time.perf_counter() - t0 < 300))
    verdict(2, "quasi-Poisson identity on all generator triples, n=1,2,3", checks, t0)


def test_criterion_03_moment_map(verdict):
    t0 = time.perf_counter()
    checks = []
    for n in (1, 2, 3):
        db = euler_bracket_table(n)
        phi2 = continuant(db.algebra, alternating("a", 1, n))
        checks.append((f"Phi2 n={n}", check_moment_map(db, phi2, 2).passed))
        loc = gamma_algebra(n, "moment")
        dbl = euler_bracket_table(n, algebra=loc)
        phi1 = loc.gen("inv(<" + ",".join(alternating("b", n, 1)) + ">)")

        def oracle(t):
            v = is_zero_probabilistic(t, ((1, 1), (2, 2), (3, 3)), trials=3, stop_early=False)
            sizes = {tuple(e["dims"]) for e in v.evaluations if e.get("dims")}
            return v.zero and (not t.terms or {(1, 1), (2, 2), (3, 3)} <= sizes)

        checks.append((f"Phi1 n={n}", check_moment_map(dbl, phi1, 1, mode="inverse", oracle=oracle).passed))
    verdict(3, "multiplicative moment map at both vertices", checks, t0)


def test_criterion_04_bivector(verdict):
    t0 = time.perf_counter()
    checks = []
    for n in (1, 2, 3):
        db = euler_bracket_table(n)
        got = bracket_from_bivector(build_Pn(n, db.algebra))
        checks.append((f"n={n}", all(got.entry(x, y) == db.entry(x, y) for x, y in db.arrow_pairs())))
    verdict(4, "bracket of the bivector P_n equals the table", checks, t0)


def test_criterion_05_mu_consistency(verdict):
    t0 = time.perf_counter()
    checks = []
    for n in (1, 2):
        alg = gamma_algebra(n)
        qp = qp_via_mu(alg)
        gens = alg.generators()
        ok = all(qp(x, y, z) == qp_triple_bracket(alg, x, y, z) for x, y, z in itertools.product(gens, repeat=3))
        checks.append((f"n={n}", ok))
    verdict(5, "mu of the gauge cube over 12 is the quasi-Poisson bracket", checks, t0)


def _records(report, prefix):
    return [(r.id, r.status == "pass") for r in report.records if r.id.startswith(prefix)]


def test_criterion_06_continuant_identities(verdict):
    t0 = time.perf_counter()
    rep = run_suite("classical", SuiteConfig(n=5))
    checks = _records(rep, "continuant.")
    assert {c for c, _ in checks} >= {
        "continuant.term-count",
        "continuant.recursions",
        "continuant.convenient-formulas",
        "continuant.curious-identity",
    }
    alg = gamma_algebra(3)
    checks.append(("k=5 has 8 terms", len(continuant(alg, ("a1", "b1", "a2", "b2", "a3")).terms) == 8))
    verdict(6, "continuant recursions, convenient formulas, curious identity, term counts", checks, t0)


def test_criterion_07_classical(verdict):
    t0 = time.perf_counter()
    checks = []
    for n in (1, 2, 3):
        rep = run_suite("classical", SuiteConfig(n=n, seed=n))
        checks += [(f"{rid} n={n}", ok) for rid, ok in _records(rep, "classical.")]
    assert len(checks) == 9
    verdict(7, "matrix continuant, Gauss decomposition, Boalch product", checks, t0)


def test_criterion_08_fusion(verdict):
    t0 = time.perf_counter()
    checks = []
    for n in (2, 3):
        h = build_Afus(n)
        alg = h.algebra
        closed = afus_moment_closed_form(alg, n)
        checks.append((f"table n={n}", compare_tables(h.bracket, afus_closed_form(alg, n)) == []))
        checks.append((f"moment form n={n}", h.moment["1"] == closed["1"] and h.moment["2"] == closed["2"]))
        checks.append((f"quasi-Poisson n={n}", check_quasi_poisson(h.bracket).passed))
        checks.append((f"Phi2 n={n}", check_moment_map(h.bracket, h.moment["2"], "2").passed))
        checks.append((f"Phi1 n={n}", check_moment_map(h.bracket, h.moment["1"], "1", mode="inverse").passed))
    verdict(8, "fused algebra: closed form and Hamiltonian structure", checks, t0)


def test_criterion_09_factorisation(verdict):
    t0 = time.perf_counter()
    cfg = OracleConfig(dims=FACTORISATION_DIMS, trials=3, augment=True)
    checks = []
    for n in (2, 3):
        for rep in factorisation_suite(n, cfg):
            checks.append((f"{rep.identity} n={n}", rep.passed and rep.checked > 0))
    verdict(9, "factorisation, primed generators and the isomorphism to the fused algebra", checks, t0)


def test_criterion_10_rep11_flaschka_newell(verdict):
    t0 = time.perf_counter()
    checks = []
    for n in (1, 2, 3, 4):
        checks.append((f"printed forms n={n}", check_rep11_printed(n).passed))
        checks.append((f"Flaschka-Newell n={n}", flaschka_newell_compare(n).report.passed))
    for n in (1, 2, 3):
        checks.append((f"Jacobi n={n}", check_rep11_jacobi(n).passed))
    verdict(10, "(1,1) bracket, Flaschka-Newell comparison, Jacobi identity", checks, t0)


def test_criterion_11_h0(verdict):
    t0 = time.perf_counter()
    checks = []
    for n in (1, 2):
        rep = run_suite("h0", SuiteConfig(n=n, samples=50))
        checks += [(f"{r.id} n={n}", r.status == "pass" and (r.id == "h0.moment" or r.checked == 50)) for r in rep.records]
    for n in (1, 2, 3):
        db = euler_bracket_table(n)
        alg = db.algebra
        phi2 = continuant(alg, alternating("a", 1, n))
        ok = all(db.associated(phi2, x) == x * phi2 - phi2 * x for x in alg.generators())
        checks.append((f"m(Phi2,x) n={n}", ok))
    verdict(11, "induced bracket on A/[A,A]", checks, t0)


def test_criterion_12_negative_controls(verdict):
    t0 = time.perf_counter()
    checks = []
    for n in (1, 2, 3):
        bad = mutate(euler_bracket_table(n), "a1", "b1")
        checks.append((f"mutated table fails n={n}", not check_quasi_poisson(bad).passed))
    rep = run_suite("quasi-poisson", SuiteConfig(n=2, mutate=("a1", "b1")))
    checks.append(("mutated suite fails", not rep.passed))

    alg = gamma_algebra(2)
    xs = [alg.gen(f"a{i}") * alg.gen(f"b{j}") for i in (1, 2) for j in (1, 2)]
    s4 = alg.zero()
    for perm in itertools.permutations(range(4)):
        sign = (-1) ** sum(1 for i, j in itertools.combinations(range(4), 2) if perm[i] > perm[j])
        w = xs[perm[0]] * xs[perm[1]] * xs[perm[2]] * xs[perm[3]]
        s4 = s4 + w.scale(sign)
    checks.append(("s4 vanishes on 2x2", is_zero_probabilistic(s4, [(2, 2)], augment=False).zero))
    checks.append(("s4 nonzero with 3x3", not is_zero_probabilistic(s4, [(2, 2), (3, 3)], augment=False).zero))
    checks.append(("s4 nonzero by the degree rule", not is_zero_probabilistic(s4, [(1, 1), (2, 2)]).zero))
    verdict(12, "mutated bracket and the 2x2 standard identity are detected", checks, t0)
