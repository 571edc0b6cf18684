"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import random
import time
from fractions import Fraction

import pytest

from concordia import corpus
from concordia.alexander import alexander_polynomial
from concordia.family import FamilyCertificate, FamilyConfig, Regime, build_family_nilpotent, classify
from concordia.groups import mu_table, pi2_mod_pi3
from concordia.laurent import LaurentPoly
from concordia.link import braid_closure, linking_matrix, sublink
from concordia.satellite import infect
from concordia.signature import arf, builtin, rho_integral, rho_zp, trefoil_sum
import oracles


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, elapsed=None, limit=None):
        timing = ""
        if elapsed is not None:
            timing = f" ({elapsed:.3f}s" + (f" < {limit}s" if limit else "") + ")"
            ok = ok and (limit is None or elapsed < limit)
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}{timing}")
        assert ok
    return emit


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def test_01_hopf_polynomial(report):
    d = corpus.load("hopf")
    delta, t = timed(lambda: alexander_polynomial(d))
    report(1, "Hopf link has Delta = 1", delta == LaurentPoly.one(2), t, 0.1)


def test_02_trefoil_polynomial(report):
    d = corpus.load("trefoil")
    delta, t = timed(lambda: alexander_polynomial(d))
    x = LaurentPoly.var(0, 1)
    expected = x * x - x + 1
    P, xs = oracles.alexander_polynomial(d.crossings, [list(c) for c in d.components])
    ok = delta == expected and oracles.laurent_to_poly(delta, xs) == P
    report(2, "right trefoil has Delta = x^2 - x + 1 (Fox brute force agrees)", ok, t, 0.5)


def test_03_many_components_vanish_at_one(report):
    big = {n: d for n, d in corpus.load_all().items() if d.m >= 3}
    values = {n: alexander_polynomial(d).augmentation() for n, d in big.items()}
    ok = len(big) >= 4 and {d.m for d in big.values()} == {3, 4} and set(values.values()) == {0}
    report(3, f"Delta(1,...,1) = 0 on {len(big)} corpus links with 3 or 4 components", ok)


def test_04_two_component_quotient(report):
    ok = True
    for n in range(-10, 11):
        q = pi2_mod_pi3([[0, n], [n, 0]])
        expected = "Z" if n == 0 else ("0" if abs(n) == 1 else f"Z/{abs(n)}")
        ok &= str(q) == expected
        ok &= q.is_trivial() == (abs(n) == 1)
    report(4, "pi2/pi3 = Z/lk for lk in [-10, 10], trivial iff lk = +-1", ok)


def test_05_rank_bound(report):
    rng = random.Random(20240611)

    def run():
        good = 0
        for _ in range(1000):
            m = rng.randint(2, 5)
            rows = [[0] * m for _ in range(m)]
            for i in range(m):
                for j in range(i + 1, m):
                    rows[i][j] = rows[j][i] = rng.randint(-8, 8)
            good += pi2_mod_pi3(rows).rank >= (m - 1) * (m - 2) // 2
        return good

    good, t = timed(run)
    report(5, f"rank bound holds on {good}/1000 random linking matrices", good == 1000, t, 5)


def _torres(d):
    lk = linking_matrix(d).lk(1, 2)
    delta = alexander_polynomial(d)
    lhs = delta.specialize(1, 1).project([0])
    knot = alexander_polynomial(sublink(d, [1]))
    factor = LaurentPoly.from_coeffs([1] * abs(lk))
    return lhs.equal_up_to_units(factor * knot) and abs(delta.augmentation()) == abs(lk)


def test_06_torres(report):
    pairs = {n: d for n, d in corpus.load_all().items()
             if d.m == 2 and linking_matrix(d).lk(1, 2) != 0}
    extra = {f"T(2,{2 * k})": braid_closure([1] * (2 * k)) for k in range(1, 6)}
    results = {n: _torres(d) for n, d in {**pairs, **extra}.items()}
    ok = len(pairs) >= 3 and all(results.values())
    report(6, f"Torres identity and |Delta(1,1)| = |lk| on {len(results)} links", ok)


def test_07_trefoil_integral(report):
    V = builtin("trefoil_rh")
    r, t = timed(lambda: rho_integral(V))
    report(7, "rho-integral of the right trefoil = 4/3 exactly",
           r.exact and r.value == Fraction(4, 3), t, 0.5)


def test_08_trefoil_sums_mod_3(report):
    C = Fraction(4, 3)
    ok = all(rho_zp(trefoil_sum(k), 3).value == k * C for k in range(1, 51))
    report(8, "rho(k-fold trefoil sum, Z/3) = 4k/3 for k = 1..50", ok)


def test_09_family_certificate(report):
    def run():
        cert = build_family_nilpotent(FamilyConfig(100, 3, count=5))
        back = FamilyCertificate.from_json(cert.dumps())
        return cert, back

    (cert, back), t = timed(run)
    ok = (cert.adjusted and len(cert.checks) == 10 and cert.certified
          and all(c.lhs > c.rhs for c in cert.checks) and back == cert and back.reverify())
    report(9, "R=100, p=3, 5 members: 10 strict inequalities after the boundary bump, "
              "JSON round trip", ok, t, 2)


def test_10_satellite_invariance(report):
    def shadow(d):
        table = {k: (v.value, v.indeterminacy) for k, v in mu_table(d).items()}
        return alexander_polynomial(d), linking_matrix(d), table

    def run():
        triples = 0
        for name in ("t2_4", "t2_6", "whitehead", "trefoil_hopf"):
            d = corpus.load(name)
            site = d.sites[0]
            if not site.null_homologous(d):
                return None
            before = shadow(d)
            for J in ("trefoil", "figure8", "trefoil#trefoil"):
                if shadow(infect(d, site, J)) != before:
                    return -1
                triples += 1
        return triples

    triples, t = timed(run)
    report(10, f"Delta, linking matrix and mu-bar (length <= 3) unchanged on {triples} "
               "(link, site, pattern) triples", triples is not None and triples >= 5, t, 30)


def test_11_arf(report):
    ok = arf(builtin("trefoil_rh")) == 1 and arf(builtin("trefoil_rh#trefoil_rh")) == 0
    report(11, "Arf(trefoil) = 1, Arf(trefoil # trefoil) = 0", ok)


def test_12_classification(report):
    expected = {"hopf": Regime.DAVIS_EXCEPTION, "borromean": Regime.NILPOTENT_ROUTE,
                "whitehead": Regime.NILPOTENT_ROUTE}
    ok = True
    for name, regime in expected.items():
        v = classify(corpus.load(name))
        ok &= v.regime == regime and v.rederive() == regime
    report(12, "Hopf -> DavisException, Borromean and Whitehead -> NilpotentRoute, "
               "verdicts re-derived from evidence", ok)
