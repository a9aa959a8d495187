"""Acceptance suite: one test per criterion, each summarised as a PASS/FAIL line."""

import random
import time
from functools import lru_cache

from qsf.algebra import all_monomials, random_element, regular_rep_oracle
from qsf.center import center_dimension, center_items, compute_center
from qsf.compare import check_comparison, comparison_config
from qsf.double import check_psi
from qsf.qhat import check_qhat_axioms, check_twist_equivalence
from qsf.quasihopf import QConfig, QuasiHopfQ, beta_choices
from qsf.reptheory import cartan_and_basic_algebra, character_items
from qsf.sl2z import coend_items, integral_items, s_phi_chi_items, theorem_st_items
from qsf.verify import Budget, factorisable_items, run_suite

RANKS = (1, 2, 3)
SUITE_SECONDS = {1: 10, 2: 10, 3: 300}
PHI_ZETA_N3_SECONDS = 900


@lru_cache(maxsize=None)
def algebra(n, b, nu=1):
    return QuasiHopfQ(QConfig(n, b, nu))


@lru_cache(maxsize=None)
def center(n, b, nu=1):
    return compute_center(algebra(n, b, nu))


@lru_cache(maxsize=None)
def st_items(n, b, nu=1):
    return theorem_st_items(algebra(n, b, nu), center(n, b, nu))


def nonzero(items, prefix=""):
    return [f"{prefix}{label}" for label, r in items if r]


def configs(ranks=RANKS):
    return [(n, b) for n in ranks for b in beta_choices(n)]


def test_criterion_01_axiom_suite(acceptance):
    failures = []
    for n, b in configs():
        t0 = time.monotonic()
        results = run_suite(QuasiHopfQ(QConfig(n, b)), "all")
        dt = time.monotonic() - t0
        failures += [f"N={n} b={b}: {r.name} {r.status}" for r in results if not r.passed]
        if dt > SUITE_SECONDS[n]:
            failures.append(f"N={n} b={b}: {dt:.1f}s exceeds {SUITE_SECONDS[n]}s")
    acceptance(1, "quasi-Hopf axiom suite for all beta, N = 1, 2, 3, within budget", failures)


def test_criterion_02_center_dimension(acceptance):
    failures = []
    for n, expected in zip(RANKS, (5, 11, 35)):
        if center_dimension(n) != expected:
            failures.append(f"N={n}: formula gives {center_dimension(n)}")
        for b in beta_choices(n):
            items, extra = center_items(center(n, b))
            if extra["dimension"] != expected:
                failures.append(f"N={n} b={b}: kernel dimension {extra['dimension']}")
            failures += nonzero(items, f"N={n} b={b}: ")
    acceptance(2, "dim Z(Q) = 5, 11, 35 and kernel span = closed-form span", failures)


def test_criterion_03_modular_action(acceptance):
    failures = []
    for n, b in configs():
        for nu in (1, -1):
            items, extra = st_items(n, b, nu)
            failures += nonzero(items, f"N={n} b={b} nu={nu}: ")
            if extra["nilpotency_index"] != n + 1:
                failures.append(f"N={n} b={b} nu={nu}: nilpotency index {extra['nilpotency_index']}")
    acceptance(3, "S, T on Z_P entrywise; S^2 = id; nilpotency index N+1", failures)


def test_criterion_04_characters(acceptance):
    failures = []
    for n, b in configs():
        q = algebra(n, b)
        failures += nonzero(s_phi_chi_items(q), f"N={n} b={b}: ")
        failures += nonzero(character_items(q)[0], f"N={n} b={b}: ")
    acceptance(4, "S(phi_V) = chi_V and trace-based closed forms", failures)


def test_criterion_05_integral(acceptance):
    failures = []
    for n, b in configs():
        failures += nonzero(integral_items(algebra(n, b, 1)), f"N={n} b={b}: ")
    acceptance(5, "integral normalisation, cointegral identity, two-sided integral", failures)


def test_criterion_06_factorisable(acceptance):
    failures = []
    for n in RANKS:
        q = algebra(n, n)
        items, extra = factorisable_items(q, Budget(None))
        failures += nonzero(items, f"N={n}: ")
        if extra["rank_M"] != 2 ** (2 * n + 2):
            failures.append(f"N={n}: rank of M is {extra['rank_M']}")
        items, extra = coend_items(q)
        failures += nonzero([it for it in items if "omegaHat" in it[0]], f"N={n}: ")
        if extra["omegaHat_rank"] != 4 ** (n + 1):
            failures.append(f"N={n}: omegaHat rank {extra['omegaHat_rank']}")
    acceptance(6, "monodromy rank 2^(2N+2) and omegaHat non-degenerate", failures)


def test_criterion_07_cartan(acceptance):
    failures = []
    for n in RANKS:
        items, extra = cartan_and_basic_algebra(algebra(n, n))
        failures += nonzero(items, f"N={n}: ")
        m = 2 ** (2 * n - 1)
        if [row[:2] for row in extra["cartan"][:2]] != [[m, m], [m, m]]:
            failures.append(f"N={n}: P0 multiplicities {extra['cartan']}")
        if n <= 2 and extra["dim_End_G"] != 2 * 4 ** n + 2:
            failures.append(f"N={n}: dim End(G) = {extra['dim_End_G']}")
    acceptance(7, "Cartan multiplicities 2^(2N-1), regular dimension, dim End(G_Q)", failures)


def test_criterion_08_twist(acceptance):
    failures = []
    for n, b in configs((1, 2)):
        r = check_twist_equivalence(QConfig(n, b), with_phi=True)
        if not r.passed:
            failures.append(f"N={n} b={b}: {r.status} {r.detail}")
    for b in beta_choices(3):
        r = check_twist_equivalence(QConfig(3, b), with_phi=True, budget=Budget(PHI_ZETA_N3_SECONDS))
        if not r.passed:
            failures.append(f"N=3 b={b}: {r.status} {r.detail}")
    for b in beta_choices(1):
        for r in check_qhat_axioms(QConfig(1, b)):
            if not r.passed:
                failures.append(f"Q-hat N=1 b={b}: {r.name} {r.status}")
    acceptance(8, "twist equivalence Q-hat -> Q; Q-hat axioms at N = 1", failures)


def test_criterion_09_double(acceptance):
    failures = []
    required = {(2, 0): {"psi_hopf", "psi_rmatrix"}, (2, 4): {"psi_hopf"}}
    for n, b in configs():
        results = check_psi(QConfig(n, b))
        names = {r.name for r in results}
        failures += [f"N={n} b={b}: {r.name}" for r in results if not r.passed]
        for missing in required.get((n, b), set()) - names:
            failures.append(f"N={n} b={b}: {missing} not run")
        if "psi_algebra_isomorphism" not in names:
            failures.append(f"N={n} b={b}: algebra isomorphism not run")
    acceptance(9, "Psi algebra isomorphism, Hopf and R-matrix compatibility, double relations", failures)


def test_criterion_10_comparison(acceptance):
    failures = []
    for n in RANKS:
        r, _ = check_comparison(comparison_config(n))
        if not r.passed:
            failures.append(f"N={n}: {r.detail}")
    acceptance(10, "S and T match the pseudo-trace action after Upsilon, five identities", failures)


def test_criterion_11_oracles(acceptance):
    failures = []
    rng = random.Random(20240611)
    for n in (1, 2):
        oracle = regular_rep_oracle(n)
        bad = 0
        for _ in range(1000):
            a, b = random_element(n, rng), random_element(n, rng)
            if a * b != oracle.mul(a, b):
                bad += 1
        if bad:
            failures.append(f"N={n}: {bad} of 1000 products disagree with the oracle")
        if len(all_monomials(n)) != oracle.dim:
            failures.append(f"N={n}: oracle dimension {oracle.dim}")
    for n in RANKS:
        items, _ = st_items(n, n)
        failures += nonzero([it for it in items if it[0] == "S on Z_Lambda closed form"], f"N={n}: ")
    acceptance(11, "sparse product = dense oracle on 2000 pairs; S on Z_Lambda = closed form", failures)
