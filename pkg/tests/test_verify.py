import time
from functools import cached_property

import pytest

from qsf.quasihopf import ASSOC_INVERTED, QConfig, QuasiHopfQ, beta_choices
from qsf.verify import (
    Budget, BudgetExceeded, check_quasi_bialgebra, check_quasitriangular, probe_conventions,
    run_check, run_suite,
)


@pytest.mark.parametrize("b", beta_choices(1))
@pytest.mark.parametrize("nu", [1, -1])
def test_full_suite_rank_one(b, nu):
    results = run_suite(QuasiHopfQ(QConfig(1, b, nu)))
    assert [r.name for r in results if not r.passed] == []
    assert len(results) == 7


def test_full_suite_rank_two():
    results = run_suite(QuasiHopfQ(QConfig(2, 0)))
    assert [r.name for r in results if not r.passed] == []


def test_declared_placement_is_the_only_one_that_holds():
    q = QuasiHopfQ(QConfig(1))
    table = probe_conventions(q)
    holding = [key for key, v in table.items() if v["quasi_bialgebra"] and v["hexagons"]]
    # R21^-1 is always a second R-matrix, so both braidings survive
    assert sorted(holding) == [(ASSOC_INVERTED, "R"), (ASSOC_INVERTED, "R21^-1")]


class _NegatedPhi(QuasiHopfQ):
    @cached_property
    def Phi(self):
        return -super().Phi

    @cached_property
    def PhiInv(self):
        return -super().PhiInv


class _NegatedR(QuasiHopfQ):
    @cached_property
    def R(self):
        return -super().R

    @cached_property
    def RInv(self):
        return -super().RInv


def test_corrupted_associator_is_detected():
    r = check_quasi_bialgebra(_NegatedPhi(QConfig(1)))
    assert r.status == "fail" and r.residual_terms > 0


def test_corrupted_r_matrix_is_detected():
    r = check_quasitriangular(_NegatedR(QConfig(1)))
    assert r.status == "fail"


def test_budget_aborts_cooperatively():
    def slow(b):
        for _ in range(100):
            time.sleep(0.01)
            b.check()
        return []
    r = run_check("slow", "", slow, Budget(0.05))
    assert r.status == "budget"
    with pytest.raises(BudgetExceeded):
        Budget(-1).check()
    Budget(None).check()


def test_check_result_json_schema():
    r = run_check("x", "ref", lambda b: [("a", 0), ("b", 2)])
    js = r.to_json()
    assert set(js) >= {"name", "paper_ref", "status", "residual_count", "runtime_ms"}
    assert js["status"] == "fail" and js["residual_count"] == 2
