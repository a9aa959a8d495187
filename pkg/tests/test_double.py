import pytest

from qsf.double import (
    HData, PsiMap, StructureHopf, build_double, build_H, check_psi, double_relation_items,
    dual_lemma_items,
)
from qsf.quasihopf import QConfig, QuasiHopfQ, beta_choices


def nonzero(items):
    return [lab for lab, r in items if (r if isinstance(r, int) else r.terms)]


@pytest.mark.parametrize("n", [1, 2])
def test_h_is_a_hopf_algebra(n):
    H = build_H(n)
    assert H.dim == 2 ** (n + 1)
    assert nonzero(H.hopf_items("H")) == []


def test_broken_antipode_is_detected():
    H = build_H(1)
    bad_S = {i: {j: -c for j, c in H._S[i].items()} for i in range(H.dim)}
    broken = StructureHopf(H.dim, H._mul, H.unit, H._delta, H.counit_vec, bad_S)
    assert "H: antipode" in nonzero(broken.hopf_items("H"))


@pytest.mark.parametrize("n", [1, 2])
def test_dual_and_double(n):
    dh = build_double(n)
    assert dh.dim == dh.hd.H.dim ** 2
    assert nonzero(dh.dd.D.hopf_items("H*")) == []
    assert nonzero(dual_lemma_items(dh.dd)) == []
    assert nonzero(double_relation_items(dh)) == []


def test_psi_is_bijective():
    dh = build_double(1)
    psi = PsiMap(dh, QuasiHopfQ(QConfig(1)))
    assert psi.rank() == dh.dim == 4 ** 2


@pytest.mark.parametrize("b", beta_choices(1))
def test_psi_checks_rank_one(b):
    results = check_psi(QConfig(1, b))
    assert [r.name for r in results if not r.passed] == []
    assert "psi_coalgebra_odd_n" in {r.name for r in results}


@pytest.mark.parametrize("b,expected", [
    (0, {"psi_hopf", "psi_rmatrix", "embedding_H_to_Q"}),
    (4, {"psi_hopf"}),
    (2, set()),
])
def test_psi_checks_rank_two(b, expected):
    results = check_psi(QConfig(2, b))
    names = {r.name for r in results}
    assert [r.name for r in results if not r.passed] == []
    assert expected <= names
    assert "psi_rmatrix" not in names or b == 0


def test_hdata_generators():
    hd = HData(1)
    k = hd.k
    assert hd.H.mul(k, k) == hd.H.unit
