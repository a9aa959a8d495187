import pytest

from qsf.algebra import Gens, TensorElement, tensor
from qsf.qhat import (
    Chains, QHat, check_twist_equivalence, commutation_lemma_items, tensor_inverse,
    twist_items,
)
from qsf.quasihopf import QConfig, QuasiHopfQ, beta_choices
from qsf.scalars import CycScalar


def test_tensor_inverse_roundtrip():
    g = Gens(1)
    x = TensorElement.one(1, 2) + tensor(g.fp(1), g.fm(1)) + tensor(g.K, g.K).scale(CycScalar(0, 1))
    y = tensor_inverse(x)
    assert x * y == TensorElement.one(1, 2)
    assert y * x == TensorElement.one(1, 2)


def test_tensor_inverse_inside_a_corner():
    g = Gens(1)
    unit = tensor(g.e1, g.e0)
    x = (tensor(g.K, g.one) + tensor(g.fp(1) * g.fm(1), g.one)) * unit
    y = tensor_inverse(x, unit)
    assert x * y == unit


def test_singular_tensor_has_no_inverse():
    g = Gens(1)
    with pytest.raises(ArithmeticError):
        tensor_inverse(tensor(g.e0, g.one))


@pytest.mark.parametrize("b", beta_choices(1))
def test_twist_equivalence_rank_one(b):
    r = check_twist_equivalence(QConfig(1, b))
    assert r.passed, r.detail


def test_twist_detects_mismatched_beta():
    qh = QHat(QConfig(1, 1))
    items = twist_items(qh, QuasiHopfQ(QConfig(1, 3)), with_phi=False)
    assert any(r for lab, r in items if lab == "R_zeta - R")


@pytest.mark.parametrize("projected", [False, True])
def test_commutation_lemma_rank_two(projected):
    qh = QHat(QConfig(2, 0))
    assert [lab for lab, r in commutation_lemma_items(qh, projected) if r] == []


def test_chains_agree_with_expanded_products():
    qh = QHat(QConfig(1, 3))
    g = qh.g
    assert qh.zeta_chains().expand(TensorElement.one(1, 2)) == qh.zeta
    unit = tensor(g.e1, g.e1)
    assert qh.zeta_chains(True).project(unit).expand(unit) == qh.zetaInv * unit
    lifted = qh.zeta_chains().map(lambda f: qh.delta_on_leg(f, 0))
    assert lifted.expand(TensorElement.one(1, 3)) == qh.delta_on_leg(qh.zeta, 0)
    assert Chains([[]]).expand(unit) == unit


def test_phi_inverse_factors():
    qh = QHat(QConfig(2, 4))
    assert [lab for lab, r in qh.inverse_factor_items() if r] == []
