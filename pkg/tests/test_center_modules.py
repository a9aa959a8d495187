import pytest

from qsf.algebra import Gens
from qsf.center import (
    center_dimension, center_items, compute_center, coordinate_change, idempotent_items,
    is_central, special_idempotents, theta_inverse, theta_map,
)
from qsf.quasihopf import QConfig, QuasiHopfQ
from qsf.reptheory import (
    build_module, cartan_and_basic_algebra, character_items, hom_dimension, is_simple,
    relation_items, trace_identity_items,
)


@pytest.mark.parametrize("n,dim", [(1, 5), (2, 11), (3, 35)])
def test_center_dimension_formula(n, dim):
    assert center_dimension(n) == dim


@pytest.mark.parametrize("n,b", [(1, 1), (1, 7), (2, 0), (2, 6)])
def test_center_basis(n, b):
    cb = compute_center(QConfig(n, b))
    items, extra = center_items(cb)
    assert extra["dimension"] == center_dimension(n)
    assert [lab for lab, r in items if r] == []
    change = coordinate_change(cb)
    assert all(x is not None for row in change for x in row)


def test_non_central_elements_are_rejected():
    g = Gens(1)
    assert not is_central(g.fp(1))
    assert not is_central(g.K)
    assert is_central(g.K * g.K)


@pytest.mark.parametrize("n", [1, 2])
def test_special_idempotents(n):
    q = QuasiHopfQ(QConfig(n))
    assert [lab for lab, r in idempotent_items(q) if r] == []
    ep, em = special_idempotents(q)
    assert ep + em == q.g.e1


def test_theta_roundtrip():
    u = {(0, 0): 3, (3, 3): 1, (1, 2): -2}
    assert theta_inverse(theta_map(2, u)) == u
    with pytest.raises(ValueError):
        theta_inverse(Gens(2).fp(1))


@pytest.mark.parametrize("label,dim", [("X0+", 1), ("X0-", 1), ("X1+", 2), ("X1-", 2),
                                       ("P0+", 4), ("P0-", 4)])
def test_modules_rank_one(label, dim):
    V = build_module(QConfig(1), label)
    assert V.dim == dim
    assert [lab for lab, r in relation_items(V) if r] == []
    assert is_simple(V) == (label[0] == "X")


def test_hom_spaces_between_simples():
    q = QuasiHopfQ(QConfig(1))
    x0p, x0m = build_module(q, "X0+"), build_module(q, "X0-")
    assert hom_dimension(x0p, x0p) == 1
    assert hom_dimension(x0p, x0m) == 0


def test_unknown_module_label():
    with pytest.raises(ValueError):
        build_module(QConfig(1), "Y")


@pytest.mark.parametrize("n", [1, 2])
def test_cartan_data(n):
    items, extra = cartan_and_basic_algebra(QuasiHopfQ(QConfig(n)))
    assert [lab for lab, r in items if r] == []
    m = 2 ** (2 * n - 1)
    assert extra["cartan"][0][:2] == [m, m]
    assert extra["dims"]["P0+"] == 4 ** n
    assert extra["dim_End_G"] == 2 * 4 ** n + 2


@pytest.mark.parametrize("n,b,nu", [(1, 3, 1), (1, 1, -1), (2, 2, 1)])
def test_characters_and_traces(n, b, nu):
    q = QuasiHopfQ(QConfig(n, b, nu))
    assert [lab for lab, r in character_items(q)[0] if r] == []
    assert [lab for lab, r in trace_identity_items(q) if r] == []
