import pytest

from qsf.center import compute_center
from qsf.quasihopf import QConfig, QuasiHopfQ
from qsf.scalars import ONE, ZERO
from qsf.sl2z import (
    action_matrices, coend_items, integral_items, nilpotency_index, s_phi_chi_items,
    s_transform, theorem_st_items,
)


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO) for j in range(len(b[0]))]
            for i in range(len(a))]


def identity(d):
    return [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]


def proportional_to(a, b):
    """Returns the scalar c with a = c b, or None."""
    c = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if y:
                r = x / y
                if c is None:
                    c = r
                elif r != c:
                    return None
            elif x:
                return None
    return c


CONFIGS = [(1, 1, 1), (1, 5, -1), (2, 2, 1), (2, 4, -1)]


@pytest.mark.parametrize("n,b,nu", CONFIGS)
def test_modular_action_items(n, b, nu):
    q = QuasiHopfQ(QConfig(n, b, nu))
    items, extra = theorem_st_items(q, compute_center(q))
    assert [lab for lab, r in items if r] == []
    assert extra["nilpotency_index"] == n + 1


@pytest.mark.parametrize("n,b,nu", CONFIGS)
def test_projective_sl2z_relations(n, b, nu):
    q = QuasiHopfQ(QConfig(n, b, nu))
    act = action_matrices(q, compute_center(q))
    S, T = act.Smat, act.Tmat
    d = len(S)
    S2 = matmul(S, S)
    assert S2 == identity(d)
    st = matmul(S, T)
    c = proportional_to(matmul(st, matmul(st, st)), S2)
    assert c is not None and c != ZERO


def test_nilpotency_index_helper():
    z, o = ZERO, ONE
    assert nilpotency_index([[z, o, z], [z, z, o], [z, z, z]]) == 3
    assert nilpotency_index([[z, z], [z, z]]) == 1


@pytest.mark.parametrize("n", [1, 2])
def test_characters_map_under_s(n):
    q = QuasiHopfQ(QConfig(n))
    assert [lab for lab, r in s_phi_chi_items(q) if r] == []


@pytest.mark.parametrize("n,b", [(1, 1), (1, 3), (2, 0), (2, 6)])
def test_integral_and_coend(n, b):
    q = QuasiHopfQ(QConfig(n, b))
    assert [lab for lab, r in integral_items(q) if r] == []
    items, extra = coend_items(q)
    assert [lab for lab, r in items if r] == []
    assert extra["omegaHat_rank"] == extra["dim"] == 4 ** (n + 1)


def test_s_rejects_non_central():
    q = QuasiHopfQ(QConfig(1))
    with pytest.raises(ValueError):
        s_transform(q, q.g.fp(1))
