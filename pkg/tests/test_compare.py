import pytest

from qsf.compare import (
    ZEBasis, Upsilon, _lift, _mat_mul, _residual, alpha_product, check_comparison,
    comparison_config, comparison_items, local_basis_change, local_factor_items, sigma_local,
)
from qsf.quasihopf import QConfig, QuasiHopfQ
from qsf.scalars import I
from qsf.sl2z import S_LOCAL


def test_ze_basis_matches_center_dimension():
    for n, dim in ((1, 5), (2, 11), (3, 35)):
        assert ZEBasis(n).dim == dim


def test_alpha_product_signs():
    assert alpha_product([0, 1]) == (1, 0b11)
    assert alpha_product([1, 0]) == (-1, 0b11)
    assert alpha_product([2, 0, 1]) == (1, 0b111)
    assert alpha_product([0, 0]) == (0, 0)


def test_local_factors():
    assert [lab for lab, r in local_factor_items() if r] == []


def test_local_s_needs_the_parity_sign():
    c = local_basis_change()
    s_i = _lift([[I * x for x in row] for row in S_LOCAL])
    lhs = _mat_mul(c, s_i)
    # without P the conjugated block is not sigma_k
    assert _residual(lhs, _mat_mul(sigma_local(), c)) > 0


@pytest.mark.parametrize("n", [1, 2])
def test_comparison(n):
    items, data = comparison_items(n)
    assert [lab for lab, r in items if r] == []
    assert len(data.upsilon) == ZEBasis(n).dim


@pytest.mark.parametrize("cfg", [QConfig(1, 3, 1), QConfig(1, 1, -1), QConfig(2, 0, 1)])
def test_wrong_configuration_rejected(cfg):
    with pytest.raises(ValueError):
        check_comparison(cfg)
    with pytest.raises(ValueError):
        Upsilon(QuasiHopfQ(cfg))


def test_comparison_config():
    assert comparison_config(3) == QConfig(3, 3, 1)
    r, _ = check_comparison(1)
    assert r.passed
