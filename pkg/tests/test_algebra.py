import random

import pytest

from qsf.algebra import (
    AlgElement, Gens, TensorElement, all_monomials, mono, mono_str, random_element,
    regular_rep_oracle,
)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dimension(n):
    assert len(all_monomials(n)) == 4 ** (n + 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_defining_relations_vanish(n):
    g = Gens(n)
    assert [name for name, rel in g.relations() if rel] == []


def test_e1_is_the_anticommutator():
    g = Gens(1)
    assert g.fp(1) * g.fm(1) + g.fm(1) * g.fp(1) == g.e1
    assert g.e0 * g.e0 == g.e0 and g.e1 * g.e1 == g.e1
    assert not g.e0 * g.e1
    assert g.e0 + g.e1 == g.one


def test_top_element_and_normal_order_names():
    g = Gens(2)
    assert g.top() == g.fp(1) * g.fm(1) * g.fp(2) * g.fm(2)
    assert mono_str(mono(0b0110, 1)) == "f-1 f+2 K"


@pytest.mark.parametrize("n", [1, 2])
def test_associativity_on_random_triples(n):
    rng = random.Random(7 + n)
    for _ in range(60):
        a, b, c = (random_element(n, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("n", [1, 2])
def test_oracle_generator_matrices_satisfy_relations(n):
    oracle = regular_rep_oracle(n)
    K = oracle.gen_mats["K"]
    assert ((K.dot(K).dot(K).dot(K)) == oracle.matrix(0)).all()
    fp, fm = oracle.gen_mats[(1, 1)], oracle.gen_mats[(-1, 1)]
    assert not (fp.dot(fp)).any()
    assert not (fp.dot(K) + K.dot(fp)).any()
    half = (oracle.matrix(0) - K.dot(K)) / 2
    assert ((fp.dot(fm) + fm.dot(fp)) == half).all()


def test_oracle_agrees_with_sparse_product():
    rng = random.Random(3)
    oracle = regular_rep_oracle(3)
    for _ in range(40):
        a, b = random_element(3, rng, nterms=3), random_element(3, rng, nterms=3)
        assert a * b == oracle.mul(a, b)


def test_oracle_rejects_large_rank():
    with pytest.raises(ValueError):
        regular_rep_oracle(4)


def test_tensor_products_multiply_legwise():
    g = Gens(1)
    x = TensorElement.tensor(g.fp(1), g.K)
    y = TensorElement.tensor(g.fm(1), g.K)
    assert x * y == TensorElement.tensor(g.fp(1) * g.fm(1), g.K * g.K)
    assert x * TensorElement.one(1, 2) == x


def test_scalar_and_json():
    a = AlgElement.scalar(2, 3)
    assert a * a == AlgElement.scalar(2, 9)
    assert AlgElement.basis(1, mono(1)).to_json()
