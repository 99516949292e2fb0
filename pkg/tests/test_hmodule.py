import numpy as np
import pytest
from hypothesis import given, strategies as st

from cgframe.algebra import alg_norm, identity, is_positive
from cgframe.errors import DimensionMismatch
from cgframe.hmodule import (
    CoefficientSequence,
    ModuleVector,
    inner,
    module_norm,
    sequence_inner,
    sequence_norm,
)
from oracles import inner as oracle_inner, rand_c

seeds = st.integers(0, 2**32 - 1)


def rand_vec(rng, k, n):
    return ModuleVector(rand_c(rng, n, k, k))


def test_inner_of_unit_vector():
    e = ModuleVector.basis(3, 4, 0)
    np.testing.assert_array_equal(inner(e, e), identity(3))


@given(seeds, st.integers(1, 3), st.integers(1, 5))
def test_inner_axioms(seed, k, n):
    rng = np.random.default_rng(seed)
    f, g, h = (rand_vec(rng, k, n) for _ in range(3))
    a = rand_c(rng, k, k)
    scale = 1e-10 * max(1.0, alg_norm(a)) * module_norm(f) * module_norm(h) + 1e-12
    assert np.max(np.abs(inner(f.act(a), h) - a @ inner(f, h))) <= 10 * scale
    np.testing.assert_allclose(inner(f, g), inner(g, f).conj().T, atol=1e-12)
    assert is_positive(inner(f, f))
    np.testing.assert_allclose(inner(f + g, h), inner(f, h) + inner(g, h), atol=1e-10)


def test_inner_matches_block_product(rng):
    f, g = rand_vec(rng, 2, 3), rand_vec(rng, 2, 3)
    np.testing.assert_allclose(inner(f, g), oracle_inner(f.components, g.components), atol=1e-12)


def test_inner_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatch):
        inner(rand_vec(rng, 2, 3), rand_vec(rng, 2, 4))


def test_module_norm_examples(rng):
    assert module_norm(ModuleVector.zeros(2, 3)) == 0.0
    f = ModuleVector.from_elements([np.eye(2), np.zeros((2, 2))])
    assert module_norm(f) == pytest.approx(1.0)
    g = rand_vec(rng, 3, 4)
    assert module_norm(g) ** 2 == pytest.approx(alg_norm(inner(g, g)), rel=1e-12)


def test_cauchy_schwarz_500_pairs():
    rng = np.random.default_rng(11)
    for _ in range(500):
        k, n = int(rng.integers(1, 4)), int(rng.integers(1, 5))
        f, g = rand_vec(rng, k, n), rand_vec(rng, k, n)
        lhs = alg_norm(inner(f, g)) ** 2
        assert lhs <= alg_norm(inner(f, f)) * alg_norm(inner(g, g)) * (1 + 1e-10)


def test_zero_inner_iff_zero_components(rng):
    f = ModuleVector.zeros(2, 3)
    assert alg_norm(inner(f, f)) <= 1e-9
    g = ModuleVector(np.where(np.arange(3)[:, None, None] == 1, rand_c(rng, 3, 2, 2), 0))
    assert alg_norm(inner(g, g)) > 1e-9


def test_sequence_inner_examples(rng):
    one = CoefficientSequence((ModuleVector.from_elements([np.eye(2)]),))
    np.testing.assert_array_equal(sequence_inner(one, one), np.eye(2))

    dims = [2, 1, 3]
    g = CoefficientSequence(tuple(rand_vec(rng, 2, d) for d in dims))
    h = CoefficientSequence(tuple(rand_vec(rng, 2, d) for d in dims))
    expected = sum(oracle_inner(a.components, b.components) for a, b in zip(g.blocks, h.blocks))
    np.testing.assert_allclose(sequence_inner(g, h), expected, atol=1e-12)
    assert is_positive(sequence_inner(g, g))
    assert sequence_norm(g) ** 2 == pytest.approx(alg_norm(sequence_inner(g, g)), rel=1e-14)

    single = CoefficientSequence((g.blocks[0], ModuleVector.zeros(2, 1), ModuleVector.zeros(2, 3)))
    np.testing.assert_allclose(sequence_inner(single, h), inner(g.blocks[0], h.blocks[0]), atol=1e-14)


def test_sequence_flatten_roundtrip(rng):
    g = CoefficientSequence(tuple(rand_vec(rng, 2, d) for d in [1, 3]))
    back = CoefficientSequence.from_flat(g.flatten(), g.dims)
    assert all(a.allclose(b, 0) for a, b in zip(g.blocks, back.blocks))
    with pytest.raises(DimensionMismatch):
        sequence_inner(g, CoefficientSequence.zeros(2, [3, 1]))


def test_vectors_are_immutable(rng):
    f = rand_vec(rng, 2, 2)
    with pytest.raises(ValueError):
        f.components[0, 0, 0] = 1.0
