import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reggelab import tetra
from reggelab.exact import SignedSqrtRational
from reggelab.verify import random_rational_lengths

LATTICE_VECTORS = [[2, 0, 0], [0, 3, 0], [0, 0, 6]]


def regular(length=1):
    return tetra.EdgeLengths(*([Fraction(length)] * 6))


def test_regular_cayley_menger():
    assert tetra.cayley_menger_det(regular()) == 4
    assert tetra.cayley_menger_det(tetra.EdgeLengths(*([1.0] * 6))) == pytest.approx(4.0)
    assert tetra.is_euclidean_tetra(regular())


def test_degenerate_is_not_euclidean():
    flat = tetra.EdgeLengths(*(Fraction(x) for x in (1, 1, 1, 1, 2, 2)))
    assert not tetra.is_euclidean_tetra(flat)
    with pytest.raises(tetra.NotRealizable):
        tetra.realize_from_lengths(flat)


def test_phi_embedding_is_isometric():
    A = tetra.phi_embed([1, 2, 2])
    assert tetra.herm_inner(A, A) == pytest.approx(9.0)
    assert np.allclose(A, A.conj().T)
    assert abs(np.trace(A)) < 1e-15
    exact = tetra.phi_embed([1, 2, 2], exact=True)
    assert tetra.herm_inner(exact, exact) == 9


def test_hermitian_lengths():
    l = tetra.hermitian_lengths([[1, 0, 0], [0, 1, 0], [0, 0, 1]], exact=True)
    assert l.squares() == (1, 1, 1, 3, 2, 2)
    floats = tetra.hermitian_lengths([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert floats.to_floats() == pytest.approx((1, 1, 1, math.sqrt(3), math.sqrt(2), math.sqrt(2)))


def test_lattice_regge_image():
    l = tetra.hermitian_lengths(LATTICE_VECTORS, exact=True)
    image = tetra.regge_lengths(l)
    assert image.squares() == (49, 36, 9, 4, 13, 45)
    assert isinstance(image.a, SignedSqrtRational)
    assert tetra.cayley_menger_det(image) == tetra.cayley_menger_det(l)
    assert tetra.is_euclidean_tetra(image)


def test_negative_regge_image():
    l = tetra.EdgeLengths(*(Fraction(x) for x in (10, 1, 1, 1, 10, 1)))
    with pytest.raises(tetra.NegativeLength):
        tetra.regge_lengths(l)


@settings(deadline=None)
@given(st.integers(0, 2**32))
def test_regge_preserves_cayley_menger(seed):
    l = random_rational_lengths(np.random.default_rng(seed))
    image = tetra.regge_lengths(l)
    assert tetra.cayley_menger_det(image) == tetra.cayley_menger_det(l)
    assert tetra.is_euclidean_tetra(image)
    assert tetra.triangle_slacks(image) == pytest.approx(tetra.triangle_slacks(l))
    assert tetra.regge_lengths(image) == l


@settings(deadline=None)
@given(st.integers(0, 2**32))
def test_realization_reproduces_lengths(seed):
    l = random_rational_lengths(np.random.default_rng(seed))
    vectors = tetra.realize_from_lengths(l)
    assert vectors[0][1] == 0 and vectors[0][2] == 0
    realized = tetra.hermitian_lengths(vectors.tolist())
    assert realized.to_floats() == pytest.approx(l.to_floats(), rel=1e-9)


def test_gram_matrix():
    gram = tetra.gram_from_lengths(tetra.hermitian_lengths(LATTICE_VECTORS, exact=True))
    assert [gram[i, i] for i in range(3)] == [4, 9, 36]
    assert all(gram[i, j] == 0 for i in range(3) for j in range(3) if i != j)


@settings(deadline=None)
@given(st.integers(0, 2**32))
def test_spherical_regge_stays_realizable(seed):
    rng = np.random.default_rng(seed)
    l = tetra.spherical_lengths(*(tetra.random_su2(rng) for _ in range(3)))
    assert tetra.spherical_realizable(l)
    image = tetra.spherical_regge(l)
    assert all(0 <= x <= math.pi + 1e-12 for x in image.to_floats())
    assert tetra.spherical_realizable(image)


def test_random_su2_is_special_unitary():
    M = tetra.random_su2(np.random.default_rng(3))
    assert np.allclose(M @ M.conj().T, np.eye(2))
    assert np.linalg.det(M) == pytest.approx(1.0)


def test_lattice_tetrahedron():
    vectors = tetra.lattice_tetrahedron(np.random.default_rng(11))
    l = tetra.hermitian_lengths(vectors, exact=True)
    assert all(x.as_rational() is not None for x in (l.a, l.b, l.c, l.d))
    assert tetra.is_euclidean_tetra(l)


def test_exact_lengths_iterate_shallowly():
    l = tetra.hermitian_lengths(LATTICE_VECTORS, exact=True)
    edges = list(l)
    assert len(edges) == 6
    assert all(isinstance(x, SignedSqrtRational) for x in edges)
    assert edges[0] is l.a
    assert tetra.cayley_menger_det(tetra.regge_lengths(l)) == tetra.cayley_menger_det(l)
