import numpy as np
import pytest
import sympy as sp

from reggelab import fuchs, tetra
from reggelab.verify import random_hermitian_vectors

LATTICE_VECTORS = [[2, 0, 0], [0, 3, 0], [0, 0, 6]]


@pytest.fixture
def exact_triple():
    return fuchs.hermitian_triple(LATTICE_VECTORS, exact=True)


def test_residues_sum_to_zero(exact_triple):
    total = sum(exact_triple.residues(), sp.zeros(2, 2))
    assert total == sp.zeros(2, 2)
    assert exact_triple.exact


def test_hat_has_rank_one(exact_triple):
    H = fuchs.hat(exact_triple.A1, sp.Integer(2))
    assert H.det() == 0
    assert H.trace() == 2
    with pytest.raises(fuchs.EigenvalueMismatch):
        fuchs.hat(exact_triple.A1, sp.Integer(3))


def test_theta_is_edge_length(exact_triple):
    assert [fuchs.theta_of(A) for A in exact_triple.residues()] == [2, 3, 6, 7]
    assert fuchs.theta_of(exact_triple.A2, -1) == -3


def test_lambda13_example():
    assert fuchs.lambda13_from((1, 1, 1, 3), 1, 1) == 1


def test_exact_coordinates(exact_triple):
    c = fuchs.coordinates(exact_triple)
    assert c.theta == (2, 3, 6, 7)
    assert (c.l12, c.l23, c.l13) == (3, 9, 6)
    assert fuchs.check_consistency(c) == []
    assert c.to_dict()["l12"] == "3"


def test_inconsistent_coordinates_are_rejected(exact_triple):
    c = fuchs.coordinates(exact_triple)
    broken = fuchs.TraceCoords(c.theta, c.l12, c.l23, c.l13 + 1, c.tau, c.tau_prime, exact=True)
    with pytest.raises(fuchs.InconsistentCoords):
        fuchs.reconstruct(broken)


def test_reconstruct_round_trip(exact_triple):
    c = fuchs.coordinates(exact_triple)
    rebuilt = fuchs.reconstruct(c)
    again = fuchs.coordinates(rebuilt, thetas=c.theta)
    assert again.invariants() == c.invariants()


def test_okamoto_coordinates(exact_triple):
    c = fuchs.okamoto_coords(fuchs.coordinates(exact_triple))
    assert c.theta == (-7, -6, -3, -2)
    assert c.invariants() == fuchs.coordinates(exact_triple).invariants()


def test_exact_lemma_and_theorem(exact_triple):
    lemma = fuchs.verify_lemma_invariants(exact_triple)
    assert lemma.passed and not lemma.skipped
    traces = fuchs.verify_complex_traces(exact_triple)
    assert traces.passed
    report = fuchs.verify_regge_correspondence(exact_triple)
    assert report.passed, report.failures
    assert report.okamoto.squares() == (49, 36, 9, 4, 13, 45)


def test_nilpotent_residue_is_degenerate():
    nilpotent = np.array([[0, 1], [0, 0]], dtype=complex)
    other = np.array([[1, 0], [0, -1]], dtype=complex)
    with pytest.raises(fuchs.DegenerateTriple):
        fuchs.coordinates(fuchs.MatrixTriple(nilpotent, other, other))


def test_non_generic_reconstruction():
    c = fuchs.TraceCoords((1, 1, 1, 1), 0, 0, 1, 0, 0)
    with pytest.raises((fuchs.NonGeneric, fuchs.InconsistentCoords)):
        fuchs.reconstruct(c)


@pytest.mark.parametrize("seed", range(5))
def test_float_theorem(seed):
    vectors = random_hermitian_vectors(np.random.default_rng(seed))
    report = fuchs.verify_regge_correspondence(fuchs.hermitian_triple(vectors))
    assert report.passed, report.failures
    assert fuchs.lengths_agree(report.lengths, tetra.hermitian_lengths(vectors))
    assert fuchs.lengths_agree(report.okamoto, report.regge)


@pytest.mark.parametrize("seed", range(5))
def test_float_lemma(seed):
    T = fuchs.random_triple(np.random.default_rng(seed))
    lemma = fuchs.verify_lemma_invariants(T)
    assert lemma.passed or lemma.skipped, lemma.failures
    traces = fuchs.verify_complex_traces(T)
    assert traces.passed or traces.skipped, traces.failures


def test_edge_lengths_from_non_hermitian_coords():
    c = fuchs.TraceCoords((1j, 1, 1, 1), 0, 0, 0, 0, 0)
    with pytest.raises(fuchs.NotHermitianAdmissible):
        fuchs.edge_lengths_from_coords(c)
