import numpy as np
import pytest

import scipy.sparse as spsparse

from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNNumericalError
from pymsgnn.signednetwork import from_edge_list, symmetrized_adjacency
from pymsgnn.maglap import (q_max, phase_matrix, hermitian_adjacency, laplacian_unnormalized, laplacian_normalized,
    laplacian, is_hermitian)
from pymsgnn.synthetic import random_signed_digraph
from pymsgnn.checks import toy_graph, check_reductions


def test_unit_edge_quarter_charge():
    g = from_edge_list([(0, 1, 1.0)])
    h = hermitian_adjacency(g, 0.25).toarray()
    assert h[0, 1] == pytest.approx(0.5j)
    assert h[1, 0] == pytest.approx(-0.5j)

    lu = laplacian_unnormalized(g, 0.25).toarray()
    assert np.allclose(lu, [[0.5, -0.5j], [0.5j, 0.5]])
    assert np.allclose(np.linalg.eigvalsh(lu), [0.0, 1.0])

def test_negative_unit_edge_antisymmetric():
    h = hermitian_adjacency(from_edge_list([(0, 1, -1.0)]), 0.25).toarray()
    assert abs(h[0, 1]) == pytest.approx(0.5)
    assert h[0, 1].real == pytest.approx(0.0)
    assert h[1, 0] == pytest.approx(-h[0, 1])

def test_zero_charge_is_real():
    g = toy_graph()
    h = hermitian_adjacency(g, 0.0)
    assert np.all(h.data.imag == 0)
    assert np.array_equal(h.toarray().real, symmetrized_adjacency(g).toarray())

def test_q_max():
    # the largest asymmetry is the one-way edge 3 -> 2 with weight 10
    assert q_max(toy_graph()) == pytest.approx(0.05)
    with pytest.raises(pyMSGNNNumericalError):
        q_max(from_edge_list([(0, 1, 2.0), (1, 0, 2.0)]))

def test_q_max_maps_largest_asymmetry_to_pi():
    g = toy_graph()
    theta = phase_matrix(g, q_max(g)).toarray()
    assert theta[3, 2] == pytest.approx(np.pi)
    assert theta.min() >= 0
    assert theta.max() < 2 * np.pi

def test_hermitian():
    g = random_signed_digraph(25, density=0.3, seed=4)
    for q in [0.0, 0.1, 0.25, 0.7]:
        assert is_hermitian(hermitian_adjacency(g, q))
        assert is_hermitian(laplacian_unnormalized(g, q))
        assert is_hermitian(laplacian_normalized(g, q))
    assert not is_hermitian(spsparse.csr_matrix(np.array([[0, 1j], [1j, 0]])))

@pytest.mark.parametrize('seed', range(5))
def test_spectral_bounds(seed):
    g = random_signed_digraph(30, density=0.2, seed=seed)
    eu = np.linalg.eigvalsh(laplacian_unnormalized(g, 0.3).toarray())
    en = np.linalg.eigvalsh(laplacian_normalized(g, 0.3).toarray())
    assert eu.min() >= -1e-9
    assert en.min() >= -1e-9
    assert en.max() <= 2 + 1e-9

def test_isolated_node_identity_row():
    ln = laplacian_normalized(from_edge_list([(0, 1, 1.0)], n=3), 0.25).toarray()
    assert ln[2, 2] == 1.0
    assert np.all(ln[2, :2] == 0)

def test_self_loop_diagonal():
    lu = laplacian_unnormalized(from_edge_list([(0, 0, 2.0), (0, 1, 1.0)]), 0.25).toarray()
    assert lu[0, 0] == pytest.approx(0.5)
    assert lu[1, 1] == pytest.approx(0.5)

def test_laplacian_dispatch():
    g = toy_graph()
    assert (laplacian(g, 0.1) != laplacian_normalized(g, 0.1)).nnz == 0
    assert (laplacian(g, 0.1, normalization=None) != laplacian_unnormalized(g, 0.1)).nnz == 0
    with pytest.raises(pyMSGNNConfigError):
        laplacian(g, 0.1, normalization='rw')
    with pytest.raises(pyMSGNNConfigError):
        laplacian(g, np.nan)

def test_reductions():
    result = check_reductions(num_graphs=5)
    assert result['passed'], result['detail']

@pytest.mark.parametrize('q', [0.1, 0.25, 0.4])
def test_reversal_conjugates(q):
    g = random_signed_digraph(25, density=0.2, seed=7)
    h = hermitian_adjacency(g, q).toarray()
    assert np.allclose(hermitian_adjacency(g.reverse(), q).toarray(), np.conj(h), rtol=0, atol=1e-12)
    ln = laplacian_normalized(g, q).toarray()
    assert np.allclose(laplacian_normalized(g.reverse(), q).toarray(), np.conj(ln), rtol=0, atol=1e-12)
