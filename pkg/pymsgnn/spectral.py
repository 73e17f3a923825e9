# -*- coding: utf-8 -*-
"""
.. module:: spectral
    :synopsis: Hermitian eigendecomposition, Chebyshev filters, spectral embedding and k-means

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import warnings
from dataclasses import dataclass

import numpy as np

import scipy.linalg as splinalg
import scipy.sparse as spsparse

from sklearn.cluster import KMeans

from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNDataError, pyMSGNNNumericalError
from pymsgnn.sparsenetworkutils import sparse_hermitian_power_iteration
from pymsgnn.maglap import laplacian

DENSE_SOLVER_CAP = 4000


@dataclass(frozen=True)
class EigenDecomposition:
    """
    Eigenvalues in ascending order and the matching orthonormal eigenvectors as columns.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def _as_dense(m):
    if spsparse.issparse(m):
        return m.toarray().astype(np.complex128)
    return np.asarray(m, dtype=np.complex128)

def fix_phase(vectors):
    """
    Rotate each column so that its largest-magnitude component is real and positive.
    """
    vectors = np.array(vectors, dtype=np.complex128, copy=True)
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors), axis=0)
    cols = np.arange(vectors.shape[1])
    pivots = vectors[idx, cols]
    rotation = np.ones_like(pivots)
    nonzero = np.abs(pivots) > 0
    rotation[nonzero] = np.conj(pivots[nonzero]) / np.abs(pivots[nonzero])
    vectors = vectors * rotation
    vectors[idx, cols] = np.abs(vectors[idx, cols])
    return vectors

def eigh(m, cap=DENSE_SOLVER_CAP):
    """
    The full eigendecomposition of a Hermitian matrix.

    Uses the LAPACK heev driver: Householder reduction to a real tridiagonal matrix, implicit-shift QL/QR
    on the tridiagonal, and back-transformation of the eigenvectors.  The global phase of each eigenvector
    is fixed by making its largest-magnitude component real and positive.
    A matrix without imaginary parts goes to the real solver, so its eigenvectors are exactly real.

    Parameters
    ----------
    :param m : scipy.sparse matrix or numpy array
        A Hermitian matrix.

    :param cap : int, default 4000
        Largest dimension handled by the dense solver.

    Returns
    -------
    EigenDecomposition

    Raises
    -------
    pyMSGNNNumericalError
        If the dimension exceeds cap; use lambda_max for a spectral bound instead.
    """
    n = m.shape[0]
    if n > cap:
        raise pyMSGNNNumericalError("Dimension {} exceeds the dense eigensolver cap {}; use lambda_max instead.".format(n, cap))
    if n == 0:
        return EigenDecomposition(np.zeros(0), np.zeros((0, 0), dtype=np.complex128))

    dense = _as_dense(m)
    if np.any(dense.imag):
        evals, evecs = splinalg.eigh(dense, driver='ev')
    else:
        evals, evecs = splinalg.eigh(dense.real, driver='ev')

    order = np.argsort(evals, kind='stable')
    return EigenDecomposition(evals[order], fix_phase(evecs[:, order]))

def lambda_max(m, tol=1.0e-6, max_iter=10000, seed=0):
    """
    Power-iteration estimate of the largest eigenvalue of a Hermitian positive semidefinite matrix.

    The estimate is a Rayleigh quotient, so it never exceeds the true value, and it is within tol of it.

    Raises
    -------
    pyMSGNNNumericalError
        On non-convergence, with the best estimate attached.
    """
    return sparse_hermitian_power_iteration(spsparse.csr_matrix(m), max_iter=max_iter, tol=tol, seed=seed)

def rescaled_operator(m, lambda_max):
    """
    L_tilde = (2 / lambda_max) m - I, which maps the spectrum of m into [-1, 1].
    """
    if not lambda_max > 0:
        raise pyMSGNNConfigError("lambda_max must be positive, got {}".format(lambda_max))
    n = m.shape[0]
    return spsparse.csr_matrix((2.0 / lambda_max) * spsparse.csr_matrix(m, dtype=np.complex128) - spsparse.identity(n, dtype=np.complex128, format='csr'))

def cheb_apply(m, lambda_max, coeffs, x):
    """
    Apply the Chebyshev filter sum_k coeffs[k] T_k(L_tilde) to the columns of x.

    Uses the recurrence
        x_0 = x,
        x_1 = L_tilde x,
        x_k = 2 L_tilde x_{k-1} - x_{k-2},
    where L_tilde = 2 m / lambda_max - I.

    Parameters
    ----------
    :param m : scipy.sparse matrix
        Hermitian matrix.

    :param lambda_max : float
        Upper bound on the spectrum of m.

    :param coeffs : array-like
        The K+1 filter coefficients.

    :param x : numpy array
        n x F feature matrix.

    Returns
    -------
    numpy array
        complex n x F matrix.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    x = np.asarray(x, dtype=np.complex128)
    if x.shape[0] != m.shape[0]:
        raise pyMSGNNDataError("x has {} rows but the matrix has dimension {}".format(x.shape[0], m.shape[0]))
    if coeffs.shape[0] == 0:
        return np.zeros_like(x)

    ltil = rescaled_operator(m, lambda_max)

    tk_prev = x
    result = coeffs[0] * tk_prev
    if coeffs.shape[0] == 1:
        return result

    tk = ltil.dot(x)
    result = result + coeffs[1] * tk
    for k in range(2, coeffs.shape[0]):
        tk_prev, tk = tk, 2 * ltil.dot(tk) - tk_prev
        result = result + coeffs[k] * tk

    return result

def spectral_embed(m, k, order='largest', decomposition=None):
    """
    Stack the real and imaginary parts of k eigenvectors.

    Parameters
    ----------
    :param m : scipy.sparse matrix
        Hermitian matrix.

    :param k : int
        Number of eigenvectors.

    :param order : str, default 'largest'
        'largest' takes the eigenvectors of the k largest eigenvalues (largest first),
        'smallest' those of the k smallest eigenvalues (smallest first).

    :param decomposition : EigenDecomposition, optional
        A precomputed decomposition of m.

    Returns
    -------
    numpy array
        real n x 2k matrix: the real parts followed by the imaginary parts.
    """
    n = m.shape[0]
    if k < 1 or k > n:
        raise pyMSGNNConfigError("k must be in [1, {}], got {}".format(n, k))

    if decomposition is None:
        decomposition = eigh(m)

    if order == 'largest':
        selected = decomposition.eigenvectors[:, ::-1][:, :k]
    elif order == 'smallest':
        selected = decomposition.eigenvectors[:, :k]
    else:
        raise pyMSGNNConfigError("order must be 'largest' or 'smallest', got {}".format(order))

    return np.hstack([selected.real, selected.imag])

def _pad_singletons(labels, k):
    labels = labels.copy()
    for newlabel in range(labels.max() + 1, k):
        clusters, counts = np.unique(labels, return_counts=True)
        donor = clusters[np.argmax(counts)]
        labels[np.nonzero(labels == donor)[0][-1]] = newlabel
    return labels

def kmeans(points, k, seed=None, restarts=50, max_iter=300, tol=1.0e-6):
    """
    k-means clustering with k-means++ initialization, keeping the best of `restarts` runs by inertia.

    If there are fewer distinct points than k, each distinct point becomes its own cluster and the
    remaining labels are filled with singleton clusters taken from the largest clusters.

    Parameters
    ----------
    :param points : numpy array
        N x d real matrix.

    :param k : int
        Number of clusters.

    :param seed : int, optional
        Random state for the initialization.

    :param restarts : int, default 50

    :param max_iter : int, default 300

    :param tol : float, default 1e-6
        Relative tolerance on the change of the cluster centers.

    Returns
    -------
    numpy array
        The integer cluster label of each point.
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if k < 1:
        raise pyMSGNNConfigError("k must be at least 1, got {}".format(k))
    if points.shape[0] < k:
        raise pyMSGNNDataError("{} points cannot form {} clusters".format(points.shape[0], k))

    distinct, inverse = np.unique(points, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    if distinct.shape[0] < k:
        warnings.warn("Only {} distinct points for {} clusters; padding with singleton clusters.".format(distinct.shape[0], k))
        return _pad_singletons(inverse.astype(np.int64), k)

    km = KMeans(n_clusters=k, init='k-means++', n_init=restarts, max_iter=max_iter, tol=tol, random_state=seed)
    return km.fit(points).labels_.astype(np.int64)

def spectral_clustering(g, k, q=0.0, order='largest', num_eig=None, normalization='sym', seed=None, restarts=50):
    """
    Cluster nodes by k-means on the stacked real and imaginary parts of Laplacian eigenvectors.

    Parameters
    ----------
    :param g : SignedDiGraph

    :param k : int
        The number of clusters.

    :param q : float, default 0
        The charge parameter.

    :param order : str, default 'largest'
        Which end of the spectrum to take eigenvectors from.

    :param num_eig : int, optional
        The number of eigenvectors, by default k+1.

    :param normalization : str or None, default 'sym'
        Use the normalized ('sym') or unnormalized (None) magnetic signed Laplacian.

    Returns
    -------
    numpy array
        The cluster label of each node.
    """
    if num_eig is None:
        num_eig = min(k + 1, g.n)
    emb = spectral_embed(laplacian(g, q, normalization=normalization), num_eig, order=order)
    return kmeans(emb, k, seed=seed, restarts=restarts)
