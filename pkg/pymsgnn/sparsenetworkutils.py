# -*- coding: utf-8 -*-
"""
.. module:: sparsenetworkutils
    :synopsis: Sparse matrix helpers for signed directed networks

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import numpy as np
import pandas as pd

import scipy.sparse as spsparse
from scipy.sparse import csgraph

from pymsgnn.utils import pyMSGNNDataError, pyMSGNNNumericalError, make_rng


def canonical_csr(mat, dtype=np.float64):
    """
    Return a copy of mat as a csr matrix with sorted indices and no stored zeros.
    """
    mat = spsparse.csr_matrix(mat, dtype=dtype, copy=True)
    mat.sum_duplicates()
    mat.eliminate_zeros()
    mat.sort_indices()
    return mat

def largest_connected_component_vertices(adj_mat):
    """
    The vertices of the largest weakly connected component.  Edge signs are ignored.
    """
    if adj_mat.shape[0] == 0:
        return np.array([], dtype=int)
    n_components, labels = csgraph.connected_components(abs(spsparse.csr_matrix(adj_mat)), directed=True, connection='weak')
    comidx, compsizes = np.unique(labels, return_counts=True)

    return np.arange(adj_mat.shape[0])[labels==comidx[np.argmax(compsizes)]]

def dataframe2adjacency(df, rowname, colname, weightname=None, n=None):
    """
    Build a sparse adjacency matrix from an edge list DataFrame.

    Duplicated (row, col) pairs are not summed; the caller must check for them first.

    Parameters
    ----------
    :param df : DataFrame
        The edge list.

    :param rowname : str
        Column holding the source node index.

    :param colname : str
        Column holding the target node index.

    :param weightname : str, optional
        Column holding the weights.  If None, all weights are 1.

    :param n : int, optional
        The number of nodes.  Defaults to one more than the largest index.

    Returns
    -------
    csr_matrix
    """
    if n is None:
        n = int(max(df[rowname].max(), df[colname].max()) + 1) if df.shape[0] > 0 else 0

    if weightname is None:
        weights = np.ones(df.shape[0], dtype=np.float64)
    else:
        weights = df[weightname].values.astype(np.float64)

    adj_mat = spsparse.coo_matrix((weights, (df[rowname].values.astype(np.int64), df[colname].values.astype(np.int64))),
        shape=(n, n), dtype=np.float64)

    return canonical_csr(adj_mat)

def sparse2dataframe(mat, rowname='i', colname='j', valuename='weight', upper_only=False):
    """
    Flatten the stored entries of a sparse matrix into a DataFrame sorted by (row, col).

    Complex matrices are written with separate real and imaginary columns 're' and 'im'.
    """
    mat = spsparse.coo_matrix(mat)
    if upper_only:
        keep = mat.row <= mat.col
        mat = spsparse.coo_matrix((mat.data[keep], (mat.row[keep], mat.col[keep])), shape=mat.shape)

    df = pd.DataFrame({rowname:mat.row.astype(np.int64), colname:mat.col.astype(np.int64)})
    if np.iscomplexobj(mat.data):
        df['re'] = mat.data.real
        df['im'] = mat.data.imag
    else:
        df[valuename] = mat.data

    return df.sort_values(by=[rowname, colname]).reset_index(drop=True)

def gershgorin_upper_bound(mat):
    """
    An upper bound on the largest eigenvalue from the Gershgorin discs: max_i (Re m_ii + sum_{j!=i} |m_ij|).
    """
    mat = spsparse.csr_matrix(mat)
    if mat.shape[0] == 0:
        return 0.0
    diag = mat.diagonal().real
    offdiag = np.asarray(abs(mat).sum(axis=1)).flatten() - np.abs(mat.diagonal())
    return float(np.max(diag + offdiag))

def sparse_hermitian_power_iteration(mat, max_iter=10000, tol=1.0e-6, initialization=None, seed=None):
    """
    Largest eigenvalue of a positive semidefinite Hermitian matrix by the power method.

    The iteration stops once the residual ||m x - r x||_2 of the Rayleigh quotient r falls below tol.
    For Hermitian m there is then an eigenvalue within tol of r, and since r never exceeds the largest
    eigenvalue the returned value is within tol of it.

    Parameters
    ----------
    :param mat : scipy.sparse matrix
        Hermitian positive semidefinite matrix.

    :param max_iter : int, default 10000
        Iteration cap.

    :param tol : float, default 1e-6
        Residual tolerance.

    :param initialization : numpy array, optional
        Starting vector, by default a seeded random complex vector.

    :param seed : int, optional
        Seed for the random starting vector.

    Returns
    -------
    float
        The largest eigenvalue.

    Raises
    -------
    pyMSGNNNumericalError
        If the iteration cap is reached; the Rayleigh quotient so far is attached as best_estimate.
    """
    mat = spsparse.csr_matrix(mat)

    N, _ = mat.shape
    if mat.shape != (N, N):
        raise pyMSGNNDataError("power iteration needs a square matrix, got {}".format(mat.shape))

    if N == 0 or mat.nnz == 0:
        return 0.0

    if initialization is None:
        rng = make_rng(seed)
        x = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    else:
        x = np.asarray(initialization, dtype=np.complex128)

    x = x / np.linalg.norm(x)
    rayleigh = 0.0
    for _ in range(max_iter):
        y = mat.dot(x)
        rayleigh = float(np.vdot(x, y).real)
        err = np.linalg.norm(y - rayleigh * x)
        if err <= tol:
            return rayleigh

        x = y / np.linalg.norm(y)

    raise pyMSGNNNumericalError('power iteration failed to converge in %d iterations.' % max_iter, best_estimate=rayleigh)
