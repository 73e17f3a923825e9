# -*- coding: utf-8 -*-
"""
.. module:: maglap
    :synopsis: The magnetic signed Laplacian and the Hermitian adjacency matrix

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import numpy as np

import scipy.sparse as spsparse

from pymsgnn.utils import pyMSGNNNumericalError, pyMSGNNConfigError
from pymsgnn.signednetwork import symmetrized_adjacency, absolute_degree_vector
from pymsgnn.sparsenetworkutils import canonical_csr


def _check_charge(q):
    if not np.isfinite(q):
        raise pyMSGNNConfigError("The charge parameter q must be finite, got {}".format(q))

def q_max(g):
    """
    The charge parameter q0 = 1 / (2 max_ij (A_ij - A_ji)).

    With q = q0 the largest asymmetry in the graph is mapped to the phase pi.

    Parameters
    ----------
    :param g : SignedDiGraph

    Returns
    -------
    float

    Raises
    -------
    pyMSGNNNumericalError
        If the graph is symmetric and so carries no directional information; use q=0.
    """
    diff = g.adjacency - g.adjacency.T
    max_diff = diff.max() if g.n > 0 else 0.0
    if not max_diff > 0:
        raise pyMSGNNNumericalError("The graph has no directional information (A is symmetric); use q=0.")
    return 1.0 / (2.0 * max_diff)

def _mirror_upper(rows, cols, values, n):
    """
    Build an exactly Hermitian csr matrix from its upper triangle (row <= col).
    """
    diag = rows == cols
    values = values.astype(np.complex128)
    values[diag] = values[diag].real

    lower = ~diag
    all_rows = np.concatenate([rows, cols[lower]])
    all_cols = np.concatenate([cols, rows[lower]])
    all_values = np.concatenate([values, np.conj(values[lower])])

    return canonical_csr(spsparse.coo_matrix((all_values, (all_rows, all_cols)), shape=(n, n)), dtype=np.complex128)

def phase_matrix(g, q):
    """
    The phases Theta_ij = 2 pi q (A_ij - A_ji), reduced modulo 2 pi, on the support of the symmetrized adjacency.

    Returns
    -------
    csr_matrix
        Real matrix; phases that reduce to exactly 0 are not stored.
    """
    _check_charge(q)
    asym = symmetrized_adjacency(g).tocoo()
    rows, cols, theta = _phases_on_support(g, asym, q)
    return canonical_csr(spsparse.coo_matrix((theta, (rows, cols)), shape=asym.shape))

def _phases_on_support(g, asym, q):
    diff = (g.adjacency - g.adjacency.T).tocsr()
    rows, cols = asym.row, asym.col
    if rows.shape[0] == 0:
        return rows, cols, np.zeros(0)
    direction = np.asarray(diff[rows, cols]).flatten()
    theta = np.mod(2.0 * np.pi * q * direction, 2.0 * np.pi)
    return rows, cols, theta

def hermitian_adjacency(g, q):
    """
    The Hermitian adjacency matrix H = A_sym * exp(i Theta), taken elementwise.

    Only the upper triangle and the diagonal are computed; the lower triangle is their complex conjugate,
    so the result is exactly Hermitian.  With q=0 the result equals the symmetrized adjacency.

    Parameters
    ----------
    :param g : SignedDiGraph

    :param q : float
        The charge parameter.

    Returns
    -------
    csr_matrix
        complex128 Hermitian matrix.
    """
    _check_charge(q)
    asym = symmetrized_adjacency(g).tocoo()
    upper = asym.row <= asym.col
    asym = spsparse.coo_matrix((asym.data[upper], (asym.row[upper], asym.col[upper])), shape=asym.shape)

    rows, cols, theta = _phases_on_support(g, asym, q)
    values = asym.data * np.exp(1j * theta)
    if q == 0:
        values = asym.data.astype(np.complex128)

    return _mirror_upper(rows, cols, values, g.n)

def laplacian_unnormalized(g, q):
    """
    The unnormalized magnetic signed Laplacian L_U = D - H.

    D is the absolute degree matrix, so L_U is positive semidefinite.

    Returns
    -------
    csr_matrix
        complex128 Hermitian matrix.
    """
    h = hermitian_adjacency(g, q).tocoo()
    deg = absolute_degree_vector(g)

    upper = h.row <= h.col
    rows = np.concatenate([h.row[upper], np.arange(g.n)])
    cols = np.concatenate([h.col[upper], np.arange(g.n)])
    values = np.concatenate([-h.data[upper], deg.astype(np.complex128)])

    # coo sums the diagonal contributions of self-loops with the degrees
    lu = spsparse.coo_matrix((values, (rows, cols)), shape=(g.n, g.n))
    lu = canonical_csr(lu, dtype=np.complex128).tocoo()
    upper = lu.row <= lu.col
    return _mirror_upper(lu.row[upper], lu.col[upper], lu.data[upper], g.n)

def laplacian_normalized(g, q):
    """
    The normalized magnetic signed Laplacian L_N = I - D^(-1/2) H D^(-1/2).

    Its eigenvalues lie in [0, 2].  An isolated node (absolute degree 0) gets an identity row and column.

    Returns
    -------
    csr_matrix
        complex128 Hermitian matrix.
    """
    h = hermitian_adjacency(g, q).tocoo()
    deg = absolute_degree_vector(g)

    inv_sqrt = np.zeros(g.n)
    inv_sqrt[deg > 0] = 1.0 / np.sqrt(deg[deg > 0])

    upper = h.row <= h.col
    scaled = inv_sqrt[h.row[upper]] * h.data[upper] * inv_sqrt[h.col[upper]]
    rows = np.concatenate([h.row[upper], np.arange(g.n)])
    cols = np.concatenate([h.col[upper], np.arange(g.n)])
    values = np.concatenate([-scaled, np.ones(g.n, dtype=np.complex128)])

    ln = canonical_csr(spsparse.coo_matrix((values, (rows, cols)), shape=(g.n, g.n)), dtype=np.complex128).tocoo()
    upper = ln.row <= ln.col
    return _mirror_upper(ln.row[upper], ln.col[upper], ln.data[upper], g.n)

def laplacian(g, q, normalization='sym'):
    """
    Dispatch to the normalized ('sym') or unnormalized (None) magnetic signed Laplacian.
    """
    if normalization == 'sym':
        return laplacian_normalized(g, q)
    elif normalization is None or normalization == 'none':
        return laplacian_unnormalized(g, q)
    else:
        raise pyMSGNNConfigError("normalization must be 'sym' or None, got {}".format(normalization))

def is_hermitian(m, atol=0):
    """
    Check conjugate symmetry: entry (i,j) is stored iff (j,i) is, with conjugate values, and the diagonal is real.

    With atol=0 the check is exact.
    """
    m = canonical_csr(m, dtype=np.complex128)
    if m.shape[0] != m.shape[1]:
        return False
    mh = canonical_csr(m.conj().T, dtype=np.complex128)
    if not (np.array_equal(m.indptr, mh.indptr) and np.array_equal(m.indices, mh.indices)):
        return False
    if atol == 0:
        return bool(np.array_equal(m.data, mh.data))
    return bool(np.all(np.abs(m.data - mh.data) <= atol))
