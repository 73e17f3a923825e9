# -*- coding: utf-8 -*-
"""
.. module:: signednetwork
    :synopsis: The main SignedDiGraph class and the derived real matrices

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import numpy as np
import pandas as pd

import scipy.sparse as spsparse

from pymsgnn.utils import pyMSGNNDataError, isin_sorted, pair_codes
from pymsgnn.sparsenetworkutils import canonical_csr, dataframe2adjacency, largest_connected_component_vertices


class SignedDiGraph(object):
    """
    A signed, weighted, directed graph on the nodes 0..n-1.

    The adjacency is stored as a csr matrix with sorted indices: entry (i, j) holds the weight of the
    edge i -> j.  There is at most one edge per ordered pair, self-loops are allowed, and every stored
    weight is a finite nonzero real.  The graph is immutable after construction.

    Parameters
    ----------
    :param adjacency : scipy.sparse matrix or numpy array
        The n x n adjacency matrix.

    :param node_ids : array-like, optional
        The external identifier of each node.

    """

    def __init__(self, adjacency, node_ids=None):

        adjacency = canonical_csr(adjacency)
        if adjacency.shape[0] != adjacency.shape[1]:
            raise pyMSGNNDataError("The adjacency matrix must be square, got {}".format(adjacency.shape))

        if not np.all(np.isfinite(adjacency.data)):
            raise pyMSGNNDataError("Edge weights must be finite.")

        adjacency.data.flags.writeable = False
        adjacency.indices.flags.writeable = False
        adjacency.indptr.flags.writeable = False
        self._adjacency = adjacency

        if node_ids is not None:
            node_ids = np.asarray(node_ids)
            if node_ids.shape[0] != adjacency.shape[0]:
                raise pyMSGNNDataError("Got {} node ids for {} nodes".format(node_ids.shape[0], adjacency.shape[0]))
        self._node_ids = node_ids

    @property
    def n(self):
        return self._adjacency.shape[0]

    @property
    def adjacency(self):
        """The csr adjacency matrix (read-only)."""
        return self._adjacency

    @property
    def node_ids(self):
        return self._node_ids

    def number_of_edges(self):
        return self._adjacency.nnz

    def edges(self):
        """
        The edge list as a DataFrame with columns 'src', 'dst', 'weight', sorted by (src, dst).
        """
        coo = self._adjacency.tocoo()
        return pd.DataFrame({'src':coo.row.astype(np.int64), 'dst':coo.col.astype(np.int64), 'weight':coo.data})

    def to_dense(self):
        return self._adjacency.toarray()

    def has_edges(self, rows, cols):
        """
        Vectorized membership test for the ordered pairs (rows[k], cols[k]).
        """
        coo = self._adjacency.tocoo()
        edge_codes = np.sort(pair_codes(coo.row, coo.col, self.n))
        return isin_sorted(pair_codes(rows, cols, self.n), edge_codes)

    def is_symmetric(self):
        diff = self._adjacency - self._adjacency.T
        return abs(diff).max() == 0 if self.n > 0 else True

    def reverse(self):
        """
        The graph with every edge reversed, i.e. adjacency A^T.
        """
        return SignedDiGraph(self._adjacency.T, node_ids=self._node_ids)

    def unweighted(self):
        """
        The sign pattern of the graph: every weight replaced by +1 or -1.
        """
        signs = self._adjacency.copy()
        signs.data = np.sign(signs.data)
        return SignedDiGraph(signs, node_ids=self._node_ids)

    def remove_edges(self, rows, cols):
        """
        A copy of the graph with the ordered pairs (rows[k], cols[k]) removed.

        Pairs that are not edges are ignored.
        """
        coo = self._adjacency.tocoo()
        keep = ~isin_sorted(pair_codes(coo.row, coo.col, self.n), np.sort(pair_codes(rows, cols, self.n)))
        adjacency = spsparse.coo_matrix((coo.data[keep], (coo.row[keep], coo.col[keep])), shape=coo.shape)
        return SignedDiGraph(adjacency, node_ids=self._node_ids)

    def subgraph(self, nodes):
        """
        The subgraph induced by `nodes`, relabeled to 0..len(nodes)-1 in the given order.
        """
        nodes = np.asarray(nodes, dtype=np.int64)
        node_ids = nodes if self._node_ids is None else self._node_ids[nodes]
        return SignedDiGraph(self._adjacency[nodes][:, nodes], node_ids=node_ids)

    def largest_connected_component(self):
        """
        The subgraph induced by the largest weakly connected component.
        """
        return self.subgraph(largest_connected_component_vertices(self._adjacency))

    def __repr__(self):
        return "SignedDiGraph(n={}, edges={}, positive={}, negative={})".format(self.n, self.number_of_edges(),
            int((self._adjacency.data > 0).sum()), int((self._adjacency.data < 0).sum()))


def from_edge_list(rows, n=None, node_ids=None):
    """
    Build a SignedDiGraph from a list of (src, dst, weight) triples.

    Parameters
    ----------
    :param rows : list of tuples, numpy array, or DataFrame
        The edges as (src, dst, weight).  A DataFrame must have the columns 'src', 'dst', 'weight'.

    :param n : int, optional
        The number of nodes.  Defaults to one more than the largest index.

    :param node_ids : array-like, optional
        The external identifier of each node.

    Returns
    -------
    SignedDiGraph

    Raises
    -------
    pyMSGNNDataError
        For a duplicated ordered pair, a zero or non-finite weight, or an out of range index.

    """
    if isinstance(rows, pd.DataFrame):
        edgelist = rows[['src', 'dst', 'weight']].copy()
    else:
        edgelist = pd.DataFrame(list(rows) if not isinstance(rows, np.ndarray) else rows, columns=['src', 'dst', 'weight'])

    if edgelist.shape[0] > 0:
        for col in ['src', 'dst']:
            idx = edgelist[col].values.astype(np.float64)
            if not np.all(np.isfinite(idx)) or not np.all(idx == np.floor(idx)):
                raise pyMSGNNDataError("Node indices must be integers.")
            if (idx < 0).any():
                raise pyMSGNNDataError("Node indices must be nonnegative.")
            edgelist[col] = idx.astype(np.int64)

        weights = edgelist['weight'].values.astype(np.float64)
        if not np.all(np.isfinite(weights)):
            raise pyMSGNNDataError("Edge weights must be finite.")
        if (weights == 0).any():
            bad = edgelist.loc[weights == 0].iloc[0]
            raise pyMSGNNDataError("Zero weight on edge ({}, {}).".format(bad['src'], bad['dst']))

        dups = edgelist.duplicated(subset=['src', 'dst'])
        if dups.any():
            bad = edgelist.loc[dups].iloc[0]
            raise pyMSGNNDataError("Duplicate ordered pair ({}, {}).".format(bad['src'], bad['dst']))

        min_n = int(max(edgelist['src'].max(), edgelist['dst'].max())) + 1
    else:
        min_n = 0

    if n is None:
        n = min_n
    elif n < min_n:
        raise pyMSGNNDataError("n={} is too small for node index {}.".format(n, min_n - 1))

    return SignedDiGraph(dataframe2adjacency(edgelist, 'src', 'dst', 'weight', n=n), node_ids=node_ids)

def symmetrized_adjacency(g):
    """
    The symmetrized adjacency matrix A_sym = (A + A^T) / 2.

    Entries that cancel exactly are dropped from the sparse support.

    Returns
    -------
    csr_matrix
        Real symmetric matrix.
    """
    a = g.adjacency
    return canonical_csr(0.5 * (a + a.T))

def absolute_degree_vector(g):
    """
    The absolute degrees d_i = (sum_j |A_ij| + |A_ji|) / 2.
    """
    absa = abs(g.adjacency)
    return 0.5 * (np.asarray(absa.sum(axis=1)).flatten() + np.asarray(absa.sum(axis=0)).flatten())

def absolute_degree(g):
    """
    The diagonal absolute degree matrix.

    Positive and negative edges never cancel: a node with one +1 in-edge and one -1 out-edge has degree 1.

    Returns
    -------
    csr_matrix
        Real diagonal matrix.
    """
    return spsparse.diags(absolute_degree_vector(g), format='csr')

def signed_subgraphs(g):
    """
    Split the graph into its positive and negative edges.

    Returns
    -------
    (SignedDiGraph, SignedDiGraph)
        The positive subgraph and the negative subgraph, both on all n nodes.
    """
    a = g.adjacency
    return SignedDiGraph(a.multiply(a > 0), node_ids=g.node_ids), SignedDiGraph(a.multiply(a < 0), node_ids=g.node_ids)
