# -*- coding: utf-8 -*-
"""
.. module:: synthetic
    :synopsis: Signed (directed) stochastic block models and meta-graphs

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

import scipy.sparse as spsparse

from pymsgnn.utils import pyMSGNNConfigError, make_rng
from pymsgnn.signednetwork import SignedDiGraph


def _check_gamma(gamma):
    if not (0 <= gamma <= 0.5):
        raise pyMSGNNConfigError("gamma must be in [0, 0.5], got {}".format(gamma))

def meta_f1(gamma):
    """
    The 3 x 3 meta-graph with a directional flow from block 1 to block 0 that weakens as gamma grows.

    Parameters
    ----------
    :param gamma : float
        Must lie in [0, 0.5].

    Returns
    -------
    numpy array
    """
    _check_gamma(gamma)
    F = np.array([[0.5, gamma, -gamma],
                  [1 - gamma, 0.5, -0.5],
                  [-1 + gamma, -0.5, 0.5]])
    return F + 0.0

def meta_f2(gamma):
    """
    The 4 x 4 meta-graph: meta_f1 extended by a fourth block that sends negative edges to all others.
    """
    _check_gamma(gamma)
    F = np.array([[0.5, gamma, -gamma, -gamma],
                  [1 - gamma, 0.5, -0.5, -gamma],
                  [-1 + gamma, -0.5, 0.5, -gamma],
                  [-1 + gamma, -1 + gamma, -1 + gamma, 0.5]])
    return F + 0.0

def block_sizes(n, C, rho):
    """
    Block sizes proportional to rho^(t/(C-1)), t = 0..C-1.

    The real-valued shares are rounded by the largest-remainder rule, so the sizes sum to n,
    and sorted ascending, so the ratio of the largest to the smallest block is about rho.

    Parameters
    ----------
    :param n : int
        Number of nodes, at least C.

    :param C : int
        Number of blocks.

    :param rho : float
        Size ratio, at least 1.

    Returns
    -------
    numpy array
        The C block sizes.
    """
    if C < 1 or n < C:
        raise pyMSGNNConfigError("Need n >= C >= 1, got n={}, C={}".format(n, C))
    if not rho >= 1:
        raise pyMSGNNConfigError("rho must be at least 1, got {}".format(rho))
    if C == 1:
        return np.array([n], dtype=np.int64)

    weights = np.power(float(rho), np.arange(C) / (C - 1))
    shares = n * weights / weights.sum()
    sizes = np.floor(shares).astype(np.int64)

    remainder = n - sizes.sum()
    if remainder > 0:
        # largest fractional parts first, ties by block index
        order = np.lexsort((np.arange(C), -(shares - sizes)))
        sizes[order[:remainder]] += 1

    # every block needs a node
    while (sizes == 0).any():
        sizes[np.argmax(sizes)] -= 1
        sizes[np.argmin(sizes)] += 1

    return np.sort(sizes)

def assign_blocks(sizes, rng):
    """
    Assign nodes to blocks contiguously along a random permutation of the node indices.
    """
    n = int(np.sum(sizes))
    perm = rng.permutation(n)
    labels = np.empty(n, dtype=np.int64)
    start = 0
    for k, nk in enumerate(sizes):
        labels[perm[start:start + nk]] = k
        start += nk
    return labels


@dataclass
class SdsbmParams:
    """
    Parameters of the signed directed stochastic block model.

    Parameters
    ----------
    F : numpy array
        The C x C meta-graph, entries in [-1, 1].

    n : int
        Number of nodes.

    p : float
        Edge density in [0, 1].

    rho : float
        Ratio of the largest to the smallest block size, at least 1.

    eta : float
        Sign-flip probability in [0, 0.5].

    seed : int, optional
    """
    F: np.ndarray
    n: int
    p: float
    rho: float = 1.0
    eta: float = 0.0
    seed: int = None

    def __post_init__(self):
        self.F = np.asarray(self.F, dtype=np.float64)
        if self.F.ndim != 2 or self.F.shape[0] != self.F.shape[1]:
            raise pyMSGNNConfigError("The meta-graph must be a square matrix.")
        if np.abs(self.F).max() > 1:
            raise pyMSGNNConfigError("Meta-graph entries must lie in [-1, 1].")
        if not (0 <= self.p <= 1):
            raise pyMSGNNConfigError("p must be in [0, 1], got {}".format(self.p))
        if not (0 <= self.eta <= 0.5):
            raise pyMSGNNConfigError("eta must be in [0, 0.5], got {}".format(self.eta))
        if not self.rho >= 1:
            raise pyMSGNNConfigError("rho must be at least 1, got {}".format(self.rho))
        if self.n < self.F.shape[0]:
            raise pyMSGNNConfigError("n={} is smaller than the number of blocks {}".format(self.n, self.F.shape[0]))

    @property
    def C(self):
        return self.F.shape[0]


def _flip_signs(weights, eta, rng):
    flips = rng.random(weights.shape[0]) < eta
    weights = weights.copy()
    weights[flips] *= -1
    return weights

def generate_sdsbm(params):
    """
    Sample a signed directed stochastic block model.

    Each ordered pair (i, j), i != j, with i in block k and j in block l, is linked independently with
    probability p |F_kl| and weight sign(F_kl).  Afterwards each edge's sign flips with probability eta.

    Parameters
    ----------
    :param params : SdsbmParams

    Returns
    -------
    SignedDiGraph
        The graph.

    numpy array
        The block label of each node.
    """
    rng = make_rng(params.seed)
    sizes = block_sizes(params.n, params.C, params.rho)
    labels = assign_blocks(sizes, rng)

    members = [np.nonzero(labels == k)[0] for k in range(params.C)]

    rows, cols, weights = [], [], []
    for k in range(params.C):
        for l in range(params.C):
            prob = params.p * abs(params.F[k, l])
            draws = rng.random((members[k].shape[0], members[l].shape[0])) < prob
            if k == l:
                np.fill_diagonal(draws, False)
            ri, ci = np.nonzero(draws)
            rows.append(members[k][ri])
            cols.append(members[l][ci])
            weights.append(np.full(ri.shape[0], 1.0 if params.F[k, l] >= 0 else -1.0))

    rows, cols, weights = np.concatenate(rows), np.concatenate(cols), np.concatenate(weights)
    weights = _flip_signs(weights, params.eta, rng)

    adjacency = spsparse.coo_matrix((weights, (rows, cols)), shape=(params.n, params.n))
    return SignedDiGraph(adjacency), labels

def generate_ssbm(n, C, p, rho=1.0, eta=0.0, seed=None):
    """
    Sample an undirected signed stochastic block model.

    Each unordered pair is linked with probability p; intra-block edges are positive and inter-block edges
    negative before each sign flips with probability eta.  Every edge is stored in both directions.

    Returns
    -------
    SignedDiGraph
        The symmetric graph.

    numpy array
        The block label of each node.
    """
    # validates the shared ranges
    SdsbmParams(F=np.eye(C), n=n, p=p, rho=rho, eta=eta, seed=seed)

    rng = make_rng(seed)
    labels = assign_blocks(block_sizes(n, C, rho), rng)

    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    iu, ju = iu[keep], ju[keep]

    weights = np.where(labels[iu] == labels[ju], 1.0, -1.0)
    weights = _flip_signs(weights, eta, rng)

    adjacency = spsparse.coo_matrix((np.concatenate([weights, weights]), (np.concatenate([iu, ju]), np.concatenate([ju, iu]))),
        shape=(n, n))
    return SignedDiGraph(adjacency), labels

def random_signed_digraph(n, density=0.2, seed=None, negative_frac=0.5, weighted=True, max_weight=3.0, self_loops=False):
    """
    A random signed directed graph: every ordered pair is an edge with probability `density`.

    Parameters
    ----------
    :param n : int

    :param density : float, default 0.2

    :param seed : int, optional

    :param negative_frac : float, default 0.5
        Probability that an edge is negative.

    :param weighted : bool, default True
        If True, magnitudes are uniform in [0.1, max_weight]; otherwise all magnitudes are 1.

    :param max_weight : float, default 3.0

    :param self_loops : bool, default False

    Returns
    -------
    SignedDiGraph
    """
    rng = make_rng(seed)
    draws = rng.random((n, n)) < density
    if not self_loops:
        np.fill_diagonal(draws, False)
    rows, cols = np.nonzero(draws)

    if weighted:
        magnitudes = rng.uniform(0.1, max_weight, size=rows.shape[0])
    else:
        magnitudes = np.ones(rows.shape[0])
    signs = np.where(rng.random(rows.shape[0]) < negative_frac, -1.0, 1.0)

    return SignedDiGraph(spsparse.coo_matrix((signs * magnitudes, (rows, cols)), shape=(n, n)))

def labels2dataframe(labels):
    return pd.DataFrame({'node':np.arange(labels.shape[0]), 'label':labels})
