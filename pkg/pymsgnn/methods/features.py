# -*- coding: utf-8 -*-
"""
.. module:: features
    :synopsis: Degree and eigenvector input features for signed directed graphs

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd

import scipy.sparse.linalg as splinalg

from sklearn.preprocessing import StandardScaler

from pymsgnn.utils import pyMSGNNConfigError, make_rng, mean_std_sem
from pymsgnn.signednetwork import signed_subgraphs, symmetrized_adjacency, absolute_degree_vector

WEIGHTINGS = ('none', 'net-sum', 'abs-sum')

_WEIGHT_SYMBOLS = {'F':'none', 'T':'net-sum', "T'":'abs-sum'}
_TRUTH_SYMBOLS = {'T':True, 'F':False}


@dataclass(frozen=True)
class FeatureSpec:
    """
    Which degree statistics make up the input features.

    signed : bool
        False gives [in, out] over the whole graph; True gives [in+, out+, in-, out-] over the positive
        and negative subgraphs.

    weighted : str
        'none' counts edges, 'net-sum' sums the weights, 'abs-sum' sums the absolute weights.
        On the negative subgraph both sums use the absolute weights.

    directed : bool
        False replaces each (in, out) pair by the single total in + out, which halves the dimension.
    """
    signed: bool = True
    weighted: str = 'none'
    directed: bool = True

    def __post_init__(self):
        if not self.weighted in WEIGHTINGS:
            raise pyMSGNNConfigError("weighted must be one of {}, got {}".format(WEIGHTINGS, self.weighted))

    @property
    def dim(self):
        return (2 if self.signed else 1) * (2 if self.directed else 1)

    @classmethod
    def from_string(cls, s):
        """
        Parse the tuple notation "(T,F)", "T,T'" or "FT'": signed flag first, then F (none), T (net-sum) or T' (abs-sum).
        A trailing ",total" selects the direction-free totals, e.g. "(T,F,total)".
        """
        s = s.strip().lstrip('(').rstrip(')').replace(' ', '')
        directed = True
        if s.endswith(',total'):
            s, directed = s[:-len(',total')], False
        if ',' in s:
            signed, weighted = s.split(',', 1)
        else:
            signed, weighted = s[:1], s[1:]

        if not signed in _TRUTH_SYMBOLS or not weighted in _WEIGHT_SYMBOLS:
            raise pyMSGNNConfigError("Cannot parse the feature tuple {}".format(s))
        return cls(signed=_TRUTH_SYMBOLS[signed], weighted=_WEIGHT_SYMBOLS[weighted], directed=directed)

    def __str__(self):
        inverse = {v:k for k, v in _WEIGHT_SYMBOLS.items()}
        return "({},{}{})".format('T' if self.signed else 'F', inverse[self.weighted], '' if self.directed else ',total')

    def total(self):
        """
        The same statistics without the edge direction.
        """
        return FeatureSpec(signed=self.signed, weighted=self.weighted, directed=False)


def _in_out(adj, weighted, directed=True):
    if weighted == 'none':
        adj = adj.copy()
        adj.data = np.ones_like(adj.data)
    elif weighted == 'abs-sum':
        adj = abs(adj)
    # both degrees are csr row sums, so reversing the graph swaps them bit for bit
    in_degree = np.asarray(adj.T.tocsr().sum(axis=1)).flatten()
    out_degree = np.asarray(adj.sum(axis=1)).flatten()
    if not directed:
        return [in_degree + out_degree]
    return [in_degree, out_degree]

def build_features(g, spec=FeatureSpec(), standardize=True):
    """
    Degree features for every node.

    Parameters
    ----------
    :param g : SignedDiGraph
        For link tasks this is the observed graph, without the test edges.

    :param spec : FeatureSpec or str, default (T,F)
        With spec.directed False the columns are the totals [deg] or [deg+, deg-].

    :param standardize : bool, default True
        If True, each column is shifted and scaled to zero mean and unit variance.

    Returns
    -------
    numpy array
        n x spec.dim real features, columns [in, out] or [in+, out+, in-, out-].
    """
    if isinstance(spec, str):
        spec = FeatureSpec.from_string(spec)

    if spec.signed:
        positive, negative = signed_subgraphs(g)
        columns = _in_out(positive.adjacency, spec.weighted, spec.directed) + _in_out(abs(negative.adjacency), spec.weighted, spec.directed)
    else:
        columns = _in_out(g.adjacency, spec.weighted, spec.directed)

    features = np.vstack(columns).T.astype(np.float64)
    if standardize and g.n > 0:
        features = StandardScaler().fit_transform(features)
    return features

def eigenvector_features(g, k, regularize=True, seed=None):
    """
    The eigenvectors of the k largest eigenvalues of the (regularized) symmetrized adjacency.

    The regularized matrix is A_sym + (d/n) J, with d the mean absolute degree and J the all-ones matrix.
    J is never formed: the eigensolver works on a LinearOperator.

    Parameters
    ----------
    :param g : SignedDiGraph

    :param k : int
        Number of eigenvectors.

    :param regularize : bool, default True

    :param seed : int, optional
        Seed for the starting vector of the iterative solver.

    Returns
    -------
    numpy array
        n x k real matrix; each column has its largest-magnitude entry positive.
    """
    n = g.n
    if k < 1 or k > n:
        raise pyMSGNNConfigError("k must be in [1, {}], got {}".format(n, k))

    asym = symmetrized_adjacency(g)
    tau = absolute_degree_vector(g).mean() / n if regularize else 0.0

    if k >= n - 1:
        warnings.warn("k={} is too large for the iterative eigensolver on {} nodes; using the dense solver.".format(k, n))
        evals, evecs = np.linalg.eigh(asym.toarray() + tau * np.ones((n, n)))
        evecs = evecs[:, ::-1][:, :k]
    else:
        def mv(v):
            v = np.asarray(v).reshape(-1)
            return asym.dot(v) + tau * v.sum() * np.ones(n)

        operator = splinalg.LinearOperator((n, n), matvec=mv, dtype=np.float64)
        v0 = make_rng(seed).standard_normal(n)
        evals, evecs = splinalg.eigsh(operator, k=k, which='LA', v0=v0)
        evecs = evecs[:, np.argsort(evals)[::-1]]

    pivots = evecs[np.argmax(np.abs(evecs), axis=0), np.arange(k)]
    return evecs * np.where(pivots < 0, -1.0, 1.0)

def feature_sum_statistics(g):
    """
    Mean and standard error of the per-node sum of unstandardized features for the (T,F) and (T,T) tuples.

    Returns
    -------
    DataFrame
        One row with columns 'm1', 's1' (tuple (T,F)) and 'm2', 's2' (tuple (T,T)).
    """
    stats = {}
    for idx, spec in [(1, FeatureSpec(True, 'none')), (2, FeatureSpec(True, 'net-sum'))]:
        mean, std, sem = mean_std_sem(build_features(g, spec, standardize=False).sum(axis=1))
        stats['m{}'.format(idx)] = mean
        stats['s{}'.format(idx)] = sem
    return pd.DataFrame([stats])
