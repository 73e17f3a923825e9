# -*- coding: utf-8 -*-
"""
.. module:: fill
    :synopsis: Signed directed lead-lag networks from daily stock returns

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import os
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd

import scipy.sparse as spsparse

from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNDataError, make_rng
from pymsgnn.signednetwork import SignedDiGraph


@dataclass
class ReturnPanel:
    """
    Daily returns of S stocks over T days.

    returns : numpy array
        S x T matrix, no missing values.

    stock_ids : numpy array
        The identifier of each stock.

    dates : numpy array, optional
    """
    returns: np.ndarray
    stock_ids: np.ndarray = None
    dates: np.ndarray = None

    def __post_init__(self):
        self.returns = np.atleast_2d(np.asarray(self.returns, dtype=np.float64))
        if self.returns.shape[1] < 3:
            raise pyMSGNNDataError("A return panel needs at least 3 days, got {}".format(self.returns.shape[1]))
        if not np.all(np.isfinite(self.returns)):
            raise pyMSGNNDataError("The return panel has missing or non-finite values; impute or drop them first.")
        if self.stock_ids is None:
            self.stock_ids = np.arange(self.returns.shape[0])
        self.stock_ids = np.asarray(self.stock_ids)

    @property
    def num_stocks(self):
        return self.returns.shape[0]

    @property
    def num_days(self):
        return self.returns.shape[1]


def read_returns(path):
    """
    Read a return panel from CSV: the first column holds dates, every other column one stock's returns.
    """
    if not os.path.exists(path):
        raise FileNotFoundError("Return file {} does not exist.".format(path))
    df = pd.read_csv(path)
    if df.shape[1] < 2:
        raise pyMSGNNDataError("{} needs a date column and at least one stock column".format(path))
    returns = df.iloc[:, 1:].apply(pd.to_numeric, errors='coerce').values.T
    return ReturnPanel(returns, stock_ids=np.array(df.columns[1:]), dates=df.iloc[:, 0].values)

def write_returns(panel, path):
    dates = panel.dates if panel.dates is not None else np.arange(panel.num_days)
    df = pd.DataFrame(panel.returns.T, columns=[str(s) for s in panel.stock_ids])
    df.insert(0, 'date', dates)
    df.to_csv(path, index=False)

def lead_lag_matrix(panel, orientation='lead'):
    """
    The matrix of lag-one OLS slopes between every pair of stocks.

    With orientation 'lead', A_ij is the slope (with intercept) of regressing r_j(t) on r_i(t-1) for
    t = 2..T, so A_ij > 0 means stock i leads stock j with the same sign.  With orientation 'literal',
    A_ij regresses r_i(t) on r_j(t-1), i.e. the transpose.  The diagonal is 0.

    Parameters
    ----------
    :param panel : ReturnPanel

    :param orientation : str, default 'lead'

    Returns
    -------
    numpy array
        dense S x S matrix.
    """
    if not orientation in ('lead', 'literal'):
        raise pyMSGNNConfigError("orientation must be 'lead' or 'literal', got {}".format(orientation))

    lagged = panel.returns[:, :-1]
    today = panel.returns[:, 1:]
    lagged = lagged - lagged.mean(axis=1, keepdims=True)
    today = today - today.mean(axis=1, keepdims=True)

    variance = (lagged**2).sum(axis=1)
    zero_var = variance == 0
    if zero_var.any():
        warnings.warn("{} stock(s) have a constant lagged return series; their slopes are set to 0.".format(zero_var.sum()))

    beta = np.zeros((panel.num_stocks, panel.num_stocks))
    beta[~zero_var] = (lagged[~zero_var] @ today.T) / variance[~zero_var, None]

    if orientation == 'literal':
        beta = beta.T.copy()
    np.fill_diagonal(beta, 0.0)
    return beta

def sparsify_top(m, frac=0.2, node_ids=None):
    """
    Keep the ceil(frac (S^2 - S)) off-diagonal entries of largest magnitude as signed directed edges.

    Ties are broken by (|value| descending, i ascending, j ascending).  Selected entries that are exactly
    zero cannot be edges and are dropped.

    Parameters
    ----------
    :param m : numpy array
        Dense S x S matrix.

    :param frac : float, default 0.2
        Must lie in (0, 1].

    :param node_ids : array-like, optional

    Returns
    -------
    SignedDiGraph
    """
    if not (0 < frac <= 1):
        raise pyMSGNNConfigError("frac must be in (0, 1], got {}".format(frac))
    m = np.asarray(m, dtype=np.float64)
    S = m.shape[0]

    rows, cols = np.nonzero(~np.eye(S, dtype=bool))
    values = m[rows, cols]

    # guard against frac * count landing a hair above an integer
    keep = int(np.ceil(frac * (S * S - S) - 1e-9))
    order = np.lexsort((cols, rows, -np.abs(values)))[:keep]

    rows, cols, values = rows[order], cols[order], values[order]
    nonzero = values != 0
    adjacency = spsparse.coo_matrix((values[nonzero], (rows[nonzero], cols[nonzero])), shape=(S, S))
    return SignedDiGraph(adjacency, node_ids=node_ids)

def fill_network(panel, frac=0.2, orientation='lead'):
    """
    The sparsified lead-lag network of a return panel.
    """
    return sparsify_top(lead_lag_matrix(panel, orientation=orientation), frac=frac, node_ids=panel.stock_ids)

def simulate_lead_lag_panel(num_stocks=20, num_days=245, num_leaders=5, strength=0.5, noise=1.0, seed=None):
    """
    Simulate returns in which every follower responds to the previous day's return of one leader.

    Follower k follows leader k mod num_leaders with a response of +strength or -strength (alternating).

    Returns
    -------
    ReturnPanel
    """
    if not (1 <= num_leaders < num_stocks):
        raise pyMSGNNConfigError("Need 1 <= num_leaders < num_stocks.")
    rng = make_rng(seed)
    returns = noise * rng.standard_normal((num_stocks, num_days))
    for k, follower in enumerate(range(num_leaders, num_stocks)):
        leader = k % num_leaders
        sign = 1.0 if k % 2 == 0 else -1.0
        returns[follower, 1:] += sign * strength * returns[leader, :-1]
    return ReturnPanel(returns, stock_ids=np.array(['S{:03d}'.format(s) for s in range(num_stocks)]))
