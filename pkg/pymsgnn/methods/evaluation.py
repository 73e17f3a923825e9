# -*- coding: utf-8 -*-
"""
.. module:: evaluation
    :synopsis: Accuracy, adjusted rand index and run summaries

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import numpy as np
import pandas as pd

from sklearn.metrics import accuracy_score, adjusted_rand_score

from pymsgnn.utils import pyMSGNNDataError, mean_std_sem


def _check_labelings(pred, truth):
    pred, truth = np.asarray(pred), np.asarray(truth)
    if pred.shape[0] == 0:
        raise pyMSGNNDataError("Cannot evaluate an empty labeling.")
    if pred.shape != truth.shape:
        raise pyMSGNNDataError("Labelings have different lengths: {} and {}".format(pred.shape[0], truth.shape[0]))
    return pred, truth

def accuracy(pred, truth):
    """
    The fraction of exact matches.
    """
    pred, truth = _check_labelings(pred, truth)
    return float(accuracy_score(truth, pred))

def ari(pred, truth):
    """
    The Adjusted Rand Index between two labelings; it does not depend on the label names.
    """
    pred, truth = _check_labelings(pred, truth)
    return float(adjusted_rand_score(truth, pred))

def summarize_runs(values, **columns):
    """
    Summarize repeated runs of one configuration as a one-row DataFrame.

    Parameters
    ----------
    :param values : array-like
        The metric of each run.

    :param columns : dict
        Extra identifying columns (dataset, task, method, ...).

    Returns
    -------
    DataFrame
        The identifying columns plus 'mean', 'std', 'sem' and 'n_runs'.
    """
    mean, std, sem = mean_std_sem(values)
    row = dict(columns)
    row.update({'mean':mean, 'std':std, 'sem':sem, 'n_runs':len(values)})
    return pd.DataFrame([row])
