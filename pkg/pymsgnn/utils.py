# -*- coding: utf-8 -*-
"""
.. module:: utils
    :synopsis: utils for basic functions

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import numpy as np
import pandas as pd


class pyMSGNNError(Exception):
    """
    Base Class for pymsgnn errors.
    """
    def __init__(self, msg=None):
        self.msg = msg
        super().__init__(msg)

    def __str__(self):
        if self.msg is None:
            return 'pymsgnn error.'
        else:
            return self.msg

class pyMSGNNConfigError(pyMSGNNError, ValueError):
    """
    Invalid parameters: out of range values, unknown task kinds or modes.
    """

class pyMSGNNDataError(pyMSGNNError, ValueError):
    """
    Invalid or insufficient data: malformed graphs, files, or splits.
    """

class pyMSGNNNumericalError(pyMSGNNError, ArithmeticError):
    """
    A numerical routine failed.  If the routine produced a partial answer, it is kept in `best_estimate`.
    """
    def __init__(self, msg=None, best_estimate=None):
        super().__init__(msg)
        self.best_estimate = best_estimate


def make_rng(seed=None):
    """
    Return a numpy random Generator.

    Parameters
    ----------
    seed : None, int, or numpy.random.Generator
        If a Generator is passed, it is returned unchanged.

    Returns
    ----------
    numpy.random.Generator
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)

def check4columns(df, column_list):
    for col in column_list:
        if not col in list(df):
            raise pyMSGNNDataError("{} not in dataframe".format(col))

def isin_sorted(values2check, masterlist):
    """
    Check if the values2check are in the sorted masterlist.

    Parameters
    ----------
    values2check: numpy array
        The values to check.

    masterlist: numpy array
        The sorted list of master values.

    Returns
    ----------
    Numpy Array
        True if the value is in the masterlist.
    """
    values2check = np.asarray(values2check)
    if masterlist.shape[0] == 0:
        return np.zeros(values2check.shape, dtype=bool)
    index = np.searchsorted(masterlist, values2check, side = 'left')
    index[index >= masterlist.shape[0]] = masterlist.shape[0] - 1
    return values2check == masterlist[index]

def pair_codes(rows, cols, n):
    """
    Encode ordered node pairs (i, j) as the single integer i*n + j.
    """
    return np.asarray(rows, dtype=np.int64) * np.int64(n) + np.asarray(cols, dtype=np.int64)

def value_to_int(a, sort_values='value', return_map=True):
    """
    Map the values of an array to dense integers 0..k-1.

    Parameters
    ----------
    a : numpy array or list
        array of values

    sort_values : str, default 'value'
        'none' : keep the order of first appearance
        'value' : sort the items based on their value (numerically if all items are numbers, otherwise as strings)

    return_map: bool, default True
        Also return the value -> int dictionary.
    """
    if sort_values == 'none':
        unique_values = pd.unique(np.asarray(a, dtype=object))

    elif sort_values == 'value':
        unique_values = pd.unique(np.asarray(a, dtype=object))
        if all(isinstance(v, (int, np.integer)) for v in unique_values):
            unique_values = np.sort(unique_values.astype(np.int64))
        else:
            unique_values = np.sort(unique_values.astype(str))

    else:
        raise ValueError("sort_values must be 'none' or 'value'")

    value_to_int_dict = {v:i for i,v in enumerate(unique_values.tolist())}

    if sort_values == 'value' and unique_values.dtype.kind in 'US':
        mapped = [value_to_int_dict[str(v)] for v in a]
    else:
        mapped = [value_to_int_dict[v] for v in a]

    if return_map:
        return np.array(mapped, dtype=np.int64), value_to_int_dict
    else:
        return np.array(mapped, dtype=np.int64)

def mean_std_sem(values):
    """
    Mean, sample standard deviation and standard error of the mean.

    Returns
    ----------
    tuple of floats
        (mean, std, sem); std and sem are 0 for a single value.
    """
    values = np.asarray(values, dtype=float)
    if values.shape[0] == 0:
        return np.nan, np.nan, np.nan
    mean = values.mean()
    if values.shape[0] < 2:
        return mean, 0.0, 0.0
    std = values.std(ddof=1)
    return mean, std, std / np.sqrt(values.shape[0])
