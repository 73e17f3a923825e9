# -*- coding: utf-8 -*-
"""
.. module:: nodesplit
    :synopsis: Stratified node splits for semi-supervised clustering

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
from dataclasses import dataclass

import numpy as np
import pandas as pd

from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNDataError, make_rng


@dataclass
class NodeSplit:
    """
    Disjoint train, validation and test nodes; seed_nodes is the subset of train whose labels are known.
    """
    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray
    seed_nodes: np.ndarray

    def to_frame(self):
        """
        One row per node with columns 'node', 'partition' and 'is_seed'.
        """
        frames = [pd.DataFrame({'node':nodes, 'partition':partition}) for partition, nodes in
            [('train', self.train), ('validation', self.validation), ('test', self.test)]]
        df = pd.concat(frames, ignore_index=True)
        df['is_seed'] = np.isin(df['node'].values, self.seed_nodes)
        return df.sort_values(by='node').reset_index(drop=True)


def split_nodes(labels, test_frac=0.1, val_frac=0.1, seed_frac=0.1, seed=None, min_cluster_size=10):
    """
    Split the nodes of every cluster into test, validation and train sets, and mark seed nodes in train.

    Parameters
    ----------
    :param labels : numpy array
        The cluster of each node.

    :param test_frac : float, default 0.1

    :param val_frac : float, default 0.1

    :param seed_frac : float, default 0.1
        Fraction of each cluster's training nodes that are seed nodes (at least one).

    :param seed : int, optional

    :param min_cluster_size : int, default 10

    Returns
    -------
    NodeSplit

    Raises
    -------
    pyMSGNNDataError
        If a cluster has fewer than min_cluster_size nodes.
    """
    if test_frac < 0 or val_frac < 0 or test_frac + val_frac >= 1 or not (0 < seed_frac <= 1):
        raise pyMSGNNConfigError("Invalid split fractions.")

    labels = np.asarray(labels)
    rng = make_rng(seed)

    parts = {'train':[], 'validation':[], 'test':[], 'seed_nodes':[]}
    clusters, sizes = np.unique(labels, return_counts=True)
    for c, size in zip(clusters, sizes):
        if size < min_cluster_size:
            raise pyMSGNNDataError("Cluster {} has {} nodes; at least {} are needed.".format(c, size, min_cluster_size))

        members = rng.permutation(np.nonzero(labels == c)[0])
        n_test = int(round(test_frac * size))
        n_val = int(round(val_frac * size))
        train = members[n_test + n_val:]

        parts['test'].append(members[:n_test])
        parts['validation'].append(members[n_test:n_test + n_val])
        parts['train'].append(train)
        parts['seed_nodes'].append(train[:max(1, int(round(seed_frac * train.shape[0])))])

    return NodeSplit(**{name:np.sort(np.concatenate(nodes)).astype(np.int64) for name, nodes in parts.items()})
