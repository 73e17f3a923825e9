# -*- coding: utf-8 -*-
"""
.. module:: linksplit
    :synopsis: Train/test splits for the link sign, direction and existence tasks

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd

from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNDataError, make_rng, isin_sorted, pair_codes, check4columns

# number of classes for each link task
LINK_TASKS = {'SP':2, 'DP':2, '3C':3, '4C':4, '5C':5}

# class names in label order
LINK_CLASS_NAMES = {
    'SP':['(i,j)+', '(i,j)-'],
    'DP':['(i,j)', '(j,i)'],
    '3C':['(i,j)', '(j,i)', 'none'],
    '4C':['(i,j)+', '(i,j)-', '(j,i)+', '(j,i)-'],
    '5C':['(i,j)+', '(i,j)-', '(j,i)+', '(j,i)-', 'none'],
}


@dataclass
class LinkSplit:
    """
    One train/test instance of a link task.

    observed : SignedDiGraph
        The input graph with the test edges removed.

    train_pairs, test_pairs : numpy array
        m x 2 labeled node pairs.

    train_labels, test_labels : numpy array
        The class of each pair, see LINK_CLASS_NAMES.
    """
    task: str
    observed: object
    train_pairs: np.ndarray
    train_labels: np.ndarray
    test_pairs: np.ndarray
    test_labels: np.ndarray
    seed: int = None

    @property
    def num_classes(self):
        return LINK_TASKS[self.task]

    def to_frame(self):
        """
        The labeled pairs as a DataFrame with columns 'i', 'j', 'class', 'partition'.
        """
        frames = []
        for partition, pairs, labels in [('train', self.train_pairs, self.train_labels), ('test', self.test_pairs, self.test_labels)]:
            frames.append(pd.DataFrame({'i':pairs[:, 0], 'j':pairs[:, 1], 'class':labels, 'partition':partition}))
        return pd.concat(frames, ignore_index=True)

    @classmethod
    def from_frame(cls, df, g, task, seed=None):
        """
        Rebuild a split from its DataFrame form and the full graph.
        """
        _check_task(task)
        check4columns(df, ['i', 'j', 'class', 'partition'])
        train = df.loc[df['partition'] == 'train']
        test = df.loc[df['partition'] == 'test']
        observed = g.remove_edges(test['i'].values, test['j'].values)
        return cls(task, observed, train[['i', 'j']].values.astype(np.int64), train['class'].values.astype(np.int64),
            test[['i', 'j']].values.astype(np.int64), test['class'].values.astype(np.int64), seed)


def _check_task(task):
    if not task in LINK_TASKS:
        raise pyMSGNNConfigError("task must be one of {}, got {}".format(list(LINK_TASKS), task))

def usable_edges(g, task):
    """
    The edges that may be labeled: no self-loops, and for every task but SP no reciprocal pairs,
    since a reciprocal pair satisfies more than one direction class.

    Returns
    -------
    DataFrame
        Columns 'src', 'dst', 'weight'.
    """
    edges = g.edges()
    edges = edges.loc[edges['src'] != edges['dst']]
    if task != 'SP':
        reciprocal = g.has_edges(edges['dst'].values, edges['src'].values)
        edges = edges.loc[~reciprocal]
    return edges.reset_index(drop=True)

def _edge_pairs(edges, task):
    src, dst = edges['src'].values, edges['dst'].values
    positive = edges['weight'].values > 0

    if task == 'SP':
        return np.vstack([src, dst]).T, np.where(positive, 0, 1)

    forward = np.vstack([src, dst]).T
    backward = np.vstack([dst, src]).T
    pairs = np.vstack([forward, backward])
    if task in ('DP', '3C'):
        labels = np.concatenate([np.zeros(src.shape[0]), np.ones(src.shape[0])])
    else:
        labels = np.concatenate([np.where(positive, 0, 1), np.where(positive, 2, 3)])
    return pairs, labels.astype(np.int64)

def sample_non_edges(g, count, rng, exclude=None, max_rounds=100):
    """
    Sample distinct unordered node pairs with no edge in either direction.

    Parameters
    ----------
    :param g : SignedDiGraph

    :param count : int
        Number of pairs.

    :param rng : numpy.random.Generator

    :param exclude : numpy array, optional
        Pairs that must not be returned (in either orientation).

    Returns
    -------
    numpy array
        count x 2 pairs (i, j) with i != j.
    """
    n = g.n
    coo = g.adjacency.tocoo()
    blocked = np.concatenate([pair_codes(coo.row, coo.col, n), pair_codes(coo.col, coo.row, n)])
    if exclude is not None and len(exclude) > 0:
        exclude = np.asarray(exclude, dtype=np.int64).reshape(-1, 2)
        blocked = np.concatenate([blocked, pair_codes(exclude[:, 0], exclude[:, 1], n), pair_codes(exclude[:, 1], exclude[:, 0], n)])
    blocked = np.sort(blocked)

    chosen = np.zeros((0, 2), dtype=np.int64)
    for _ in range(max_rounds):
        needed = count - chosen.shape[0]
        if needed <= 0:
            break
        cand = rng.integers(0, n, size=(2 * needed + 10, 2))
        cand = cand[cand[:, 0] != cand[:, 1]]
        cand = cand[~isin_sorted(pair_codes(cand[:, 0], cand[:, 1], n), blocked)]

        # one orientation per unordered pair
        lo, hi = np.minimum(cand[:, 0], cand[:, 1]), np.maximum(cand[:, 0], cand[:, 1])
        _, first = np.unique(pair_codes(lo, hi, n), return_index=True)
        cand = cand[np.sort(first)][:needed]

        chosen = np.vstack([chosen, cand])
        blocked = np.sort(np.concatenate([blocked, pair_codes(cand[:, 0], cand[:, 1], n), pair_codes(cand[:, 1], cand[:, 0], n)]))

    if chosen.shape[0] < count:
        raise pyMSGNNDataError("Could only sample {} of {} node pairs without an edge.".format(chosen.shape[0], count))
    return chosen

def split_links(g, task, test_frac=0.2, seed=None):
    """
    Split the usable edges of g into train and test sets and label node pairs for a link task.

    The classes are
        SP: (i,j) is positive / negative, for every non-loop edge (reciprocal edges included);
        DP: the edge goes i->j / j->i, each usable edge presented in both orientations;
        3C: DP plus pairs with no edge in either direction;
        4C: i->j positive, i->j negative, j->i positive, j->i negative;
        5C: 4C plus pairs with no edge.
    Reciprocal pairs are not labeled for DP, 3C, 4C and 5C, but they stay in the observed graph.  The
    no-edge class gets as many sampled pairs as the mean size of the other classes in each partition.

    Parameters
    ----------
    :param g : SignedDiGraph

    :param task : str
        One of 'SP', 'DP', '3C', '4C', '5C'.

    :param test_frac : float, default 0.2
        Fraction of usable edges used for testing.

    :param seed : int, optional

    Returns
    -------
    LinkSplit

    Raises
    -------
    pyMSGNNDataError
        If a class the task requires has no pairs.
    """
    _check_task(task)
    if not (0 < test_frac < 1):
        raise pyMSGNNConfigError("test_frac must be in (0, 1), got {}".format(test_frac))

    rng = make_rng(seed)
    edges = usable_edges(g, task)
    num_edge_classes = LINK_TASKS[task] - (1 if task in ('3C', '5C') else 0)

    all_pairs, all_labels = _edge_pairs(edges, task)
    present = np.bincount(all_labels, minlength=num_edge_classes) if all_labels.shape[0] else np.zeros(num_edge_classes, dtype=int)
    if edges.shape[0] == 0:
        warnings.warn("The graph has no usable edges for the {} task; the split is empty.".format(task))
    elif (present == 0).any():
        missing = [LINK_CLASS_NAMES[task][c] for c in np.nonzero(present == 0)[0]]
        raise pyMSGNNDataError("The {} task has no pairs for the class(es) {}.".format(task, ', '.join(missing)))

    perm = rng.permutation(edges.shape[0])
    n_test = int(round(test_frac * edges.shape[0]))
    test_edges = edges.iloc[perm[:n_test]]
    train_edges = edges.iloc[perm[n_test:]]

    observed = g.remove_edges(test_edges['src'].values, test_edges['dst'].values)

    partitions = {}
    used = np.zeros((0, 2), dtype=np.int64)
    for partition, part_edges in [('train', train_edges), ('test', test_edges)]:
        pairs, labels = _edge_pairs(part_edges, task)
        counts = np.bincount(labels, minlength=num_edge_classes)
        if edges.shape[0] > 0 and (counts == 0).any():
            warnings.warn("The {} partition of the {} split has an empty class.".format(partition, task))

        if task in ('3C', '5C'):
            num_none = int(round(counts.mean()))
            none_pairs = sample_non_edges(g, num_none, rng, exclude=used)
            used = np.vstack([used, none_pairs])
            pairs = np.vstack([pairs, none_pairs])
            labels = np.concatenate([labels, np.full(num_none, LINK_TASKS[task] - 1)])

        partitions[partition] = (pairs.astype(np.int64).reshape(-1, 2), labels.astype(np.int64))

    return LinkSplit(task, observed, partitions['train'][0], partitions['train'][1],
        partitions['test'][0], partitions['test'][1], seed)
