# -*- coding: utf-8 -*-
"""
.. module:: train
    :synopsis: Full-batch training loops for link and node tasks

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import sys

import numpy as np
import pandas as pd

from pymsgnn.utils import pyMSGNNConfigError
from pymsgnn.model.optim import Adam
from pymsgnn.methods.evaluation import accuracy, ari

# determine if we are loading from a jupyter notebook (to make pretty progress bars)
if 'ipykernel' in sys.modules:
    from tqdm.notebook import tqdm
else:
    from tqdm import tqdm


def train_link(model, x0, pairs, labels, epochs=300, lr=0.01, weight_decay=5.0e-4, seed=None, show_progress=False):
    """
    Train a link-task model for a fixed number of epochs.

    Parameters
    ----------
    :param model : MSGNN
        A link-task model with its Laplacian set.

    :param x0 : numpy array
        Complex input features.

    :param pairs : numpy array
        m x 2 labeled training pairs.

    :param labels : numpy array
        The class of each training pair.

    :param epochs : int, default 300

    :param lr : float, default 0.01

    :param weight_decay : float, default 5e-4

    :param seed : int, optional
        If given, the parameters are re-initialized from this seed first.

    :param show_progress : bool, default False
        If True, show a progress bar tracking the epochs.

    Returns
    -------
    MSGNN
        The trained model.

    DataFrame
        Per-epoch 'epoch', 'loss' and 'metric' (training accuracy).
    """
    if seed is not None:
        model.reset_parameters(seed)
    optimizer = Adam(model.parameters(), lr=lr, weight_decay=weight_decay)

    history = []
    for epoch in tqdm(range(epochs), desc='Link training', leave=True, disable=not show_progress):
        loss, grads = model.loss_and_grad(x0, labels, pairs=pairs)
        optimizer.step(grads)
        history.append([epoch, loss, accuracy(model.predict(x0, pairs=pairs), labels)])

    return model, pd.DataFrame(history, columns=['epoch', 'loss', 'metric'])

def train_node(model, x0, labels, split, max_epochs=1000, patience=200, lr=0.01, weight_decay=5.0e-4, seed=None, show_progress=False):
    """
    Semi-supervised node clustering: cross-entropy on the seed nodes with early stopping on validation ARI.

    Training stops once the validation ARI has not improved for `patience` epochs, and the parameters
    with the best validation ARI are restored.

    Parameters
    ----------
    :param model : MSGNN
        A node-task model with its Laplacian set.

    :param x0 : numpy array
        Complex input features.

    :param labels : numpy array
        The cluster of every node; only the seed and validation labels are read.

    :param split : NodeSplit

    :param max_epochs : int, default 1000

    :param patience : int, default 200

    Returns
    -------
    MSGNN
        The trained model.

    DataFrame
        Per-epoch 'epoch', 'loss' and 'metric' (validation ARI).
    """
    if seed is not None:
        model.reset_parameters(seed)
    optimizer = Adam(model.parameters(), lr=lr, weight_decay=weight_decay)

    labels = np.asarray(labels)
    seed_labels = labels[split.seed_nodes]
    best_ari, best_state, since_best = -np.inf, model.get_state(), 0

    history = []
    for epoch in tqdm(range(max_epochs), desc='Node training', leave=True, disable=not show_progress):
        loss, grads = model.loss_and_grad(x0, seed_labels, index=split.seed_nodes)
        optimizer.step(grads)

        val_ari = ari(model.predict(x0, index=split.validation), labels[split.validation])
        history.append([epoch, loss, val_ari])

        if val_ari > best_ari:
            best_ari, best_state, since_best = val_ari, model.get_state(), 0
        else:
            since_best += 1
            if since_best >= patience:
                break

    model.set_state(best_state)
    return model, pd.DataFrame(history, columns=['epoch', 'loss', 'metric'])

def train(model, x0, task, labels, pairs=None, split=None, epochs=None, seed=None, **kwargs):
    """
    Train for a link task ('link', needs pairs) or a node task ('node', needs split).
    """
    if task == 'link':
        return train_link(model, x0, pairs, labels, epochs=300 if epochs is None else epochs, seed=seed, **kwargs)
    elif task == 'node':
        return train_node(model, x0, labels, split, max_epochs=1000 if epochs is None else epochs, seed=seed, **kwargs)
    else:
        raise pyMSGNNConfigError("task must be 'link' or 'node', got {}".format(task))
