# -*- coding: utf-8 -*-
"""
.. module:: msgnn
    :synopsis: The MSGNN network for node and link tasks on signed directed graphs

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import json
import struct
import warnings

import numpy as np

from pymsgnn import __version__
from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNDataError, pyMSGNNNumericalError, make_rng
from pymsgnn.maglap import laplacian
from pymsgnn.spectral import lambda_max as power_lambda_max, rescaled_operator
from pymsgnn.sparsenetworkutils import gershgorin_upper_bound
from pymsgnn.model.layers import (ChebConvLayer, glorot_uniform, unwind, unwind_backward, gather_pairs,
    gather_pairs_backward, softmax, cross_entropy, cross_entropy_backward)

CHECKPOINT_MAGIC = b'MSGN'
CHECKPOINT_VERSION = 1

TASKS = ('node', 'link')


def complex_features(x, imag='zero'):
    """
    Turn real node features into the complex network input.

    Parameters
    ----------
    :param x : numpy array
        n x d real features.

    :param imag : str, default 'zero'
        'zero' gives x + 0i, 'copy' gives x + ix.
    """
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise pyMSGNNDataError("Node features must be finite.")
    if imag == 'zero':
        return x.astype(np.complex128)
    elif imag == 'copy':
        return x + 1j * x
    else:
        raise pyMSGNNConfigError("imag must be 'zero' or 'copy', got {}".format(imag))


class MSGNN(object):
    """
    A stack of complex spectral convolution layers followed by unwind and a linear softmax head.

    For node tasks the head reads the unwound embedding of each node (width 2F).  For link tasks it reads
    the concatenated embeddings of the two endpoints of each pair (width 4F).

    Parameters
    ----------
    :param in_features : int
        Input feature dimension.

    :param num_classes : int
        Number of output classes.

    :param task : str, default 'node'
        'node' or 'link'.

    :param hidden : int, default 16
        Width of every convolution layer.

    :param num_layers : int, default 2

    :param seed : int, optional
        Seed for the parameter initialization.

    """

    def __init__(self, in_features, num_classes, task='node', hidden=16, num_layers=2, seed=None):
        if not task in TASKS:
            raise pyMSGNNConfigError("task must be one of {}, got {}".format(TASKS, task))
        if num_layers < 1 or hidden < 1 or num_classes < 2 or in_features < 1:
            raise pyMSGNNConfigError("Invalid network dimensions.")

        self.in_features = in_features
        self.num_classes = num_classes
        self.task = task
        self.hidden = hidden
        self.num_layers = num_layers

        self.q = None
        self.normalization = 'sym'
        self.lambda_max = 2.0
        self.ltil = None

        self.reset_parameters(seed)

    @property
    def head_width(self):
        return (2 if self.task == 'node' else 4) * self.hidden

    def config(self):
        return {'in_features':self.in_features, 'num_classes':self.num_classes, 'task':self.task,
                'hidden':self.hidden, 'num_layers':self.num_layers, 'q':self.q,
                'normalization':self.normalization, 'lambda_max':self.lambda_max}

    def reset_parameters(self, seed=None):
        rng = make_rng(seed)
        dims = [self.in_features] + [self.hidden] * self.num_layers
        self.layers = [ChebConvLayer(dims[l], dims[l + 1], rng) for l in range(self.num_layers)]
        self.head_weight = glorot_uniform(self.head_width, self.num_classes, rng)

    def parameters(self):
        """
        The parameter arrays by name.  The arrays are live: updating them in place updates the model.
        """
        params = {}
        for l, layer in enumerate(self.layers):
            for name, value in layer.parameters().items():
                params['layer{}.{}'.format(l, name)] = value
        params['head.weight'] = self.head_weight
        return params

    def get_state(self):
        return {name:value.copy() for name, value in self.parameters().items()}

    def set_state(self, state):
        for name, value in self.parameters().items():
            value[...] = state[name]

    def set_laplacian(self, g, q, normalization='sym', lambda_max=None):
        """
        Build and cache the rescaled Laplacian L_tilde = (2 / lambda_max) L - I for graph g.

        Parameters
        ----------
        :param g : SignedDiGraph

        :param q : float
            The charge parameter.

        :param normalization : str or None, default 'sym'
            'sym' uses the normalized magnetic signed Laplacian, None the unnormalized one.

        :param lambda_max : float or 'power', optional
            Defaults to 2 for the normalized Laplacian and to a power-iteration estimate otherwise.
        """
        lap = laplacian(g, q, normalization=normalization)

        if lambda_max is None and normalization == 'sym':
            lambda_max = 2.0
        elif lambda_max is None or lambda_max == 'power':
            try:
                lambda_max = power_lambda_max(lap)
            except pyMSGNNNumericalError:
                warnings.warn("Power iteration did not converge; using the Gershgorin bound for lambda_max.")
                lambda_max = gershgorin_upper_bound(lap)
        if not lambda_max > 0:
            # an edgeless graph has the zero unnormalized Laplacian
            lambda_max = 1.0

        self.q = float(q)
        self.normalization = normalization
        self.lambda_max = float(lambda_max)
        self.set_operator(rescaled_operator(lap, self.lambda_max))

    def set_operator(self, ltil):
        self.ltil = ltil.tocsr()

    def _check_inputs(self, x0, pairs):
        if self.ltil is None:
            raise pyMSGNNConfigError("Call set_laplacian before running the network.")
        if self.task == 'node' and pairs is not None:
            raise pyMSGNNDataError("A node-task model does not take node pairs.")
        if self.task == 'link' and pairs is None:
            raise pyMSGNNDataError("A link-task model needs node pairs.")
        if x0.shape[0] != self.ltil.shape[0]:
            raise pyMSGNNDataError("Got {} feature rows for a graph with {} nodes".format(x0.shape[0], self.ltil.shape[0]))

    def _forward(self, x0, pairs):
        caches = []
        z = np.asarray(x0, dtype=np.complex128)
        for layer in self.layers:
            z, cache = layer.forward(self.ltil, z)
            caches.append(cache)

        u = unwind(z)
        e = u if self.task == 'node' else gather_pairs(u, pairs)
        logits = e @ self.head_weight
        return logits, (caches, u.shape[0], e)

    def embed(self, x0):
        """
        The unwound output of the last convolution layer, n x 2F.
        """
        self._check_inputs(x0, None if self.task == 'node' else np.zeros((0, 2), dtype=np.int64))
        z = np.asarray(x0, dtype=np.complex128)
        for layer in self.layers:
            z, _ = layer.forward(self.ltil, z)
        return unwind(z)

    def forward(self, x0, pairs=None):
        """
        Class probabilities: n x C for node tasks, len(pairs) x C for link tasks.
        """
        self._check_inputs(x0, pairs)
        logits, _ = self._forward(x0, pairs)
        return softmax(logits)

    def predict(self, x0, pairs=None, index=None):
        probs = self.forward(x0, pairs)
        if index is not None:
            probs = probs[index]
        return np.argmax(probs, axis=1)

    def loss_and_grad(self, x0, labels, pairs=None, index=None):
        """
        Mean cross-entropy and its gradient with respect to every parameter.

        Parameters
        ----------
        :param x0 : numpy array
            Complex input features.

        :param labels : numpy array
            The class of each pair (link task) or of each node in `index` (node task).

        :param pairs : numpy array, optional
            m x 2 node pairs for link tasks.

        :param index : numpy array, optional
            The labeled nodes for node tasks; all nodes by default.

        Returns
        -------
        float
            The loss.

        dict
            Gradients keyed like parameters().
        """
        self._check_inputs(x0, pairs)
        labels = np.asarray(labels, dtype=np.int64)
        if labels.size and (labels.min() < 0 or labels.max() >= self.num_classes):
            raise pyMSGNNDataError("Labels must lie in [0, {})".format(self.num_classes))

        logits, (caches, n, e) = self._forward(x0, pairs)
        if self.task == 'node' and index is not None:
            index = np.asarray(index, dtype=np.int64)
            sub_logits = logits[index]
        else:
            sub_logits = logits

        probs = softmax(sub_logits)
        loss = cross_entropy(probs, labels)

        glogits = cross_entropy_backward(probs, labels)
        if self.task == 'node' and index is not None:
            full = np.zeros_like(logits)
            np.add.at(full, index, glogits)
            glogits = full

        grads = {'head.weight':e.T @ glogits}
        ge = glogits @ self.head_weight.T
        gu = ge if self.task == 'node' else gather_pairs_backward(ge, pairs, n)
        gz = unwind_backward(gu)

        for l in reversed(range(self.num_layers)):
            layer_grads, gz = self.layers[l].backward(caches[l], gz)
            for name, value in layer_grads.items():
                grads['layer{}.{}'.format(l, name)] = value

        return loss, grads

    def save(self, path):
        """
        Write the configuration and parameters to a binary checkpoint.

        Layout, little-endian: magic 'MSGN', u32 version, u32 length + JSON configuration,
        u32 tensor count, then per tensor u32 name length + name, u32 ndim, u64 dims, f64 values.
        """
        config = self.config()
        config['pymsgnn_version'] = __version__
        config_bytes = json.dumps(config, sort_keys=True).encode('utf-8')

        with open(path, 'wb') as outfile:
            outfile.write(CHECKPOINT_MAGIC)
            outfile.write(struct.pack('<I', CHECKPOINT_VERSION))
            outfile.write(struct.pack('<I', len(config_bytes)))
            outfile.write(config_bytes)

            params = self.parameters()
            outfile.write(struct.pack('<I', len(params)))
            for name, value in params.items():
                name_bytes = name.encode('utf-8')
                outfile.write(struct.pack('<I', len(name_bytes)))
                outfile.write(name_bytes)
                outfile.write(struct.pack('<I', value.ndim))
                outfile.write(struct.pack('<{}Q'.format(value.ndim), *value.shape))
                outfile.write(np.ascontiguousarray(value, dtype='<f8').tobytes())

    @classmethod
    def load(cls, path):
        """
        Read a checkpoint written by save.  The Laplacian is not stored; call set_laplacian before use.
        """
        with open(path, 'rb') as infile:
            if infile.read(4) != CHECKPOINT_MAGIC:
                raise pyMSGNNDataError("{} is not an MSGNN checkpoint".format(path))
            version, = struct.unpack('<I', infile.read(4))
            if version != CHECKPOINT_VERSION:
                raise pyMSGNNDataError("Unsupported checkpoint version {}".format(version))
            config_len, = struct.unpack('<I', infile.read(4))
            config = json.loads(infile.read(config_len).decode('utf-8'))

            model = cls(config['in_features'], config['num_classes'], task=config['task'],
                hidden=config['hidden'], num_layers=config['num_layers'])
            model.q = config['q']
            model.normalization = config['normalization']
            model.lambda_max = config['lambda_max']

            state = {}
            num_tensors, = struct.unpack('<I', infile.read(4))
            for _ in range(num_tensors):
                name_len, = struct.unpack('<I', infile.read(4))
                name = infile.read(name_len).decode('utf-8')
                ndim, = struct.unpack('<I', infile.read(4))
                shape = struct.unpack('<{}Q'.format(ndim), infile.read(8 * ndim))
                count = int(np.prod(shape)) if ndim > 0 else 1
                state[name] = np.frombuffer(infile.read(8 * count), dtype='<f8').reshape(shape)

        model.set_state(state)
        return model
