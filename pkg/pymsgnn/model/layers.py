# -*- coding: utf-8 -*-
"""
.. module:: layers
    :synopsis: Complex-valued spectral convolution layers, unwind and output heads

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>

Gradients follow the convention that for a real loss and a complex array Z the gradient is
dL/dRe(Z) + i dL/dIm(Z).  With this convention a real weight W in Y = X W receives Re(X^H gY),
and a complex linear map Y = M X passes back M^H gY.
 """
import numpy as np

from pymsgnn.utils import pyMSGNNDataError


def complex_relu_mask(z):
    """
    True where -pi/2 <= arg(z) < pi/2, with arg(0) taken as 0.
    """
    return (z.real > 0) | ((z.real == 0) & (z.imag <= 0))

def complex_relu(z):
    """
    The complex ReLU: z if its argument lies in [-pi/2, pi/2), otherwise 0.
    """
    z = np.asarray(z, dtype=np.complex128)
    return np.where(complex_relu_mask(z), z, 0)

def glorot_uniform(fan_in, fan_out, rng):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))

def unwind(z):
    """
    Map a complex n x F matrix to the real n x 2F matrix [Re(z), Im(z)].
    """
    return np.hstack([z.real, z.imag])

def unwind_backward(gu):
    F = gu.shape[1] // 2
    return gu[:, :F] + 1j * gu[:, F:]


class ChebConvLayer(object):
    """
    The spectral convolution layer relu(X W_self + L_tilde X W_neigh + b (1 + i)).

    The weights are real and act identically on the real and imaginary parts of the features.
    The single stored bias is added to both the real and the imaginary part.

    Parameters
    ----------
    :param in_features : int

    :param out_features : int

    :param rng : numpy.random.Generator
        Used for the glorot-uniform initialization; the bias starts at 0.
    """

    def __init__(self, in_features, out_features, rng):
        self.in_features = in_features
        self.out_features = out_features
        self.reset_parameters(rng)

    def reset_parameters(self, rng):
        self.weight_self = glorot_uniform(self.in_features, self.out_features, rng)
        self.weight_neigh = glorot_uniform(self.in_features, self.out_features, rng)
        self.bias = np.zeros(self.out_features)

    def parameters(self):
        return {'weight_self':self.weight_self, 'weight_neigh':self.weight_neigh, 'bias':self.bias}

    def preactivation(self, ltil, x):
        lx = ltil.dot(x)
        p = x @ self.weight_self + lx @ self.weight_neigh
        return p + self.bias * (1 + 1j), lx

    def forward(self, ltil, x):
        """
        Returns
        -------
        numpy array
            The complex n x F_out output.

        tuple
            The cache needed by backward.
        """
        x = np.asarray(x, dtype=np.complex128)
        if x.shape[1] != self.in_features:
            raise pyMSGNNDataError("Layer expects {} input features, got {}".format(self.in_features, x.shape[1]))
        if x.shape[0] != ltil.shape[0]:
            raise pyMSGNNDataError("Got {} feature rows for a graph with {} nodes".format(x.shape[0], ltil.shape[0]))

        p, lx = self.preactivation(ltil, x)
        mask = complex_relu_mask(p)
        return np.where(mask, p, 0), (ltil, x, lx, mask)

    def backward(self, cache, gz):
        """
        Returns
        -------
        dict
            Gradients of 'weight_self', 'weight_neigh' and 'bias'.

        numpy array
            The gradient with respect to the layer input.
        """
        ltil, x, lx, mask = cache
        gp = np.where(mask, gz, 0)

        grads = {'weight_self':np.real(x.conj().T @ gp),
                 'weight_neigh':np.real(lx.conj().T @ gp),
                 'bias':(gp.real + gp.imag).sum(axis=0)}

        # L_tilde is Hermitian, so its adjoint is itself
        gx = gp @ self.weight_self.T + ltil.dot(gp @ self.weight_neigh.T)
        return grads, gx


def gather_pairs(u, pairs):
    """
    Concatenate the rows of u for the two endpoints of each pair.
    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    return np.hstack([u[pairs[:, 0]], u[pairs[:, 1]]])

def gather_pairs_backward(ge, pairs, n):
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    width = ge.shape[1] // 2
    gu = np.zeros((n, width))
    np.add.at(gu, pairs[:, 0], ge[:, :width])
    np.add.at(gu, pairs[:, 1], ge[:, width:])
    return gu

def softmax(logits):
    shifted = logits - logits.max(axis=1, keepdims=True)
    expl = np.exp(shifted)
    return expl / expl.sum(axis=1, keepdims=True)

def cross_entropy(probs, labels):
    """
    Mean cross-entropy of the true labels under the predicted class probabilities.
    """
    labels = np.asarray(labels, dtype=np.int64)
    picked = probs[np.arange(labels.shape[0]), labels]
    return float(-np.mean(np.log(np.maximum(picked, np.finfo(float).tiny))))

def cross_entropy_backward(probs, labels):
    labels = np.asarray(labels, dtype=np.int64)
    glogits = probs.copy()
    glogits[np.arange(labels.shape[0]), labels] -= 1.0
    return glogits / labels.shape[0]
