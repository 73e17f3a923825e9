# -*- coding: utf-8 -*-
"""
.. module:: optim
    :synopsis: Adam with L2 regularization

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import numpy as np


def is_weight(name):
    return not name.endswith('bias')

class Adam(object):
    """
    The Adam optimizer, updating the parameter arrays in place.

    The L2 penalty weight_decay * w is added to the gradient of every weight matrix before the moment
    updates; biases are not decayed.

    Parameters
    ----------
    :param params : dict
        Live parameter arrays by name, as returned by MSGNN.parameters().

    :param lr : float, default 0.01

    :param beta1 : float, default 0.9

    :param beta2 : float, default 0.999

    :param eps : float, default 1e-8

    :param weight_decay : float, default 5e-4

    """

    def __init__(self, params, lr=0.01, beta1=0.9, beta2=0.999, eps=1.0e-8, weight_decay=5.0e-4):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.weight_decay = weight_decay

        self.step_count = 0
        self.first_moment = {name:np.zeros_like(value) for name, value in params.items()}
        self.second_moment = {name:np.zeros_like(value) for name, value in params.items()}

    def step(self, grads):
        self.step_count += 1
        bias1 = 1.0 - self.beta1 ** self.step_count
        bias2 = 1.0 - self.beta2 ** self.step_count

        for name, param in self.params.items():
            grad = grads[name]
            if self.weight_decay and is_weight(name):
                grad = grad + self.weight_decay * param

            m = self.first_moment[name]
            v = self.second_moment[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * grad
            v *= self.beta2
            v += (1.0 - self.beta2) * grad**2

            param -= self.lr * (m / bias1) / (np.sqrt(v / bias2) + self.eps)
