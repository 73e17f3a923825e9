# -*- coding: utf-8 -*-
"""
.. module:: all
    :synopsis: easy interface to all of pymsgnn

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """

from pymsgnn.utils import *
from pymsgnn.signednetwork import *
from pymsgnn.sparsenetworkutils import *
from pymsgnn.maglap import *
from pymsgnn.spectral import *
from pymsgnn.synthetic import *
from pymsgnn.model.layers import complex_relu, unwind, ChebConvLayer
from pymsgnn.model.msgnn import MSGNN, complex_features
from pymsgnn.model.optim import Adam
from pymsgnn.model.train import train, train_link, train_node
from pymsgnn.methods.features import *
from pymsgnn.methods.linksplit import *
from pymsgnn.methods.nodesplit import *
from pymsgnn.methods.evaluation import *
from pymsgnn.datasource.readwrite import *
from pymsgnn.datasource.fill import *
from pymsgnn.experiment import RunConfig, run_link_experiment, run_cluster_experiment
