# -*- coding: utf-8 -*-
"""
.. module:: experiment
    :synopsis: Reproducible link prediction and node clustering runs

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import os
import sys
import json
import time
import platform
import warnings
import dataclasses
from dataclasses import dataclass

import numpy as np
import pandas as pd
import scipy
import sklearn
import joblib
import tqdm as tqdm_package

from joblib import Parallel, delayed

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from pymsgnn import __version__
from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNDataError, pyMSGNNNumericalError
from pymsgnn.maglap import q_max
from pymsgnn.synthetic import SdsbmParams, generate_sdsbm, generate_ssbm, meta_f1, meta_f2
from pymsgnn.spectral import spectral_clustering
from pymsgnn.model.msgnn import MSGNN, complex_features
from pymsgnn.model.train import train_link, train_node
from pymsgnn.methods.features import FeatureSpec, build_features, eigenvector_features
from pymsgnn.methods.linksplit import LINK_TASKS, split_links
from pymsgnn.methods.nodesplit import split_nodes
from pymsgnn.methods.evaluation import accuracy, ari, summarize_runs
from pymsgnn.datasource.readwrite import read_graph, read_labels
from pymsgnn.datasource.fill import read_returns, fill_network

# determine if we are loading from a jupyter notebook (to make pretty progress bars)
if 'ipykernel' in sys.modules:
    from tqdm.notebook import tqdm
else:
    from tqdm import tqdm

TASKS = tuple(LINK_TASKS) + ('cluster',)
SOURCES = ('sdsbm', 'ssbm', 'edgelist', 'returns')
Q_MODES = ('auto', 'zero', 'q0', 'explicit', 'multiple')
Q_SWEEP = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
DEGREE_DIRECTIONS = ('auto', 'in-out', 'total')

REPORT_COLUMNS = ['dataset', 'task', 'method', 'q', 'feature_spec', 'mean', 'std', 'sem', 'n_runs', 'wall_seconds']


@dataclass
class RunConfig:
    """
    The resolved settings of one experiment.

    Values are resolved with the precedence: built-in defaults < config file < command line flags.
    """
    task: str = 'SP'
    dataset: str = None
    source: str = 'sdsbm'
    path: str = None
    labels_path: str = None

    # synthetic graphs
    meta: str = 'f1'
    gamma: float = 0.0
    n: int = 1000
    p: float = 0.1
    rho: float = 1.5
    eta: float = 0.0
    num_clusters: int = 3

    # lead-lag graphs
    frac: float = 0.2
    orientation: str = 'lead'

    # charge parameter
    q_mode: str = 'auto'
    q: float = None
    q_multiples: list = None

    # features and network
    feature_spec: str = '(T,T)'
    degree_direction: str = 'auto'
    imag: str = 'zero'
    unweighted: bool = False
    hidden: int = 16
    num_layers: int = 2
    normalization: str = 'sym'
    lr: float = 0.01
    weight_decay: float = 5.0e-4
    epochs: int = None
    patience: int = 200

    # protocol
    num_splits: int = 5
    num_networks: int = 5
    splits_per_network: int = 2
    test_frac: float = 0.2
    order: str = 'largest'
    baseline: bool = True
    seed: int = 0

    out_dir: str = 'results'
    threads: int = None
    show_progress: bool = False

    def __post_init__(self):
        if not self.task in TASKS:
            raise pyMSGNNConfigError("task must be one of {}, got {}".format(TASKS, self.task))
        if not self.source in SOURCES:
            raise pyMSGNNConfigError("source must be one of {}, got {}".format(SOURCES, self.source))
        if not self.q_mode in Q_MODES:
            raise pyMSGNNConfigError("q_mode must be one of {}, got {}".format(Q_MODES, self.q_mode))
        if self.q_mode in ('explicit', 'multiple') and self.q is None:
            raise pyMSGNNConfigError("q_mode '{}' needs a value for q".format(self.q_mode))
        if self.source in ('edgelist', 'returns') and self.path is None:
            raise pyMSGNNConfigError("source '{}' needs a path".format(self.source))
        if not self.meta in ('f1', 'f2'):
            raise pyMSGNNConfigError("meta must be 'f1' or 'f2', got {}".format(self.meta))
        if self.normalization in ('none', 'None'):
            self.normalization = None
        if self.q_multiples is not None:
            self.q_multiples = [float(m) for m in self.q_multiples]
        if not self.degree_direction in DEGREE_DIRECTIONS:
            raise pyMSGNNConfigError("degree_direction must be one of {}, got {}".format(DEGREE_DIRECTIONS, self.degree_direction))
        FeatureSpec.from_string(self.feature_spec)
        if self.dataset is None:
            self.dataset = self.source if self.path is None else os.path.splitext(os.path.basename(self.path))[0]

    @property
    def is_link(self):
        return self.task in LINK_TASKS

    @property
    def features(self):
        """
        The FeatureSpec of the degree features.

        With degree_direction 'auto', clustering an SDSBM graph uses the direction-free totals, so the
        direction of the flow between blocks reaches the model only through the Laplacian.
        """
        spec = FeatureSpec.from_string(self.feature_spec)
        direction = self.degree_direction
        if direction == 'auto':
            direction = 'total' if (self.task == 'cluster' and self.source == 'sdsbm') else 'in-out'
        return spec.total() if direction == 'total' else spec

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def field_names(cls):
        return [f.name for f in dataclasses.fields(cls)]

    @classmethod
    def resolve(cls, file_values=None, cli_values=None):
        """
        Merge config file values and command line values over the defaults.

        Parameters
        ----------
        :param file_values : dict, optional
            Values read from a config file.

        :param cli_values : dict, optional
            Values given on the command line; None means not given.
        """
        values = {}
        for source in [file_values or {}, cli_values or {}]:
            for key, value in source.items():
                key = key.replace('-', '_')
                if not key in cls.field_names():
                    raise pyMSGNNConfigError("Unknown configuration key '{}'".format(key))
                if value is not None:
                    values[key] = value
        return cls(**values)


def read_config_file(path):
    """
    Read `key = value` settings from a TOML file.
    """
    if not os.path.exists(path):
        raise FileNotFoundError("Config file {} does not exist.".format(path))
    with open(path, 'rb') as infile:
        try:
            return tomllib.load(infile)
        except tomllib.TOMLDecodeError as err:
            raise pyMSGNNConfigError("Cannot parse {}: {}".format(path, err))

def num_workers(config):
    """
    The joblib worker count: config.threads, else the MSGNN_THREADS environment variable, else 1.
    """
    if config.threads is not None:
        return max(1, int(config.threads))
    try:
        return max(1, int(os.environ.get('MSGNN_THREADS', 1)))
    except ValueError:
        raise pyMSGNNConfigError("MSGNN_THREADS must be an integer, got {}".format(os.environ['MSGNN_THREADS']))

def spawn_seeds(seed, count):
    """
    Independent integer seeds for `count` runs, derived from one master seed.
    """
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(count)]

def load_dataset(config, seed=None):
    """
    Generate or read the graph (and labels, when known) described by the config.

    Returns
    -------
    SignedDiGraph

    numpy array or None
        The node labels.
    """
    labels = None
    if config.source == 'sdsbm':
        F = meta_f1(config.gamma) if config.meta == 'f1' else meta_f2(config.gamma)
        g, labels = generate_sdsbm(SdsbmParams(F, config.n, config.p, config.rho, config.eta, seed))
    elif config.source == 'ssbm':
        g, labels = generate_ssbm(config.n, config.num_clusters, config.p, config.rho, config.eta, seed)
    elif config.source == 'edgelist':
        g = read_graph(config.path)
        if config.labels_path is not None:
            labels = read_labels(config.labels_path)
    else:
        g = fill_network(read_returns(config.path), frac=config.frac, orientation=config.orientation)

    if config.unweighted:
        g = g.unweighted()
    return g, labels

def q_settings(config):
    """
    The (label, mode, value) of every charge parameter the run uses.
    """
    if config.q_multiples is not None:
        return [('{:g}q0'.format(m), 'multiple', m) for m in config.q_multiples]
    if config.q_mode == 'explicit':
        return [('{:g}'.format(config.q), 'explicit', config.q)]
    if config.q_mode == 'multiple':
        return [('{:g}q0'.format(config.q), 'multiple', config.q)]
    if config.q_mode == 'zero':
        return [('0', 'zero', 0.0)]
    if config.q_mode == 'q0':
        return [('q0', 'q0', None)]
    # auto
    if config.task == 'cluster':
        if config.source == 'sdsbm':
            return [('0.25', 'explicit', 0.25)]
        if config.source == 'ssbm':
            return [('0', 'zero', 0.0)]
    elif config.task == 'SP':
        return [('0', 'zero', 0.0)]
    return [('q0', 'q0', None)]

def resolve_q(g, mode, value=None):
    """
    The charge parameter for graph g.

    Parameters
    ----------
    :param g : SignedDiGraph

    :param mode : str
        'zero', 'explicit' (q = value), 'q0' (q = q0 of g, or 0 with a warning if g is symmetric)
        or 'multiple' (q = value * q0).
    """
    if mode == 'zero':
        return 0.0
    if mode == 'explicit':
        return float(value)
    if mode == 'q0' or mode == 'multiple':
        factor = 1.0 if mode == 'q0' else float(value)
        if factor == 0:
            return 0.0
        try:
            return factor * q_max(g)
        except pyMSGNNNumericalError:
            if mode == 'multiple':
                raise
            warnings.warn("The graph is symmetric; using q=0.")
            return 0.0
    raise pyMSGNNConfigError("Unknown q mode {}".format(mode))

def run_link_once(g, config, q_mode, q_value, seed):
    """
    One split of a link task: split, build features and Laplacian on the observed graph, train, test.

    Returns
    -------
    dict
        The run record.

    LinkSplit
    """
    start = time.time()
    split = split_links(g, config.task, test_frac=config.test_frac, seed=seed)
    if split.train_pairs.shape[0] == 0 or split.test_pairs.shape[0] == 0:
        raise pyMSGNNDataError("The {} split has no labeled pairs.".format(config.task))
    q = resolve_q(split.observed, q_mode, q_value)

    x0 = complex_features(build_features(split.observed, config.features), imag=config.imag)
    model = MSGNN(x0.shape[1], split.num_classes, task='link', hidden=config.hidden, num_layers=config.num_layers, seed=seed)
    model.set_laplacian(split.observed, q, normalization=config.normalization)
    train_link(model, x0, split.train_pairs, split.train_labels, epochs=300 if config.epochs is None else config.epochs,
        lr=config.lr, weight_decay=config.weight_decay)

    acc = accuracy(model.predict(x0, pairs=split.test_pairs), split.test_labels)
    return {'method':'MSGNN', 'q':q, 'seed':seed, 'accuracy':acc, 'wall_seconds':time.time() - start}, split

def _report(runs, config, metric):
    rows = []
    for (method, q_label), group in runs.groupby(['method', 'q_label'], sort=False):
        rows.append(summarize_runs(group[metric].values, dataset=config.dataset, task=config.task, method=method,
            q=q_label, feature_spec=str(config.features), wall_seconds=group['wall_seconds'].sum()))
    return pd.concat(rows, ignore_index=True)[REPORT_COLUMNS]

def run_link_experiment(config, g=None):
    """
    Run config.num_splits random splits of a link task for every charge parameter setting.

    Returns
    -------
    DataFrame
        One row per run.

    DataFrame
        The report: one summary row (mean and sample standard deviation of test accuracy) per setting.

    list
        The LinkSplit of every run.
    """
    if not config.is_link:
        raise pyMSGNNConfigError("{} is not a link task".format(config.task))
    if g is None:
        g, _ = load_dataset(config, seed=config.seed)

    seeds = spawn_seeds(config.seed, config.num_splits)
    jobs = [(label, mode, value, k, s) for label, mode, value in q_settings(config) for k, s in enumerate(seeds)]

    results = Parallel(n_jobs=num_workers(config), prefer='threads')(
        delayed(run_link_once)(g, config, mode, value, s) for label, mode, value, k, s in
        tqdm(jobs, desc='Link splits', leave=True, disable=not config.show_progress))

    records = []
    for (label, mode, value, k, s), (record, split) in zip(jobs, results):
        record.update({'q_label':label, 'split':k})
        records.append(record)
    runs = pd.DataFrame(records)
    return runs, _report(runs, config, 'accuracy'), [split for record, split in results]

def cluster_features(g, config):
    if config.source == 'ssbm':
        return eigenvector_features(g, config.num_clusters, seed=config.seed)
    return build_features(g, config.features)

def run_cluster_once(g, labels, config, q_mode, q_value, network_seed, split_seed):
    start = time.time()
    split = split_nodes(labels, seed=split_seed)
    q = resolve_q(g, q_mode, q_value)
    num_clusters = int(np.unique(labels).shape[0])

    x0 = complex_features(cluster_features(g, config), imag=config.imag)
    model = MSGNN(x0.shape[1], num_clusters, task='node', hidden=config.hidden, num_layers=config.num_layers, seed=split_seed)
    model.set_laplacian(g, q, normalization=config.normalization)
    train_node(model, x0, labels, split, max_epochs=1000 if config.epochs is None else config.epochs,
        patience=config.patience, lr=config.lr, weight_decay=config.weight_decay)

    records = [{'method':'MSGNN', 'q':q, 'network_seed':network_seed, 'seed':split_seed,
        'ari':ari(model.predict(x0, index=split.test), labels[split.test]), 'wall_seconds':time.time() - start}]

    if config.baseline:
        start = time.time()
        pred = spectral_clustering(g, num_clusters, q=q, order=config.order, normalization=config.normalization, seed=split_seed)
        records.append({'method':'spectral', 'q':q, 'network_seed':network_seed, 'seed':split_seed,
            'ari':ari(pred[split.test], labels[split.test]), 'wall_seconds':time.time() - start})
    return records

def run_cluster_experiment(config, g=None, labels=None):
    """
    Semi-supervised node clustering: config.num_networks graphs times config.splits_per_network node splits,
    with the spectral k-means baseline run on the same test nodes.

    Returns
    -------
    DataFrame
        One row per run and method.

    DataFrame
        The report: mean test ARI with its standard error per method and setting.
    """
    if config.task != 'cluster':
        raise pyMSGNNConfigError("run_cluster_experiment needs task 'cluster', got {}".format(config.task))

    network_seeds = spawn_seeds(config.seed, config.num_networks)
    if g is not None:
        network_seeds = network_seeds[:1]
    elif config.source in ('edgelist', 'returns'):
        network_seeds = network_seeds[:1]

    networks = []
    for ns in network_seeds:
        graph, truth = (g, labels) if g is not None else load_dataset(config, seed=ns)
        if truth is None:
            raise pyMSGNNDataError("Node clustering needs node labels (labels_path).")
        networks.append((ns, graph, np.asarray(truth)))

    jobs = [(label, mode, value, ns, graph, truth, s) for label, mode, value in q_settings(config)
        for ns, graph, truth in networks for s in spawn_seeds(ns, config.splits_per_network)]

    results = Parallel(n_jobs=num_workers(config), prefer='threads')(
        delayed(run_cluster_once)(graph, truth, config, mode, value, ns, s) for label, mode, value, ns, graph, truth, s in
        tqdm(jobs, desc='Clustering runs', leave=True, disable=not config.show_progress))

    records = []
    for job, job_records in zip(jobs, results):
        for record in job_records:
            record['q_label'] = job[0]
            records.append(record)
    runs = pd.DataFrame(records)
    return runs, _report(runs, config, 'ari')

def package_versions():
    return {'python':platform.python_version(), 'pymsgnn':__version__, 'numpy':np.__version__, 'scipy':scipy.__version__,
        'pandas':pd.__version__, 'scikit-learn':sklearn.__version__, 'joblib':joblib.__version__, 'tqdm':tqdm_package.__version__}

def write_lockfile(out_dir, config, seeds=None, command=None):
    """
    Write lock.json with the resolved config, the seeds and the package versions of a run.
    """
    os.makedirs(out_dir, exist_ok=True)
    lock = {'command':command, 'config':config.to_dict(), 'seeds':seeds or [], 'versions':package_versions()}
    path = os.path.join(out_dir, 'lock.json')
    with open(path, 'w') as outfile:
        json.dump(lock, outfile, indent=2, sort_keys=True, default=str)
    return path

def write_report(out_dir, runs, report):
    os.makedirs(out_dir, exist_ok=True)
    runs.to_csv(os.path.join(out_dir, 'runs.csv'), index=False)
    report.to_csv(os.path.join(out_dir, 'report.csv'), index=False)
    report.to_json(os.path.join(out_dir, 'report.json'), orient='records', indent=2)

def format_report(report, error='std'):
    """
    Render the report as text with one 'mean ± error' column, in percent for accuracies.
    """
    table = report[['dataset', 'task', 'method', 'q', 'feature_spec', 'n_runs']].copy()
    scale = 100.0 if report['task'].iloc[0] in LINK_TASKS else 1.0
    fmt = '{:.1f} ± {:.1f}' if scale == 100.0 else '{:.3f} ± {:.3f}'
    table['result'] = [fmt.format(scale * m, scale * e) for m, e in zip(report['mean'], report[error])]
    return table.to_string(index=False)
