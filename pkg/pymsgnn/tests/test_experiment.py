import os
import json
import warnings

import numpy as np
import pandas as pd
import pytest

from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNNumericalError
from pymsgnn.synthetic import SdsbmParams, generate_sdsbm, generate_ssbm, meta_f1
from pymsgnn.spectral import spectral_clustering
from pymsgnn.methods.evaluation import ari
from pymsgnn.methods.features import FeatureSpec
from pymsgnn.experiment import (RunConfig, Q_SWEEP, REPORT_COLUMNS, read_config_file, num_workers, spawn_seeds,
    load_dataset, q_settings, resolve_q, run_link_experiment, run_cluster_experiment, write_lockfile, write_report,
    format_report)
from pymsgnn.checks import toy_graph


def test_config_precedence(tmp_path):
    path = tmp_path / 'run.toml'
    path.write_text('task = "DP"\nhidden = 8\nlr = 0.05\n')
    file_values = read_config_file(str(path))
    config = RunConfig.resolve(file_values, {'hidden':32, 'lr':None, 'num-splits':3})
    assert config.task == 'DP'
    assert config.hidden == 32
    assert config.lr == 0.05
    assert config.num_splits == 3
    assert config.weight_decay == 5.0e-4

def test_config_errors(tmp_path):
    with pytest.raises(pyMSGNNConfigError):
        RunConfig.resolve({'hiden':8})
    with pytest.raises(pyMSGNNConfigError):
        RunConfig(task='6C')
    with pytest.raises(pyMSGNNConfigError):
        RunConfig(q_mode='explicit')
    with pytest.raises(pyMSGNNConfigError):
        RunConfig(source='edgelist')
    with pytest.raises(pyMSGNNConfigError):
        RunConfig(feature_spec='(T,X)')

    bad = tmp_path / 'bad.toml'
    bad.write_text('task = \n')
    with pytest.raises(pyMSGNNConfigError):
        read_config_file(str(bad))
    with pytest.raises(FileNotFoundError):
        read_config_file(str(tmp_path / 'missing.toml'))

def test_config_defaults():
    config = RunConfig(normalization='none', path='data/bitcoin_alpha.csv', source='edgelist')
    assert config.normalization is None
    assert config.dataset == 'bitcoin_alpha'
    assert RunConfig().dataset == 'sdsbm'
    assert RunConfig(task='cluster').is_link is False

def test_config_degree_direction():
    assert RunConfig(task='cluster').features == FeatureSpec(True, 'net-sum', directed=False)
    assert RunConfig(task='cluster', source='ssbm').features.directed
    assert RunConfig(task='SP').features == FeatureSpec(True, 'net-sum')
    assert RunConfig(task='cluster', degree_direction='in-out').features.dim == 4
    assert RunConfig(task='DP', degree_direction='total').features.dim == 2
    with pytest.raises(pyMSGNNConfigError):
        RunConfig(degree_direction='both')

def test_num_workers(monkeypatch):
    monkeypatch.delenv('MSGNN_THREADS', raising=False)
    assert num_workers(RunConfig()) == 1
    monkeypatch.setenv('MSGNN_THREADS', '3')
    assert num_workers(RunConfig()) == 3
    assert num_workers(RunConfig(threads=2)) == 2
    monkeypatch.setenv('MSGNN_THREADS', 'many')
    with pytest.raises(pyMSGNNConfigError):
        num_workers(RunConfig())

def test_spawn_seeds():
    seeds = spawn_seeds(7, 5)
    assert seeds == spawn_seeds(7, 5)
    assert len(set(seeds)) == 5
    assert spawn_seeds(7, 3) == seeds[:3]

def test_q_settings():
    assert q_settings(RunConfig(task='SP')) == [('0', 'zero', 0.0)]
    assert q_settings(RunConfig(task='DP')) == [('q0', 'q0', None)]
    assert q_settings(RunConfig(task='cluster')) == [('0.25', 'explicit', 0.25)]
    assert q_settings(RunConfig(task='cluster', source='ssbm')) == [('0', 'zero', 0.0)]
    assert q_settings(RunConfig(task='3C', q_mode='explicit', q=0.1)) == [('0.1', 'explicit', 0.1)]
    sweep = q_settings(RunConfig(task='5C', q_multiples=list(Q_SWEEP)))
    assert [label for label, mode, value in sweep] == ['0q0', '0.2q0', '0.4q0', '0.6q0', '0.8q0', '1q0']

def test_resolve_q():
    g = toy_graph()
    assert resolve_q(g, 'zero') == 0.0
    assert resolve_q(g, 'explicit', 0.3) == 0.3
    assert resolve_q(g, 'q0') == pytest.approx(0.05)
    assert resolve_q(g, 'multiple', 0.4) == pytest.approx(0.02)
    assert resolve_q(g, 'multiple', 0.0) == 0.0

    symmetric, labels = generate_ssbm(30, 2, 0.3, seed=0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        assert resolve_q(symmetric, 'q0') == 0.0
    assert len(caught) == 1
    with pytest.raises(pyMSGNNNumericalError):
        resolve_q(symmetric, 'multiple', 0.5)
    with pytest.raises(pyMSGNNConfigError):
        resolve_q(g, 'half')

def test_load_dataset(tmp_path):
    config = RunConfig(task='cluster', n=60, p=0.3, seed=0)
    g, labels = load_dataset(config, seed=4)
    expected, expected_labels = generate_sdsbm(SdsbmParams(meta_f1(0.0), 60, 0.3, 1.5, 0.0, 4))
    assert (g.adjacency != expected.adjacency).nnz == 0
    assert np.array_equal(labels, expected_labels)

    unweighted, _ = load_dataset(RunConfig(task='cluster', source='ssbm', n=40, p=0.3, unweighted=True), seed=1)
    assert set(np.unique(unweighted.adjacency.data)) <= {-1.0, 1.0}

def test_link_experiment():
    config = RunConfig(task='SP', n=60, p=0.3, num_splits=2, epochs=5, hidden=4)
    runs, report, splits = run_link_experiment(config)
    assert runs.shape[0] == 2
    assert len(splits) == 2
    assert list(report.columns) == REPORT_COLUMNS
    assert report.shape[0] == 1
    assert report['q'].iloc[0] == '0'
    assert report['n_runs'].iloc[0] == 2
    assert runs['accuracy'].between(0, 1).all()

    again, _, _ = run_link_experiment(config)
    assert np.array_equal(runs['accuracy'].values, again['accuracy'].values)

def test_link_experiment_q_sweep():
    config = RunConfig(task='DP', n=60, p=0.3, num_splits=1, epochs=3, hidden=4, q_multiples=[0.0, 1.0])
    runs, report, splits = run_link_experiment(config)
    assert report['q'].tolist() == ['0q0', '1q0']
    assert runs.loc[runs['q_label'] == '0q0', 'q'].iloc[0] == 0.0
    assert runs.loc[runs['q_label'] == '1q0', 'q'].iloc[0] > 0.0

def test_link_experiment_wrong_task():
    with pytest.raises(pyMSGNNConfigError):
        run_link_experiment(RunConfig(task='cluster'))

def test_cluster_experiment():
    config = RunConfig(task='cluster', source='ssbm', num_clusters=2, n=60, p=0.3, num_networks=2, splits_per_network=1,
        epochs=5, hidden=4)
    runs, report = run_cluster_experiment(config)
    assert runs.shape[0] == 4
    assert report['method'].tolist() == ['MSGNN', 'spectral']
    assert (report['n_runs'] == 2).all()
    assert (report['q'] == '0').all()
    assert runs['network_seed'].nunique() == 2

    no_baseline = RunConfig(task='cluster', n=60, p=0.3, num_networks=1, splits_per_network=2, epochs=5, hidden=4,
        baseline=False)
    runs, report = run_cluster_experiment(no_baseline)
    assert report['method'].tolist() == ['MSGNN']
    assert report['q'].iloc[0] == '0.25'

def test_lockfile_and_report(tmp_path):
    config = RunConfig(task='SP', n=60, p=0.3, num_splits=2, epochs=3, hidden=4, out_dir=str(tmp_path))
    runs, report, splits = run_link_experiment(config)
    write_report(str(tmp_path), runs, report)
    path = write_lockfile(str(tmp_path), config, seeds=spawn_seeds(0, 2), command='link')

    with open(path) as infile:
        lock = json.load(infile)
    assert lock['command'] == 'link'
    assert lock['config']['task'] == 'SP'
    assert lock['seeds'] == spawn_seeds(0, 2)
    assert 'numpy' in lock['versions']

    assert pd.read_csv(os.path.join(str(tmp_path), 'report.csv')).shape[0] == 1
    assert pd.read_csv(os.path.join(str(tmp_path), 'runs.csv')).shape[0] == 2
    assert os.path.exists(os.path.join(str(tmp_path), 'report.json'))

def test_format_report():
    report = pd.DataFrame([{'dataset':'sdsbm', 'task':'SP', 'method':'MSGNN', 'q':'0', 'feature_spec':'(T,T)',
        'mean':0.8123, 'std':0.0117, 'sem':0.0049, 'n_runs':5, 'wall_seconds':1.0}])
    assert '81.2 ± 1.2' in format_report(report)
    assert '81.2 ± 0.5' in format_report(report, error='sem')

    report['task'] = 'cluster'
    assert '0.812 ± 0.012' in format_report(report)


@pytest.mark.slow
def test_sdsbm_spectral_clustering_beats_random():
    g, labels = generate_sdsbm(SdsbmParams(meta_f1(0.0), 1000, 0.1, 1.5, 0.0, 0))
    pred = spectral_clustering(g, 3, q=0.25, num_eig=4, seed=0)
    rng = np.random.default_rng(0)
    random_ari = max(ari(rng.integers(0, 3, size=1000), labels) for _ in range(100))
    assert ari(pred, labels) > random_ari

@pytest.mark.slow
def test_sdsbm_cluster_acceptance():
    # five networks times two node splits on SDSBM(F1(0), n=1000, p=0.1, rho=1.5)
    base = dict(task='cluster', n=1000, p=0.1, rho=1.5, num_networks=5, splits_per_network=2)

    runs, report = run_cluster_experiment(RunConfig(eta=0.0, **base))
    msgnn = runs.loc[runs['method'] == 'MSGNN', 'ari']
    spectral = runs.loc[runs['method'] == 'spectral', 'ari']
    assert msgnn.shape[0] == 10
    assert (runs['q'] == 0.25).all()

    zero, _ = run_cluster_experiment(RunConfig(eta=0.0, q_mode='zero', baseline=False, **base))
    noisy, _ = run_cluster_experiment(RunConfig(eta=0.15, baseline=False, **base))

    assert msgnn.mean() >= 0.5
    assert msgnn.mean() > spectral.mean()
    assert msgnn.mean() >= noisy['ari'].mean()
    assert msgnn.mean() >= zero['ari'].mean()
