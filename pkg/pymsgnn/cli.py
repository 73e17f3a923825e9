# -*- coding: utf-8 -*-
"""
.. module:: cli
    :synopsis: The pymsgnn command line

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import os
import sys
import argparse

import numpy as np
import pandas as pd

from pymsgnn import __version__, __description__
from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNDataError, pyMSGNNNumericalError
from pymsgnn.maglap import laplacian, q_max
from pymsgnn.spectral import eigh, lambda_max, spectral_embed
from pymsgnn.synthetic import SdsbmParams, generate_sdsbm, generate_ssbm, meta_f1, meta_f2
from pymsgnn.methods.linksplit import LINK_TASKS
from pymsgnn.datasource.readwrite import (read_graph, write_edge_list, write_labels, write_hermitian, write_matrix,
    write_split, write_node_map)
from pymsgnn.datasource.fill import read_returns, lead_lag_matrix, sparsify_top
from pymsgnn.experiment import (RunConfig, Q_SWEEP, read_config_file, load_dataset, run_link_experiment, run_cluster_experiment,
    spawn_seeds, write_lockfile, write_report, format_report)
from pymsgnn.checks import CHECKS, run_all_checks

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


def _normalization(value):
    return None if value in ('none', 'None') else value

def _graph_config(args, **kwargs):
    q_mode = 'q0' if args.q0 else 'explicit'
    return RunConfig(source='edgelist', path=args.graph, q_mode=q_mode, q=args.q,
        normalization=args.normalization, out_dir=args.out_dir, **kwargs)

def _graph_charge(g, args):
    return q_max(g) if args.q0 else args.q

def _read_edge_list_source(config):
    """
    The graph and labels of an edgelist run; its node index to id map is written to out_dir/nodes.csv.
    """
    g, labels = load_dataset(config, seed=config.seed)
    os.makedirs(config.out_dir, exist_ok=True)
    write_node_map(g, os.path.join(config.out_dir, 'nodes.csv'))
    return g, labels

def cmd_generate(args):
    """
    Sample an SDSBM or SSBM graph and write edges.csv, labels.csv and lock.json.
    """
    config = RunConfig(task='cluster', source=args.model, meta=args.meta, gamma=args.gamma, n=args.n, p=args.p,
        rho=args.rho, eta=args.eta, num_clusters=args.num_clusters, seed=args.seed, out_dir=args.out_dir)

    if args.model == 'sdsbm':
        F = meta_f1(args.gamma) if args.meta == 'f1' else meta_f2(args.gamma)
        g, labels = generate_sdsbm(SdsbmParams(F, args.n, args.p, args.rho, args.eta, args.seed))
    else:
        g, labels = generate_ssbm(args.n, args.num_clusters, args.p, args.rho, args.eta, args.seed)

    os.makedirs(args.out_dir, exist_ok=True)
    write_edge_list(g, os.path.join(args.out_dir, 'edges.csv'))
    write_labels(labels, os.path.join(args.out_dir, 'labels.csv'))
    write_lockfile(args.out_dir, config, seeds=[args.seed], command='generate')
    print("{} nodes, {} edges written to {}".format(g.n, g.number_of_edges(), args.out_dir))
    return EXIT_OK

def cmd_laplacian(args):
    """
    Write the stored entries (i, j, re, im) of the magnetic signed Laplacian of a graph.
    """
    config = _graph_config(args)
    g = read_graph(args.graph)
    q = _graph_charge(g, args)
    lap = laplacian(g, q, normalization=_normalization(args.normalization))

    os.makedirs(args.out_dir, exist_ok=True)
    write_hermitian(lap, os.path.join(args.out_dir, 'laplacian.csv'), upper_only=args.upper_only)
    write_node_map(g, os.path.join(args.out_dir, 'nodes.csv'))
    write_lockfile(args.out_dir, config, command='laplacian')
    print("q={:g}, {} stored entries written to {}".format(q, lap.nnz, args.out_dir))
    return EXIT_OK

def cmd_eigs(args):
    """
    Write the eigenvalues of the magnetic signed Laplacian and, with --k, the stacked eigenvector embedding.
    """
    config = _graph_config(args, order=args.order)
    g = read_graph(args.graph)
    q = _graph_charge(g, args)
    lap = laplacian(g, q, normalization=_normalization(args.normalization))
    os.makedirs(args.out_dir, exist_ok=True)
    write_node_map(g, os.path.join(args.out_dir, 'nodes.csv'))

    if args.power:
        estimate = lambda_max(lap, seed=0)
        pd.DataFrame({'lambda_max':[estimate]}).to_csv(os.path.join(args.out_dir, 'lambda_max.csv'), index=False)
        print("q={:g}, lambda_max={:.6f}".format(q, estimate))
    else:
        decomposition = eigh(lap)
        pd.DataFrame({'k':np.arange(g.n), 'eigenvalue':decomposition.eigenvalues}).to_csv(
            os.path.join(args.out_dir, 'eigenvalues.csv'), index=False)
        if args.k is not None:
            embedding = spectral_embed(lap, args.k, order=args.order, decomposition=decomposition)
            write_matrix(embedding, os.path.join(args.out_dir, 'embedding.csv'), prefix='e')
        if g.n > 0:
            print("q={:g}, eigenvalues in [{:.6f}, {:.6f}]".format(q, decomposition.eigenvalues[0], decomposition.eigenvalues[-1]))

    write_lockfile(args.out_dir, config, command='eigs')
    return EXIT_OK

def _run_config(args, task):
    file_values = read_config_file(args.config) if args.config is not None else {}
    fields = RunConfig.field_names()
    cli_values = {key:value for key, value in vars(args).items() if key in fields}
    if task is not None:
        cli_values['task'] = task
    if args.q_sweep:
        cli_values['q_multiples'] = list(Q_SWEEP)
    return RunConfig.resolve(file_values, cli_values)

def cmd_link(args):
    """
    Run the link task protocol and report mean test accuracy with its standard deviation.
    """
    config = _run_config(args, None)
    if not config.is_link:
        raise pyMSGNNConfigError("The link command needs one of the tasks {}".format(list(LINK_TASKS)))

    g = _read_edge_list_source(config)[0] if config.source == 'edgelist' else None
    runs, report, splits = run_link_experiment(config, g=g)
    write_report(config.out_dir, runs, report)

    split_dir = os.path.join(config.out_dir, 'splits')
    os.makedirs(split_dir, exist_ok=True)
    for k, (split, q_label) in enumerate(zip(splits, runs['q_label'].values)):
        write_split(split, os.path.join(split_dir, 'split{:03d}_q{}.csv'.format(k, q_label)))

    write_lockfile(config.out_dir, config, seeds=spawn_seeds(config.seed, config.num_splits), command='link')
    print(format_report(report, error='std'))
    return EXIT_OK

def cmd_cluster(args):
    """
    Run the node clustering protocol and report mean test ARI with its standard error.
    """
    config = _run_config(args, 'cluster')
    g, labels = _read_edge_list_source(config) if config.source == 'edgelist' else (None, None)
    runs, report = run_cluster_experiment(config, g=g, labels=labels)
    write_report(config.out_dir, runs, report)

    seeds = runs[['network_seed', 'seed']].drop_duplicates().values.tolist()
    write_lockfile(config.out_dir, config, seeds=seeds, command='cluster')
    print(format_report(report, error='sem'))
    return EXIT_OK

def cmd_fill(args):
    """
    Build the sparsified lead-lag network of a return panel.
    """
    config = RunConfig(source='returns', path=args.returns, frac=args.frac, orientation=args.orientation, out_dir=args.out_dir)
    panel = read_returns(args.returns)
    betas = lead_lag_matrix(panel, orientation=args.orientation)
    g = sparsify_top(betas, frac=args.frac, node_ids=panel.stock_ids)

    os.makedirs(args.out_dir, exist_ok=True)
    write_edge_list(g, os.path.join(args.out_dir, 'edges.csv'))
    write_node_map(g, os.path.join(args.out_dir, 'nodes.csv'))
    if args.dump_matrix:
        write_matrix(betas, os.path.join(args.out_dir, 'lead_lag.csv'), prefix='s')
    write_lockfile(args.out_dir, config, command='fill')
    print("{} stocks, {} edges written to {}".format(g.n, g.number_of_edges(), args.out_dir))
    return EXIT_OK

def cmd_check(args):
    """
    Run the property suites; exits with 4 if any of them fails.
    """
    results = run_all_checks(suites=args.suite, seed=args.seed, show_progress=args.show_progress)
    print(results.to_string(index=False))
    if args.out_dir is not None:
        os.makedirs(args.out_dir, exist_ok=True)
        results.to_csv(os.path.join(args.out_dir, 'checks.csv'), index=False)
        write_lockfile(args.out_dir, RunConfig(seed=args.seed, out_dir=args.out_dir), seeds=[args.seed], command='check')
    return EXIT_OK if results['passed'].all() else EXIT_NUMERICAL


def _add_graph_arguments(parser):
    parser.add_argument('--graph', required=True, help='Edge list CSV or binary graph file.')
    parser.add_argument('--q', type=float, default=0.0, help='The charge parameter.')
    parser.add_argument('--q0', action='store_true', help='Use q0 = 1 / (2 max(A - A^T)) instead of --q.')
    parser.add_argument('--normalization', choices=['sym', 'none'], default='sym')
    parser.add_argument('--out-dir', default='results')

def _add_run_arguments(parser):
    # every default is None so that config file values are only overridden by explicit flags
    parser.add_argument('--config', default=None, help='TOML file with key = value settings.')
    parser.add_argument('--dataset', default=None, help='Name used in the report.')
    parser.add_argument('--source', choices=['sdsbm', 'ssbm', 'edgelist', 'returns'], default=None)
    parser.add_argument('--path', default=None, help='Edge list or return panel for the edgelist and returns sources.')
    parser.add_argument('--labels-path', default=None, help='Node labels CSV for clustering an edge list.')

    parser.add_argument('--meta', choices=['f1', 'f2'], default=None)
    parser.add_argument('--gamma', type=float, default=None)
    parser.add_argument('--n', type=int, default=None)
    parser.add_argument('--p', type=float, default=None)
    parser.add_argument('--rho', type=float, default=None)
    parser.add_argument('--eta', type=float, default=None)
    parser.add_argument('--num-clusters', type=int, default=None)

    parser.add_argument('--frac', type=float, default=None)
    parser.add_argument('--orientation', choices=['lead', 'literal'], default=None)

    parser.add_argument('--q-mode', choices=['auto', 'zero', 'q0', 'explicit', 'multiple'], default=None)
    parser.add_argument('--q', type=float, default=None)
    parser.add_argument('--q-multiples', type=float, nargs='+', default=None)
    parser.add_argument('--q-sweep', action='store_true', help='Run q = 0, 0.2, ..., 1.0 times q0.')

    parser.add_argument('--feature-spec', default=None, help="Degree feature tuple, e.g. '(T,T)'.")
    parser.add_argument('--degree-direction', choices=['auto', 'in-out', 'total'], default=None,
        help='Separate in and out degrees, or their totals; auto uses totals for SDSBM clustering.')
    parser.add_argument('--imag', choices=['zero', 'copy'], default=None)
    parser.add_argument('--unweighted', action='store_const', const=True, default=None)
    parser.add_argument('--hidden', type=int, default=None)
    parser.add_argument('--num-layers', type=int, default=None)
    parser.add_argument('--normalization', choices=['sym', 'none'], default=None)
    parser.add_argument('--lr', type=float, default=None)
    parser.add_argument('--weight-decay', type=float, default=None)
    parser.add_argument('--epochs', type=int, default=None)
    parser.add_argument('--patience', type=int, default=None)

    parser.add_argument('--num-splits', type=int, default=None)
    parser.add_argument('--num-networks', type=int, default=None)
    parser.add_argument('--splits-per-network', type=int, default=None)
    parser.add_argument('--test-frac', type=float, default=None)
    parser.add_argument('--order', choices=['largest', 'smallest'], default=None)
    parser.add_argument('--no-baseline', dest='baseline', action='store_const', const=False, default=None)
    parser.add_argument('--seed', type=int, default=None)

    parser.add_argument('--out-dir', default=None)
    parser.add_argument('--threads', type=int, default=None)
    parser.add_argument('--show-progress', action='store_const', const=True, default=None)

def build_parser():
    parser = argparse.ArgumentParser(prog='pymsgnn', description=__description__)
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    generate = subparsers.add_parser('generate', help='Sample a synthetic signed graph with node labels.')
    generate.add_argument('model', choices=['sdsbm', 'ssbm'])
    generate.add_argument('--n', type=int, required=True)
    generate.add_argument('--meta', choices=['f1', 'f2'], default='f1')
    generate.add_argument('--gamma', type=float, default=0.0)
    generate.add_argument('--p', type=float, default=0.1)
    generate.add_argument('--rho', type=float, default=1.5)
    generate.add_argument('--eta', type=float, default=0.0)
    generate.add_argument('--num-clusters', type=int, default=3)
    generate.add_argument('--seed', type=int, default=0)
    generate.add_argument('--out-dir', default='.')
    generate.set_defaults(func=cmd_generate)

    lap = subparsers.add_parser('laplacian', help='Dump the magnetic signed Laplacian of a graph.')
    _add_graph_arguments(lap)
    lap.add_argument('--upper-only', action='store_true')
    lap.set_defaults(func=cmd_laplacian)

    eigs = subparsers.add_parser('eigs', help='Eigenvalues and eigenvector embedding of the Laplacian.')
    _add_graph_arguments(eigs)
    eigs.add_argument('--k', type=int, default=None, help='Number of eigenvectors to embed with.')
    eigs.add_argument('--order', choices=['largest', 'smallest'], default='largest')
    eigs.add_argument('--power', action='store_true', help='Only estimate lambda_max by power iteration.')
    eigs.set_defaults(func=cmd_eigs)

    cluster = subparsers.add_parser('cluster', help='Semi-supervised node clustering runs.')
    _add_run_arguments(cluster)
    cluster.set_defaults(func=cmd_cluster)

    link = subparsers.add_parser('link', help='Link sign, direction and existence prediction runs.')
    link.add_argument('--task', choices=list(LINK_TASKS), default=None)
    _add_run_arguments(link)
    link.set_defaults(func=cmd_link)

    fill = subparsers.add_parser('fill', help='Lead-lag network from daily returns.')
    fill.add_argument('--returns', required=True, help='CSV with a date column and one column per stock.')
    fill.add_argument('--frac', type=float, default=0.2)
    fill.add_argument('--orientation', choices=['lead', 'literal'], default='lead')
    fill.add_argument('--out-dir', default='.')
    fill.add_argument('--dump-matrix', action='store_true', help='Also write the dense lead-lag matrix.')
    fill.set_defaults(func=cmd_fill)

    check = subparsers.add_parser('check', help='Run the property suites.')
    check.add_argument('--suite', choices=list(CHECKS), nargs='+', default=None)
    check.add_argument('--seed', type=int, default=0)
    check.add_argument('--show-progress', action='store_true')
    check.add_argument('--out-dir', default=None)
    check.set_defaults(func=cmd_check)

    return parser

def main(argv=None):
    """
    Entry point; returns the exit code: 0 success, 2 configuration error, 3 data error, 4 numerical failure.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code

    try:
        return args.func(args)
    except pyMSGNNConfigError as err:
        print("configuration error: {}".format(err), file=sys.stderr)
        return EXIT_CONFIG
    except (pyMSGNNDataError, FileNotFoundError) as err:
        print("data error: {}".format(err), file=sys.stderr)
        return EXIT_DATA
    except pyMSGNNNumericalError as err:
        print("numerical error: {}".format(err), file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == '__main__':
    sys.exit(main())
