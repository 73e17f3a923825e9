# -*- coding: utf-8 -*-
"""
.. module:: checks
    :synopsis: Property suites for the Laplacian, the network gradients, the generators and the lead-lag pipeline

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>

Every check returns a dict with the keys 'check', 'passed' and 'detail'.  The `check` command and the
test suite both run them.
 """
import os
import sys
import time
import inspect
import tempfile

import numpy as np
import pandas as pd

from pymsgnn.utils import make_rng
from pymsgnn.signednetwork import (from_edge_list, symmetrized_adjacency, absolute_degree, absolute_degree_vector,
    signed_subgraphs)
from pymsgnn.maglap import hermitian_adjacency, laplacian_unnormalized, laplacian_normalized, is_hermitian
from pymsgnn.spectral import eigh
from pymsgnn.synthetic import SdsbmParams, generate_sdsbm, random_signed_digraph, meta_f1, meta_f2
from pymsgnn.model.msgnn import MSGNN, complex_features
from pymsgnn.methods.features import build_features
from pymsgnn.datasource.fill import ReturnPanel, lead_lag_matrix, sparsify_top, simulate_lead_lag_panel, write_returns
from pymsgnn.experiment import RunConfig, run_link_experiment

# determine if we are loading from a jupyter notebook (to make pretty progress bars)
if 'ipykernel' in sys.modules:
    from tqdm.notebook import tqdm
else:
    from tqdm import tqdm

# the signed directed example graph on 4 nodes used throughout the golden values
TOY_EDGES = [(0, 1, 0.5), (0, 2, -0.1), (0, 3, 3.0), (1, 0, -3.0), (1, 3, 3.0), (2, 0, 3.0), (3, 1, -1.0), (3, 2, 10.0)]

# features of node 0 of the toy graph, unstandardized
TOY_FEATURES = {
    '(F,F)':[2.0, 3.0],
    '(F,T)':[0.0, 3.4],
    "(F,T')":[6.0, 3.6],
    '(T,F)':[1.0, 2.0, 1.0, 1.0],
    '(T,T)':[3.0, 3.5, 3.0, 0.1],
}

META_GRAPHS = {
    ('f1', 0.0):[[0.5, 0.0, 0.0], [1.0, 0.5, -0.5], [-1.0, -0.5, 0.5]],
    ('f1', 0.25):[[0.5, 0.25, -0.25], [0.75, 0.5, -0.5], [-0.75, -0.5, 0.5]],
    ('f1', 0.5):[[0.5, 0.5, -0.5], [0.5, 0.5, -0.5], [-0.5, -0.5, 0.5]],
    ('f2', 0.0):[[0.5, 0.0, 0.0, 0.0], [1.0, 0.5, -0.5, 0.0], [-1.0, -0.5, 0.5, 0.0], [-1.0, -1.0, -1.0, 0.5]],
    ('f2', 0.25):[[0.5, 0.25, -0.25, -0.25], [0.75, 0.5, -0.5, -0.25], [-0.75, -0.5, 0.5, -0.25],
                  [-0.75, -0.75, -0.75, 0.5]],
    ('f2', 0.5):[[0.5, 0.5, -0.5, -0.5], [0.5, 0.5, -0.5, -0.5], [-0.5, -0.5, 0.5, -0.5], [-0.5, -0.5, -0.5, 0.5]],
}


def toy_graph():
    return from_edge_list(TOY_EDGES, n=4)

def _result(name, passed, detail):
    return {'check':name, 'passed':bool(passed), 'detail':detail}

def _random_graph(rng, max_n, **kwargs):
    n = int(rng.integers(2, max_n + 1))
    return random_signed_digraph(n, density=rng.uniform(0.05, 0.6), seed=int(rng.integers(2**31)),
        weighted=bool(rng.random() < 0.5), **kwargs)

def check_laplacian_properties(num_graphs=200, max_n=50, tol=1.0e-9, seed=0, show_progress=False):
    """
    Both magnetic signed Laplacians are Hermitian and positive semidefinite, and the normalized one has
    its spectrum in [0, 2], over random signed directed weighted graphs and charges q in [0, 1].
    """
    rng = make_rng(seed)
    min_unnorm, min_norm, max_norm, hermitian = np.inf, np.inf, -np.inf, True

    for _ in tqdm(range(num_graphs), desc='Spectral bounds', leave=True, disable=not show_progress):
        g = _random_graph(rng, max_n, self_loops=bool(rng.random() < 0.2))
        q = rng.uniform(0.0, 1.0)
        lu, ln = laplacian_unnormalized(g, q), laplacian_normalized(g, q)
        hermitian &= is_hermitian(lu) and is_hermitian(ln)

        eu, en = eigh(lu).eigenvalues, eigh(ln).eigenvalues
        min_unnorm = min(min_unnorm, eu[0])
        min_norm, max_norm = min(min_norm, en[0]), max(max_norm, en[-1])

    passed = hermitian and min_unnorm >= -tol and min_norm >= -tol and max_norm <= 2 + tol
    detail = "min eig L_U {:.3e}, min eig L_N {:.3e}, max eig L_N {:.12f}".format(min_unnorm, min_norm, max_norm)
    return _result('laplacian_properties', passed, detail)

def _magnetic_oracle(a, q):
    # dense unsigned magnetic Laplacian and its normalization
    asym = 0.5 * (a + a.T)
    deg = asym.sum(axis=1)
    h = asym * np.exp(2j * np.pi * q * (a - a.T))
    inv_sqrt = np.where(deg > 0, 1.0 / np.sqrt(np.where(deg > 0, deg, 1.0)), 0.0)
    normalized = np.eye(a.shape[0]) - inv_sqrt[:, None] * h * inv_sqrt[None, :]
    return np.diag(deg) - h, normalized

def check_reductions(num_graphs=20, max_n=30, tol=1.0e-12, seed=0):
    """
    The magnetic signed Laplacian reduces to the known special cases:
        q = 0 gives D - A_sym exactly;
        nonnegative weights give the magnetic Laplacian;
        symmetric weights give the signed Laplacian with absolute degrees;
        D^(-1/2) L_U D^(-1/2) equals L_N, up to the identity rows of isolated nodes.
    """
    rng = make_rng(seed)
    errors = {'q0':0.0, 'magnetic':0.0, 'signed':0.0, 'normalization':0.0}

    for _ in range(num_graphs):
        q = rng.uniform(0.0, 1.0)

        g = _random_graph(rng, max_n)
        expected = (absolute_degree(g) - symmetrized_adjacency(g)).toarray()
        errors['q0'] = max(errors['q0'], np.abs(laplacian_unnormalized(g, 0.0).toarray() - expected).max())

        unsigned = _random_graph(rng, max_n, negative_frac=0.0)
        lu, ln = _magnetic_oracle(unsigned.to_dense(), q)
        errors['magnetic'] = max(errors['magnetic'], np.abs(laplacian_unnormalized(unsigned, q).toarray() - lu).max(),
            np.abs(laplacian_normalized(unsigned, q).toarray() - ln).max())

        upper = np.triu(_random_graph(rng, max_n).to_dense(), k=1)
        a = upper + upper.T
        signed = from_edge_list(pd.DataFrame({'src':np.nonzero(a)[0], 'dst':np.nonzero(a)[1], 'weight':a[np.nonzero(a)]}), n=a.shape[0])
        oracle = np.diag(np.abs(a).sum(axis=1)) - a
        errors['signed'] = max(errors['signed'], np.abs(laplacian_unnormalized(signed, q).toarray() - oracle).max())

        deg = absolute_degree_vector(g)
        inv_sqrt = np.where(deg > 0, 1.0 / np.sqrt(np.where(deg > 0, deg, 1.0)), 0.0)
        scaled = inv_sqrt[:, None] * laplacian_unnormalized(g, q).toarray() * inv_sqrt[None, :]
        isolated = np.nonzero(deg == 0)[0]
        scaled[isolated, isolated] = 1.0
        errors['normalization'] = max(errors['normalization'], np.abs(scaled - laplacian_normalized(g, q).toarray()).max())

    passed = errors['q0'] == 0 and all(errors[key] <= tol for key in ['magnetic', 'signed', 'normalization'])
    return _result('reductions', passed, ', '.join('{} {:.1e}'.format(key, value) for key, value in errors.items()))

def check_golden_values():
    """
    The degree features of the toy graph and the Hermitian adjacency of a single directed unit edge.
    """
    g = toy_graph()
    failures = []

    for spec, expected in TOY_FEATURES.items():
        if not np.allclose(build_features(g, spec, standardize=False)[0], expected, rtol=0, atol=1.0e-12):
            failures.append(spec)

    if symmetrized_adjacency(g)[0, 1] != -1.25:
        failures.append('A_sym')
    if not np.isclose(absolute_degree(g)[0, 0], 4.8, rtol=0, atol=1.0e-12):
        failures.append('degree')
    positive, negative = signed_subgraphs(g)
    if (positive.number_of_edges(), negative.number_of_edges()) != (5, 3):
        failures.append('signed subgraphs')

    unit = from_edge_list([(0, 1, 1.0)], n=2)
    h = hermitian_adjacency(unit, 0.25).toarray()
    if not (np.isclose(h[0, 1], 0.5j, atol=1.0e-15) and np.isclose(h[1, 0], -0.5j, atol=1.0e-15)):
        failures.append('H')
    negative_unit = hermitian_adjacency(from_edge_list([(0, 1, -1.0)], n=2), 0.25).toarray()
    if not np.isclose(negative_unit[1, 0], -negative_unit[0, 1], atol=1.0e-15):
        failures.append('H antisymmetry')

    evals = eigh(laplacian_unnormalized(unit, 0.25)).eigenvalues
    if not np.allclose(evals, [0.0, 1.0], atol=1.0e-12):
        failures.append('eigenvalues')

    return _result('golden_values', len(failures) == 0, 'mismatches: {}'.format(failures) if failures else 'all match')

def _gradient_error(model, x0, labels, pairs, index, h):
    _, grads = model.loss_and_grad(x0, labels, pairs=pairs, index=index)
    worst = 0.0
    for name, value in model.parameters().items():
        numeric = np.zeros_like(value)
        for k in range(value.size):
            original = value.flat[k]
            value.flat[k] = original + h
            up, _ = model.loss_and_grad(x0, labels, pairs=pairs, index=index)
            value.flat[k] = original - h
            down, _ = model.loss_and_grad(x0, labels, pairs=pairs, index=index)
            value.flat[k] = original
            numeric.flat[k] = (up - down) / (2 * h)

        scale = max(np.linalg.norm(grads[name]) + np.linalg.norm(numeric), 1.0e-12)
        worst = max(worst, np.linalg.norm(grads[name] - numeric) / scale)
    return worst

def check_gradients(n=10, hidden=4, num_layers=2, h=1.0e-5, tol=1.0e-4, seed=0):
    """
    Analytic gradients of every parameter against central finite differences, for the node and link heads.
    """
    rng = make_rng(seed)
    g = random_signed_digraph(n, density=0.4, seed=seed)
    x0 = complex_features(rng.standard_normal((n, 3)), imag='copy')

    node = MSGNN(3, 3, task='node', hidden=hidden, num_layers=num_layers, seed=seed)
    node.set_laplacian(g, 0.2)
    index = np.arange(6)
    node_error = _gradient_error(node, x0, rng.integers(0, 3, size=6), None, index, h)

    link = MSGNN(3, 4, task='link', hidden=hidden, num_layers=num_layers, seed=seed + 1)
    link.set_laplacian(g, 0.2, normalization=None)
    pairs = rng.integers(0, n, size=(12, 2))
    link_error = _gradient_error(link, x0, rng.integers(0, 4, size=12), pairs, None, h)

    passed = node_error < tol and link_error < tol
    return _result('gradients', passed, "relative error node {:.2e}, link {:.2e}".format(node_error, link_error))

def check_meta_graphs():
    mismatches = []
    for (meta, gamma), expected in META_GRAPHS.items():
        F = meta_f1(gamma) if meta == 'f1' else meta_f2(gamma)
        if not np.array_equal(F, np.array(expected)):
            mismatches.append('{}({})'.format(meta, gamma))
    return _result('meta_graphs', len(mismatches) == 0, 'mismatches: {}'.format(mismatches) if mismatches else 'all match')

def check_generator_statistics(num_seeds=50, n=60, p=0.3, eta=0.2, sigmas=4.0, seed=0, show_progress=False):
    """
    Pooled over seeds, the SDSBM edge counts of every block pair lie within `sigmas` binomial standard
    deviations of p |F_kl| times the number of ordered pairs, and the fraction of flipped signs lies
    within `sigmas` standard deviations of eta.
    """
    F = meta_f1(0.25)
    C = F.shape[0]
    edges, possible = np.zeros((C, C)), np.zeros((C, C))
    flipped, total = 0, 0

    for s in tqdm(make_rng(seed).integers(2**31, size=num_seeds), desc='Generator seeds', leave=True, disable=not show_progress):
        for noise in [0.0, eta]:
            g, labels = generate_sdsbm(SdsbmParams(F, n, p, rho=1.5, eta=noise, seed=int(s)))
            coo = g.adjacency.tocoo()
            expected_sign = np.sign(F[labels[coo.row], labels[coo.col]])
            if noise == 0:
                if np.any(coo.data != expected_sign):
                    return _result('generator_statistics', False, 'sign mismatch without flips')
                np.add.at(edges, (labels[coo.row], labels[coo.col]), 1)
                sizes = np.bincount(labels, minlength=C)
                possible += np.outer(sizes, sizes) - np.diag(sizes)
            else:
                flipped += int((coo.data != expected_sign).sum())
                total += coo.data.shape[0]

    prob = p * np.abs(F)
    sd = np.sqrt(possible * prob * (1 - prob))
    density_ok = np.all(np.abs(edges - possible * prob) <= sigmas * sd)
    flip_sd = np.sqrt(total * eta * (1 - eta))
    flip_ok = abs(flipped - total * eta) <= sigmas * flip_sd

    detail = "max block deviation {:.2f} sd, flip fraction {:.4f}".format(
        np.max(np.abs(edges - possible * prob) / np.where(sd > 0, sd, 1.0)), flipped / max(total, 1))
    return _result('generator_statistics', density_ok and flip_ok, detail)

def check_fill(seed=0):
    """
    A constructed one-day lag is recovered with slope 1, sparsify_top keeps the quantile count, and a simulated
    panel runs end to end through the 5C link task.
    """
    rng = make_rng(seed)
    leader = rng.standard_normal(60)
    follower = np.concatenate([[rng.standard_normal()], leader[:-1]])
    panel = ReturnPanel(np.vstack([leader, follower, rng.standard_normal(60)]))
    beta = lead_lag_matrix(panel)[0, 1]

    betas = rng.standard_normal((10, 10))
    kept = sparsify_top(betas, frac=0.2).number_of_edges()

    with tempfile.TemporaryDirectory() as tmpdir:
        path = os.path.join(tmpdir, 'returns.csv')
        write_returns(simulate_lead_lag_panel(num_stocks=20, num_days=120, seed=seed), path)
        config = RunConfig(task='5C', source='returns', path=path, num_splits=2, epochs=20, seed=seed)
        runs, report, splits = run_link_experiment(config)

    passed = abs(beta - 1.0) <= 1.0e-10 and kept == 18 and report.shape[0] == 1 and np.isfinite(report['mean'].iloc[0])
    detail = "beta {:.12f}, kept {} of 90, 5C accuracy {:.3f}".format(beta, kept, report['mean'].iloc[0])
    return _result('fill', passed, detail)

CHECKS = {
    'laplacian_properties':check_laplacian_properties,
    'reductions':check_reductions,
    'golden_values':check_golden_values,
    'gradients':check_gradients,
    'meta_graphs':check_meta_graphs,
    'generator_statistics':check_generator_statistics,
    'fill':check_fill,
}

def run_all_checks(suites=None, seed=0, show_progress=False):
    """
    Run the property suites.

    Parameters
    ----------
    :param suites : list, optional
        Names from CHECKS; all suites by default.

    :param seed : int, default 0

    :param show_progress : bool, default False

    Returns
    -------
    DataFrame
        One row per suite with columns 'check', 'passed', 'detail', 'seconds'.  A suite that raises is failed.
    """
    results = []
    for name in (suites or list(CHECKS)):
        start = time.time()
        func = CHECKS[name]
        accepted = inspect.signature(func).parameters
        kwargs = {key:value for key, value in [('seed', seed), ('show_progress', show_progress)] if key in accepted}
        try:
            result = func(**kwargs)
        except Exception as err:
            result = _result(name, False, '{}: {}'.format(type(err).__name__, err))
        result['seconds'] = time.time() - start
        results.append(result)
    return pd.DataFrame(results, columns=['check', 'passed', 'detail', 'seconds'])
