import warnings

import numpy as np
import pytest

from pymsgnn.utils import pyMSGNNConfigError, pyMSGNNDataError
from pymsgnn.signednetwork import from_edge_list
from pymsgnn.synthetic import random_signed_digraph, generate_ssbm
from pymsgnn.methods.features import FeatureSpec, build_features, eigenvector_features, feature_sum_statistics
from pymsgnn.methods.linksplit import LINK_TASKS, LinkSplit, usable_edges, sample_non_edges, split_links
from pymsgnn.methods.nodesplit import split_nodes
from pymsgnn.methods.evaluation import accuracy, ari, summarize_runs
from pymsgnn.checks import TOY_FEATURES, toy_graph


@pytest.mark.parametrize('spec', list(TOY_FEATURES))
def test_toy_features(spec):
    features = build_features(toy_graph(), spec, standardize=False)
    assert features[0] == pytest.approx(TOY_FEATURES[spec])

def test_feature_spec_parsing():
    assert FeatureSpec.from_string('(T,F)') == FeatureSpec(True, 'none')
    assert FeatureSpec.from_string("T,T'") == FeatureSpec(True, 'abs-sum')
    assert FeatureSpec.from_string("FT'") == FeatureSpec(False, 'abs-sum')
    assert str(FeatureSpec(False, 'net-sum')) == '(F,T)'
    assert FeatureSpec.from_string('(F,T)').dim == 2
    with pytest.raises(pyMSGNNConfigError):
        FeatureSpec.from_string('(X,F)')
    with pytest.raises(pyMSGNNConfigError):
        FeatureSpec(True, 'mean')

def test_features_standardized():
    features = build_features(random_signed_digraph(30, density=0.2, seed=1), '(T,T)')
    assert features.shape == (30, 4)
    assert np.allclose(features.mean(axis=0), 0.0)

def test_eigenvector_features():
    g, labels = generate_ssbm(60, 3, 0.3, seed=0)
    features = eigenvector_features(g, 3, seed=0)
    assert features.shape == (60, 3)
    assert np.allclose(features.T @ features, np.eye(3), atol=1e-8)
    pivots = features[np.argmax(np.abs(features), axis=0), np.arange(3)]
    assert np.all(pivots > 0)

def test_eigenvector_features_dense_fallback():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        features = eigenvector_features(toy_graph(), 3)
    assert features.shape == (4, 3)
    assert len(caught) == 1

def test_feature_sum_statistics():
    stats = feature_sum_statistics(toy_graph())
    assert list(stats.columns) == ['m1', 's1', 'm2', 's2']
    assert stats['m1'].iloc[0] == pytest.approx(4.0)
    assert stats['s1'].iloc[0] == pytest.approx(np.sqrt(2.0 / 3.0) / 2)
    assert stats['m2'].iloc[0] == pytest.approx(11.8)

def test_total_degree_features():
    spec = FeatureSpec.from_string('(T,F,total)')
    assert spec == FeatureSpec(True, 'none', directed=False)
    assert str(spec) == '(T,F,total)'
    assert spec.dim == 2
    assert FeatureSpec(False, 'abs-sum').total().dim == 1

    g = random_signed_digraph(30, density=0.2, seed=2)
    for tup in ['(T,T)', "(F,T')"]:
        directed = build_features(g, tup, standardize=False)
        total = build_features(g, FeatureSpec.from_string(tup).total(), standardize=False)
        assert np.allclose(total, directed[:, 0::2] + directed[:, 1::2])

@pytest.mark.parametrize('tup', ['(T,F)', '(T,T)', "(T,T')", '(F,F)', '(F,T)', "(F,T')"])
def test_reversal_swaps_in_and_out(tup):
    g = random_signed_digraph(30, density=0.2, seed=6)
    swap = [1, 0, 3, 2] if tup.startswith('(T') else [1, 0]
    for standardize in [False, True]:
        features = build_features(g, tup, standardize=standardize)
        reversed_features = build_features(g.reverse(), tup, standardize=standardize)
        assert np.array_equal(reversed_features, features[:, swap])

    total = FeatureSpec.from_string(tup).total()
    assert np.array_equal(build_features(g.reverse(), total), build_features(g, total))


def _graph():
    return random_signed_digraph(40, density=0.15, seed=0)

def test_split_sign():
    g = _graph()
    split = split_links(g, 'SP', seed=0)
    m = g.number_of_edges()
    assert split.num_classes == 2
    assert split.train_pairs.shape[0] + split.test_pairs.shape[0] == m
    assert split.test_pairs.shape[0] == round(0.2 * m)

    dense = g.to_dense()
    for pairs, labels in [(split.train_pairs, split.train_labels), (split.test_pairs, split.test_labels)]:
        assert np.array_equal(labels, (dense[pairs[:, 0], pairs[:, 1]] < 0).astype(int))

    assert not split.observed.has_edges(split.test_pairs[:, 0], split.test_pairs[:, 1]).any()
    assert split.observed.has_edges(split.train_pairs[:, 0], split.train_pairs[:, 1]).all()

def test_split_direction():
    g = _graph()
    split = split_links(g, 'DP', seed=1)
    assert np.bincount(split.train_labels).tolist()[0] == np.bincount(split.train_labels).tolist()[1]

    forward = split.train_pairs[split.train_labels == 0]
    backward = split.train_pairs[split.train_labels == 1]
    assert g.has_edges(forward[:, 0], forward[:, 1]).all()
    assert not g.has_edges(forward[:, 1], forward[:, 0]).any()
    assert g.has_edges(backward[:, 1], backward[:, 0]).all()

@pytest.mark.parametrize('task', ['3C', '5C'])
def test_split_none_class(task):
    g = _graph()
    split = split_links(g, task, seed=2)
    none = LINK_TASKS[task] - 1
    for pairs, labels in [(split.train_pairs, split.train_labels), (split.test_pairs, split.test_labels)]:
        counts = np.bincount(labels, minlength=LINK_TASKS[task])
        assert counts[none] == round(counts[:none].mean())
        unlinked = pairs[labels == none]
        assert not g.has_edges(unlinked[:, 0], unlinked[:, 1]).any()
        assert not g.has_edges(unlinked[:, 1], unlinked[:, 0]).any()

def test_split_four_classes():
    g = _graph()
    split = split_links(g, '4C', seed=3)
    dense = g.to_dense()
    pairs, labels = split.train_pairs, split.train_labels
    weights = np.where(labels < 2, dense[pairs[:, 0], pairs[:, 1]], dense[pairs[:, 1], pairs[:, 0]])
    assert np.all((weights > 0) == (labels % 2 == 0))

def test_split_seeded():
    g = _graph()
    a, b = split_links(g, '5C', seed=9), split_links(g, '5C', seed=9)
    assert np.array_equal(a.test_pairs, b.test_pairs)
    assert np.array_equal(a.train_labels, b.train_labels)

def test_split_frame():
    g = _graph()
    split = split_links(g, '3C', seed=4)
    df = split.to_frame()
    assert list(df.columns) == ['i', 'j', 'class', 'partition']
    rebuilt = LinkSplit.from_frame(df, g, '3C')
    assert (rebuilt.observed.adjacency != split.observed.adjacency).nnz == 0
    assert np.array_equal(rebuilt.test_labels, split.test_labels)

def test_usable_edges():
    g = from_edge_list([(0, 1, 1.0), (1, 0, -1.0), (1, 2, 1.0), (2, 2, 1.0)])
    assert usable_edges(g, 'SP').shape[0] == 3
    assert usable_edges(g, 'DP')[['src', 'dst']].values.tolist() == [[1, 2]]

def test_split_reciprocal_only():
    g = from_edge_list([(0, 1, 1.0), (1, 0, 1.0)])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        split = split_links(g, 'DP', seed=0)
    assert len(caught) == 1
    assert split.train_pairs.shape == (0, 2)
    assert split.test_pairs.shape == (0, 2)

def test_split_missing_class():
    g = random_signed_digraph(30, density=0.2, seed=0, negative_frac=0.0)
    with pytest.raises(pyMSGNNDataError):
        split_links(g, 'SP', seed=0)

def test_split_arguments():
    with pytest.raises(pyMSGNNConfigError):
        split_links(_graph(), '6C')
    with pytest.raises(pyMSGNNConfigError):
        split_links(_graph(), 'SP', test_frac=1.0)

def test_sample_non_edges():
    g = _graph()
    pairs = sample_non_edges(g, 50, np.random.default_rng(0))
    assert pairs.shape == (50, 2)
    assert np.all(pairs[:, 0] != pairs[:, 1])
    assert not g.has_edges(pairs[:, 0], pairs[:, 1]).any()

    complete = from_edge_list([(i, j, 1.0) for i in range(3) for j in range(3) if i != j])
    with pytest.raises(pyMSGNNDataError):
        sample_non_edges(complete, 1, np.random.default_rng(0))


def test_split_nodes():
    labels = np.repeat([0, 1, 2], 50)
    split = split_nodes(labels, seed=0)
    assert (split.train.shape[0], split.validation.shape[0], split.test.shape[0]) == (120, 15, 15)
    assert split.seed_nodes.shape[0] == 12
    assert np.isin(split.seed_nodes, split.train).all()

    everything = np.concatenate([split.train, split.validation, split.test])
    assert np.array_equal(np.sort(everything), np.arange(150))
    for c in range(3):
        assert (labels[split.test] == c).sum() == 5

    df = split.to_frame()
    assert list(df.columns) == ['node', 'partition', 'is_seed']
    assert df['is_seed'].sum() == 12

def test_split_nodes_errors():
    with pytest.raises(pyMSGNNDataError):
        split_nodes(np.repeat([0, 1], [50, 5]))
    with pytest.raises(pyMSGNNConfigError):
        split_nodes(np.repeat([0, 1], 50), test_frac=0.6, val_frac=0.5)


def test_accuracy_and_ari():
    assert accuracy([0, 1, 1, 0], [0, 1, 0, 0]) == 0.75
    assert ari([1, 1, 0, 0], [0, 0, 1, 1]) == 1.0
    with pytest.raises(pyMSGNNDataError):
        accuracy([], [])
    with pytest.raises(pyMSGNNDataError):
        ari([0, 1], [0, 1, 1])

def test_summarize_runs():
    row = summarize_runs([0.7, 0.8, 0.9], dataset='toy', method='MSGNN')
    assert row.shape[0] == 1
    assert row['mean'].iloc[0] == pytest.approx(0.8)
    assert row['std'].iloc[0] == pytest.approx(0.1)
    assert row['n_runs'].iloc[0] == 3
    assert row['dataset'].iloc[0] == 'toy'

@pytest.mark.parametrize('seed', range(5))
def test_split_three_classes_exhaustive(seed):
    # one reciprocal pair (0, 4), four one-way edges and five unlinked pairs
    g = from_edge_list([(0, 1, 1.0), (1, 2, -1.0), (2, 3, 2.0), (3, 0, 1.0), (0, 4, 1.0), (4, 0, -1.0)])
    dense = g.to_dense() != 0

    def brute_force_class(i, j):
        if dense[i, j] and dense[j, i]:
            return None
        if dense[i, j]:
            return 0
        if dense[j, i]:
            return 1
        return 2

    split = split_links(g, '3C', seed=seed)
    pairs = np.vstack([split.train_pairs, split.test_pairs])
    labels = np.concatenate([split.train_labels, split.test_labels])
    assert [brute_force_class(i, j) for i, j in pairs] == labels.tolist()

    one_way = sum(brute_force_class(i, j) in (0, 1) for i in range(5) for j in range(5) if i != j)
    assert one_way == 8
    assert (labels < 2).sum() == one_way
    assert not any({i, j} == {0, 4} for i, j in pairs)

def test_ari_of_random_labelings():
    rng = np.random.default_rng(0)
    truth = rng.integers(0, 3, size=200)
    scores = [ari(rng.integers(0, 3, size=200), truth) for _ in range(1000)]
    assert abs(np.mean(scores)) <= 0.02
