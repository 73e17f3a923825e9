import numpy as np
import pandas as pd
import pytest

from pymsgnn.utils import pyMSGNNDataError
from pymsgnn.signednetwork import (SignedDiGraph, from_edge_list, symmetrized_adjacency, absolute_degree,
    absolute_degree_vector, signed_subgraphs)
from pymsgnn.sparsenetworkutils import (largest_connected_component_vertices, sparse2dataframe,
    gershgorin_upper_bound, sparse_hermitian_power_iteration)
from pymsgnn.checks import TOY_EDGES, toy_graph


def test_toy_graph_matrices():
    g = toy_graph()
    assert g.n == 4
    assert g.number_of_edges() == 8
    assert symmetrized_adjacency(g)[0, 1] == -1.25
    assert absolute_degree(g)[0, 0] == pytest.approx(4.8)

    positive, negative = signed_subgraphs(g)
    assert positive.number_of_edges() == 5
    assert negative.number_of_edges() == 3
    assert (negative.adjacency.data < 0).all()

def test_absolute_degree_never_cancels():
    g = from_edge_list([(0, 1, 1.0), (1, 2, -1.0)])
    assert absolute_degree_vector(g).tolist() == [0.5, 1.0, 0.5]

def test_edges_sorted():
    g = from_edge_list([(2, 0, 1.0), (0, 2, -2.0), (0, 1, 0.5)])
    edges = g.edges()
    assert edges[['src', 'dst']].values.tolist() == [[0, 1], [0, 2], [2, 0]]
    assert edges['weight'].tolist() == [0.5, -2.0, 1.0]

def test_from_edge_list_dataframe():
    df = pd.DataFrame(TOY_EDGES, columns=['src', 'dst', 'weight'])
    assert np.array_equal(from_edge_list(df).to_dense(), toy_graph().to_dense())

@pytest.mark.parametrize('rows', [
    [(0, 1, 1.0), (0, 1, -1.0)],
    [(0, 1, 0.0)],
    [(-1, 1, 1.0)],
    [(0.5, 1, 1.0)],
    [(0, 1, np.inf)],
])
def test_from_edge_list_rejects(rows):
    with pytest.raises(pyMSGNNDataError):
        from_edge_list(rows)

def test_from_edge_list_n():
    assert from_edge_list([(0, 1, 1.0)], n=5).n == 5
    assert from_edge_list([], n=3).number_of_edges() == 0
    with pytest.raises(pyMSGNNDataError):
        from_edge_list([(0, 4, 1.0)], n=3)

def test_graph_is_immutable():
    g = toy_graph()
    with pytest.raises(ValueError):
        g.adjacency.data[0] = 2.0

def test_reverse_and_unweighted():
    g = toy_graph()
    assert np.array_equal(g.reverse().to_dense(), g.to_dense().T)
    assert set(g.unweighted().adjacency.data.tolist()) == {-1.0, 1.0}
    assert g.unweighted().number_of_edges() == g.number_of_edges()

def test_remove_edges():
    g = toy_graph()
    h = g.remove_edges(np.array([0, 3]), np.array([1, 0]))
    assert h.number_of_edges() == 7
    assert h.has_edges(np.array([0, 1]), np.array([1, 0])).tolist() == [False, True]
    assert g.number_of_edges() == 8

def test_is_symmetric():
    assert from_edge_list([(0, 1, -1.0), (1, 0, -1.0)]).is_symmetric()
    assert not toy_graph().is_symmetric()

def test_subgraph_and_largest_component():
    g = from_edge_list([(0, 1, 1.0), (1, 2, -1.0), (3, 4, 2.0)], node_ids=np.array(['a', 'b', 'c', 'd', 'e']))
    lcc = g.largest_connected_component()
    assert lcc.n == 3
    assert lcc.node_ids.tolist() == ['a', 'b', 'c']
    assert lcc.number_of_edges() == 2
    assert largest_connected_component_vertices(g.adjacency).tolist() == [0, 1, 2]

def test_sparse2dataframe_complex():
    mat = np.array([[1.0, 2.0j], [-2.0j, 0.0]])
    df = sparse2dataframe(mat)
    assert list(df.columns) == ['i', 'j', 're', 'im']
    assert df['im'].tolist() == [0.0, 2.0, -2.0]
    assert sparse2dataframe(mat, upper_only=True).shape[0] == 2

def test_power_iteration():
    mat = np.diag([1.0, 3.0, 2.0])
    assert sparse_hermitian_power_iteration(mat, seed=1) == pytest.approx(3.0, abs=1e-6)
    assert gershgorin_upper_bound(mat) == 3.0
    assert sparse_hermitian_power_iteration(np.zeros((3, 3))) == 0.0

def test_repr():
    assert repr(toy_graph()) == "SignedDiGraph(n=4, edges=8, positive=5, negative=3)"
