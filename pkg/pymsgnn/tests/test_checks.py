from pymsgnn.checks import (CHECKS, TOY_FEATURES, toy_graph, check_laplacian_properties, check_golden_values, check_meta_graphs,
    run_all_checks)


def test_toy_graph():
    g = toy_graph()
    assert g.n == 4
    assert g.number_of_edges() == 8
    assert repr(g) == 'SignedDiGraph(n=4, edges=8, positive=5, negative=3)'
    assert set(TOY_FEATURES) == {'(F,F)', '(F,T)', "(F,T')", '(T,F)', '(T,T)'}

def test_golden_values():
    result = check_golden_values()
    assert result['passed'], result['detail']

def test_meta_graphs():
    assert check_meta_graphs()['passed']

def test_laplacian_properties_small():
    result = check_laplacian_properties(num_graphs=10, max_n=15)
    assert result['check'] == 'laplacian_properties'
    assert result['passed'], result['detail']

def test_run_all_checks():
    results = run_all_checks(suites=['golden_values', 'meta_graphs', 'reductions'], seed=1)
    assert results['check'].tolist() == ['golden_values', 'meta_graphs', 'reductions']
    assert results['passed'].all()
    assert (results['seconds'] >= 0).all()

def test_run_all_checks_reports_exceptions(monkeypatch):
    def broken(seed=0):
        raise RuntimeError('boom')
    monkeypatch.setitem(CHECKS, 'golden_values', broken)
    results = run_all_checks(suites=['golden_values'])
    assert not results['passed'].iloc[0]
    assert 'RuntimeError: boom' in results['detail'].iloc[0]
