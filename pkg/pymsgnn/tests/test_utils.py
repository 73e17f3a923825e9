import numpy as np
import pandas as pd
import pytest

from pymsgnn.utils import (pyMSGNNError, pyMSGNNConfigError, pyMSGNNDataError, pyMSGNNNumericalError, make_rng,
    check4columns, isin_sorted, pair_codes, value_to_int, mean_std_sem)


def test_make_rng():
    rng = np.random.default_rng(3)
    assert make_rng(rng) is rng
    assert make_rng(7).random() == make_rng(7).random()

def test_errors():
    assert isinstance(pyMSGNNConfigError("bad"), ValueError)
    assert isinstance(pyMSGNNDataError("bad"), pyMSGNNError)
    assert str(pyMSGNNDataError("missing column")) == "missing column"
    assert str(pyMSGNNError()) == "pymsgnn error."

    err = pyMSGNNNumericalError("no convergence", best_estimate=1.5)
    assert isinstance(err, ArithmeticError)
    assert err.best_estimate == 1.5

def test_check4columns():
    df = pd.DataFrame({'src':[0], 'dst':[1]})
    check4columns(df, ['src', 'dst'])
    with pytest.raises(pyMSGNNDataError):
        check4columns(df, ['weight'])

def test_isin_sorted():
    master = np.array([1, 4, 9])
    assert isin_sorted(np.array([0, 1, 4, 5, 9, 10]), master).tolist() == [False, True, True, False, True, False]
    assert isin_sorted(np.array([1, 2]), np.array([])).tolist() == [False, False]

def test_pair_codes():
    assert pair_codes([0, 1, 2], [2, 0, 1], 3).tolist() == [2, 3, 7]

def test_value_to_int():
    mapped, id2int = value_to_int(['b', 'a', 'b', 'c'])
    assert mapped.tolist() == [1, 0, 1, 2]
    assert id2int == {'a':0, 'b':1, 'c':2}

    mapped, id2int = value_to_int([10, 3, 10, 200])
    assert mapped.tolist() == [1, 0, 1, 2]

    mapped = value_to_int(['x', 'a', 'x'], sort_values='none', return_map=False)
    assert mapped.tolist() == [0, 1, 0]

def test_mean_std_sem():
    mean, std, sem = mean_std_sem([1.0, 2.0, 3.0])
    assert mean == 2.0
    assert std == pytest.approx(1.0)
    assert sem == pytest.approx(1.0 / np.sqrt(3))

    assert mean_std_sem([5.0]) == (5.0, 0.0, 0.0)
    assert np.isnan(mean_std_sem([])[0])
