import math
import pickle

import numpy as np
import pytest

from mlineq import functions as fn
from mlineq.functions import HypothesisError


def test_power_tags():
    assert fn.power(2).convex and not fn.power(2).concave
    assert fn.power(0.5).concave
    assert fn.power(-1).convex
    assert not fn.power(3).convex


def test_round_trip_and_pickle():
    for f in (fn.power(-0.5), fn.log(), fn.square_minus_identity(), fn.transpose_function(fn.log())):
        g = fn.ScalarFunction.from_dict(f.to_dict())
        assert g == f
        assert pickle.loads(pickle.dumps(f)).scalar(2.5) == f.scalar(2.5)


def test_transpose_of_log():
    g = fn.transpose_function(fn.log())
    assert g.scalar(2.0) == pytest.approx(2 * math.log(0.5))


def test_verify_multiplicativity():
    fn.verify_multiplicativity(fn.power(1.7), "sub", 0.5, 2)
    fn.verify_multiplicativity(fn.log(), "super", 1, math.e**2)
    with pytest.raises(HypothesisError):
        fn.verify_multiplicativity(fn.log(), "super", 1, 10)
    with pytest.raises(HypothesisError):
        fn.verify_multiplicativity(fn.square_minus_identity(), "sub", 1, 2)


def test_domain_checks():
    assert fn.POSITIVE_OPEN.contains(1e-300)
    assert not fn.POSITIVE_OPEN.contains(0.0)
    w = fn.POSITIVE_CLOSED.contains_clip(np.array([-1e-14, 1.0]))
    assert w[0] == 0.0


def test_check_total():
    fn.power(2).check_total()
    fn.log().check_total()
