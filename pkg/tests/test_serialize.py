import json
import math

import numpy as np

from mlineq.serialize import decode, dumps, encode


def test_matrix_round_trip(rng):
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    back = decode(json.loads(dumps(A)))
    assert np.array_equal(back, A)


def test_nested_inputs_round_trip(rng):
    obj = {
        "tuples": [[np.eye(2, dtype=complex), 2 * np.eye(2, dtype=complex)], [np.eye(2, dtype=complex)] * 2],
        "weights": [np.array([0.25, 0.75]), np.array([0.5, 0.5])],
        "x": np.array([1 + 1j, 2 - 0.5j]),
        "A": np.array([[4.0 + 0j]]),
    }
    back = decode(json.loads(dumps(obj)))
    assert np.array_equal(back["tuples"][0][1], obj["tuples"][0][1])
    assert np.allclose(back["weights"][0], [0.25, 0.75])
    assert np.array_equal(back["x"], obj["x"])
    assert back["A"].shape == (1, 1)


def test_seventeen_digits():
    x = 0.1 + 0.2
    assert float(dumps(x)) == x
    assert dumps(1.0) == "1.0"
    assert dumps(math.pi) == "3.1415926535897931"


def test_encode_scalars():
    assert encode(np.float64(1.5)) == 1.5
    assert encode(np.int64(3)) == 3
    assert encode(np.bool_(True)) is True
