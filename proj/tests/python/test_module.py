import numpy as np
import pytest

import unitri


def off_band(t):
    n = t.shape[0]
    return max((abs(t[i, j]) for i in range(n) for j in range(n) if abs(i - j) >= 2), default=0.0)


def test_tridiagonalize_gaussian():
    a = unitri.generate("gaussian", 4, 7)
    r = unitri.tridiagonalize(a)
    u = r["U"]
    assert u.shape == (4, 4)
    assert np.linalg.norm(u @ u.conj().T - np.eye(4)) <= 1e-10
    t = u @ a @ u.conj().T
    assert off_band(t) <= 1e-8 * np.linalg.norm(a)
    assert np.allclose(t, r["T"], atol=1e-12)


def test_tridiagonalize_accepts_numpy_input():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    r = unitri.tridiagonalize(a)
    assert r["off_residual"] <= 1e-8
    v = unitri.verify(a, r["U"])
    assert v["spectrum_gap"] <= 1e-8


def test_classify_jordan_block():
    g = unitri.classify(unitri.generate("jordan", 4, 0))
    assert (g["s1"], g["s2"], g["s3"]) == (False, False, True)
    assert not unitri.classify(np.eye(4, dtype=complex))["s3"]


def test_degree_of_d():
    assert unitri.degree_of_D(unitri.generate("gaussian", 4, 11), lines=3)["count"] == 4


def test_parse_matrix_text():
    m = unitri.parse_matrix("1 2+i\n-i 4\n")
    assert m[0, 1] == 2 + 1j
    assert m[1, 0] == -1j


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        unitri.parse_matrix("1 2\n3 x\n")
    with pytest.raises(ValueError):
        unitri.tridiagonalize(np.zeros((5, 5), dtype=complex))
