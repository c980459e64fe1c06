import math
import os

import numpy as np
import pytest

import hagkit


def test_standard_params_validate():
    ps = hagkit.ParameterSet.standard(2, 0.5)
    rep = hagkit.validate(ps)
    assert rep["passed"]
    assert rep["residuals"]["QtP-PtQ"][0] == 0.0


def test_bad_params_report_residual():
    ps = hagkit.ParameterSet(1.0, [0.0], [0.0], [[1.0]], [[1.0]])
    rep = hagkit.validate(ps)
    assert not rep["passed"]
    assert rep["residuals"]["Q*P-P*Q-2iI"][0] == pytest.approx(2.0)
    with pytest.raises(hagkit.DataError):
        hagkit.Basis(ps)


def test_shape_mismatch_raises_structural():
    ps = hagkit.ParameterSet(1.0, [0.0, 0.0], [0.0], [[1.0]], [[1j]])
    with pytest.raises(hagkit.StructuralError):
        hagkit.validate(ps)


def test_load_params_and_json_round_trip():
    path = os.path.join(os.environ.get("HAGKIT_DATA_DIR", "data"), "hermite2d.json")
    ps = hagkit.load_params(path)
    assert ps.dim == 2
    again = hagkit.ParameterSet.from_json(ps.to_json())
    assert again.hash() == ps.hash()


def test_hermite_reference_values():
    assert hagkit.hermite_poly(3, 1.0) == -4.0
    assert hagkit.hermite_function(0, 0.0) == pytest.approx(math.pi ** -0.25, abs=1e-15)
    assert hagkit.hermite_wigner(0, 0, 0.0, 0.0) == pytest.approx(1 / math.pi, abs=1e-15)
    assert hagkit.hermite_husimi(0, 0.0, 0.0) == pytest.approx(1 / (2 * math.pi), abs=1e-15)


def test_squeeze_round_trip():
    ps = hagkit.from_squeeze([0.0], [0.0], [[0.5]])
    assert ps.Q[0, 0] == pytest.approx(math.sqrt(3))
    W, V = hagkit.to_squeeze(ps)
    assert W[0, 0] == pytest.approx(0.5)
    assert V[0, 0] == pytest.approx(1.0)


def test_wavepackets_orthonormal_1d():
    b = hagkit.Basis(hagkit.ParameterSet.standard(1))
    xs = np.linspace(-12, 12, 1201)
    h = xs[1] - xs[0]
    vals = np.array([hagkit.wavepackets(b, "total", 4, np.array([x])) for x in xs])
    gram = h * vals.conj().T @ vals
    assert np.allclose(gram, np.eye(5), atol=1e-10)


def test_wigner_methods_agree():
    ps = hagkit.from_squeeze([0.2, -0.1], [0.3, 0.0], [[0.3, 0.1j], [0.1j, -0.2]], 0.7)
    b = hagkit.Basis(ps)
    x = np.array([0.4, -0.2])
    xi = np.array([0.1, 0.5])
    a = hagkit.wigner(b, [2, 1], [1, 0], x, xi, "closed")
    r = hagkit.wigner(b, [2, 1], [1, 0], x, xi, "recurrence")
    assert abs(a - r) < 1e-12
    table = hagkit.wigner_table(b, "total", 3, x, xi)
    assert np.allclose(table, table.conj().T, atol=1e-13)
    assert hagkit.husimi(b, [1, 1], x, xi) == pytest.approx(abs(hagkit.fbi(b, [1, 1], x, xi)) ** 2)


def test_project_and_reconstruct():
    b = hagkit.Basis(hagkit.ParameterSet.standard(1))
    res = hagkit.project(lambda x: hagkit.hermite_function(2, x[0]), b, 6)
    c = res["coeffs"]
    assert res["indices"][2] == [2]
    assert abs(c[2] - 1.0) < 1e-10
    assert abs(res["bessel_defect"]) < 1e-10
    x = np.array([0.3])
    assert abs(hagkit.reconstruct(c, b, 6, x) - hagkit.hermite_function(2, 0.3)) < 1e-10


def test_propagate_harmonic_period():
    ps = hagkit.ParameterSet.standard(1)
    ps.q = np.array([1.0])
    out = hagkit.propagate(ps, "harmonic", 2 * math.pi, 2 * math.pi / 2000)
    assert out["completed"]
    end = out["states"][-1]
    assert end["params"].q[0] == pytest.approx(1.0, abs=1e-5)
    assert end["det_phase"] == pytest.approx(-1.0, abs=1e-5)
    with pytest.raises(hagkit.DomainError):
        hagkit.propagate(ps, "harmonic", 1.0, 0.3)
