import numpy as np
import pytest
from fastapi.testclient import TestClient

from purimap import serialize
from purimap.service import app
from purimap.states import DensityMatrix, figure_example, random_commuting_pair


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def state_payload(rho):
    return serialize.state_to_json(rho)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_check_identical_yes(client):
    rho = figure_example(0.3).states[0]
    body = {"state_a": state_payload(rho), "state_b": state_payload(rho), "eta": 0.5}
    response = client.post("/check", json=body)
    assert response.status_code == 200
    out = response.json()
    assert out["verdict"] == "YES"
    assert out["trace_distance"] <= 1e-12
    assert out["components"] == [[0, 1]]
    assert out["bounds"]["lower"] == 0.0


def test_check_commuting_no_with_bounds(client):
    a, b = random_commuting_pair(3, seed=0)
    body = {"state_a": state_payload(a), "state_b": state_payload(b), "eta": 0.3}
    response = client.post("/check", json=body)
    assert response.status_code == 200
    out = response.json()
    assert out["verdict"] == "NO"
    assert out["bounds"]["eta_used"] == 0.3
    assert out["wcd"] <= 1e-7
    assert out["certificate"] is None


def test_check_orthogonal_pair(client):
    a = DensityMatrix(np.diag([0.5, 0.5, 0.0, 0.0]))
    b = DensityMatrix(np.diag([0.0, 0.0, 0.5, 0.5]))
    body = {"state_a": state_payload(a), "state_b": state_payload(b)}
    response = client.post("/check", json=body)
    out = response.json()
    assert out["verdict"] == "YES"
    assert out["components"] == [[0], [1]]
    assert np.isclose(out["trace_distance"], 1.0)
    # perfect purification possible: the sharp bounds collapse to zero,
    # while the constant-purifier bound stays at eta * D
    assert out["bounds"]["lower"] == 0.0
    assert out["bounds"]["upper_uhlmann"] <= 1e-7
    assert np.isclose(out["bounds"]["upper_const"], 0.5)


def test_check_rejects_invalid_state(client):
    bad = {"dim": 2, "entries": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}
    rho = figure_example(0.3).states[0]
    response = client.post("/check", json={"state_a": bad, "state_b": state_payload(rho)})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "invalid_state"


def test_check_rejects_dimension_mismatch(client):
    a = DensityMatrix(np.eye(2) / 2)
    b = DensityMatrix(np.eye(3) / 3)
    response = client.post(
        "/check", json={"state_a": state_payload(a), "state_b": state_payload(b)}
    )
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "dimension_mismatch"


def test_check_rejects_bad_eta(client):
    rho = figure_example(0.3).states[0]
    response = client.post(
        "/check",
        json={"state_a": state_payload(rho), "state_b": state_payload(rho), "eta": 1.5},
    )
    assert response.status_code == 422


def test_sweep_csv_shape_and_determinism(client):
    body = {"theta_min": 0.0, "theta_max": np.pi / 2, "steps": 9}
    first = client.post("/sweep", json=body)
    second = client.post("/sweep", json=body)
    assert first.status_code == 200
    assert first.headers["content-type"].startswith("text/csv")
    assert first.text == second.text
    lines = first.text.strip().split("\n")
    assert lines[0] == "theta,trace_distance,wcd,fidelity,lower,upper_const,upper_uhlmann"
    assert len(lines) == 10
    row0 = lines[1].split(",")
    assert float(row0[0]) == 0.0
    assert float(row0[2]) == 0.0  # wcd vanishes at theta = 0


def test_sweep_middle_row_bracket(client):
    # 3-point grid over [0, pi/2] puts pi/4 in the middle row
    body = {"theta_min": 0.0, "theta_max": np.pi / 2, "steps": 3}
    lines = client.post("/sweep", json=body).text.strip().split("\n")
    row = dict(zip(lines[0].split(","), map(float, lines[2].split(","))))
    assert np.isclose(row["theta"], np.pi / 4)
    assert 0.0045 <= row["lower"] <= 0.0055
    assert 0.0067 <= row["upper_uhlmann"] <= 0.0077


def test_sweep_rejects_bad_range(client):
    response = client.post("/sweep", json={"theta_min": 1.0, "theta_max": 0.5, "steps": 5})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "invalid_range"


def test_proptest_runs_suite(client):
    body = {"suite": "purify-faithful", "trials": 10, "seed": 2}
    response = client.post("/proptest", json=body)
    assert response.status_code == 200
    out = response.json()
    assert out["passed"] is True
    assert out["checked"] == 10
    assert out["counterexamples"] == []


def test_proptest_deterministic(client):
    body = {"suite": "commuting-no", "trials": 5, "seed": 7}
    a = client.post("/proptest", json=body).json()
    b = client.post("/proptest", json=body).json()
    assert a == b


def test_proptest_unknown_suite(client):
    response = client.post("/proptest", json={"suite": "nope", "trials": 5, "seed": 0})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "unknown_suite"
