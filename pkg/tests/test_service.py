import math

import pytest
from fastapi.testclient import TestClient

from isokin.service.app import app
from isokin.service import handlers, schemas

client = TestClient(app)


def paraboloid_scenario(**overrides):
    data = {
        "field": {"family": "radial_paraboloid", "coefficient": 1.0},
        "robot": {"x": 2.0, "y": 0.0, "theta": 1.5707963267948966, "v_max": 1.0},
        "steering": {"kind": "constant", "theta_dot": 0.5, "duration": 0.5,
                     "dt": 0.001},
        "verify": {"suites": ["identities"], "points_per_family": 5},
        "export": {"isoline_times": [0.0], "isoline_levels": [-4.0],
                   "grid_times": [0.0], "grid_extent": [-3, 3, -3, 3],
                   "grid_n": 5},
        "seed": 3,
    }
    data.update(overrides)
    return data


def test_health():
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


class TestCharacteristicsEndpoint:
    def test_paraboloid_point(self):
        resp = client.post("/characteristics",
                           json={"scenario": paraboloid_scenario(),
                                 "t": 0.0, "x": 2.0, "y": 0.0})
        assert resp.status_code == 200
        body = resp.json()
        assert body["value"] == -4.0
        assert body["characteristics"]["kappa"] == 0.5
        assert body["characteristics"]["n_rho"] == -0.5
        assert body["characteristics"]["rho"] == 4.0
        assert body["frame"]["N"] == [-1.0, 0.0]
        assert body["density_rate_flagged"] is False

    def test_degenerate_point_maps_to_409(self):
        resp = client.post("/characteristics",
                           json={"scenario": paraboloid_scenario(),
                                 "t": 0.0, "x": 0.0, "y": 0.0})
        assert resp.status_code == 409
        assert resp.json()["code"] == "degenerate_point"

    def test_rotating_counterexample_flagged(self):
        sc = paraboloid_scenario(field={"family": "rotating_linear",
                                        "omega": 0.7, "phase": 0.0,
                                        "center": [0.0, 0.0]})
        resp = client.post("/characteristics",
                           json={"scenario": sc, "t": 0.0, "x": 0.0, "y": 0.0})
        assert resp.status_code == 200
        body = resp.json()
        assert body["characteristics"]["omega"] == pytest.approx(0.7, abs=1e-14)
        assert body["residual_density_rate"] == pytest.approx(0.7, abs=1e-14)
        assert body["density_rate_flagged"] is True

    def test_unknown_family_rejected(self):
        sc = paraboloid_scenario(field={"family": "hyperbolic_vortex"})
        resp = client.post("/characteristics",
                           json={"scenario": sc, "t": 0.0, "x": 1.0, "y": 1.0})
        assert resp.status_code == 422


class TestVerifyEndpoint:
    def test_small_suite_roundtrip(self):
        resp = client.post("/verify", json={"scenario": paraboloid_scenario()})
        assert resp.status_code == 200
        body = resp.json()
        assert body["all_asserted_passed"] is True
        assert body["failures"] == []
        names = [s["name"] for s in body["suites"]]
        assert names == ["identities"]
        assert "isokin verification report" in body["report"]

    def test_unknown_suite_rejected(self):
        sc = paraboloid_scenario(verify={"suites": ["spectral"]})
        resp = client.post("/verify", json={"scenario": sc})
        assert resp.status_code == 422


class TestExportEndpoint:
    def test_files_returned(self):
        resp = client.post("/export", json={"scenario": paraboloid_scenario()})
        assert resp.status_code == 200
        files = resp.json()["files"]
        assert set(files) == {"trajectory.csv", "isolines_0.csv", "chargrid_0.csv"}
        assert files["isolines_0.csv"].startswith("x,y,level\n")

    def test_chargrid_matches_characteristics_endpoint(self):
        """Cross-surface consistency: grid rows equal point queries."""
        resp = client.post("/export", json={"scenario": paraboloid_scenario()})
        files = resp.json()["files"]
        rows = files["chargrid_0.csv"].strip().split("\n")[1:]
        probe = [r for r in rows if r.split(",")[2] != "nan"][7]
        cells = probe.split(",")
        x, y = float(cells[0]), float(cells[1])
        point = client.post("/characteristics",
                            json={"scenario": paraboloid_scenario(),
                                  "t": 0.0, "x": x, "y": y}).json()
        chars = point["characteristics"]
        for i, name in enumerate(["lambda", "rho", "alpha", "omega", "kappa",
                                  "omega_grad", "v_rho", "tau_rho", "n_rho"]):
            assert float(cells[2 + i]) == chars[name]


def test_json_roundtrip_preserves_floats():
    """Remote clients must reproduce local floats exactly."""
    req = schemas.CharacteristicsRequest(
        scenario=schemas.ScenarioModel.model_validate(paraboloid_scenario()),
        t=0.0, x=1.0 / 3.0, y=math.sqrt(2.0))
    local = handlers.run_characteristics(req)
    remote = client.post("/characteristics",
                         json=req.model_dump(mode="json")).json()
    assert remote["characteristics"]["kappa"] == local.characteristics["kappa"]
    assert remote["characteristics"]["rho"] == local.characteristics["rho"]
    assert remote["value"] == local.value
