import json

import pytest
from fastapi.testclient import TestClient

from dancesync.scene_io import scene_to_document
from dancesync.service import app
from test_scene_io import minimal_document

client = TestClient(app)


def test_health():
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert body["version"]


class TestAnalyze:
    def test_json_report(self, jump_scene):
        resp = client.post("/analyze", json={"scene": scene_to_document(jump_scene)})
        assert resp.status_code == 200
        assert resp.headers["content-type"].startswith("application/json")
        doc = json.loads(resp.content)
        assert {r["feature"] for r in doc["rows"]} == {"head", "foot"}
        assert all(r["synchrony_percent"] == 100.0 for r in doc["rows"])

    def test_csv_dance_report(self, dance_scene):
        resp = client.post(
            "/analyze",
            json={"scene": scene_to_document(dance_scene), "format": "csv"},
        )
        assert resp.status_code == 200
        assert resp.headers["content-type"].startswith("text/csv")
        lines = resp.text.splitlines()
        assert len(lines) == 16  # 2 headers + 6 + 8 rows

    def test_performer_subset_and_mode(self, jump_scene):
        ids = list(jump_scene.performers)[:2]
        resp = client.post(
            "/analyze",
            json={
                "scene": scene_to_document(jump_scene),
                "performers": ids,
                "mode": "pairwise",
            },
        )
        assert resp.status_code == 200

    def test_schema_error_is_400(self):
        doc = minimal_document(kind="spin")
        resp = client.post("/analyze", json={"scene": doc})
        assert resp.status_code == 400
        assert resp.json()["error"] == "SchemaError"

    def test_validation_error_is_422(self):
        doc = minimal_document()
        doc["fps"] = -1
        resp = client.post("/analyze", json={"scene": doc})
        assert resp.status_code == 422
        assert resp.json()["error"] == "ValidationError"

    def test_metric_error_is_422(self):
        # two identical static performers: head trajectory is flat
        doc = minimal_document(frames=3, performers=("a", "b"), kind="jump")
        resp = client.post("/analyze", json={"scene": doc})
        assert resp.status_code == 422
        assert resp.json()["error"] == "FlatTrajectoryError"


class TestSeriesEndpoints:
    def test_dtw(self):
        resp = client.post("/dtw", json={"a": [0, 0, 1], "b": [0, 1]})
        assert resp.json() == {"distance": 0.0, "path": None}
        resp = client.post(
            "/dtw", json={"a": [1, 2, 3], "b": [2, 2, 2], "include_path": True}
        )
        body = resp.json()
        assert body["distance"] == 2.0
        assert body["path"] == [[0, 0], [1, 1], [2, 2]]

    def test_dtw_empty_series(self):
        resp = client.post("/dtw", json={"a": [], "b": [1]})
        assert resp.status_code == 422
        assert resp.json()["error"] == "EmptySeriesError"

    def test_dba(self):
        resp = client.post("/dba", json={"series": [[0.0], [2.0]]})
        body = resp.json()
        assert body["barycenter"] == [1.0]
        assert body["objective_trace"][-1] <= body["objective_trace"][0]


class TestSynth:
    def test_deterministic_bytes(self):
        payload = {"template": "jump", "performers": 2, "frames": 8, "seed": 4}
        a = client.post("/synth", json=payload)
        b = client.post("/synth", json=payload)
        assert a.content == b.content
        doc = json.loads(a.content)
        assert doc["kind"] == "jump"
        # emitted scenes must themselves be analyzable
        assert client.post("/analyze", json={"scene": doc}).status_code == 200

    def test_invalid_config_is_400(self):
        resp = client.post("/synth", json={"template": "jump", "performers": 0})
        assert resp.status_code == 400
        assert resp.json()["error"] == "InvalidConfigError"


class TestPlot:
    def test_tsv_output(self, dance_scene):
        resp = client.post(
            "/plot",
            json={"scene": scene_to_document(dance_scene), "joint": "left_elbow"},
        )
        assert resp.status_code == 200
        assert resp.text.startswith("# frame\t")

    def test_unknown_joint_is_400(self, dance_scene):
        resp = client.post(
            "/plot", json={"scene": scene_to_document(dance_scene), "joint": "toe"}
        )
        assert resp.status_code == 400
        assert resp.json()["error"] == "SchemaError"

    def test_kind_mismatch_is_422(self, jump_scene):
        resp = client.post(
            "/plot",
            json={"scene": scene_to_document(jump_scene), "joint": "left_elbow"},
        )
        assert resp.status_code == 422
        assert resp.json()["error"] == "ValidationError"
