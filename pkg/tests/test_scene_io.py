import json

import numpy as np
import pytest

from dancesync import scene_io
from dancesync.errors import (
    NoValidFramesError,
    ParseError,
    SchemaError,
    ValidationError,
)
from dancesync.kinematics import JointId, KeypointId, SegmentId, SkeletonFrame
from dancesync.scene_io import SceneKind, ScenePose
from dancesync.synchrony import (
    AngleSynchronyRow,
    DirectionSynchronyRow,
    HeightSynchronyRow,
)
from test_kinematics import frame_with


def minimal_document(frames=1, performers=("p01",), kind="dance"):
    frame = {
        kp.key: [0.1 * kp.value, 1.0 + 0.01 * kp.value, 0.0, True]
        for kp in KeypointId
    }
    return {
        "scene_id": "unit",
        "kind": kind,
        "fps": 24.0,
        "performers": {pid: [dict(frame) for _ in range(frames)] for pid in performers},
    }


def random_scene(rng):
    n_perf = int(rng.integers(1, 4))
    n_frames = int(rng.integers(1, 5))
    performers = {}
    for p in range(n_perf):
        frames = []
        for _ in range(n_frames):
            positions = rng.normal(size=(len(KeypointId), 3))
            valid = rng.random(len(KeypointId)) > 0.2
            frames.append(SkeletonFrame(positions, valid))
        performers[f"p{p:02d}"] = frames
    kind = rng.choice([k.value for k in SceneKind])
    return ScenePose(
        scene_id=f"rand-{rng.integers(1e6)}",
        kind=SceneKind(kind),
        fps=float(rng.uniform(1, 60)),
        performers=performers,
    )


def scenes_equal(a, b):
    if (a.scene_id, a.kind, a.fps) != (b.scene_id, b.kind, b.fps):
        return False
    if set(a.performers) != set(b.performers):
        return False
    for pid in a.performers:
        for fa, fb in zip(a.performers[pid], b.performers[pid]):
            if not np.array_equal(fa.positions, fb.positions):
                return False
            if not np.array_equal(fa.valid, fb.valid):
                return False
    return True


class TestLoadScene:
    def test_minimal_valid_file(self, tmp_path):
        path = tmp_path / "one.scene.json"
        path.write_text(json.dumps(minimal_document()))
        scene = scene_io.load_scene(path)
        assert scene.frame_count == 1
        assert scene.kind is SceneKind.DANCE
        assert list(scene.performers) == ["p01"]

    def test_missing_keypoint_named(self, tmp_path):
        doc = minimal_document()
        del doc["performers"]["p01"][0]["left_knee"]
        path = tmp_path / "short.scene.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(SchemaError, match="left_knee"):
            scene_io.load_scene(path)

    def test_frame_count_mismatch(self, tmp_path):
        doc = minimal_document(frames=10, performers=("a", "b"))
        doc["performers"]["b"].append(dict(doc["performers"]["b"][0]))
        path = tmp_path / "mismatch.scene.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(ValidationError, match="frame count mismatch"):
            scene_io.load_scene(path)

    def test_unknown_keypoint_name(self):
        doc = minimal_document()
        doc["performers"]["p01"][0]["tail"] = [0, 0, 0, True]
        with pytest.raises(SchemaError, match="tail"):
            scene_io.scene_from_document(doc)

    def test_bad_kind(self):
        doc = minimal_document(kind="spin")
        with pytest.raises(SchemaError, match="spin"):
            scene_io.scene_from_document(doc)

    def test_missing_top_level_field(self):
        doc = minimal_document()
        del doc["fps"]
        with pytest.raises(SchemaError, match="fps"):
            scene_io.scene_from_document(doc)

    def test_non_positive_fps(self):
        doc = minimal_document()
        doc["fps"] = 0
        with pytest.raises(ValidationError, match="fps"):
            scene_io.scene_from_document(doc)

    def test_non_finite_coordinate(self):
        doc = minimal_document()
        doc["performers"]["p01"][0]["nose"] = [float("nan"), 0, 0, True]
        with pytest.raises(ValidationError, match="nose"):
            scene_io.scene_from_document(doc)

    def test_bad_keypoint_shape(self):
        doc = minimal_document()
        doc["performers"]["p01"][0]["nose"] = [0, 0, 0]
        with pytest.raises(SchemaError, match="nose"):
            scene_io.scene_from_document(doc)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.scene.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            scene_io.load_scene(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            scene_io.load_scene(tmp_path / "absent.scene.json")


class TestRoundTrip:
    def test_random_scenes_survive_write_load(self, tmp_path):
        rng = np.random.default_rng(13)
        for i in range(25):
            scene = random_scene(rng)
            path = tmp_path / f"s{i}.scene.json"
            scene_io.write_scene(scene, path)
            assert scenes_equal(scene, scene_io.load_scene(path))

    def test_write_is_deterministic(self, tmp_path, jump_scene):
        a, b = tmp_path / "a.scene.json", tmp_path / "b.scene.json"
        scene_io.write_scene(jump_scene, a)
        scene_io.write_scene(jump_scene, b)
        assert a.read_bytes() == b.read_bytes()


def dance_rows(avg=105.4450115, mx=114.9712961, rate=8.2857939):
    rows = [AngleSynchronyRow(JointId.LEFT_ELBOW, avg, mx, rate)]
    rows += [AngleSynchronyRow(j, 1.0, 2.0, 50.0) for j in list(JointId)[1:]]
    rows += [DirectionSynchronyRow(s, 74.20765) for s in SegmentId]
    return rows


def dance_report(rows=None):
    return scene_io.SynchronyReport(
        scene_id="dance-scene1", kind=SceneKind.DANCE, rows=tuple(rows or dance_rows())
    )


class TestReports:
    def test_dance_csv_format(self):
        text = scene_io.render_report(dance_report(), "csv")
        lines = text.splitlines()
        assert lines[0] == "Feature,Avg_DTW_Distance,Max_DTW_Distance,Synchrony_Rate (%)"
        assert lines[1] == "left_elbow_angle,105.4450115,114.9712961,8.2857939"
        assert lines[7] == "Joint_Pair,Avg_Cosine_similarity(%)"
        assert lines[8] == "Left Shoulder -> Left Elbow,74.2076500"
        assert len(lines) == 16  # 2 headers + 6 angle rows + 8 direction rows

    def test_jump_and_down_csv(self):
        report = scene_io.SynchronyReport(
            scene_id="jump-1",
            kind=SceneKind.JUMP,
            rows=(
                HeightSynchronyRow("head", 96.417604),
                HeightSynchronyRow("foot", 91.452321),
            ),
        )
        text = scene_io.render_report(report, "csv")
        assert text == (
            "Feature,Head_Position_Synchrony,Foot_Position_Synchrony\n"
            "jump_motion,96.4176040,91.4523210\n"
        )
        report = scene_io.SynchronyReport(
            scene_id="down-1",
            kind=SceneKind.DOWN,
            rows=(HeightSynchronyRow("head", 93.321806),),
        )
        assert scene_io.render_report(report, "csv") == (
            "Feature,Head_Position_Synchrony\ndown_motion,93.3218060\n"
        )

    def test_json_round_trips_and_is_stable(self):
        text = scene_io.render_report(dance_report(), "json")
        doc = json.loads(text)
        assert doc["scene_id"] == "dance-scene1"
        assert doc["rows"][0]["avg_dtw_distance"] == 105.4450115
        assert [r["type"] for r in doc["rows"]] == ["angle"] * 6 + ["direction"] * 8
        assert text == scene_io.render_report(dance_report(), "json")

    def test_empty_rows_rejected(self):
        report = scene_io.SynchronyReport(
            scene_id="x", kind=SceneKind.DANCE, rows=()
        )
        with pytest.raises(ValidationError):
            scene_io.render_report(report, "json")

    def test_kind_schema_enforced(self):
        jump_with_angle = scene_io.SynchronyReport(
            scene_id="x",
            kind=SceneKind.JUMP,
            rows=(AngleSynchronyRow(JointId.LEFT_ELBOW, 1, 2, 50),),
        )
        with pytest.raises(ValidationError):
            scene_io.render_report(jump_with_angle, "json")
        missing_joint = dance_rows()[1:]
        with pytest.raises(ValidationError):
            scene_io.render_report(dance_report(missing_joint), "json")

    def test_write_report_deterministic(self, tmp_path):
        a, b = tmp_path / "a.report.csv", tmp_path / "b.report.csv"
        scene_io.write_report(dance_report(), "csv", a)
        scene_io.write_report(dance_report(), "csv", b)
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            scene_io.render_report(dance_report(), "xml")


class TestPlotData:
    def test_shape(self, tmp_path, dance_scene):
        path = tmp_path / "angles.tsv"
        scene_io.emit_plot_data(dance_scene, JointId.LEFT_ELBOW, path)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# frame\t")
        data = [line.split("\t") for line in lines[1:]]
        assert len(data) == dance_scene.frame_count
        assert all(len(row) == 5 for row in data)  # frame + 4 performers

    def test_single_performer_two_columns(self, tmp_path):
        frames = [frame_with(left_shoulder=(0, 0, 0), left_elbow=(1, 0, 0),
                             left_wrist=(2, 0, 0), left_hip=(0, -1, 0),
                             right_shoulder=(0, 0, 1), right_elbow=(1, 0, 1),
                             right_wrist=(2, 0, 1), right_hip=(0, -1, 1),
                             left_knee=(0, -2, 0), left_ankle=(0, -3, 0),
                             right_knee=(0, -2, 1), right_ankle=(0, -3, 1))
                  for _ in range(3)]
        scene = ScenePose("solo", SceneKind.DANCE, 24.0, {"solo": frames})
        text = scene_io.render_plot_data(scene, JointId.LEFT_ELBOW)
        rows = [line.split("\t") for line in text.splitlines()]
        assert all(len(r) == 2 for r in rows)

    def test_kind_mismatch(self, jump_scene):
        with pytest.raises(ValidationError):
            scene_io.render_plot_data(jump_scene, JointId.LEFT_ELBOW)

    def test_no_valid_frames_writes_nothing(self, tmp_path):
        frames = [frame_with() for _ in range(3)]
        scene = ScenePose("empty", SceneKind.DANCE, 24.0, {"a": frames})
        path = tmp_path / "never.tsv"
        with pytest.raises(NoValidFramesError):
            scene_io.emit_plot_data(scene, JointId.LEFT_ELBOW, path)
        assert not path.exists()
