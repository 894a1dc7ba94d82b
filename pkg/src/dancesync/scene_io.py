"""Scene files, synchrony reports, and plot-data emission.

A scene file is one UTF-8 JSON document per scene::

    {
      "scene_id": "jump-scene1",
      "kind": "jump",                  # dance | jump | down
      "fps": 24.0,
      "performers": {
        "p01": [ {"nose": [x, y, z, true], ... 17 keypoints}, ... ],
        ...
      }
    }

Coordinates are stored in the canonical y-up frame. All writers are
deterministic (identical inputs produce identical bytes) and atomic (write
to a temporary file, rename on success).
"""

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from . import __version__, kinematics
from .errors import IoError, ParseError, SchemaError, ValidationError
from .kinematics import KEYPOINT_NAMES, JointId, KeypointId, SkeletonFrame
from .synchrony import AngleSynchronyRow, DirectionSynchronyRow, HeightSynchronyRow

TOOL_NAME = "dancesync"
SCENE_SUFFIX = ".scene.json"


class SceneKind(str, Enum):
    DANCE = "dance"
    JUMP = "jump"
    DOWN = "down"


@dataclass
class ScenePose:
    """Per-performer skeleton sequences plus scene metadata."""

    scene_id: str
    kind: SceneKind
    fps: float
    performers: dict  # performer id -> list[SkeletonFrame], equal lengths

    @property
    def frame_count(self) -> int:
        first = next(iter(self.performers.values()))
        return len(first)


def _check(condition: bool, message: str, error=SchemaError) -> None:
    if not condition:
        raise error(message)


def scene_from_document(doc) -> ScenePose:
    """Build and validate a ScenePose from a decoded scene document."""
    _check(isinstance(doc, dict), "top level: expected an object")
    for key in ("scene_id", "kind", "fps", "performers"):
        _check(key in doc, f"top level: missing field {key!r}")
    _check(isinstance(doc["scene_id"], str), "scene_id: expected a string")
    kind_raw = doc["kind"]
    try:
        kind = SceneKind(kind_raw)
    except ValueError:
        raise SchemaError(
            f"kind: expected one of dance/jump/down, got {kind_raw!r}"
        ) from None
    fps = doc["fps"]
    _check(
        isinstance(fps, (int, float)) and not isinstance(fps, bool),
        "fps: expected a number",
    )
    _check(float(fps) > 0, "fps: must be positive", ValidationError)
    raw_performers = doc["performers"]
    _check(isinstance(raw_performers, dict), "performers: expected an object")
    _check(len(raw_performers) >= 1, "performers: must not be empty")

    performers = {}
    for pid, raw_frames in raw_performers.items():
        where = f"performers.{pid}"
        _check(isinstance(raw_frames, list), f"{where}: expected an array of frames")
        _check(len(raw_frames) >= 1, f"{where}: must contain at least one frame")
        frames = [
            _frame_from_document(raw, f"{where}[{t}]")
            for t, raw in enumerate(raw_frames)
        ]
        performers[pid] = frames

    counts = {pid: len(frames) for pid, frames in performers.items()}
    if len(set(counts.values())) > 1:
        raise ValidationError(f"frame count mismatch across performers: {counts}")
    return ScenePose(
        scene_id=doc["scene_id"], kind=kind, fps=float(fps), performers=performers
    )


def _frame_from_document(raw, where: str) -> SkeletonFrame:
    _check(isinstance(raw, dict), f"{where}: expected an object of keypoints")
    for name in raw:
        _check(name in KEYPOINT_NAMES, f"{where}.{name}: unknown keypoint name")
    positions = np.zeros((len(KeypointId), 3), dtype=np.float64)
    valid = np.zeros(len(KeypointId), dtype=bool)
    for kp in KeypointId:
        _check(kp.key in raw, f"{where}: missing keypoint {kp.key!r}")
        entry = raw[kp.key]
        _check(
            isinstance(entry, list) and len(entry) == 4,
            f"{where}.{kp.key}: expected [x, y, z, visible]",
        )
        x, y, z, visible = entry
        for axis, value in zip("xyz", (x, y, z)):
            _check(
                isinstance(value, (int, float)) and not isinstance(value, bool),
                f"{where}.{kp.key}: {axis} must be a number",
            )
        _check(isinstance(visible, bool), f"{where}.{kp.key}: visible must be a bool")
        coords = np.array([x, y, z], dtype=np.float64)
        if not np.all(np.isfinite(coords)):
            raise ValidationError(f"{where}.{kp.key}: non-finite coordinate")
        positions[kp] = coords
        valid[kp] = visible
    return SkeletonFrame(positions=positions, valid=valid)


def scene_to_document(scene: ScenePose) -> dict:
    """Inverse of scene_from_document; performers are emitted in sorted order."""
    performers = {}
    for pid in sorted(scene.performers):
        frames = []
        for frame in scene.performers[pid]:
            entry = {}
            for kp in KeypointId:
                x, y, z = (float(v) for v in frame.positions[kp])
                entry[kp.key] = [x, y, z, bool(frame.valid[kp])]
            frames.append(entry)
        performers[pid] = frames
    return {
        "scene_id": scene.scene_id,
        "kind": scene.kind.value,
        "fps": float(scene.fps),
        "performers": performers,
    }


def load_scene(path) -> ScenePose:
    """Load and validate one scene file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return scene_from_document(doc)


def render_scene(scene: ScenePose) -> str:
    return json.dumps(scene_to_document(scene), separators=(",", ":")) + "\n"


def write_scene(scene: ScenePose, path) -> None:
    atomic_write_text(path, render_scene(scene))


def atomic_write_text(path, text: str) -> None:
    """Write text to a temporary file in the target directory, then rename."""
    target = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=target.name)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
            os.replace(tmp, target)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None


@dataclass(frozen=True)
class SynchronyReport:
    """Scored rows for one scene, plus provenance for reproducibility."""

    scene_id: str
    kind: SceneKind
    rows: tuple
    mode: str = "barycenter"
    tool: str = TOOL_NAME
    version: str = __version__
    config_hash: str = ""


def build_report(
    scene: ScenePose,
    rows: Sequence,
    mode: str = "barycenter",
    performers: Optional[Sequence[str]] = None,
) -> SynchronyReport:
    config = {
        "mode": mode,
        "performers": list(performers) if performers is not None else None,
    }
    digest = hashlib.sha256(
        json.dumps(config, sort_keys=True).encode("utf-8")
    ).hexdigest()
    return SynchronyReport(
        scene_id=scene.scene_id,
        kind=scene.kind,
        rows=tuple(rows),
        mode=mode,
        config_hash=digest,
    )


def validate_report(report: SynchronyReport) -> None:
    """Check the row multiset against the report's kind-specific schema."""
    rows = report.rows
    if not rows:
        raise ValidationError("report has no rows")
    angle = [r for r in rows if isinstance(r, AngleSynchronyRow)]
    direction = [r for r in rows if isinstance(r, DirectionSynchronyRow)]
    height = [r for r in rows if isinstance(r, HeightSynchronyRow)]
    if len(angle) + len(direction) + len(height) != len(rows):
        raise ValidationError("report contains unknown row types")
    kind = report.kind
    if kind is SceneKind.DANCE:
        joints = [r.joint for r in angle]
        segments = [r.segment for r in direction]
        if height or sorted(j.label for j in joints if j) != sorted(
            j.label for j in JointId
        ):
            raise ValidationError("dance report must contain exactly the 6 joint rows")
        if sorted(s.label for s in segments) != sorted(
            s.label for s in kinematics.SegmentId
        ):
            raise ValidationError(
                "dance report must contain exactly the 8 direction rows"
            )
    elif kind is SceneKind.JUMP:
        features = sorted(r.feature for r in height)
        if angle or direction or features != ["foot", "head"]:
            raise ValidationError("jump report must contain head and foot rows only")
    elif kind is SceneKind.DOWN:
        features = [r.feature for r in height]
        if angle or direction or features != ["head"]:
            raise ValidationError("down report must contain a single head row")


def _f7(value: float) -> str:
    return f"{value:.7f}"


def _row_document(row):
    if isinstance(row, AngleSynchronyRow):
        return {
            "type": "angle",
            "feature": row.joint.label if row.joint else None,
            "avg_dtw_distance": float(_f7(row.avg_dtw)),
            "max_dtw_distance": float(_f7(row.max_dtw)),
            "synchrony_rate_percent": float(_f7(row.rate_percent)),
        }
    if isinstance(row, DirectionSynchronyRow):
        return {
            "type": "direction",
            "joint_pair": row.segment.label,
            "avg_cosine_similarity_percent": float(_f7(row.avg_cosine_percent)),
        }
    return {
        "type": "height",
        "feature": row.feature,
        "synchrony_percent": float(_f7(row.synchrony_percent)),
    }


def render_report(report: SynchronyReport, fmt: str = "json") -> str:
    """Serialize a validated report to its canonical JSON or CSV text."""
    validate_report(report)
    if fmt == "json":
        doc = {
            "scene_id": report.scene_id,
            "kind": report.kind.value,
            "provenance": {
                "tool": report.tool,
                "version": report.version,
                "mode": report.mode,
                "config_hash": report.config_hash,
            },
            "rows": [_row_document(r) for r in report.rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(report)
    raise ValueError(f"unknown report format {fmt!r}")


def _render_csv(report: SynchronyReport) -> str:
    lines = []
    if report.kind is SceneKind.DANCE:
        lines.append("Feature,Avg_DTW_Distance,Max_DTW_Distance,Synchrony_Rate (%)")
        for row in report.rows:
            if isinstance(row, AngleSynchronyRow):
                lines.append(
                    f"{row.joint.label},{_f7(row.avg_dtw)},"
                    f"{_f7(row.max_dtw)},{_f7(row.rate_percent)}"
                )
        lines.append("Joint_Pair,Avg_Cosine_similarity(%)")
        for row in report.rows:
            if isinstance(row, DirectionSynchronyRow):
                lines.append(f"{row.segment.label},{_f7(row.avg_cosine_percent)}")
    elif report.kind is SceneKind.JUMP:
        head = next(r for r in report.rows if r.feature == "head")
        foot = next(r for r in report.rows if r.feature == "foot")
        lines.append("Feature,Head_Position_Synchrony,Foot_Position_Synchrony")
        lines.append(
            f"jump_motion,{_f7(head.synchrony_percent)},{_f7(foot.synchrony_percent)}"
        )
    else:
        head = next(r for r in report.rows if r.feature == "head")
        lines.append("Feature,Head_Position_Synchrony")
        lines.append(f"down_motion,{_f7(head.synchrony_percent)}")
    return "\n".join(lines) + "\n"


def write_report(report: SynchronyReport, fmt: str, path) -> None:
    atomic_write_text(path, render_report(report, fmt))


def render_plot_data(scene: ScenePose, joint: JointId) -> str:
    """Tab-separated per-performer angle series for one joint of a dance scene.

    First column is the frame index; one further column per performer, in
    sorted performer order.
    """
    if scene.kind is not SceneKind.DANCE:
        raise ValidationError(
            f"plot data requires a dance scene, got {scene.kind.value!r}"
        )
    ids = sorted(scene.performers)
    series = [kinematics.angle_series(scene, p, joint) for p in ids]
    lines = ["# frame\t" + "\t".join(ids)]
    for t in range(scene.frame_count):
        lines.append(str(t) + "\t" + "\t".join(_f7(s[t]) for s in series))
    return "\n".join(lines) + "\n"


def emit_plot_data(scene: ScenePose, joint: JointId, path) -> None:
    atomic_write_text(path, render_plot_data(scene, joint))
