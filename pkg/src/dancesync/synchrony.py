"""Ensemble synchrony metrics over multi-performer scenes.

Four scores quantify how tightly a group moves together:

* joint-angle synchrony: DTW distances from each performer's angle series to
  the ensemble barycenter, summarized as 100 * (1 - avg / max);
* limb-direction synchrony: mean cosine similarity of unit segment
  directions over all frames and performer pairs, times 100;
* jump synchrony: height synchrony of head and foot trajectories;
* crouch synchrony: height synchrony of head trajectories.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np

from . import align, kinematics
from .errors import (
    FlatTrajectoryError,
    LengthMismatchError,
    NoValidSamplesError,
    TooFewPerformersError,
    ValidationError,
    ZeroVectorError,
)
from .kinematics import JointId, SegmentId

if TYPE_CHECKING:  # pragma: no cover
    from .scene_io import ScenePose

FLAT_AMPLITUDE = 1e-9


@dataclass(frozen=True)
class AngleSynchronyRow:
    """One joint's DTW synchrony summary."""

    joint: Optional[JointId]
    avg_dtw: float
    max_dtw: float
    rate_percent: float


@dataclass(frozen=True)
class DirectionSynchronyRow:
    """One limb segment's mean cosine-similarity score."""

    segment: SegmentId
    avg_cosine_percent: float


@dataclass(frozen=True)
class HeightSynchronyRow:
    """Head or foot height synchrony."""

    feature: str  # "head" | "foot"
    synchrony_percent: float


def cosine_similarity(a, b) -> float:
    """Cosine of the angle between two vectors, clamped to [-1, 1]."""
    av = np.asarray(a, dtype=np.float64)
    bv = np.asarray(b, dtype=np.float64)
    na = float(np.linalg.norm(av))
    nb = float(np.linalg.norm(bv))
    if na == 0.0 or nb == 0.0:
        raise ZeroVectorError("cosine similarity undefined for zero vectors")
    cos = float(np.dot(av, bv)) / (na * nb)
    return min(1.0, max(-1.0, cos))


def synchrony_rate(avg_dtw: float, max_dtw: float) -> float:
    """Rate percentage 100 * (1 - avg / max); identical series score 100."""
    if max_dtw == 0.0:
        return 100.0
    return 100.0 * (1.0 - avg_dtw / max_dtw)


def angle_synchrony(
    series: Sequence,
    joint: Optional[JointId] = None,
    mode: str = "barycenter",
) -> AngleSynchronyRow:
    """Summarize DTW distances across one joint's per-performer angle series.

    In "barycenter" mode (default) distances run from each performer to the
    ensemble's DBA barycenter, one per performer. "pairwise" mode uses the
    distances between all unordered performer pairs instead.
    """
    if len(series) < 2:
        raise TooFewPerformersError("angle synchrony needs at least 2 performers")
    arrays = [align.as_series(s) for s in series]
    if mode == "barycenter":
        center = align.dba(arrays).series
        distances = [align.dtw_distance(s, center) for s in arrays]
    elif mode == "pairwise":
        distances = [
            align.dtw_distance(arrays[a], arrays[b])
            for a in range(len(arrays))
            for b in range(a + 1, len(arrays))
        ]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    avg = float(np.mean(distances))
    mx = float(np.max(distances))
    return AngleSynchronyRow(
        joint=joint, avg_dtw=avg, max_dtw=mx, rate_percent=synchrony_rate(avg, mx)
    )


def direction_synchrony(
    scene: "ScenePose", performers: Sequence[str], segment: SegmentId
) -> DirectionSynchronyRow:
    """Mean pairwise cosine similarity of one segment's direction, times 100.

    Each frame contributes one sample per unordered performer pair; pairs
    where either performer's segment is missing are skipped for that frame.
    """
    if len(performers) < 2:
        raise TooFewPerformersError("direction synchrony needs at least 2 performers")
    per_frame = []
    for performer in performers:
        frames = kinematics._performer_frames(scene, performer)
        per_frame.append([kinematics.segment_direction(f, segment) for f in frames])
    total = 0.0
    count = 0
    for t in range(scene.frame_count):
        for a in range(len(performers)):
            da = per_frame[a][t]
            if da is None:
                continue
            for b in range(a + 1, len(performers)):
                db = per_frame[b][t]
                if db is None:
                    continue
                total += cosine_similarity(da, db)
                count += 1
    if count == 0:
        raise NoValidSamplesError(f"no valid samples for {segment.label}")
    return DirectionSynchronyRow(
        segment=segment, avg_cosine_percent=100.0 * total / count
    )


def height_synchrony(trajectories: Sequence) -> float:
    """Height synchrony percentage for equal-length performer trajectories.

    Per frame, the deviation is the mean absolute difference from the group
    mean; the score is 100 * (1 - mean deviation / amplitude), where the
    amplitude is the range of the group-mean trajectory. A flat group mean
    has no vertical content to normalize by and raises FlatTrajectoryError.
    The score is clamped below at -100.
    """
    if len(trajectories) < 2:
        raise TooFewPerformersError("height synchrony needs at least 2 performers")
    arrays = [align.as_series(t) for t in trajectories]
    lengths = {a.size for a in arrays}
    if len(lengths) > 1:
        raise LengthMismatchError(f"trajectory lengths differ: {sorted(lengths)}")
    stack = np.vstack(arrays)
    mean = stack.mean(axis=0)
    amplitude = float(mean.max() - mean.min())
    if amplitude < FLAT_AMPLITUDE:
        raise FlatTrajectoryError("group-mean trajectory is flat")
    deviation = float(np.abs(stack - mean).mean())
    return max(-100.0, 100.0 * (1.0 - deviation / amplitude))


def _require_kind(scene: "ScenePose", kind: str) -> None:
    if scene.kind.value != kind:
        raise ValidationError(
            f"scene kind mismatch: expected {kind!r}, got {scene.kind.value!r}"
        )


def jump_synchrony(scene: "ScenePose", performers: Sequence[str]):
    """Head and foot height synchrony rows for a jump scene."""
    _require_kind(scene, "jump")
    head = [kinematics.height_series(scene, p, "head") for p in performers]
    foot = [kinematics.height_series(scene, p, "foot") for p in performers]
    return (
        HeightSynchronyRow("head", height_synchrony(head)),
        HeightSynchronyRow("foot", height_synchrony(foot)),
    )


def crouch_synchrony(scene: "ScenePose", performers: Sequence[str]) -> HeightSynchronyRow:
    """Head height synchrony row for a crouch scene."""
    _require_kind(scene, "down")
    head = [kinematics.height_series(scene, p, "head") for p in performers]
    return HeightSynchronyRow("head", height_synchrony(head))


def analyze_scene(
    scene: "ScenePose",
    performers: Optional[Sequence[str]] = None,
    mode: str = "barycenter",
) -> list:
    """Compute the full metric row set for a scene, dispatching on its kind.

    dance scenes yield six joint-angle rows followed by eight direction rows;
    jump scenes yield head and foot height rows; down scenes one head row.
    """
    if performers is None:
        performers = list(scene.performers)
    else:
        performers = list(performers)
        unknown = [p for p in performers if p not in scene.performers]
        if unknown:
            raise ValidationError(f"unknown performers: {', '.join(unknown)}")
    if len(performers) < 2:
        raise TooFewPerformersError("analysis needs at least 2 performers")

    kind = scene.kind.value
    if kind == "dance":
        rows = []
        for joint in JointId:
            series = [kinematics.angle_series(scene, p, joint) for p in performers]
            rows.append(angle_synchrony(series, joint=joint, mode=mode))
        for segment in SegmentId:
            rows.append(direction_synchrony(scene, performers, segment))
        return rows
    if kind == "jump":
        return list(jump_synchrony(scene, performers))
    if kind == "down":
        return [crouch_synchrony(scene, performers)]
    raise ValidationError(f"unknown scene kind {kind!r}")
