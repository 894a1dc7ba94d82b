"""Skeleton geometry: keypoints, joint angles, limb directions, heights.

Coordinates live in a canonical frame with x to the right, y up, and z toward
the camera, in pose-normalized length units. Ingestion layers are responsible
for converting estimator conventions (e.g. screen-space y-down) before data
reaches these functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import TYPE_CHECKING, Optional

import numpy as np

from .errors import DegenerateSegmentError, NoValidFramesError, ValidationError

if TYPE_CHECKING:  # pragma: no cover
    from .scene_io import ScenePose

DEGENERATE_LENGTH = 1e-9


class KeypointId(IntEnum):
    """The 17 named skeleton keypoints, in the conventional detector order."""

    NOSE = 0
    LEFT_EYE = 1
    RIGHT_EYE = 2
    LEFT_EAR = 3
    RIGHT_EAR = 4
    LEFT_SHOULDER = 5
    RIGHT_SHOULDER = 6
    LEFT_ELBOW = 7
    RIGHT_ELBOW = 8
    LEFT_WRIST = 9
    RIGHT_WRIST = 10
    LEFT_HIP = 11
    RIGHT_HIP = 12
    LEFT_KNEE = 13
    RIGHT_KNEE = 14
    LEFT_ANKLE = 15
    RIGHT_ANKLE = 16

    @property
    def key(self) -> str:
        """Stable lowercase name used by the scene file format."""
        return self.name.lower()


KEYPOINT_NAMES = tuple(k.key for k in KeypointId)

K = KeypointId  # local shorthand for the enum tables below


class JointId(Enum):
    """The six evaluated joints: vertex plus its two adjacent keypoints.

    The shoulder entries measure the underarm angle, between the upper arm
    and the shoulder-to-hip torso segment.
    """

    LEFT_ELBOW = ("left_elbow_angle", K.LEFT_ELBOW, K.LEFT_SHOULDER, K.LEFT_WRIST)
    RIGHT_ELBOW = ("right_elbow_angle", K.RIGHT_ELBOW, K.RIGHT_SHOULDER, K.RIGHT_WRIST)
    LEFT_KNEE = ("left_knee_angle", K.LEFT_KNEE, K.LEFT_HIP, K.LEFT_ANKLE)
    RIGHT_KNEE = ("right_knee_angle", K.RIGHT_KNEE, K.RIGHT_HIP, K.RIGHT_ANKLE)
    LEFT_SHOULDER = (
        "left_shoulder_angle",
        K.LEFT_SHOULDER,
        K.LEFT_ELBOW,
        K.LEFT_HIP,
    )
    RIGHT_SHOULDER = (
        "right_shoulder_angle",
        K.RIGHT_SHOULDER,
        K.RIGHT_ELBOW,
        K.RIGHT_HIP,
    )

    def __init__(self, label, vertex, first, second):
        self.label = label
        self.vertex = vertex
        self.first = first
        self.second = second


class SegmentId(Enum):
    """The eight directed limb segments evaluated for movement direction."""

    LEFT_UPPER_ARM = ("Left Shoulder -> Left Elbow", K.LEFT_SHOULDER, K.LEFT_ELBOW)
    LEFT_FOREARM = ("Left Elbow -> Left Wrist", K.LEFT_ELBOW, K.LEFT_WRIST)
    RIGHT_UPPER_ARM = ("Right Shoulder -> Right Elbow", K.RIGHT_SHOULDER, K.RIGHT_ELBOW)
    RIGHT_FOREARM = ("Right Elbow -> Right Wrist", K.RIGHT_ELBOW, K.RIGHT_WRIST)
    LEFT_THIGH = ("Left Hip -> Left Knee", K.LEFT_HIP, K.LEFT_KNEE)
    LEFT_SHIN = ("Left Knee -> Left Ankle", K.LEFT_KNEE, K.LEFT_ANKLE)
    RIGHT_THIGH = ("Right Hip -> Right Knee", K.RIGHT_HIP, K.RIGHT_KNEE)
    RIGHT_SHIN = ("Right Knee -> Right Ankle", K.RIGHT_KNEE, K.RIGHT_ANKLE)

    def __init__(self, label, start, end):
        self.label = label
        self.start = start
        self.end = end


def parse_joint(name: str) -> JointId:
    """Look up a joint by name ("left_elbow") or label ("left_elbow_angle")."""
    cleaned = name.strip().lower()
    for joint in JointId:
        if cleaned in (joint.name.lower(), joint.label):
            return joint
    raise KeyError(name)


@dataclass
class SkeletonFrame:
    """One performer's keypoints at one frame.

    positions is a (17, 3) float array indexed by KeypointId; valid marks
    which rows carry usable coordinates.
    """

    positions: np.ndarray
    valid: np.ndarray

    def point(self, kp: KeypointId) -> np.ndarray:
        return self.positions[kp]

    def is_valid(self, kp: KeypointId) -> bool:
        return bool(self.valid[kp])


def joint_angle(frame: SkeletonFrame, joint: JointId) -> Optional[float]:
    """Angle in degrees at the joint vertex, in [0, 180], or None if missing.

    Returns None when any of the three required keypoints is invalid; raises
    DegenerateSegmentError when either adjacent segment is shorter than
    DEGENERATE_LENGTH.
    """
    if not (
        frame.valid[joint.vertex]
        and frame.valid[joint.first]
        and frame.valid[joint.second]
    ):
        return None
    u = frame.positions[joint.first] - frame.positions[joint.vertex]
    w = frame.positions[joint.second] - frame.positions[joint.vertex]
    nu = float(np.linalg.norm(u))
    nw = float(np.linalg.norm(w))
    if nu < DEGENERATE_LENGTH or nw < DEGENERATE_LENGTH:
        raise DegenerateSegmentError(
            f"zero-length segment at {joint.label} (|u|={nu:.3g}, |w|={nw:.3g})"
        )
    cos = float(np.dot(u, w)) / (nu * nw)
    cos = min(1.0, max(-1.0, cos))
    return float(np.degrees(np.arccos(cos)))


def segment_direction(frame: SkeletonFrame, segment: SegmentId) -> Optional[np.ndarray]:
    """Unit vector from the segment's start keypoint to its end keypoint.

    None when either keypoint is invalid; DegenerateSegmentError when the
    endpoints coincide.
    """
    if not (frame.valid[segment.start] and frame.valid[segment.end]):
        return None
    v = frame.positions[segment.end] - frame.positions[segment.start]
    n = float(np.linalg.norm(v))
    if n < DEGENERATE_LENGTH:
        raise DegenerateSegmentError(f"zero-length segment {segment.label}")
    return v / n


def head_height(frame: SkeletonFrame) -> Optional[float]:
    """Vertical position of the head, proxied by the nose keypoint."""
    if not frame.valid[KeypointId.NOSE]:
        return None
    return float(frame.positions[KeypointId.NOSE][1])


def ankle_height(frame: SkeletonFrame) -> Optional[float]:
    """Mean vertical position of the ankles; one valid ankle stands alone."""
    left = frame.valid[KeypointId.LEFT_ANKLE]
    right = frame.valid[KeypointId.RIGHT_ANKLE]
    if not left and not right:
        return None
    ys = []
    if left:
        ys.append(float(frame.positions[KeypointId.LEFT_ANKLE][1]))
    if right:
        ys.append(float(frame.positions[KeypointId.RIGHT_ANKLE][1]))
    return sum(ys) / len(ys)


def _interpolate_missing(values: list) -> np.ndarray:
    # Linear fill between valid neighbors; endpoints extend the nearest value.
    arr = np.array([np.nan if v is None else v for v in values], dtype=np.float64)
    valid = np.flatnonzero(~np.isnan(arr))
    if valid.size == 0:
        raise NoValidFramesError("no frame produced a usable value")
    if valid.size == arr.size:
        return arr
    return np.interp(np.arange(arr.size), valid, arr[valid])


def _performer_frames(scene: "ScenePose", performer: str) -> list:
    try:
        return scene.performers[performer]
    except KeyError:
        raise ValidationError(f"unknown performer {performer!r}") from None


def angle_series(scene: "ScenePose", performer: str, joint: JointId) -> np.ndarray:
    """Per-frame joint angle for one performer, gaps filled by interpolation."""
    frames = _performer_frames(scene, performer)
    return _interpolate_missing([joint_angle(f, joint) for f in frames])


def height_series(scene: "ScenePose", performer: str, feature: str) -> np.ndarray:
    """Per-frame head or foot height for one performer, gaps interpolated."""
    frames = _performer_frames(scene, performer)
    if feature == "head":
        values = [head_height(f) for f in frames]
    elif feature == "foot":
        values = [ankle_height(f) for f in frames]
    else:
        raise ValueError(f"unknown height feature {feature!r}")
    return _interpolate_missing(values)
