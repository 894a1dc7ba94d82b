"""Deterministic synthetic multi-performer scenes for metric calibration.

Three templates drive a minimal articulated 17-keypoint figure:

* ``arm_wave``: both arms sweep sinusoidally at the shoulder while the elbow
  bend oscillates a quarter cycle out of phase; legs stand still (dance).
* ``squat``: knees bend through one smooth dip, lowering hips and head (down).
* ``jump``: the whole body rises and falls along a parabolic arc (jump).

With every perturbation at zero all performers are frame-for-frame identical.
Randomness comes from numpy's default generator (PCG64) seeded from the
config, and the draw order is fixed, so the same seed always produces the
same scene and noise draws scale continuously with their magnitude knobs.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import InvalidConfigError, ShiftTooLargeError, ValidationError
from .kinematics import KeypointId, SkeletonFrame
from .scene_io import SceneKind, ScenePose

TEMPLATES = ("arm_wave", "squat", "jump")

_KIND_BY_TEMPLATE = {
    "arm_wave": SceneKind.DANCE,
    "squat": SceneKind.DOWN,
    "jump": SceneKind.JUMP,
}

# Standing figure, y up, normalized units (body height ~1.7).
_ANKLE_Y = 0.05
_KNEE_Y = 0.50
_HIP_Y = 0.95
_SHOULDER_Y = 1.45
_NOSE_Y = 1.62
_EYE_Y = 1.66
_EAR_Y = 1.63
_HIP_HALF = 0.13
_SHOULDER_HALF = 0.20
_EYE_HALF = 0.035
_EAR_HALF = 0.08
_UPPER_ARM = 0.30
_FOREARM = 0.27
_THIGH = _HIP_Y - _KNEE_Y
_SHIN = _KNEE_Y - _ANKLE_Y

_WAVE_CYCLES = 2.0
_PHI_BASE, _PHI_AMP = 40.0, 20.0  # shoulder sweep, degrees from straight down
_BETA_BASE, _BETA_AMP = 35.0, 25.0  # elbow bend, degrees
_ARM_HANG_PHI, _ARM_HANG_BETA = 8.0, 5.0
_SQUAT_BEND_MAX = 50.0  # half knee-bend angle at full depth, degrees
_JUMP_HEIGHT = 0.30

# Nominal vertical motion amplitude per template; height noise scales by it.
_VERTICAL_AMPLITUDE = {
    "arm_wave": 0.0,
    "squat": (_THIGH + _SHIN) * (1.0 - math.cos(math.radians(_SQUAT_BEND_MAX))),
    "jump": _JUMP_HEIGHT,
}


@dataclass(frozen=True)
class SynthConfig:
    template: str
    performers: int = 4
    frames: int = 48
    seed: int = 0
    fps: float = 24.0
    time_jitter_frames: float = 0.0
    amplitude_scale_range: Tuple[float, float] = (1.0, 1.0)
    direction_noise_deg: float = 0.0
    height_noise: float = 0.0


def validate_config(config: SynthConfig) -> None:
    if config.template not in TEMPLATES:
        raise InvalidConfigError(
            f"template must be one of {', '.join(TEMPLATES)}, got {config.template!r}"
        )
    if config.performers < 1:
        raise InvalidConfigError("performers must be >= 1")
    if config.frames < 2:
        raise InvalidConfigError("frames must be >= 2")
    if config.fps <= 0:
        raise InvalidConfigError("fps must be positive")
    if config.time_jitter_frames < 0:
        raise InvalidConfigError("time_jitter_frames must be >= 0")
    lo, hi = config.amplitude_scale_range
    if not (0 < lo <= hi):
        raise InvalidConfigError("amplitude_scale_range must satisfy 0 < lo <= hi")
    if config.direction_noise_deg < 0:
        raise InvalidConfigError("direction_noise_deg must be >= 0")
    if config.height_noise < 0:
        raise InvalidConfigError("height_noise must be >= 0")


def _arm(points, shoulder_kp, elbow_kp, wrist_kp, sx, phi_deg, beta_deg):
    # sx: +1 swings toward +x (performer's left), -1 mirrors.
    phi = math.radians(phi_deg)
    reach = math.radians(phi_deg + beta_deg)
    shoulder = points[shoulder_kp]
    points[elbow_kp] = shoulder + _UPPER_ARM * np.array(
        [sx * math.sin(phi), -math.cos(phi), 0.0]
    )
    points[wrist_kp] = points[elbow_kp] + _FOREARM * np.array(
        [sx * math.sin(reach), -math.cos(reach), 0.0]
    )


def _figure(arm_angles, knee_alpha_deg, body_dy) -> SkeletonFrame:
    K = KeypointId
    points = np.zeros((len(K), 3), dtype=np.float64)
    alpha = math.radians(knee_alpha_deg)
    drop = (_THIGH + _SHIN) * (1.0 - math.cos(alpha))

    for side, sx in (("LEFT", 1.0), ("RIGHT", -1.0)):
        ankle = np.array([sx * _HIP_HALF, _ANKLE_Y, 0.0])
        knee = ankle + _SHIN * np.array([0.0, math.cos(alpha), math.sin(alpha)])
        hip = knee + _THIGH * np.array([0.0, math.cos(alpha), -math.sin(alpha)])
        points[K[f"{side}_ANKLE"]] = ankle
        points[K[f"{side}_KNEE"]] = knee
        points[K[f"{side}_HIP"]] = hip
        points[K[f"{side}_SHOULDER"]] = [sx * _SHOULDER_HALF, _SHOULDER_Y - drop, 0.0]
        points[K[f"{side}_EYE"]] = [sx * _EYE_HALF, _EYE_Y - drop, 0.09]
        points[K[f"{side}_EAR"]] = [sx * _EAR_HALF, _EAR_Y - drop, 0.02]
    points[K.NOSE] = [0.0, _NOSE_Y - drop, 0.10]

    phi_l, beta_l, phi_r, beta_r = arm_angles
    _arm(points, K.LEFT_SHOULDER, K.LEFT_ELBOW, K.LEFT_WRIST, 1.0, phi_l, beta_l)
    _arm(points, K.RIGHT_SHOULDER, K.RIGHT_ELBOW, K.RIGHT_WRIST, -1.0, phi_r, beta_r)

    points[:, 1] += body_dy
    return SkeletonFrame(positions=points, valid=np.ones(len(K), dtype=bool))


def generate(config: SynthConfig) -> ScenePose:
    """Produce a ScenePose from a config; identical configs yield identical scenes."""
    validate_config(config)
    n, frames = config.performers, config.frames
    rng = np.random.default_rng(config.seed)
    # Fixed draw order and sizes keep streams aligned across noise magnitudes.
    lo, hi = config.amplitude_scale_range
    scales = rng.uniform(lo, hi, n)
    shifts = rng.uniform(-1.0, 1.0, n) * config.time_jitter_frames
    direction_noise = (
        rng.uniform(-1.0, 1.0, (n, frames, 5)) * config.direction_noise_deg
    )
    vertical_amp = _VERTICAL_AMPLITUDE[config.template]
    height_noise = rng.uniform(-1.0, 1.0, (n, frames)) * (
        config.height_noise * vertical_amp
    )

    pad = max(2, len(str(n)))
    performers = {}
    for p in range(n):
        seq = []
        for t in range(frames):
            tp = t + shifts[p]
            noise = direction_noise[p, t]
            if config.template == "arm_wave":
                phase = 2.0 * math.pi * _WAVE_CYCLES * tp / frames
                phi = _PHI_BASE + scales[p] * _PHI_AMP * math.sin(phase)
                beta = _BETA_BASE + scales[p] * _BETA_AMP * math.sin(
                    phase + math.pi / 2.0
                )
                arms = (
                    phi + noise[0],
                    beta + noise[1],
                    phi + noise[2],
                    beta + noise[3],
                )
                alpha = 0.0
                dy = height_noise[p, t]
            elif config.template == "squat":
                u = min(1.0, max(0.0, tp / (frames - 1)))
                depth = (1.0 - math.cos(2.0 * math.pi * u)) / 2.0
                alpha = scales[p] * _SQUAT_BEND_MAX * depth + noise[4]
                arms = (
                    _ARM_HANG_PHI + noise[0],
                    _ARM_HANG_BETA + noise[1],
                    _ARM_HANG_PHI + noise[2],
                    _ARM_HANG_BETA + noise[3],
                )
                dy = height_noise[p, t]
            else:  # jump
                center = (frames - 1) / 2.0
                halfwidth = (frames - 1) / 4.0
                lift = 1.0 - ((tp - center) / halfwidth) ** 2
                arc = scales[p] * _JUMP_HEIGHT * max(0.0, lift)
                arms = (
                    _ARM_HANG_PHI + noise[0],
                    _ARM_HANG_BETA + noise[1],
                    _ARM_HANG_PHI + noise[2],
                    _ARM_HANG_BETA + noise[3],
                )
                alpha = 0.0
                dy = arc + height_noise[p, t]
            seq.append(_figure(arms, alpha, dy))
        performers[f"p{p + 1:0{pad}d}"] = seq

    return ScenePose(
        scene_id=f"{config.template}-seed{config.seed}",
        kind=_KIND_BY_TEMPLATE[config.template],
        fps=config.fps,
        performers=performers,
    )


def perturb_time(scene: ScenePose, performer: str, shift_frames: float) -> ScenePose:
    """Resample one performer's frames at shifted times (linear interpolation).

    Sample times past either end clamp to the edge frames. The shift must be
    smaller in magnitude than the scene's frame count.
    """
    if performer not in scene.performers:
        raise ValidationError(f"unknown performer {performer!r}")
    total = scene.frame_count
    if abs(shift_frames) >= total:
        raise ShiftTooLargeError(
            f"shift {shift_frames} exceeds scene length {total}"
        )
    source = scene.performers[performer]
    resampled = []
    for t in range(total):
        s = min(float(total - 1), max(0.0, t + shift_frames))
        lo = int(math.floor(s))
        hi = int(math.ceil(s))
        w = s - lo
        if lo == hi:
            frame = source[lo]
            resampled.append(
                SkeletonFrame(frame.positions.copy(), frame.valid.copy())
            )
            continue
        a, b = source[lo], source[hi]
        positions = (1.0 - w) * a.positions + w * b.positions
        valid = a.valid & b.valid
        resampled.append(SkeletonFrame(positions, valid))

    performers = {
        pid: (resampled if pid == performer else frames)
        for pid, frames in scene.performers.items()
    }
    return ScenePose(
        scene_id=scene.scene_id,
        kind=scene.kind,
        fps=scene.fps,
        performers=performers,
    )
