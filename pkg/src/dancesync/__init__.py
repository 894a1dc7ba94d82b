"""Toolkit for scoring how synchronized a group of dancers move.

Per-frame 3D skeleton keypoints go in; joint-angle, limb-direction, and
jump/crouch height synchrony scores come out, as reports or over HTTP.
"""

__version__ = "0.1.0"

from .align import (
    AlignmentResult,
    Barycenter,
    as_series,
    dba,
    dtw,
    dtw_brute_force,
    dtw_distance,
    local_distance,
)
from .kinematics import (
    JointId,
    KeypointId,
    SegmentId,
    SkeletonFrame,
    angle_series,
    ankle_height,
    head_height,
    height_series,
    joint_angle,
    segment_direction,
)
from .scene_io import (
    SceneKind,
    ScenePose,
    SynchronyReport,
    build_report,
    emit_plot_data,
    load_scene,
    render_report,
    write_report,
    write_scene,
)
from .synchrony import (
    AngleSynchronyRow,
    DirectionSynchronyRow,
    HeightSynchronyRow,
    analyze_scene,
    angle_synchrony,
    cosine_similarity,
    crouch_synchrony,
    direction_synchrony,
    height_synchrony,
    jump_synchrony,
    synchrony_rate,
)
from .synth import SynthConfig, generate, perturb_time
