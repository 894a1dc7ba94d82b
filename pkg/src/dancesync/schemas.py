"""Request/response models for the HTTP service."""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorResponse(BaseModel):
    error: str
    detail: str


class AnalyzeRequest(BaseModel):
    scene: dict
    performers: Optional[List[str]] = None
    mode: Literal["barycenter", "pairwise"] = "barycenter"
    format: Literal["json", "csv"] = "json"


class DtwRequest(BaseModel):
    a: List[float]
    b: List[float]
    include_path: bool = False


class DtwResponse(BaseModel):
    distance: float
    path: Optional[List[Tuple[int, int]]] = None


class DbaRequest(BaseModel):
    series: List[List[float]]
    max_iter: int = 30
    tol: float = 1e-6


class DbaResponse(BaseModel):
    barycenter: List[float]
    iterations: int
    objective_trace: List[float]


class SynthRequest(BaseModel):
    template: str
    performers: int = 4
    frames: int = 48
    seed: int = 0
    fps: float = 24.0
    time_jitter_frames: float = 0.0
    amplitude_scale_range: Tuple[float, float] = (1.0, 1.0)
    direction_noise_deg: float = 0.0
    height_noise: float = 0.0


class PlotRequest(BaseModel):
    scene: dict
    joint: str
