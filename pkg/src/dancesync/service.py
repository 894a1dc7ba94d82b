"""HTTP service exposing the synchrony pipeline.

Run with ``uvicorn dancesync.service:app`` (or ``python -m dancesync.service``).
Scene documents travel as plain JSON objects and are validated by the same
code path as scene files, so service and CLI reject identical inputs with
identical error classes.
"""

from fastapi import FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse, Response

from . import __version__, align, scene_io, synchrony, synth
from .errors import DanceSyncError, InvalidConfigError, ParseError, SchemaError
from .kinematics import parse_joint
from .schemas import (
    AnalyzeRequest,
    DbaRequest,
    DbaResponse,
    DtwRequest,
    DtwResponse,
    HealthResponse,
    PlotRequest,
    SynthRequest,
)

app = FastAPI(
    title="dancesync",
    version=__version__,
    description="Synchrony scores for multi-performer skeleton scenes.",
)


@app.exception_handler(DanceSyncError)
async def _domain_error(request, exc: DanceSyncError):
    if isinstance(exc, (ParseError, SchemaError, InvalidConfigError)):
        status = 400
    else:
        status = 422  # validation and metric errors: well-formed but unusable
    return JSONResponse(
        status_code=status,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/analyze")
def analyze(req: AnalyzeRequest) -> Response:
    scene = scene_io.scene_from_document(req.scene)
    rows = synchrony.analyze_scene(scene, req.performers, req.mode)
    report = scene_io.build_report(
        scene, rows, mode=req.mode, performers=req.performers
    )
    text = scene_io.render_report(report, req.format)
    media = "application/json" if req.format == "json" else "text/csv"
    return Response(content=text, media_type=media)


@app.post("/dtw", response_model=DtwResponse)
def compute_dtw(req: DtwRequest) -> DtwResponse:
    result = align.dtw(req.a, req.b)
    return DtwResponse(
        distance=result.distance,
        path=[tuple(p) for p in result.path] if req.include_path else None,
    )


@app.post("/dba", response_model=DbaResponse)
def compute_dba(req: DbaRequest) -> DbaResponse:
    result = align.dba(req.series, max_iter=req.max_iter, tol=req.tol)
    return DbaResponse(
        barycenter=[float(v) for v in result.series],
        iterations=result.iterations,
        objective_trace=list(result.objective_trace),
    )


@app.post("/synth")
def synthesize(req: SynthRequest) -> Response:
    config = synth.SynthConfig(**req.model_dump())
    scene = synth.generate(config)
    return Response(
        content=scene_io.render_scene(scene), media_type="application/json"
    )


@app.post("/plot")
def plot(req: PlotRequest) -> PlainTextResponse:
    scene = scene_io.scene_from_document(req.scene)
    try:
        joint = parse_joint(req.joint)
    except KeyError:
        raise SchemaError(f"unknown joint {req.joint!r}") from None
    return PlainTextResponse(
        scene_io.render_plot_data(scene, joint),
        media_type="text/tab-separated-values",
    )


if __name__ == "__main__":  # pragma: no cover
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)
