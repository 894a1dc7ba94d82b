"""Command-line client for the synchrony service.

Every subcommand is a thin wrapper around one service endpoint: the CLI
reads local files, ships them to the service, and writes whatever comes
back. By default requests run against an in-process instance of the app
(no socket, no server to start); pass ``--server URL`` to talk to a
running deployment instead.

Exit codes: 0 success, 1 parse/flag/IO failure, 2 validation failure,
3 metric failure.
"""

import argparse
import asyncio
import json
import sys

import httpx

from . import errors
from .scene_io import atomic_write_text

_EXIT_PARSE = 1
_EXIT_VALIDATION = 2
_EXIT_METRIC = 3


class _ClientError(Exception):
    def __init__(self, message: str, code: int = _EXIT_PARSE):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # Flag mistakes are exit-1 failures, not argparse's default exit 2.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(_EXIT_PARSE)


def _metric_error_names() -> set:
    names = set()
    stack = [errors.MetricError]
    while stack:
        cls = stack.pop()
        names.add(cls.__name__)
        stack.extend(cls.__subclasses__())
    return names


_METRIC_NAMES = _metric_error_names()


def _exit_code_for(error_name: str) -> int:
    if error_name == "ValidationError":
        return _EXIT_VALIDATION
    if error_name in _METRIC_NAMES:
        return _EXIT_METRIC
    return _EXIT_PARSE  # ParseError, SchemaError, InvalidConfigError, IoError, unknown


def _request(server, method: str, path: str, payload) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=120.0) as client:
            return client.request(method, path, json=payload)

    from .service import app  # imported lazily; only needed in-process

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://dancesync.local"
        ) as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(go())


def _check_response(resp: httpx.Response) -> None:
    if resp.status_code < 400:
        return
    try:
        body = resp.json()
        name = body.get("error", "")
        detail = body.get("detail", resp.text)
    except (ValueError, AttributeError):
        name, detail = "", resp.text
    label = f"{name}: " if name else ""
    raise _ClientError(f"{label}{detail}", _exit_code_for(name))


def _read_scene_document(path):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _ClientError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _ClientError(f"{path}: {exc}") from None


def _read_series(path):
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise _ClientError(f"cannot read {path}: {exc}") from None
    values = []
    for lineno, line in enumerate(lines, start=1):
        token = line.strip()
        if not token or token.startswith("#"):
            continue
        try:
            value = float(token)
        except ValueError:
            raise _ClientError(f"{path}:{lineno}: not a number: {token!r}") from None
        if value != value or value in (float("inf"), float("-inf")):
            raise _ClientError(f"{path}:{lineno}: non-finite sample") from None
        values.append(value)
    if not values:
        raise _ClientError(f"{path}: no numeric samples")
    return values


def _deliver(text: str, out) -> None:
    if out:
        atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args) -> int:
    doc = _read_scene_document(args.scene)
    performers = args.performers.split(",") if args.performers else None
    resp = _request(
        args.server,
        "POST",
        "/analyze",
        {
            "scene": doc,
            "performers": performers,
            "mode": args.mode,
            "format": args.format,
        },
    )
    _check_response(resp)
    _deliver(resp.text, args.out)
    return 0


def _cmd_dtw(args) -> int:
    payload = {"a": _read_series(args.series_a), "b": _read_series(args.series_b)}
    resp = _request(args.server, "POST", "/dtw", payload)
    _check_response(resp)
    print(f"{resp.json()['distance']:.7f}")
    return 0


def _cmd_dba(args) -> int:
    payload = {"series": [_read_series(path) for path in args.series]}
    resp = _request(args.server, "POST", "/dba", payload)
    _check_response(resp)
    body = resp.json()
    text = "".join(f"{v:.7f}\n" for v in body["barycenter"])
    _deliver(text, args.out)
    return 0


def _cmd_synth(args) -> int:
    payload = {
        "template": args.template,
        "performers": args.performers,
        "frames": args.frames,
        "seed": args.seed,
        "fps": args.fps,
        "time_jitter_frames": args.time_jitter,
        "amplitude_scale_range": args.amplitude_scale,
        "direction_noise_deg": args.direction_noise,
        "height_noise": args.height_noise,
    }
    resp = _request(args.server, "POST", "/synth", payload)
    _check_response(resp)
    atomic_write_text(args.out, resp.text)
    print(args.out)
    return 0


def _cmd_plot(args) -> int:
    doc = _read_scene_document(args.scene)
    resp = _request(args.server, "POST", "/plot", {"scene": doc, "joint": args.joint})
    _check_response(resp)
    _deliver(resp.text, args.out)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="dancesync", description=__doc__.splitlines()[0])
    parser.add_argument("--server", help="base URL of a running service instance")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="score a scene file and write its report")
    p.add_argument("scene", help="path to a .scene.json file")
    p.add_argument("--performers", help="comma-separated performer ids (default all)")
    p.add_argument(
        "--mode", choices=("barycenter", "pairwise"), default="barycenter"
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("dtw", help="DTW distance between two series files")
    p.add_argument("series_a")
    p.add_argument("series_b")
    p.set_defaults(func=_cmd_dtw)

    p = sub.add_parser("dba", help="barycenter of two or more series files")
    p.add_argument("series", nargs="+")
    p.add_argument("--out", help="barycenter path (default: stdout)")
    p.set_defaults(func=_cmd_dba)

    p = sub.add_parser("synth", help="generate a synthetic scene file")
    p.add_argument("--template", required=True)
    p.add_argument("--performers", type=int, default=4)
    p.add_argument("--frames", type=int, default=48)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fps", type=float, default=24.0)
    p.add_argument("--time-jitter", type=float, default=0.0)
    p.add_argument(
        "--amplitude-scale",
        type=float,
        nargs=2,
        default=(1.0, 1.0),
        metavar=("LO", "HI"),
    )
    p.add_argument("--direction-noise", type=float, default=0.0)
    p.add_argument("--height-noise", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("plot", help="per-performer joint-angle columns (TSV)")
    p.add_argument("scene")
    p.add_argument("--joint", required=True, help="e.g. left_elbow")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except errors.IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_PARSE
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return _EXIT_PARSE


def run() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
