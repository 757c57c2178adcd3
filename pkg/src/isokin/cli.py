"""Command-line front end: a thin client over the scenario service.

Subcommands load a TOML scenario, hand it to the service layer (in process
by default, over HTTP with --server), and render the response. All domain
work happens behind the service interface.

Exit codes: 0 success; 1 failed or errored verification checks;
2 degenerate point; 64 unusable scenario or arguments; 73 unwritable
output directory.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python 3.10
    import tomli as tomllib

from pydantic import ValidationError

from .service import handlers, schemas

EX_OK = 0
EX_FAIL = 1
EX_DEGENERATE = 2
EX_CONFIG = 64
EX_CANTWRITE = 73


class LocalBackend:
    """Default backend: call the service handlers in process."""

    def characteristics(self, req: schemas.CharacteristicsRequest):
        return handlers.run_characteristics(req)

    def verify(self, req: schemas.VerifyRequest):
        return handlers.run_verify(req)

    def export(self, req: schemas.ExportRequest):
        return handlers.run_export(req)


class HttpBackend:
    """Remote backend speaking to a running service instance."""

    def __init__(self, base_url: str, client=None):
        import httpx

        self._client = client or httpx.Client(base_url=base_url, timeout=600.0)
        self._base = base_url

    def _post(self, path: str, payload, response_model):
        resp = self._client.post(path, json=payload.model_dump(mode="json"))
        if resp.status_code >= 400:
            try:
                body = resp.json()
                raise handlers.ServiceError(body.get("code", "remote"),
                                            body.get("message", resp.text))
            except ValueError:
                raise handlers.ServiceError("remote", resp.text)
        return response_model.model_validate(resp.json())

    def characteristics(self, req):
        return self._post("/characteristics", req, schemas.CharacteristicsResponse)

    def verify(self, req):
        return self._post("/verify", req, schemas.VerifyResponse)

    def export(self, req):
        return self._post("/export", req, schemas.ExportResponse)


def make_backend(server: str | None):
    return HttpBackend(server) if server else LocalBackend()


def load_scenario(path: str) -> schemas.ScenarioModel:
    """Parse and validate a scenario file; raises ScenarioLoadError with a
    line or field diagnostic on any defect."""
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise ScenarioLoadError(f"cannot read scenario file {path}: {exc}")
    try:
        data = tomllib.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ScenarioLoadError(f"scenario parse error in {path}: {exc}")
    try:
        return schemas.ScenarioModel.model_validate(data)
    except ValidationError as exc:
        lines = [f"invalid scenario {path}:"]
        for err in exc.errors():
            loc = ".".join(str(part) for part in err["loc"])
            lines.append(f"  field '{loc}': {err['msg']}")
        raise ScenarioLoadError("\n".join(lines))


class ScenarioLoadError(Exception):
    pass


def _apply_overrides(scenario: schemas.ScenarioModel, args) -> schemas.ScenarioModel:
    if getattr(args, "seed", None) is not None:
        scenario = scenario.model_copy(update={"seed": args.seed})
    if getattr(args, "out", None) is not None:
        scenario = scenario.model_copy(update={"output_dir": args.out})
    if getattr(args, "suite", None):
        verify = scenario.verify.model_copy(update={"suites": args.suite})
        scenario = scenario.model_copy(update={"verify": verify})
    return scenario


def _write_outputs(out_dir: str, files: dict[str, str]) -> None:
    path = Path(out_dir)
    try:
        path.mkdir(parents=True, exist_ok=True)
        probe = path / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise OutputDirError(f"output directory {out_dir} is not writable: {exc}")
    for name, content in files.items():
        try:
            (path / name).write_text(content, encoding="utf-8", newline="")
        except OSError as exc:
            raise OutputDirError(f"cannot write {name} under {out_dir}: {exc}")


class OutputDirError(Exception):
    pass


def cmd_characteristics(args) -> int:
    scenario = load_scenario(args.scenario)
    scenario = _apply_overrides(scenario, args)
    x = scenario.robot.x if args.x is None else args.x
    y = scenario.robot.y if args.y is None else args.y
    req = schemas.CharacteristicsRequest(scenario=scenario, t=args.t, x=x, y=y)
    backend = make_backend(args.server)
    try:
        resp = backend.characteristics(req)
    except handlers.ServiceError as exc:
        if exc.code == "degenerate_point":
            print(f"error: {exc.message}", file=sys.stderr)
            return EX_DEGENERATE
        raise
    sys.stdout.write(handlers.format_characteristics(resp, args.t, x, y))
    return EX_OK


def cmd_verify(args) -> int:
    scenario = load_scenario(args.scenario)
    scenario = _apply_overrides(scenario, args)
    backend = make_backend(args.server)
    resp = backend.verify(schemas.VerifyRequest(scenario=scenario))
    sys.stdout.write(resp.report)
    _write_outputs(scenario.output_dir, {"report.txt": resp.report})
    if not resp.all_asserted_passed:
        for failure in resp.failures:
            print(f"failure: {failure}", file=sys.stderr)
        return EX_FAIL
    return EX_OK


def cmd_export(args) -> int:
    scenario = load_scenario(args.scenario)
    scenario = _apply_overrides(scenario, args)
    backend = make_backend(args.server)
    resp = backend.export(schemas.ExportRequest(scenario=scenario))
    _write_outputs(scenario.output_dir, resp.files)
    for name in sorted(resp.files):
        print(f"wrote {Path(scenario.output_dir) / name}")
    return EX_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isokin",
        description="Isoline calculus of unsteady planar fields: point "
                    "characteristics, verification campaigns, CSV exports.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario_required=True):
        p.add_argument("--scenario", required=scenario_required,
                       help="path to a TOML scenario file")
        p.add_argument("--seed", type=int, default=None,
                       help="override the scenario seed")
        p.add_argument("--out", default=None, help="override the output directory")
        p.add_argument("--server", default=None,
                       help="base URL of a remote service (default: in process)")

    p = sub.add_parser("characteristics",
                       help="print the characteristics and frame at a point")
    common(p)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--x", type=float, default=None,
                   help="defaults to the scenario robot position")
    p.add_argument("--y", type=float, default=None)
    p.set_defaults(func=cmd_characteristics)

    p = sub.add_parser("verify", help="run verification suites and write a report")
    common(p)
    p.add_argument("--suite", action="append", default=None,
                   help="suite name (repeatable); defaults to the scenario list")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write trajectory, isoline and grid CSV files")
    common(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_CONFIG
    except OutputDirError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_CANTWRITE
    except handlers.ServiceError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return EX_CONFIG if exc.code == "config" else EX_FAIL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
