"""Command-line dispatcher: one subcommand per registered handler, JSON on stdout."""
from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from schemas.cli import RunRequest, RunResponse
from src.cli import commands as _commands  # noqa: F401
from src.cli.cli_routes import COMMANDS
from src.dependencies import get_settings
from src.exceptions import InputError, ThresholdError
from src.logger import configure_logging

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError({"message": message, "usage": self.format_usage().strip()})


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dp1-lct", description="Thresholds of degree 1 del Pezzo surfaces with Du Val points")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for name, info in sorted(COMMANDS.items()):
        sub = subparsers.add_parser(name, help=info["help"], description=info["help"])
        sub.add_argument("--payload", dest="_payload", metavar="FILE", help="JSON payload file, or - for stdin")
        for flags, options in info["arguments"]:
            sub.add_argument(*flags, **options)
    return parser


def _read_payload(source: Optional[str]) -> Dict[str, Any]:
    if source is None:
        return {}
    try:
        if source == "-":
            return json.load(sys.stdin)
        with open(source, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read payload {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError({"message": "payload is not valid JSON", "line": exc.lineno, "column": exc.colno}) from None


def parse_request(argv: List[str]) -> RunRequest:
    """Merge the payload file with the flags; a flag wins when it was given."""
    args = vars(build_parser().parse_args(argv))
    name = args.pop("subcommand")
    payload = _read_payload(args.pop("_payload"))
    if not isinstance(payload, dict):
        raise InputError(f"payload must be a JSON object, got {type(payload).__name__}")
    payload.update({key: value for key, value in args.items() if value is not None})
    return RunRequest(subcommand=name, payload=payload)


def run(req: RunRequest) -> RunResponse:
    handler = COMMANDS[req.subcommand.value]["handler"]
    try:
        output = asyncio.run(handler(req.payload))
    except ThresholdError as exc:
        logger.warning("%s failed: %s", req.subcommand.value, exc)
        return RunResponse(exit_code=exc.exit_code, output=exc.as_dict())
    except ValidationError as exc:
        logger.warning("%s: invalid payload (%d errors)", req.subcommand.value, exc.error_count())
        return RunResponse(
            exit_code=1,
            output={"status": "error", "error": "ValidationError", "errors": json.loads(exc.json(include_url=False))},
        )
    return RunResponse(exit_code=0, output=output)


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    configure_logging(settings.log_dir, settings.log_level)
    try:
        response = run(parse_request(sys.argv[1:] if argv is None else argv))
    except ThresholdError as exc:
        response = RunResponse(exit_code=exc.exit_code, output=exc.as_dict())
    except ValidationError as exc:
        response = RunResponse(
            exit_code=1,
            output={"status": "error", "error": "ValidationError", "errors": json.loads(exc.json(include_url=False))},
        )
    print(json.dumps(response.output, indent=2))
    return response.exit_code
