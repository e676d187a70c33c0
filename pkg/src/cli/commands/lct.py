from __future__ import annotations

from schemas.cli import LctPayload
from src.cli.cli_routes import register
from src.cli.commands._flags import dump
from src.service.lct import ade_arrangement, lct_snc
from src.service.resolution import parse_dynkin


@register(
    name="lct",
    required_keys=["dynkin", "strict"],
    optional_keys={"germ": None},
    arguments=[(("--dynkin",), {"dest": "dynkin", "help": "Point type, e.g. A6"})],
    help="Threshold of a divisor at a Du Val point (curves in the payload)",
)
async def lct_handler(data: dict):
    payload = LctPayload.model_validate(data)
    t = parse_dynkin(payload.dynkin)
    arrangement = ade_arrangement(t, [(term.curve, term.coefficient) for term in payload.strict], payload.germ)
    result = lct_snc(arrangement)
    return {
        "dynkin": t.label,
        "lct": dump(result)["value"],
        "minimizer": result.minimizer,
        "bounded": result.bounded,
        "arrangement": dump(arrangement)["components"],
    }
