from __future__ import annotations

from schemas.cli import PullbackPayload
from src.cli.cli_routes import register
from src.cli.commands._flags import dump, int_list
from src.service.resolution import anticanonical_incidence, intersection_matrix, parse_dynkin, pullback_coefficients


@register(
    name="pullback",
    required_keys=["dynkin"],
    optional_keys={"incidences": None},
    arguments=[
        (("--dynkin",), {"dest": "dynkin", "help": "Point type, e.g. A7"}),
        (("--incidences",), {"dest": "incidences", "type": int_list, "help": "Strict transform . E_i, e.g. 0,0,0,1,0,0,0"}),
    ],
    help="Pullback coefficients of a curve through a Du Val point",
)
async def pullback_handler(data: dict):
    payload = PullbackPayload.model_validate(data)
    t = parse_dynkin(payload.dynkin)
    anticanonical = payload.incidences is None
    b = anticanonical_incidence(t) if anticanonical else payload.incidences
    n = pullback_coefficients(t, b)
    return {
        "dynkin": t.label,
        "incidences": b,
        "anticanonical": anticanonical,
        "coefficients": dump(n)["coeffs"],
        "matrix": intersection_matrix(t).entries,
    }
