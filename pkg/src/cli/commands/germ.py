from __future__ import annotations

from schemas.cli import GermPayload
from schemas.enums import ComponentKind
from schemas.rational import fraction_str
from src.cli.cli_routes import register
from src.cli.commands._flags import dump
from src.exceptions import ReproductionFailure
from src.service.lct import builtin_germ, lct_all_orderings, lct_snc, run_program


@register(
    name="germ",
    required_keys=[],
    optional_keys={"builtin": None, "branches": None, "program": None},
    arguments=[(("--builtin",), {"dest": "builtin", "help": "node, cusp, tacnode, triple-point or tangency-<r>"})],
    help="Threshold of a plane curve germ from its blow-up program",
)
async def germ_handler(data: dict):
    payload = GermPayload.model_validate(data)
    if payload.builtin is not None:
        branches, program = builtin_germ(payload.builtin)
    else:
        branches, program = payload.branches, payload.program

    arrangement = run_program(branches, program)
    result = lct_snc(arrangement)
    orderings = lct_all_orderings(branches, program)
    values = {r.value for _, r in orderings}
    if len(values) > 1:
        raise ReproductionFailure(
            {
                "message": "threshold depends on the order of the centers",
                "orderings": [{"order": order, "lct": dump(r)["value"]} for order, r in orderings],
            }
        )
    return {
        "germ": program.name,
        "lct": dump(result)["value"],
        "minimizer": result.minimizer,
        "exceptionals": [
            {"id": c.id, "d": fraction_str(c.coefficient), "k": fraction_str(c.discrepancy)}
            for c in arrangement.components
            if c.kind == ComponentKind.EXCEPTIONAL
        ],
        "orderings": [order for order, _ in orderings],
    }
