from __future__ import annotations

from schemas.cli import PolytopePayload
from schemas.enums import PolytopeOperation
from schemas.rational import fraction_str
from src.cli.cli_routes import register
from src.cli.commands._flags import dump, rational_list
from src.exceptions import InputError
from src.service.catalog import base_system
from src.service.polytope import (
    eliminate,
    enumerate_vertices,
    is_implied,
    maximize,
    minimize,
    objective_for,
    verify_certificate,
)
from src.service.resolution import parse_dynkin


@register(
    name="polytope",
    required_keys=["operation"],
    optional_keys={"system": None, "dynkin": None, "objective": None, "variable": None, "target": None},
    arguments=[
        (("--operation",), {"dest": "operation", "choices": [op.value for op in PolytopeOperation]}),
        (("--dynkin",), {"dest": "dynkin", "help": "Use the coefficient system of this point type"}),
        (("--objective",), {"dest": "objective", "type": rational_list, "help": "Objective vector, e.g. 1,0,0"}),
        (("--variable",), {"dest": "variable", "help": "Objective variable, or the variable to eliminate"}),
    ],
    help="Exact linear programming, implication, elimination and vertices",
)
async def polytope_handler(data: dict):
    payload = PolytopePayload.model_validate(data)
    system = payload.system if payload.system is not None else base_system(parse_dynkin(payload.dynkin))
    operation = payload.operation

    if operation == PolytopeOperation.ELIMINATE:
        if payload.variable is None:
            raise InputError("eliminate needs a variable")
        return {"system": dump(eliminate(system, payload.variable))}

    if operation == PolytopeOperation.VERTICES:
        vertices = enumerate_vertices(system)
        return {"variables": system.variables, "vertices": [[fraction_str(v) for v in point] for point in vertices]}

    if operation == PolytopeOperation.IMPLIED:
        if payload.target is None:
            raise InputError("implied needs a target constraint")
        result = is_implied(system, payload.target)
        verified = result.certificate is not None and verify_certificate(system, result.certificate, payload.target)
        return {**dump(result), "verified": verified}

    if payload.objective is not None:
        objective = payload.objective
    elif payload.variable is not None:
        objective = objective_for(system, payload.variable)
    else:
        raise InputError(f"{operation.value} needs an objective or a variable")
    solve = maximize if operation == PolytopeOperation.MAXIMIZE else minimize
    result = solve(system, objective)
    return {"variables": system.variables, **dump(result, exclude_none=True)}


