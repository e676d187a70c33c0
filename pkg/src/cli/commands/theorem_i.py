from __future__ import annotations

from schemas.cli import TheoremIPayload
from schemas.rational import fraction_str
from src.cli.cli_routes import register
from src.cli.commands._flags import dump, rational_list
from src.exceptions import InputError
from src.service.local import (
    chain_bound,
    dimitra_params,
    hypothesis_report,
    longest_window_prefix,
    run_lemma_2_0_suite,
    simulate_chain,
    verify_lemma_2_0,
)


@register(
    name="theorem-i",
    required_keys=[],
    optional_keys={"params": None, "dimitra": None, "a1": None, "a2": None, "mults": None, "suite": False},
    arguments=[
        (("--dimitra",), {"dest": "dimitra", "type": int, "help": "Corollary parameters for this m >= 3"}),
        (("--a1",), {"dest": "a1", "help": "Coefficient of the first local curve"}),
        (("--a2",), {"dest": "a2", "help": "Coefficient of the second local curve"}),
        (("--mults",), {"dest": "mults", "type": rational_list, "help": "Multiplicities m_0,m_1,... for the chain"}),
        (("--suite",), {"dest": "suite", "action": "store_true", "default": None, "help": "Run the seeded sampling suite"}),
    ],
    help="Hypotheses, derived inequalities and blow-up chain of the local inequality",
)
async def theorem_i_handler(data: dict):
    payload = TheoremIPayload.model_validate(data)
    result: dict = {}

    if payload.params is None and payload.dimitra is None:
        stray = [key for key in ("a1", "a2", "mults") if getattr(payload, key) is not None]
        if stray:
            raise InputError(
                {
                    "message": f"{', '.join(stray)} need parameters",
                    "missing": ["params or dimitra"],
                    "given": stray,
                }
            )

    if payload.suite:
        result["suite"] = dump(run_lemma_2_0_suite())
    if payload.params is None and payload.dimitra is None:
        return result

    params = payload.params if payload.params is not None else dimitra_params(payload.dimitra)
    result["params"] = dump(params)
    hypotheses = hypothesis_report(params, payload.a1, payload.a2)
    result["hypotheses"] = {**dump(hypotheses), "parameters_hold": hypotheses.parameters_hold, "all_hold": hypotheses.all_hold}
    result["lemma_2_0"] = dump(verify_lemma_2_0(params))

    if payload.mults is not None:
        if payload.a1 is None or payload.a2 is None:
            raise InputError("the chain needs a1 and a2")
        state = simulate_chain(payload.a1, payload.a2, payload.mults)
        result["chain"] = {
            **dump(state),
            "first_violation": state.first_violation,
            "longest_window_prefix": longest_window_prefix(state),
            "chain_bound": fraction_str(chain_bound(params, payload.a2)),
        }
    return result
