"""Flag value parsers shared by the subcommands."""
from __future__ import annotations

import argparse
from typing import Any, List

from pydantic import BaseModel

from schemas.enums import CuspStratum
from schemas.rational import to_fraction


def rational_list(text: str) -> List[str]:
    """Comma-separated rationals, e.g. 1/2,0,3."""
    try:
        return [str(to_fraction(part)) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def dump(model: BaseModel, **kwargs: Any) -> Any:
    return model.model_dump(mode="json", **kwargs)


SURFACE_ARGUMENTS = [
    (("--r-reducible",), {"dest": "branch_R_irreducible", "action": "store_false", "default": None, "help": "Branch curve R is reducible"}),
    (("--r-irreducible",), {"dest": "branch_R_irreducible", "action": "store_true", "default": None, "help": "Branch curve R is irreducible (default)"}),
    (("--cusp",), {"dest": "cusp", "choices": [s.value for s in CuspStratum], "help": "Cusp stratum of |-K_X|"}),
]
