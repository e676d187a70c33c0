"""Write the JSON Schema of every payload and result document.

Usage:
	python -m scripts.export_schemas
"""
from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Dict, Type

from dotenv import load_dotenv
from pydantic import BaseModel

from schemas.catalog import CertificationReport, TableRow
from schemas.cli import (
    CertifyPayload,
    GermPayload,
    LctPayload,
    PolytopePayload,
    PullbackPayload,
    TablePayload,
    TheoremIPayload,
)
from schemas.lct import LctResult, WeightedArrangement
from schemas.local import ChainState, Lemma20Report, Lemma20SuiteSummary
from schemas.polytope import ImplicationResult, LinIneqSystem, LPResult
from src.logger import configure_logging

load_dotenv()

logger = logging.getLogger(__name__)

SCHEMA_DIR = Path(os.getenv("DP1_LCT_SCHEMA_DIR", "docs/schemas"))

MODELS: Dict[str, Type[BaseModel]] = {
    "table.payload": TablePayload,
    "table.result": TableRow,
    "certify.payload": CertifyPayload,
    "certify.result": CertificationReport,
    "lct.payload": LctPayload,
    "lct.result": LctResult,
    "lct.arrangement": WeightedArrangement,
    "pullback.payload": PullbackPayload,
    "polytope.payload": PolytopePayload,
    "polytope.system": LinIneqSystem,
    "polytope.lp": LPResult,
    "polytope.implied": ImplicationResult,
    "theorem-i.payload": TheoremIPayload,
    "theorem-i.report": Lemma20Report,
    "theorem-i.chain": ChainState,
    "theorem-i.suite": Lemma20SuiteSummary,
    "germ.payload": GermPayload,
}


def export(directory: Path = SCHEMA_DIR) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in MODELS.items():
        path = directory / f"{name}.json"
        path.write_text(json.dumps(model.model_json_schema(mode="serialization"), indent=2) + "\n", encoding="utf-8")
        written.append(path)
    logger.info("wrote %d schemas to %s", len(written), directory)
    return written


def main() -> None:
    configure_logging()
    export()


if __name__ == "__main__":
    main()
