from __future__ import annotations

import logging

from schemas.catalog import SurfaceFlags
from schemas.cli import CertifyPayload
from src.cli.cli_routes import register
from src.cli.commands._flags import SURFACE_ARGUMENTS, dump
from src.dependencies import get_settings
from src.exceptions import ReproductionFailure
from src.service.catalog import certify_all_async, certify_lower_bound, parse_configuration, require_certified

logger = logging.getLogger(__name__)


@register(
    name="certify",
    required_keys=[],
    optional_keys={"config": None, "all": False, "branch_R_irreducible": True, "cusp": "none", "workers": None},
    arguments=[
        (("--config",), {"dest": "config", "help": "Configuration to certify"}),
        (("--all",), {"dest": "all", "action": "store_true", "default": None, "help": "Sweep every admissible configuration"}),
        (("--workers",), {"dest": "workers", "type": int, "help": "Worker threads for --all"}),
        *SURFACE_ARGUMENTS,
    ],
    help="Certify the lower bound of the threshold table",
)
async def certify_handler(data: dict):
    payload = CertifyPayload.model_validate(data)
    if payload.all:
        workers = payload.workers or get_settings().workers
        reports = await certify_all_async(workers)
        failed = [r.configuration for r in reports if not r.passed]
        documents = [dump(r) for r in reports]
        if failed:
            raise ReproductionFailure({"message": f"{len(failed)} configuration(s) failed", "failed": failed, "reports": documents})
        logger.info("certify --all: %d reports, all passed", len(reports))
        return {"status": "certified", "reports": documents}

    config = parse_configuration(payload.config)
    flags = SurfaceFlags(branch_R_irreducible=payload.branch_R_irreducible, cusp_stratum=payload.cusp)
    report = require_certified(certify_lower_bound(config, flags))
    return {"status": "certified", **dump(report)}
