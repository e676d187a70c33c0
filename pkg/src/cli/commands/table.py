from __future__ import annotations

from schemas.catalog import SurfaceFlags
from schemas.cli import TablePayload
from src.cli.cli_routes import register
from src.cli.commands._flags import SURFACE_ARGUMENTS, dump
from src.service.catalog import lct_table, parse_configuration


@register(
    name="table",
    required_keys=["config"],
    optional_keys={"branch_R_irreducible": True, "cusp": "none"},
    arguments=[(("--config",), {"dest": "config", "help": 'Configuration such as "A7+A1"'}), *SURFACE_ARGUMENTS],
    help="Threshold table row of a configuration",
)
async def table_handler(data: dict):
    payload = TablePayload.model_validate(data)
    config = parse_configuration(payload.config)
    flags = SurfaceFlags(branch_R_irreducible=payload.branch_R_irreducible, cusp_stratum=payload.cusp)
    row, _ = lct_table(config, flags)
    return dump(row, exclude_none=True)
