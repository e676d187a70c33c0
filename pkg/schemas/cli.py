from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from schemas.enums import CuspStratum, PolytopeOperation, Subcommand
from schemas.lct import BlowupProgram, GermBranch
from schemas.local import TheoremIParams
from schemas.polytope import Constraint, LinIneqSystem
from schemas.rational import Rational
from schemas.resolution import CurveClass


class RunRequest(BaseModel):
    subcommand: Subcommand
    payload: Dict[str, Any] = Field(default_factory=dict, description="Validated against the subcommand's payload model")


class RunResponse(BaseModel):
    exit_code: int = Field(..., ge=0, le=2)
    output: Any = Field(default=None, description="JSON result document")


class SurfacePayload(BaseModel):
    branch_R_irreducible: bool = Field(default=True)
    cusp: CuspStratum = Field(default=CuspStratum.NO_CUSP)


class TablePayload(SurfacePayload):
    config: str = Field(..., description='Configuration such as "A7+A1" or "D4+4A1"')


class CertifyPayload(SurfacePayload):
    config: Optional[str] = Field(None)
    all: bool = Field(default=False, description="Sweep every admissible configuration")
    workers: Optional[int] = Field(None, ge=1, le=64)

    @model_validator(mode="after")
    def _one_target(self) -> "CertifyPayload":
        if self.all == (self.config is not None):
            raise ValueError("give exactly one of config or all")
        return self


class StrictTerm(BaseModel):
    curve: CurveClass
    coefficient: Rational


class LctPayload(BaseModel):
    dynkin: str
    strict: List[StrictTerm] = Field(default_factory=list)
    germ: Optional[BlowupProgram] = Field(None, description="Program resolving a non-SNC total transform")


class PullbackPayload(BaseModel):
    dynkin: str
    incidences: Optional[List[int]] = Field(None, description="Strict transform . E_i; anticanonical when omitted")


class PolytopePayload(BaseModel):
    operation: PolytopeOperation
    system: Optional[LinIneqSystem] = Field(None)
    dynkin: Optional[str] = Field(None, description="Use the coefficient system of this point type")
    objective: Optional[List[Rational]] = Field(None)
    variable: Optional[str] = Field(None, description="Objective e_variable, or the variable to eliminate")
    target: Optional[Constraint] = Field(None, description="Inequality for the implied operation")

    @model_validator(mode="after")
    def _one_system(self) -> "PolytopePayload":
        if (self.system is None) == (self.dynkin is None):
            raise ValueError("give exactly one of system or dynkin")
        return self


class TheoremIPayload(BaseModel):
    params: Optional[TheoremIParams] = Field(None)
    dimitra: Optional[int] = Field(None, description="Use the corollary parameters for this m")
    a1: Optional[Rational] = Field(None)
    a2: Optional[Rational] = Field(None)
    mults: Optional[List[Rational]] = Field(None, description="Run the chain simulator with these multiplicities")
    suite: bool = Field(default=False, description="Run the seeded sampling suite")

    @model_validator(mode="after")
    def _params_source(self) -> "TheoremIPayload":
        if not self.suite and (self.params is None) == (self.dimitra is None):
            raise ValueError("give exactly one of params or dimitra")
        return self


class GermPayload(BaseModel):
    builtin: Optional[str] = Field(None, description="node, cusp, tacnode, triple-point or tangency-<r>")
    branches: Optional[List[GermBranch]] = Field(None)
    program: Optional[BlowupProgram] = Field(None)

    @model_validator(mode="after")
    def _one_germ(self) -> "GermPayload":
        explicit = self.branches is not None and self.program is not None
        if (self.builtin is not None) == explicit:
            raise ValueError("give either builtin or both branches and program")
        return self
