from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from schemas.enums import ComponentKind
from schemas.rational import Rational


class ArrangementComponent(BaseModel):
    """A prime divisor of a log resolution with its coefficient d and discrepancy k."""
    model_config = ConfigDict(frozen=True)

    id: str = Field(..., description="Component name, e.g. L3, E2 or F1")
    coefficient: Rational = Field(..., description="Coefficient d in the log pull-back")
    kind: ComponentKind = Field(default=ComponentKind.STRICT)
    discrepancy: Rational = Field(default=Fraction(0), description="k with K' = pi^*K + sum k E")

    @model_validator(mode="after")
    def _check(self) -> "ArrangementComponent":
        if self.coefficient < 0:
            raise ValueError(f"{self.id}: coefficient must be non-negative")
        if self.kind == ComponentKind.STRICT and self.discrepancy != 0:
            raise ValueError(f"{self.id}: strict components have discrepancy 0")
        if self.discrepancy < 0:
            raise ValueError(f"{self.id}: discrepancies of smooth blow-ups are non-negative")
        return self

    @property
    def log_discrepancy(self) -> Fraction:
        return 1 + self.discrepancy


class WeightedArrangement(BaseModel):
    model_config = ConfigDict(frozen=True)

    components: List[ArrangementComponent] = Field(default_factory=list)

    @field_validator("components")
    @classmethod
    def _unique_ids(cls, components: List[ArrangementComponent]) -> List[ArrangementComponent]:
        ids = [c.id for c in components]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            raise ValueError(f"duplicate component ids: {duplicates}")
        return components

    def get(self, component_id: str) -> Optional[ArrangementComponent]:
        return next((c for c in self.components if c.id == component_id), None)


class BranchIncidence(BaseModel):
    model_config = ConfigDict(frozen=True)

    branch: str = Field(..., description="Branch id passing through the center")
    multiplicity: int = Field(default=1, ge=1, description="Multiplicity of the branch at the center")


class BlowupStep(BaseModel):
    """One center. Exceptional curves are referred to by 1-based step number."""
    model_config = ConfigDict(frozen=True)

    incident_exceptionals: List[int] = Field(default_factory=list, description="Earlier steps whose exceptional curve contains the center")
    incident_branches: List[BranchIncidence] = Field(default_factory=list)
    transverse: bool = Field(default=False, description="Every curve through the center has its own tangent direction")

    @field_validator("incident_exceptionals")
    @classmethod
    def _at_most_two(cls, values: List[int]) -> List[int]:
        if len(values) > 2:
            raise ValueError("at most two exceptional curves pass through a point of a surface")
        if len(set(values)) != len(values):
            raise ValueError(f"repeated exceptional in {values}")
        if any(v < 1 for v in values):
            raise ValueError("exceptional references are 1-based step numbers")
        return values


class BlowupProgram(BaseModel):
    model_config = ConfigDict(frozen=True)

    steps: List[BlowupStep] = Field(default_factory=list)
    name: Optional[str] = Field(None)

    @model_validator(mode="after")
    def _earlier_only(self) -> "BlowupProgram":
        for index, step in enumerate(self.steps, start=1):
            late = [e for e in step.incident_exceptionals if e >= index]
            if late:
                raise ValueError(f"step {index} references exceptional(s) {late} before they are created")
        return self


class GermBranch(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    coefficient: Rational = Field(default=Fraction(1))

    @field_validator("coefficient")
    @classmethod
    def _non_negative(cls, value: Fraction) -> Fraction:
        if value < 0:
            raise ValueError("branch coefficients are non-negative")
        return value


class LctResult(BaseModel):
    """``bounded`` is False for the zero divisor, whose threshold is +infinity."""
    value: Optional[Rational] = Field(None)
    minimizer: Optional[str] = Field(None, description="Component attaining the minimum")
    bounded: bool = Field(default=True)

    @model_validator(mode="after")
    def _sentinel(self) -> "LctResult":
        if self.bounded and (self.value is None or self.value <= 0):
            raise ValueError("a bounded threshold is a positive rational")
        if not self.bounded and self.value is not None:
            raise ValueError("the unbounded sentinel carries no value")
        return self


class ConvexityReduction(BaseModel):
    alpha: Rational
    dprime: List[Rational]
