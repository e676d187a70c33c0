from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from schemas.enums import LPStatus, Relation
from schemas.rational import Rational


class Constraint(BaseModel):
    """One row coeffs . x (>= | =) rhs."""
    model_config = ConfigDict(frozen=True)

    coeffs: List[Rational] = Field(..., description="One coefficient per variable")
    relation: Relation = Field(default=Relation.GE)
    rhs: Rational = Field(default=Fraction(0))

    def evaluate(self, point: List[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0))

    def holds(self, point: List[Fraction]) -> bool:
        value = self.evaluate(point)
        if self.relation == Relation.EQ:
            return value == self.rhs
        return value >= self.rhs


class LinIneqSystem(BaseModel):
    """Exact-rational linear system over free (unbounded) variables."""
    model_config = ConfigDict(frozen=True)

    variables: List[str] = Field(..., description="Variable names in column order")
    constraints: List[Constraint] = Field(default_factory=list)
    name: Optional[str] = Field(None, description="Provenance label")

    @field_validator("variables")
    @classmethod
    def _unique(cls, variables: List[str]) -> List[str]:
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        return variables

    @model_validator(mode="after")
    def _widths(self) -> "LinIneqSystem":
        width = len(self.variables)
        for index, row in enumerate(self.constraints):
            if len(row.coeffs) != width:
                raise ValueError(f"constraint {index} has {len(row.coeffs)} coefficients, expected {width}")
        return self

    def index(self, variable: str) -> int:
        try:
            return self.variables.index(variable)
        except ValueError:
            raise KeyError(f"unknown variable {variable!r}; known: {self.variables}") from None

    def unit(self, variable: str, scale: Fraction = Fraction(1)) -> List[Fraction]:
        row = [Fraction(0)] * len(self.variables)
        row[self.index(variable)] = Fraction(scale)
        return row

    def extended(self, rows: List[Constraint], name: Optional[str] = None) -> "LinIneqSystem":
        return LinIneqSystem(
            variables=list(self.variables),
            constraints=[*self.constraints, *rows],
            name=name or self.name,
        )

    def with_variables(self, extra: List[str]) -> "LinIneqSystem":
        """Append zero columns for new variables."""
        pad = [Fraction(0)] * len(extra)
        return LinIneqSystem(
            variables=[*self.variables, *extra],
            constraints=[
                Constraint(coeffs=[*row.coeffs, *pad], relation=row.relation, rhs=row.rhs)
                for row in self.constraints
            ],
            name=self.name,
        )


class FarkasCertificate(BaseModel):
    """Multipliers whose weighted sum of rows is an impossible inequality.

    With ``negation_multiplier`` zero the sum reads 0 >= c with c > 0. With a
    positive ``negation_multiplier`` the strict negation of an implication target
    is added to the rows and the sum reads 0 > c with c >= 0.
    """
    model_config = ConfigDict(frozen=True)

    multipliers: List[Rational] = Field(..., description="One per constraint; GE rows non-negative, EQ rows signed")
    negation_multiplier: Rational = Field(default=Fraction(0), description="Weight on the negated implication target")
    combined_rhs: Rational = Field(..., description="Right-hand side of the weighted sum")


class LPResult(BaseModel):
    status: LPStatus
    value: Optional[Rational] = Field(None, description="Optimal objective value")
    witness: Optional[List[Rational]] = Field(None, description="Optimal point")
    certificate: Optional[FarkasCertificate] = Field(None, description="Proof of infeasibility")

    @model_validator(mode="after")
    def _status_payload(self) -> "LPResult":
        if self.status == LPStatus.OPTIMAL and (self.value is None or self.witness is None):
            raise ValueError("optimal results carry a value and a witness")
        if self.status == LPStatus.INFEASIBLE and self.certificate is None:
            raise ValueError("infeasible results carry a certificate")
        return self


class ImplicationResult(BaseModel):
    implied: bool
    certificate: Optional[FarkasCertificate] = Field(None, description="Present when implied")
    witness: Optional[List[Rational]] = Field(None, description="Point of the system violating the target, when not implied")
