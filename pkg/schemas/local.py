from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from schemas.enums import Lemma20Outcome
from schemas.rational import Rational


class TheoremIParams(BaseModel):
    """The tuple (A, B, M, N, alpha, beta) of the local inequality."""
    model_config = ConfigDict(frozen=True)

    A: Rational = Field(..., description="Weight of a1 in the first disjunct")
    B: Rational = Field(..., description="Weight of a2 in the second disjunct")
    M: Rational = Field(..., description="Constant of the first disjunct")
    N: Rational = Field(..., description="Constant of the second disjunct")
    alpha: Rational = Field(..., description="Weight of a1 in the klt hypothesis alpha*a1 + beta*a2 <= 1")
    beta: Rational = Field(..., description="Weight of a2 in the klt hypothesis")

    @model_validator(mode="after")
    def _non_negative(self) -> "TheoremIParams":
        negative = [name for name, value in self.as_dict().items() if value < 0]
        if negative:
            raise ValueError(f"parameters must be non-negative: {negative}")
        return self

    def as_dict(self) -> Dict[str, Fraction]:
        return {"A": self.A, "B": self.B, "M": self.M, "N": self.N, "alpha": self.alpha, "beta": self.beta}


class ChainState(BaseModel):
    """Coefficient bookkeeping of the blow-up tower over O."""
    model_config = ConfigDict(frozen=True)

    a1: Rational
    a2: Rational
    mults: List[Rational] = Field(default_factory=list, description="m_0, ..., m_{n-1}")
    coeffs: List[Rational] = Field(default_factory=list, description="Coefficient of F_i for i = 1..n")
    violations: List[int] = Field(default_factory=list, description="1-based indices where 0 <= coeff < 1 fails")

    @model_validator(mode="after")
    def _lengths(self) -> "ChainState":
        if len(self.coeffs) != len(self.mults):
            raise ValueError("one coefficient per multiplicity")
        return self

    @property
    def first_violation(self) -> Optional[int]:
        return self.violations[0] if self.violations else None


class HypothesisReport(BaseModel):
    """Per-bullet truth values; ``bullet_1`` is None when (a1, a2) was not given."""
    bullet_1: Optional[bool] = Field(None, description="alpha*a1 + beta*a2 <= 1")
    bullet_2: bool = Field(..., description="A(B-1) >= 1 >= max(M, N)")
    bullet_3: bool = Field(..., description="alpha(A+M-1) >= A^2(B+N-1)beta and alpha(1-M) + A*beta >= A")
    bullet_4: bool = Field(..., description="2M + AN <= 2 or alpha(B+1-MB-N) + beta(A+1-AN-M) >= AB-1")

    @property
    def parameters_hold(self) -> bool:
        return self.bullet_2 and self.bullet_3 and self.bullet_4

    @property
    def all_hold(self) -> bool:
        return self.parameters_hold and self.bullet_1 is not False


class Lemma20Report(BaseModel):
    params: TheoremIParams
    outcome: Lemma20Outcome
    hypotheses: HypothesisReport
    conclusions: Dict[str, bool] = Field(default_factory=dict, description="Derived inequality name -> holds")


class Lemma20SuiteConfig(BaseModel):
    samples: int = Field(default=1000, ge=1, le=100_000, description="Accepted samples to check")
    seed: int = Field(default=20240601, description="numpy Generator seed")
    max_denominator: int = Field(default=12, ge=1, le=64, description="Denominators of sampled values")
    max_numerator_ratio: int = Field(default=4, ge=1, description="Sampled values lie in [0, max_numerator_ratio]")
    max_attempts: int = Field(default=2_000_000, ge=1, description="Rejection sampling budget")

    @field_validator("seed")
    @classmethod
    def _seed_non_negative(cls, seed: int) -> int:
        if seed < 0:
            raise ValueError("seed must be non-negative")
        return seed


class Lemma20SuiteSummary(BaseModel):
    config: Lemma20SuiteConfig
    attempts: int
    accepted: int
    verified: int
