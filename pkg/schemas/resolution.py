from __future__ import annotations

import re
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from schemas.enums import DynkinKind
from schemas.rational import Rational

_LABEL = re.compile(r"^\s*([ADEade])\s*(\d+)\s*$")


class DynkinType(BaseModel):
    """A Du Val point type such as A7 or D5."""
    model_config = ConfigDict(frozen=True)

    kind: DynkinKind = Field(..., description="Resolution graph kind")
    rank: int = Field(..., description="Number of exceptional (-2)-curves")

    @model_validator(mode="after")
    def _rank_in_range(self) -> "DynkinType":
        if self.rank not in self.kind.allowed_ranks:
            raise ValueError(
                f"rank {self.rank} is not allowed for kind {self.kind.value}; "
                f"expected one of {list(self.kind.allowed_ranks)}"
            )
        return self

    @classmethod
    def parse(cls, label: str) -> "DynkinType":
        match = _LABEL.match(label)
        if not match:
            raise ValueError(f"not a Dynkin label: {label!r}")
        return cls(kind=DynkinKind(match.group(1).upper()), rank=int(match.group(2)))

    @property
    def label(self) -> str:
        return f"{self.kind.value}{self.rank}"

    @property
    def sort_key(self) -> Tuple[int, int]:
        return (self.kind.sort_weight, -self.rank)

    def __str__(self) -> str:
        return self.label


class IntersectionMatrix(BaseModel):
    """Symmetric matrix (E_i . E_j) of the exceptional curves."""
    model_config = ConfigDict(frozen=True)

    entries: List[List[int]] = Field(..., description="Row-major integer matrix")

    @field_validator("entries")
    @classmethod
    def _check_shape(cls, entries: List[List[int]]) -> List[List[int]]:
        size = len(entries)
        if size == 0:
            raise ValueError("empty intersection matrix")
        for i, row in enumerate(entries):
            if len(row) != size:
                raise ValueError(f"row {i + 1} has length {len(row)}, expected {size}")
            if row[i] != -2:
                raise ValueError(f"diagonal entry {i + 1} is {row[i]}, expected -2")
            for j, value in enumerate(row):
                if value != entries[j][i]:
                    raise ValueError(f"not symmetric at ({i + 1}, {j + 1})")
                if i != j and value not in (0, 1):
                    raise ValueError(f"off-diagonal entry ({i + 1}, {j + 1}) is {value}")
        return entries

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        """1-based access, matching the E_i numbering."""
        return self.entries[i - 1][j - 1]


class CurveClass(BaseModel):
    """The data of a curve L on X that the threshold computations use."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Label such as L3 or Z")
    anticanonical_degree: Rational = Field(..., description="-K_X . L")
    self_intersection_strict: Rational = Field(..., description="Self-intersection of the strict transform on the resolution")
    exc_intersections: List[int] = Field(..., description="Strict transform . E_i for i = 1..m")
    through_crossing: Optional[Tuple[int, int]] = Field(
        None,
        description="1-based indices (i, j) when the strict transform passes through E_i and E_j at their common point",
    )

    @field_validator("exc_intersections")
    @classmethod
    def _non_negative(cls, values: List[int]) -> List[int]:
        if any(v < 0 for v in values):
            raise ValueError("exceptional intersections must be non-negative")
        return values

    @model_validator(mode="after")
    def _crossing_in_range(self) -> "CurveClass":
        if self.through_crossing is not None:
            i, j = self.through_crossing
            size = len(self.exc_intersections)
            if not (1 <= i <= size and 1 <= j <= size) or i == j:
                raise ValueError(f"through_crossing {self.through_crossing} out of range for rank {size}")
        return self

    @property
    def rank(self) -> int:
        return len(self.exc_intersections)


class PullbackCoefficients(BaseModel):
    """Coefficients n_i with pi^*(L) = strict transform + sum n_i E_i."""
    model_config = ConfigDict(frozen=True)

    coeffs: List[Rational] = Field(..., description="n_1, ..., n_m")
    dynkin: Optional[DynkinType] = Field(None, description="Graph the coefficients live on, when known")

    @field_validator("coeffs")
    @classmethod
    def _non_negative(cls, values: list) -> list:
        if any(v < 0 for v in values):
            raise ValueError("pullback coefficients are non-negative")
        return values

    def __len__(self) -> int:
        return len(self.coeffs)
