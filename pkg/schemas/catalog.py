from __future__ import annotations

from collections import Counter
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from schemas.enums import CuspStratum, DynkinKind
from schemas.polytope import ImplicationResult, LinIneqSystem, LPResult
from schemas.rational import Rational
from schemas.resolution import CurveClass, DynkinType


class SingularityConfiguration(BaseModel):
    """Multiset of Du Val points, kept in canonical order (E, D, A; rank descending)."""
    model_config = ConfigDict(frozen=True)

    points: List[DynkinType] = Field(default_factory=list)

    @field_validator("points")
    @classmethod
    def _canonical_order(cls, points: List[DynkinType]) -> List[DynkinType]:
        return sorted(points, key=lambda t: t.sort_key)

    @property
    def label(self) -> str:
        """Repeated A1 and A2 points are counted ("D4+4A1"), larger ones repeated ("A3+A3")."""
        if not self.points:
            return "smooth"
        counts = Counter(t.label for t in self.points)
        parts = []
        for t in dict.fromkeys(self.points):
            count = counts[t.label]
            if count == 1:
                parts.append(t.label)
            elif t.kind == DynkinKind.A and t.rank <= 2:
                parts.append(f"{count}{t.label}")
            else:
                parts.extend([t.label] * count)
        return "+".join(parts)

    def count(self, kind: DynkinKind, rank: int) -> int:
        return sum(1 for t in self.points if t.kind == kind and t.rank == rank)

    def has(self, kind: DynkinKind, rank: Optional[int] = None) -> bool:
        return any(t.kind == kind and (rank is None or t.rank == rank) for t in self.points)

    def index_of(self, kind: DynkinKind, rank: int) -> int:
        return next(i for i, t in enumerate(self.points) if t.kind == kind and t.rank == rank)

    def __str__(self) -> str:
        return self.label


class SurfaceFlags(BaseModel):
    model_config = ConfigDict(frozen=True)

    branch_R_irreducible: bool = Field(default=True, description="Only read when an A7 point is present")
    cusp_stratum: CuspStratum = Field(default=CuspStratum.NO_CUSP, description="Drives lct_1 when no D or E point is present")


class WitnessComponent(BaseModel):
    model_config = ConfigDict(frozen=True)

    curve: CurveClass
    multiplicity: int = Field(default=1, ge=1)


class WitnessDivisor(BaseModel):
    """A member of |-nK_X| supported near one singular point."""
    model_config = ConfigDict(frozen=True)

    name: str
    pluri_degree: int = Field(..., ge=1, description="n with W in |-nK_X|")
    at_point: int = Field(..., ge=0, description="Index of the point in the configuration")
    components: List[WitnessComponent] = Field(default_factory=list)
    claimed_lct_contribution: Rational = Field(..., description="c(X, W)")
    coefficients: List[Rational] = Field(default_factory=list, description="Combined pullback coefficients of W at the point")

    @property
    def clause(self) -> Tuple[int, ...]:
        """Indices k with a_k <= 1 whenever the extremal divisor omits a component meeting E_k."""
        hits = set()
        for component in self.components:
            if component.curve.through_crossing is not None:
                continue
            hits.update(i + 1 for i, v in enumerate(component.curve.exc_intersections) if v > 0)
        return tuple(sorted(hits))


class ScenarioSystem(BaseModel):
    """Closed linear system whose u-maximum bounds 1/mu for a non-klt point Q."""
    model_config = ConfigDict(frozen=True)

    scenario_id: str
    case: str = Field(..., description="Case analysis the scenario belongs to, e.g. a8 or a7-irreducible")
    point_index: int = Field(..., ge=0)
    point: DynkinType
    q: Optional[Tuple[int, int]] = Field(None, description="Q = E_i cap E_j on the minimal resolution, when the case names it")
    branch: List[int] = Field(default_factory=list, description="Indices i with a_i <= 1 added by non-containment")
    target_mu: Rational
    system: LinIneqSystem
    window_system: Optional[LinIneqSystem] = Field(
        None, description="Coefficient rows that hold before the non-klt point is placed; A points only"
    )


class TableRow(BaseModel):
    configuration: str
    lct: Rational = Field(..., description="lct(X) from the threshold tables")
    level: int = Field(..., ge=1, description="Smallest n with lct_n(X) = lct(X)")
    witness: Optional[str] = Field(None, description="Name of the witness divisor")
    witness_coefficients: Optional[List[Rational]] = Field(None, description="Pullback coefficients of the named curve combination at its point")
    lct1: Rational = Field(..., description="lct_1(X)")


class CertifiedScenario(BaseModel):
    scenario: ScenarioSystem
    bound: Rational = Field(..., description="1 / target_mu")
    result: LPResult
    implication: ImplicationResult
    coefficient_maxima: List[Rational] = Field(default_factory=list, description="Maximum of each a_i over the window system")
    preconditions_hold: bool = Field(
        default=True, description="mu * a_i < 1 for every i and mu < (m+1)/(2m-2) whenever mu < target"
    )
    passed: bool


class CertificationReport(BaseModel):
    configuration: str
    flags: SurfaceFlags
    target_mu: Rational
    level: int
    scenarios: List[CertifiedScenario] = Field(default_factory=list)
    closing_bounds: Dict[str, List[Rational]] = Field(default_factory=dict, description="Per-variable maxima of the base system, by point label")
    open_points: List[str] = Field(default_factory=list, description="Points without a case whose closing bounds do not reach the target")
    notice: Optional[str] = Field(None)
    passed: bool = Field(default=True)
