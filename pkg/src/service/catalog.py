"""Degree-1 del Pezzo case engine.

Configurations of Du Val points, the lct_1 ladder, the coefficient systems of a
point, witness divisors, the scenario systems of each case analysis and their
certification, and the resulting threshold table.

In every scenario the variable ``u`` stands for 1/mu. A scenario passes when the
closed system is infeasible or its u-maximum is at most 1/target; either way an
exact certificate is attached.
"""
from __future__ import annotations

import asyncio
import itertools
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from schemas.catalog import (
    CertificationReport,
    CertifiedScenario,
    ScenarioSystem,
    SingularityConfiguration,
    SurfaceFlags,
    TableRow,
    WitnessComponent,
    WitnessDivisor,
)
from schemas.enums import CuspStratum, DynkinKind, LPStatus, Relation
from schemas.lct import BlowupProgram, BlowupStep, BranchIncidence
from schemas.polytope import Constraint, LinIneqSystem
from schemas.resolution import CurveClass, DynkinType
from src.exceptions import InputError, ReproductionFailure
from src.service.lct import lct_at_ade_point
from src.service.polytope import is_implied, maximize, verify_certificate
from src.service.resolution import (
    add_coefficients,
    anticanonical_incidence,
    basis_curve,
    intersection_matrix,
    pullback_coefficients,
)

logger = logging.getLogger(__name__)

_PART = re.compile(r"^\s*(\d*)\s*([ADEade]\d+)\s*$")

_LISTED = (
    "E8", "E7", "E7+A1", "E6", "E6+A2", "E6+A1",
    "D8", "D7", "D6", "D6+2A1", "D6+A1", "D5", "D5+A3", "D5+A2", "D5+2A1", "D5+A1",
    "D4", "D4+D4", "D4+A3", "D4+A2", "D4+4A1", "D4+3A1", "D4+2A1", "D4+A1",
    "A8", "A7", "A7+A1", "A6", "A6+A1", "A5", "A5+A1", "A5+2A1", "A5+A2", "A5+A2+A1",
    "A4", "A4+A4", "A4+A3", "A4+A2+A1", "A4+A2", "A4+2A1", "A4+A1",
    "A3", "A3+A3", "A3+A3+2A1", "A3+A2", "A3+A2+A1", "A3+A2+2A1", "A3+4A1", "A3+3A1", "A3+2A1", "A3+A1",
)

_LCT1_BY_KIND = {
    (DynkinKind.E, 8): Fraction(1, 6),
    (DynkinKind.E, 7): Fraction(1, 4),
    (DynkinKind.E, 6): Fraction(1, 3),
}

_LCT1_BY_CUSP = {
    CuspStratum.CUSP_AT_A2: Fraction(2, 3),
    CuspStratum.CUSP_AT_A1: Fraction(3, 4),
    CuspStratum.CUSP_AT_SMOOTH: Fraction(5, 6),
    CuspStratum.NO_CUSP: Fraction(1),
}


# ---------------------------------------------------------------------------
# Configurations
# ---------------------------------------------------------------------------
def parse_configuration(text: str) -> SingularityConfiguration:
    """Parse labels such as "A5+2A1", "D4+4A1" or "smooth"."""
    text = text.strip()
    if text.lower() in ("", "smooth", "none"):
        return SingularityConfiguration(points=[])
    points: List[DynkinType] = []
    for part in text.split("+"):
        match = _PART.match(part)
        if not match:
            raise InputError({"message": f"cannot parse {part!r} in configuration {text!r}"})
        count = int(match.group(1) or 1)
        try:
            point = DynkinType.parse(match.group(2))
        except (ValueError, ValidationError) as exc:
            raise InputError({"message": f"invalid point {part!r}", "reason": str(exc)}) from None
        points.extend([point] * count)
    return SingularityConfiguration(points=points)


def _config_key(config: SingularityConfiguration) -> Tuple:
    return (0 if config.points else 1, tuple(t.sort_key for t in config.points))


@lru_cache(maxsize=1)
def admissible_configurations() -> Tuple[SingularityConfiguration, ...]:
    configs = [parse_configuration(label) for label in _LISTED]
    for a2 in range(0, 5):
        for a1 in range(0, 9 - 2 * a2):
            points = [DynkinType(kind=DynkinKind.A, rank=2)] * a2 + [DynkinType(kind=DynkinKind.A, rank=1)] * a1
            configs.append(SingularityConfiguration(points=points))
    return tuple(sorted(configs, key=_config_key))


@lru_cache(maxsize=1)
def _admissible_labels() -> frozenset:
    return frozenset(config.label for config in admissible_configurations())


def admissible(config: SingularityConfiguration) -> bool:
    return config.label in _admissible_labels()


def _require_admissible(config: SingularityConfiguration) -> None:
    if not admissible(config):
        raise InputError({"message": f"{config.label} does not occur on a degree-1 del Pezzo surface", "configuration": config.label})


def lct1_classify(config: SingularityConfiguration, flags: SurfaceFlags) -> Fraction:
    _require_admissible(config)
    for t in config.points:
        if (t.kind, t.rank) in _LCT1_BY_KIND:
            return _LCT1_BY_KIND[(t.kind, t.rank)]
    if config.has(DynkinKind.D):
        return Fraction(1, 2)
    stratum = flags.cusp_stratum
    if stratum == CuspStratum.CUSP_AT_A2 and not config.has(DynkinKind.A, 2):
        raise InputError({"message": "a cusp at an A2 point needs an A2 point", "configuration": config.label})
    if stratum == CuspStratum.CUSP_AT_A1 and not config.has(DynkinKind.A, 1):
        raise InputError({"message": "a cusp at an A1 point needs an A1 point", "configuration": config.label})
    return _LCT1_BY_CUSP[stratum]


# ---------------------------------------------------------------------------
# Coefficient systems
# ---------------------------------------------------------------------------
def coefficient_names(t: DynkinType) -> List[str]:
    return [f"a{i}" for i in range(1, t.rank + 1)]


def _exceptional_row(t: DynkinType, k: int) -> List[Fraction]:
    """Coefficients of D . E_k = (-M a)_k in a1..am."""
    matrix = intersection_matrix(t)
    return [Fraction(-matrix.entry(k, j)) for j in range(1, t.rank + 1)]


def base_system(t: DynkinType, many_points: bool = False) -> LinIneqSystem:
    """D . E_j >= 0 for every j and D . C >= 0 for the anticanonical curve C through the point.

    With several singular points the same rows hold at each point, since C passes
    through one point only; ``many_points`` only changes the provenance label.
    """
    rows = [Constraint(coeffs=_exceptional_row(t, k), relation=Relation.GE, rhs=Fraction(0)) for k in range(1, t.rank + 1)]
    rows.append(
        Constraint(coeffs=[Fraction(-b) for b in anticanonical_incidence(t)], relation=Relation.GE, rhs=Fraction(-1))
    )
    return LinIneqSystem(
        variables=coefficient_names(t),
        constraints=rows,
        name=f"{t.label} {'many-points' if many_points else 'single-point'} coefficient system",
    )


def _maxima(system: LinIneqSystem) -> List[Fraction]:
    bounds = []
    for name in system.variables:
        result = maximize(system, system.unit(name), lexicographic=False)
        if result.status != LPStatus.OPTIMAL:
            raise ReproductionFailure({"message": f"{name} is not bounded over {system.name}", "status": result.status.value})
        bounds.append(result.value)
    return bounds


def closing_bounds(t: DynkinType) -> List[Fraction]:
    """Maximum of every a_i over the base system."""
    return _maxima(base_system(t))


def window_holds(t: DynkinType, maxima: Sequence[Fraction], target_mu: Fraction) -> bool:
    """For every mu < target: mu * a_i < 1 for all i, and mu < (m+1)/(2m-2) on an A_m chain.

    Both comparisons are non-strict in the target since mu stays strictly below it.
    """
    if any(value * target_mu > 1 for value in maxima):
        return False
    if t.kind == DynkinKind.A and t.rank >= 2:
        return target_mu <= Fraction(t.rank + 1, 2 * t.rank - 2)
    return True


# ---------------------------------------------------------------------------
# Witness divisors
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class _WitnessRecipe:
    name: str
    pluri_degree: int
    claimed: Fraction
    # (basis index, multiplicity, name); name None means L{k}
    terms: Tuple[Tuple[int, int, Optional[str]], ...]


_A_WITNESSES: Dict[str, Tuple[_WitnessRecipe, ...]] = {
    "a8": (
        _WitnessRecipe("L3", 3, Fraction(1, 6), ((3, 3, None),)),
        _WitnessRecipe("L6", 3, Fraction(1, 6), ((6, 3, None),)),
    ),
    "a7-reducible": (_WitnessRecipe("L4", 2, Fraction(1, 4), ((4, 2, None),)),),
    "a7-a1": (_WitnessRecipe("L4", 2, Fraction(1, 4), ((4, 2, None),)),),
    "a7-irreducible": (
        _WitnessRecipe("L2+2L3", 3, Fraction(1, 5), ((2, 1, None), (3, 2, None))),
        _WitnessRecipe("L2+L6", 2, Fraction(1, 2), ((2, 1, None), (6, 1, None))),
        _WitnessRecipe("L3+L5", 2, Fraction(1, 3), ((3, 1, None), (5, 1, None))),
        _WitnessRecipe("L6+2L5", 3, Fraction(1, 5), ((6, 1, None), (5, 2, None))),
    ),
    "a6": (
        _WitnessRecipe("L3+L4", 2, Fraction(1, 3), ((3, 1, None), (4, 1, None))),
        _WitnessRecipe("L2+L5", 2, Fraction(1, 2), ((2, 1, None), (5, 1, None))),
        _WitnessRecipe("L2+L2'+L3", 3, Fraction(1, 4), ((2, 1, None), (2, 1, "L2'"), (3, 1, None))),
        _WitnessRecipe("L5+L5'+L4", 3, Fraction(1, 4), ((5, 1, None), (5, 1, "L5'"), (4, 1, None))),
    ),
    "a5": (_WitnessRecipe("Z", 2, Fraction(1, 3), ((3, 1, None), (3, 1, "tau(L3)"))),),
}

_DE_WITNESSES: Dict[Tuple[DynkinKind, int], _WitnessRecipe] = {
    (DynkinKind.D, 8): _WitnessRecipe("L1", 2, Fraction(1, 6), ((1, 2, None),)),
    (DynkinKind.D, 7): _WitnessRecipe("L1+L2", 2, Fraction(1, 5), ((1, 1, None), (2, 1, None))),
}

# Z at an A4 point: a member of |-2K_X| through E2 cap E3, resolved by one blow-up there
_A4_Z = _WitnessRecipe("Z", 2, Fraction(2, 5), ())


def a4_z_curve() -> CurveClass:
    return CurveClass(
        name="Z",
        anticanonical_degree=Fraction(2),
        self_intersection_strict=Fraction(0),
        exc_intersections=[0, 1, 1, 0],
        through_crossing=(2, 3),
    )


def a4_z_program() -> BlowupProgram:
    return BlowupProgram(
        steps=[
            BlowupStep(
                incident_branches=[BranchIncidence(branch=b) for b in ("Z", "E2", "E3")],
                transverse=True,
            )
        ],
        name="Z at E2 cap E3",
    )


def _build_witness(t: DynkinType, at_point: int, recipe: _WitnessRecipe) -> WitnessDivisor:
    components = [
        WitnessComponent(curve=basis_curve(t, k, name or f"L{k}")[0], multiplicity=mult)
        for k, mult, name in recipe.terms
    ]
    coefficients = add_coefficients(
        [(pullback_coefficients(t, c.curve.exc_intersections), Fraction(c.multiplicity)) for c in components]
    )
    return WitnessDivisor(
        name=recipe.name,
        pluri_degree=recipe.pluri_degree,
        at_point=at_point,
        components=components,
        claimed_lct_contribution=recipe.claimed,
        coefficients=coefficients,
    )


def _a4_witness(at_point: int) -> WitnessDivisor:
    t = DynkinType(kind=DynkinKind.A, rank=4)
    curve = a4_z_curve()
    return WitnessDivisor(
        name=_A4_Z.name,
        pluri_degree=_A4_Z.pluri_degree,
        at_point=at_point,
        components=[WitnessComponent(curve=curve)],
        claimed_lct_contribution=_A4_Z.claimed,
        coefficients=pullback_coefficients(t, curve.exc_intersections).coeffs,
    )


def witness_lct(config: SingularityConfiguration, witness: WitnessDivisor) -> Fraction:
    """c(X, W) computed from the witness components at its point."""
    t = config.points[witness.at_point]
    strict = [(c.curve, Fraction(c.multiplicity)) for c in witness.components]
    germs = a4_z_program() if any(c.curve.through_crossing for c in witness.components) else None
    result = lct_at_ade_point(t, strict, germs)
    return result.value


def point_case(config: SingularityConfiguration, flags: SurfaceFlags, index: int) -> Optional[str]:
    """Name of the case analysis that handles the point, if any."""
    t = config.points[index]
    if t.kind != DynkinKind.A:
        return "d-e"
    if t.rank == 8:
        return "a8"
    if t.rank == 7:
        if config.has(DynkinKind.A, 1):
            return "a7-a1"
        return "a7-irreducible" if flags.branch_R_irreducible else "a7-reducible"
    return {6: "a6", 5: "a5", 4: "a4"}.get(t.rank)


def witness_divisors(config: SingularityConfiguration, flags: SurfaceFlags) -> List[WitnessDivisor]:
    _require_admissible(config)
    witnesses: List[WitnessDivisor] = []
    for index, t in enumerate(config.points):
        case = point_case(config, flags, index)
        if case in _A_WITNESSES:
            witnesses.extend(_build_witness(t, index, recipe) for recipe in _A_WITNESSES[case])
        elif case == "a4":
            witnesses.append(_a4_witness(index))
        elif (t.kind, t.rank) in _DE_WITNESSES:
            witnesses.append(_build_witness(t, index, _DE_WITNESSES[(t.kind, t.rank)]))
    return witnesses


def non_containment_branches(clauses: Iterable[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Minimal sets S meeting every clause; each S gives the bounds a_i <= 1 for i in S."""
    clauses = [set(c) for c in clauses]
    if not clauses:
        return [()]
    universe = sorted(set().union(*clauses))
    branches: List[Tuple[int, ...]] = []
    for size in range(1, len(universe) + 1):
        for candidate in itertools.combinations(universe, size):
            chosen = set(candidate)
            if all(chosen & clause for clause in clauses) and not any(set(b) <= chosen for b in branches):
                branches.append(candidate)
    return branches


# ---------------------------------------------------------------------------
# Threshold table
# ---------------------------------------------------------------------------
def _table_entry(config: SingularityConfiguration, flags: SurfaceFlags) -> Optional[Tuple[Fraction, int, str, int]]:
    """(value, level, witness name, point index) of the first row that applies."""
    for kind, rank, value, level, name in (
        (DynkinKind.D, 8, Fraction(1, 3), 2, "L1"),
        (DynkinKind.D, 7, Fraction(2, 5), 2, "L1+L2"),
        (DynkinKind.A, 8, Fraction(1, 2), 3, "L3"),
    ):
        if config.has(kind, rank):
            return value, level, name, config.index_of(kind, rank)
    if config.has(DynkinKind.A, 7):
        index = config.index_of(DynkinKind.A, 7)
        if point_case(config, flags, index) == "a7-irreducible":
            return Fraction(3, 5), 3, "L2+2L3", index
        return Fraction(1, 2), 2, "L4", index
    for rank, value, name in ((6, Fraction(2, 3), "L3+L4"), (5, Fraction(2, 3), "Z"), (4, Fraction(4, 5), "Z")):
        if config.has(DynkinKind.A, rank):
            return value, 2, name, config.index_of(DynkinKind.A, rank)
    return None


def _named_coefficients(witness: WitnessDivisor) -> List[Fraction]:
    """Coefficients of W divided by the common multiplicity, e.g. of L1 for W = 2L1."""
    common = reduce(math.gcd, (c.multiplicity for c in witness.components), 0) or 1
    return [c / common for c in witness.coefficients]


def lct_table(config: SingularityConfiguration, flags: SurfaceFlags) -> Tuple[TableRow, Optional[WitnessDivisor]]:
    lct1 = lct1_classify(config, flags)
    entry = _table_entry(config, flags)
    if entry is None or entry[0] >= lct1:
        return TableRow(configuration=config.label, lct=lct1, level=1, lct1=lct1), None
    value, level, name, index = entry
    witness = next(w for w in witness_divisors(config, flags) if w.at_point == index and w.name == name)
    row = TableRow(
        configuration=config.label,
        lct=value,
        level=level,
        witness=name,
        witness_coefficients=_named_coefficients(witness),
        lct1=lct1,
    )
    return row, witness


# ---------------------------------------------------------------------------
# Scenarios
# ---------------------------------------------------------------------------
class _RowBuilder:
    """Rows over (a1..am, extra..., u) written as {name: coefficient}."""

    def __init__(self, t: DynkinType, extra: Sequence[str] = ()):
        self.t = t
        self.variables = coefficient_names(t) + list(extra) + ["u"]

    def row(self, terms: Dict[str, Fraction], rhs: Fraction = Fraction(0), relation: Relation = Relation.GE) -> Constraint:
        coeffs = [Fraction(0)] * len(self.variables)
        for name, value in terms.items():
            coeffs[self.variables.index(name)] += Fraction(value)
        return Constraint(coeffs=coeffs, relation=relation, rhs=Fraction(rhs))

    def exceptional(self, k: int) -> Dict[str, Fraction]:
        return {f"a{j}": c for j, c in enumerate(_exceptional_row(self.t, k), start=1) if c != 0}

    def adjunction(self, k: int) -> List[Constraint]:
        """Adjunction at Q = E_k cap E_{k+1} along each of the two curves."""
        first = self.exceptional(k)
        first[f"a{k + 1}"] = first.get(f"a{k + 1}", Fraction(0)) + 1
        first["u"] = Fraction(-1)
        second = self.exceptional(k + 1)
        second[f"a{k}"] = second.get(f"a{k}", Fraction(0)) + 1
        second["u"] = Fraction(-1)
        return [self.row(first), self.row(second)]

    def system(self, base: LinIneqSystem, rows: List[Constraint], name: str) -> LinIneqSystem:
        padded = base.with_variables(self.variables[len(base.variables):])
        return padded.extended(rows, name=name)


def _a_chain_scenarios(
    config: SingularityConfiguration, flags: SurfaceFlags, index: int, case: str, target_mu: Fraction
) -> List[ScenarioSystem]:
    t = config.points[index]
    base = base_system(t, many_points=len(config.points) > 1)
    clauses = [w.clause for w in (_build_witness(t, index, recipe) for recipe in _A_WITNESSES[case])]
    scenarios = []
    builder = _RowBuilder(t)
    for branch in non_containment_branches(clauses):
        window = base.extended(
            [Constraint(coeffs=base.unit(f"a{i}", Fraction(-1)), relation=Relation.GE, rhs=Fraction(-1)) for i in branch],
            name=f"{base.name}, a_i <= 1 on {list(branch)}",
        )
        for k in range(2, t.rank - 1):
            rows = [builder.row({f"a{i}": Fraction(-1)}, rhs=Fraction(-1)) for i in branch]
            rows += builder.adjunction(k)
            scenario_id = f"{t.label}@{index}/{case}/Q{k},{k + 1}/S{','.join(map(str, branch))}"
            scenarios.append(
                ScenarioSystem(
                    scenario_id=scenario_id,
                    case=case,
                    point_index=index,
                    point=t,
                    q=(k, k + 1),
                    branch=list(branch),
                    target_mu=target_mu,
                    system=builder.system(base, rows, scenario_id),
                    window_system=window,
                )
            )
    return scenarios


def _a4_scenarios(config: SingularityConfiguration, index: int, target_mu: Fraction) -> List[ScenarioSystem]:
    """Q = E2 cap E3, blown up once more at the point of E2; the point of E3 is its mirror image."""
    t = config.points[index]
    base = base_system(t, many_points=len(config.points) > 1)
    builder = _RowBuilder(t, extra=["delta"])
    one = Fraction(1)
    rows = builder.adjunction(2)
    rows += [
        builder.row({"delta": one}),
        builder.row({"delta": -one}, rhs=-one),
        builder.row({"a2": -one, "a3": -one, "delta": -one}, rhs=Fraction(-2)),
        builder.row({**builder.exceptional(2), "delta": -one}),
        builder.row({**builder.exceptional(3), "delta": -one}),
        builder.row({"delta": one, "a2": one, "u": -one}),
    ]
    scenario_id = f"{t.label}@{index}/a4/Q2,3/delta"
    return [
        ScenarioSystem(
            scenario_id=scenario_id,
            case="a4",
            point_index=index,
            point=t,
            q=(2, 3),
            target_mu=target_mu,
            system=builder.system(base, rows, scenario_id),
            window_system=base,
        )
    ]


def _de_scenarios(config: SingularityConfiguration, index: int, target_mu: Fraction) -> List[ScenarioSystem]:
    """A non-klt point forces mu * a3 = 1."""
    t = config.points[index]
    base = base_system(t, many_points=len(config.points) > 1)
    builder = _RowBuilder(t)
    rows = [builder.row({"a3": Fraction(1), "u": Fraction(-1)}, relation=Relation.EQ)]
    scenario_id = f"{t.label}@{index}/d-e/a3=u"
    return [
        ScenarioSystem(
            scenario_id=scenario_id,
            case="d-e",
            point_index=index,
            point=t,
            target_mu=target_mu,
            system=builder.system(base, rows, scenario_id),
        )
    ]


def build_scenarios(config: SingularityConfiguration, flags: SurfaceFlags, target_mu: Fraction) -> List[ScenarioSystem]:
    _require_admissible(config)
    if target_mu <= 0:
        raise InputError("target mu must be positive")
    scenarios: List[ScenarioSystem] = []
    for index in range(len(config.points)):
        case = point_case(config, flags, index)
        if case is None:
            continue
        if case == "d-e":
            scenarios.extend(_de_scenarios(config, index, target_mu))
        elif case == "a4":
            scenarios.extend(_a4_scenarios(config, index, target_mu))
        else:
            scenarios.extend(_a_chain_scenarios(config, flags, index, case, target_mu))
    logger.debug("%s: %d scenarios at target %s", config.label, len(scenarios), target_mu)
    return scenarios


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------
def certify_scenario(scenario: ScenarioSystem) -> CertifiedScenario:
    system = scenario.system
    bound = 1 / scenario.target_mu
    result = maximize(system, system.unit("u"), lexicographic=False)
    target = Constraint(coeffs=system.unit("u", Fraction(-1)), relation=Relation.GE, rhs=-bound)
    implication = is_implied(system, target)

    if result.status == LPStatus.INFEASIBLE:
        passed = verify_certificate(system, result.certificate)
    else:
        passed = result.status == LPStatus.OPTIMAL and result.value <= bound
    passed = passed and implication.implied and implication.certificate is not None
    passed = passed and verify_certificate(system, implication.certificate, target)
    maxima: List[Fraction] = []
    preconditions = True
    if scenario.window_system is not None:
        maxima = _maxima(scenario.window_system)
        preconditions = window_holds(scenario.point, maxima, scenario.target_mu)
    passed = passed and preconditions
    logger.debug("%s: status=%s max u=%s bound=%s passed=%s", scenario.scenario_id, result.status.value, result.value, bound, passed)
    return CertifiedScenario(
        scenario=scenario,
        bound=bound,
        result=result,
        implication=implication,
        coefficient_maxima=maxima,
        preconditions_hold=preconditions,
        passed=passed,
    )


def certify_lower_bound(config: SingularityConfiguration, flags: SurfaceFlags) -> CertificationReport:
    row, _ = lct_table(config, flags)
    scenarios = [certify_scenario(s) for s in build_scenarios(config, flags, row.lct)]
    bounds: Dict[str, List[Fraction]] = {}
    open_points: List[str] = []
    for index, t in enumerate(config.points):
        if point_case(config, flags, index) is not None or t.label in bounds:
            continue
        bounds[t.label] = closing_bounds(t)
        if not window_holds(t, bounds[t.label], row.lct):
            open_points.append(t.label)
    notice = None
    if not scenarios:
        notice = f"{config.label}: lct(X) = lct_1(X) = {row.lct}; no scenario to certify, coefficient maxima attached"
    report = CertificationReport(
        configuration=config.label,
        flags=flags,
        target_mu=row.lct,
        level=row.level,
        scenarios=scenarios,
        closing_bounds=bounds,
        open_points=open_points,
        notice=notice,
        passed=all(s.passed for s in scenarios) and not open_points,
    )
    logger.info("certified %s: %d scenarios, passed=%s", config.label, len(scenarios), report.passed)
    return report


def require_certified(report: CertificationReport) -> CertificationReport:
    if not report.passed:
        failed = [s.scenario.scenario_id for s in report.scenarios if not s.passed]
        raise ReproductionFailure(
            {
                "message": f"{report.configuration}: {len(failed)} scenario(s) and {len(report.open_points)} point(s) not certified",
                "failed": failed,
                "open_points": report.open_points,
                "report": report.model_dump(mode="json"),
            }
        )
    return report


def flags_grid(config: SingularityConfiguration) -> List[SurfaceFlags]:
    """Flag settings swept by certify --all; R matters only for a lone A7 point."""
    if config.has(DynkinKind.A, 7) and not config.has(DynkinKind.A, 1):
        return [SurfaceFlags(branch_R_irreducible=True), SurfaceFlags(branch_R_irreducible=False)]
    return [SurfaceFlags()]


async def certify_all_async(workers: int = 4) -> List[CertificationReport]:
    semaphore = asyncio.Semaphore(workers)
    jobs = [(config, flags) for config in admissible_configurations() for flags in flags_grid(config)]

    async def _run(config: SingularityConfiguration, flags: SurfaceFlags) -> CertificationReport:
        async with semaphore:
            return await asyncio.to_thread(certify_lower_bound, config, flags)

    tasks = [asyncio.create_task(_run(config, flags)) for config, flags in jobs]
    reports = await asyncio.gather(*tasks)
    logger.info("certified %d configurations with %d workers", len(reports), workers)
    # gather keeps submission order, which is the canonical order
    return list(reports)


def certify_all(workers: int = 4) -> List[CertificationReport]:
    return asyncio.run(certify_all_async(workers))
