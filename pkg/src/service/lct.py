"""Log canonical thresholds of SNC arrangements, curve germs and divisors at Du Val points.

A curve germ is given by its branches and a blow-up program. Each step blows up
one center; the new exceptional curve F gets

    d_F = sum of d_E over exceptionals E through the center
          + sum of coeff * mult over branches through the center
    k_F = 1 + sum of k_E over exceptionals E through the center

and once the total transform is SNC the threshold is min (1 + k) / d.
"""
from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from schemas.enums import ComponentKind
from schemas.lct import (
    ArrangementComponent,
    BlowupProgram,
    BlowupStep,
    BranchIncidence,
    ConvexityReduction,
    GermBranch,
    LctResult,
    WeightedArrangement,
)
from schemas.rational import fractions
from schemas.resolution import CurveClass, DynkinType
from src.exceptions import InputError, NonSncError
from src.service.resolution import add_coefficients, pullback_coefficients

logger = logging.getLogger(__name__)

StrictTerm = Tuple[CurveClass, Fraction]


def lct_snc(arr: WeightedArrangement) -> LctResult:
    best: Optional[Tuple[Fraction, str]] = None
    for component in arr.components:
        if component.coefficient == 0:
            continue
        value = component.log_discrepancy / component.coefficient
        if best is None or value < best[0]:
            best = (value, component.id)
    if best is None:
        return LctResult(bounded=False)
    return LctResult(value=best[0], minimizer=best[1])


# ---------------------------------------------------------------------------
# Blow-up programs
# ---------------------------------------------------------------------------
def _exceptional_id(step: int) -> str:
    return f"F{step}"


def validate_program(branches: Sequence[GermBranch], prog: BlowupProgram) -> None:
    """Combinatorial checks that the program ends in an SNC configuration."""
    known = {b.id for b in branches}
    if len(known) != len(branches):
        raise InputError("branch ids must be unique")
    history: Dict[str, List[Tuple[int, int]]] = {b: [] for b in known}
    for index, step in enumerate(prog.steps, start=1):
        late = [e for e in step.incident_exceptionals if not 1 <= e < index]
        if late:
            raise InputError({"message": f"step {index} references exceptional(s) {late} before they exist", "step": index})
        seen = set()
        for incidence in step.incident_branches:
            if incidence.branch not in known:
                raise InputError({"message": f"step {index} names unknown branch {incidence.branch!r}", "known": sorted(known)})
            if incidence.branch in seen:
                raise InputError(f"step {index} lists branch {incidence.branch!r} twice")
            seen.add(incidence.branch)
            visited = {s for s, _ in history[incidence.branch]}
            missing = [e for e in step.incident_exceptionals if e not in visited]
            if missing:
                raise InputError(
                    {
                        "message": f"branch {incidence.branch!r} meets F{missing[0]} at step {index} without passing its center",
                        "step": index,
                    }
                )
            history[incidence.branch].append((index, incidence.multiplicity))

    for branch, visits in history.items():
        multiplicities = [m for _, m in visits]
        if any(later > earlier for earlier, later in zip(multiplicities, multiplicities[1:])):
            raise NonSncError({"message": f"multiplicities of {branch!r} increase along the program", "multiplicities": multiplicities})
        if multiplicities and multiplicities[-1] != 1:
            raise NonSncError({"message": f"branch {branch!r} is still singular after the last center", "multiplicities": multiplicities})

    last_visit = {branch: visits[-1][0] for branch, visits in history.items() if visits}
    for index, step in enumerate(prog.steps, start=1):
        curves = len(step.incident_exceptionals) + len(step.incident_branches)
        ending = [b.branch for b in step.incident_branches if last_visit.get(b.branch) == index]
        if ending and curves >= 2 and not step.transverse:
            raise NonSncError(
                {
                    "message": f"step {index} is the last center of {ending} but is not declared transverse",
                    "step": index,
                }
            )


def run_program(branches: Sequence[GermBranch], prog: BlowupProgram) -> WeightedArrangement:
    validate_program(branches, prog)
    coefficient = {b.id: b.coefficient for b in branches}
    d: List[Fraction] = []
    k: List[Fraction] = []
    for index, step in enumerate(prog.steps, start=1):
        d_new = sum((d[e - 1] for e in step.incident_exceptionals), Fraction(0))
        d_new += sum((coefficient[b.branch] * b.multiplicity for b in step.incident_branches), Fraction(0))
        k_new = 1 + sum((k[e - 1] for e in step.incident_exceptionals), Fraction(0))
        d.append(d_new)
        k.append(k_new)
        logger.debug("step %d: d=%s k=%s", index, d_new, k_new)
    components = [ArrangementComponent(id=b.id, coefficient=b.coefficient) for b in branches]
    components += [
        ArrangementComponent(id=_exceptional_id(i), coefficient=d_i, kind=ComponentKind.EXCEPTIONAL, discrepancy=k_i)
        for i, (d_i, k_i) in enumerate(zip(d, k), start=1)
    ]
    return WeightedArrangement(components=components)


def lct_germ(branches: Sequence[GermBranch], prog: BlowupProgram) -> LctResult:
    return lct_snc(run_program(branches, prog))


def _step(exceptionals: Sequence[int] = (), branches: Sequence[Tuple[str, int]] = (), transverse: bool = False) -> BlowupStep:
    return BlowupStep(
        incident_exceptionals=list(exceptionals),
        incident_branches=[BranchIncidence(branch=b, multiplicity=m) for b, m in branches],
        transverse=transverse,
    )


def tangency_germ(order: int) -> Tuple[List[GermBranch], BlowupProgram]:
    """Two smooth branches with contact order ``order``; 1 is the node, 2 the tacnode."""
    if order < 1:
        raise InputError(f"contact order must be positive, got {order}")
    steps = [_step(branches=[("b1", 1), ("b2", 1)], transverse=order == 1)]
    for i in range(2, order + 1):
        steps.append(_step(exceptionals=[i - 1], branches=[("b1", 1), ("b2", 1)], transverse=i == order))
    name = {1: "node", 2: "tacnode"}.get(order, f"tangency-{order}")
    return [GermBranch(id="b1"), GermBranch(id="b2")], BlowupProgram(steps=steps, name=name)


def builtin_germ(name: str) -> Tuple[List[GermBranch], BlowupProgram]:
    key = name.strip().lower()
    if key == "node":
        return tangency_germ(1)
    if key == "tacnode":
        return tangency_germ(2)
    if key.startswith("tangency-"):
        try:
            return tangency_germ(int(key.split("-", 1)[1]))
        except ValueError:
            raise InputError(f"unknown germ {name!r}") from None
    if key == "cusp":
        steps = [
            _step(branches=[("b", 2)]),
            _step(exceptionals=[1], branches=[("b", 1)]),
            _step(exceptionals=[1, 2], branches=[("b", 1)], transverse=True),
        ]
        return [GermBranch(id="b")], BlowupProgram(steps=steps, name="cusp")
    if key == "triple-point":
        steps = [_step(branches=[("b1", 1), ("b2", 1), ("b3", 1)], transverse=True)]
        branches = [GermBranch(id=f"b{i}") for i in (1, 2, 3)]
        return branches, BlowupProgram(steps=steps, name="triple-point")
    raise InputError({"message": f"unknown germ {name!r}", "known": ["node", "cusp", "tacnode", "triple-point", "tangency-<r>"]})


# ---------------------------------------------------------------------------
# Order independence
# ---------------------------------------------------------------------------
def center_orderings(prog: BlowupProgram) -> List[List[int]]:
    """Every order of the steps in which each center comes after the exceptionals it lies on."""
    steps = list(range(1, len(prog.steps) + 1))
    orderings: List[List[int]] = []
    for order in itertools.permutations(steps):
        position = {s: i for i, s in enumerate(order)}
        if all(position[e] < position[s] for s in steps for e in prog.steps[s - 1].incident_exceptionals):
            orderings.append(list(order))
    return orderings


def reorder_program(prog: BlowupProgram, order: Sequence[int]) -> BlowupProgram:
    relabel = {old: new for new, old in enumerate(order, start=1)}
    steps = []
    for old in order:
        step = prog.steps[old - 1]
        steps.append(
            step.model_copy(update={"incident_exceptionals": sorted(relabel[e] for e in step.incident_exceptionals)})
        )
    return BlowupProgram(steps=steps, name=prog.name)


def lct_all_orderings(branches: Sequence[GermBranch], prog: BlowupProgram) -> List[Tuple[List[int], LctResult]]:
    return [(order, lct_germ(branches, reorder_program(prog, order))) for order in center_orderings(prog)]


# ---------------------------------------------------------------------------
# Du Val points
# ---------------------------------------------------------------------------
def _exceptional_name(i: int) -> str:
    return f"E{i}"


def _is_snc(curve: CurveClass) -> bool:
    return curve.through_crossing is None and all(v <= 1 for v in curve.exc_intersections)


def ade_arrangement(t: DynkinType, strict: Sequence[StrictTerm], germs: Optional[BlowupProgram] = None) -> WeightedArrangement:
    """Log pull-back of sum coeff * L on the minimal resolution, refined by ``germs``."""
    for curve, _ in strict:
        if curve.rank != t.rank:
            raise InputError({"message": f"{curve.name} is given on a graph of rank {curve.rank}, not {t.label}"})
    terms = [(pullback_coefficients(t, curve.exc_intersections), Fraction(c)) for curve, c in strict]
    combined = add_coefficients(terms) if terms else [Fraction(0)] * t.rank

    branches = [GermBranch(id=curve.name, coefficient=c) for curve, c in strict]
    branches += [GermBranch(id=_exceptional_name(i), coefficient=v) for i, v in enumerate(combined, start=1)]

    non_snc = [curve.name for curve, _ in strict if not _is_snc(curve)]
    if non_snc and germs is None:
        raise NonSncError(
            {
                "message": "the total transform is not SNC; supply a blow-up program over its components",
                "components": non_snc,
            }
        )
    exceptional_ids = {_exceptional_name(i) for i in range(1, t.rank + 1)}
    if germs is None:
        arrangement = WeightedArrangement(
            components=[ArrangementComponent(id=b.id, coefficient=b.coefficient) for b in branches]
        )
    else:
        # E_i are crepant on the minimal resolution, so they enter the program as branches with k = 0
        arrangement = run_program(branches, germs)
    return WeightedArrangement(
        components=[
            c.model_copy(update={"kind": ComponentKind.EXCEPTIONAL}) if c.id in exceptional_ids else c
            for c in arrangement.components
        ]
    )


def lct_at_ade_point(t: DynkinType, strict: Sequence[StrictTerm], germs: Optional[BlowupProgram] = None) -> LctResult:
    result = lct_snc(ade_arrangement(t, strict, germs))
    logger.debug("lct at %s of %s: %s", t.label, [c.name for c, _ in strict], result.value)
    return result


def convexity_reduce(a: Sequence[Fraction], abar: Sequence[Fraction]) -> ConvexityReduction:
    """Largest alpha with a - alpha*abar effective, and the rescaled remainder."""
    a, abar = fractions(a), fractions(abar)
    if len(a) != len(abar):
        raise InputError("coefficient vectors of different lengths")
    if any(v < 0 for v in a + abar):
        raise InputError("both divisors must be effective")
    if a == abar:
        raise InputError("a equals abar; nothing to reduce")
    ratios = [x / y for x, y in zip(a, abar) if y != 0]
    if not ratios:
        raise InputError("abar is the zero divisor")
    alpha = min(ratios)
    if alpha == 0:
        return ConvexityReduction(alpha=alpha, dprime=a)
    if alpha >= 1:
        raise InputError({"message": "abar is not contained in a below coefficient 1", "alpha": str(alpha)})
    dprime = [(x - alpha * y) / (1 - alpha) for x, y in zip(a, abar)]
    return ConvexityReduction(alpha=alpha, dprime=dprime)
