"""Exact-rational linear inequality engine.

Systems are over free variables. The solver is a dense two-phase simplex with
Bland's rule on ``Fraction`` entries; free variables are split into a positive
and a negative part. Infeasibility and implication claims come with Farkas
multipliers that :func:`verify_certificate` re-checks without the solver.
Fourier-Motzkin elimination and sympy vertex enumeration are independent
back-ends used to cross-check optima.
"""
from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from schemas.enums import LPStatus, Relation
from schemas.polytope import Constraint, FarkasCertificate, ImplicationResult, LinIneqSystem, LPResult
from schemas.rational import fractions
from src.exceptions import InputError, SolverError

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Simplex core
# ---------------------------------------------------------------------------
class _Tableau:
    """Dense tableau; maximizes with Bland's rule (smallest entering index, ratio ties by basis index)."""

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int], n_cols: int):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.n_cols = n_cols
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        piv = row[c]
        if piv != ONE:
            row = [v / piv for v in row]
            self.rows[r] = row
            self.rhs[r] = self.rhs[r] / piv
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            factor = other[c]
            if factor == ZERO:
                continue
            self.rows[i] = [a - factor * b if b else a for a, b in zip(other, row)]
            self.rhs[i] -= factor * self.rhs[r]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction]) -> List[Fraction]:
        reduced = [-c for c in cost]
        for i, b in enumerate(self.basis):
            weight = cost[b]
            if weight == ZERO:
                continue
            for j, a in enumerate(self.rows[i]):
                if a:
                    reduced[j] += weight * a
        return reduced

    def optimize(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> bool:
        """True at an optimum, False when the objective is unbounded."""
        while True:
            reduced = self.reduced_costs(cost)
            entering = next((j for j in range(self.n_cols) if allowed[j] and reduced[j] < ZERO), None)
            if entering is None:
                return True
            best: Optional[Tuple[Tuple[Fraction, int], int]] = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > ZERO:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def values(self) -> List[Fraction]:
        point = [ZERO] * self.n_cols
        for i, b in enumerate(self.basis):
            point[b] = self.rhs[i]
        return point


def _check_width(sys: LinIneqSystem, vector: Sequence[Fraction], what: str) -> None:
    if len(vector) != len(sys.variables):
        raise InputError(
            {
                "message": f"{what} has {len(vector)} entries, the system has {len(sys.variables)} variables",
                "variables": list(sys.variables),
            }
        )


def _solve(sys: LinIneqSystem, objective: Sequence[Fraction]) -> Tuple[LPStatus, Optional[List[Fraction]]]:
    """Two-phase simplex. Returns the status and, when optimal, a vertex-optimal point."""
    n = len(sys.variables)
    n_ge = sum(1 for row in sys.constraints if row.relation == Relation.GE)
    n_rows = len(sys.constraints)
    slack_start = 2 * n
    art_start = slack_start + n_ge
    n_cols = art_start + n_rows

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    basis: List[int] = []
    slack = slack_start
    for k, constraint in enumerate(sys.constraints):
        row = [ZERO] * n_cols
        for j, c in enumerate(constraint.coeffs):
            row[j] = c
            row[n + j] = -c
        if constraint.relation == Relation.GE:
            row[slack] = -ONE
            slack += 1
        b = constraint.rhs
        if b < ZERO:
            row = [-v for v in row]
            b = -b
        row[art_start + k] = ONE
        rows.append(row)
        rhs.append(b)
        basis.append(art_start + k)

    tableau = _Tableau(rows, rhs, basis, n_cols)

    phase_one_cost = [ZERO] * art_start + [-ONE] * n_rows
    tableau.optimize(phase_one_cost, [True] * n_cols)
    infeasibility = sum((tableau.rhs[i] for i, b in enumerate(tableau.basis) if b >= art_start), ZERO)
    if infeasibility > ZERO:
        logger.debug("phase one: infeasible after %d pivots", tableau.pivots)
        return LPStatus.INFEASIBLE, None

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] >= art_start:
            column = next((j for j in range(art_start) if tableau.rows[i][j] != ZERO), None)
            if column is None:
                del tableau.rows[i], tableau.rhs[i], tableau.basis[i]
                continue
            tableau.pivot(i, column)
        i += 1

    cost = [ZERO] * n_cols
    for j, c in enumerate(objective):
        cost[j] = c
        cost[n + j] = -c
    allowed = [j < art_start for j in range(n_cols)]
    if not tableau.optimize(cost, allowed):
        logger.debug("phase two: unbounded after %d pivots", tableau.pivots)
        return LPStatus.UNBOUNDED, None

    y = tableau.values()
    point = [y[j] - y[n + j] for j in range(n)]
    logger.debug("optimal after %d pivots", tableau.pivots)
    return LPStatus.OPTIMAL, point


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def _lexicographic_refine(sys: LinIneqSystem, objective: List[Fraction], value: Fraction, point: List[Fraction]) -> List[Fraction]:
    """Smallest optimal point in lexicographic order; coordinates unbounded below stay free."""
    fixed: List[Constraint] = [Constraint(coeffs=objective, relation=Relation.EQ, rhs=value)]
    witness = point
    for j in range(len(sys.variables)):
        restricted = sys.extended(fixed)
        target = [ZERO] * len(sys.variables)
        target[j] = -ONE
        status, candidate = _solve(restricted, target)
        if status != LPStatus.OPTIMAL or candidate is None:
            continue
        witness = candidate
        fixed.append(Constraint(coeffs=sys.unit(sys.variables[j]), relation=Relation.EQ, rhs=candidate[j]))
    return witness


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------
def maximize(sys: LinIneqSystem, objective: Sequence[Fraction], lexicographic: bool = True) -> LPResult:
    objective = fractions(objective)
    _check_width(sys, objective, "objective")
    status, point = _solve(sys, objective)
    if status == LPStatus.INFEASIBLE:
        certificate = infeasibility_certificate(sys)
        if certificate is None:
            raise SolverError({"message": "phase one reported infeasible but no Farkas certificate exists", "system": sys.name})
        return LPResult(status=LPStatus.INFEASIBLE, certificate=certificate)
    if status == LPStatus.UNBOUNDED:
        return LPResult(status=LPStatus.UNBOUNDED)
    assert point is not None
    value = _dot(objective, point)
    if lexicographic:
        point = _lexicographic_refine(sys, objective, value, point)
    return LPResult(status=LPStatus.OPTIMAL, value=value, witness=point)


def minimize(sys: LinIneqSystem, objective: Sequence[Fraction], lexicographic: bool = True) -> LPResult:
    result = maximize(sys, [-c for c in fractions(objective)], lexicographic=lexicographic)
    if result.status != LPStatus.OPTIMAL:
        return result
    return result.model_copy(update={"value": -result.value})


def objective_for(sys: LinIneqSystem, variable: str) -> List[Fraction]:
    try:
        return sys.unit(variable)
    except KeyError as exc:
        raise InputError(str(exc)) from None


def infeasibility_certificate(sys: LinIneqSystem) -> Optional[FarkasCertificate]:
    """Multipliers y with y.A = 0 and y.b = 1 (GE rows y >= 0), or None when sys is feasible."""
    multipliers = _find_combination(sys, target_coeffs=[ZERO] * len(sys.variables), target_rhs=ONE, exact_rhs=True)
    if multipliers is None:
        return None
    combined = _dot(multipliers, [row.rhs for row in sys.constraints])
    return FarkasCertificate(multipliers=multipliers, combined_rhs=combined)


def _find_combination(
    sys: LinIneqSystem,
    target_coeffs: Sequence[Fraction],
    target_rhs: Fraction,
    exact_rhs: bool,
) -> Optional[List[Fraction]]:
    """Solve for y with sum y_i a_i = target_coeffs and sum y_i b_i (= | >=) target_rhs."""
    r = len(sys.constraints)
    names = [f"y{i}" for i in range(r)]
    rows: List[Constraint] = []
    for i, constraint in enumerate(sys.constraints):
        if constraint.relation == Relation.GE:
            unit = [ZERO] * r
            unit[i] = ONE
            rows.append(Constraint(coeffs=unit, relation=Relation.GE, rhs=ZERO))
    for j in range(len(sys.variables)):
        rows.append(
            Constraint(
                coeffs=[constraint.coeffs[j] for constraint in sys.constraints],
                relation=Relation.EQ,
                rhs=target_coeffs[j],
            )
        )
    rows.append(
        Constraint(
            coeffs=[constraint.rhs for constraint in sys.constraints],
            relation=Relation.EQ if exact_rhs else Relation.GE,
            rhs=target_rhs,
        )
    )
    dual = LinIneqSystem(variables=names, constraints=rows, name=f"multipliers for {sys.name or 'system'}")
    status, point = _solve(dual, [ZERO] * r)
    if status != LPStatus.OPTIMAL:
        return None
    return point


def verify_certificate(sys: LinIneqSystem, cert: FarkasCertificate, target: Optional[Constraint] = None) -> bool:
    """Check a certificate by exact arithmetic only."""
    if len(cert.multipliers) != len(sys.constraints):
        return False
    coeffs = [ZERO] * len(sys.variables)
    rhs = ZERO
    for weight, row in zip(cert.multipliers, sys.constraints):
        if row.relation == Relation.GE and weight < ZERO:
            return False
        for j, c in enumerate(row.coeffs):
            coeffs[j] += weight * c
        rhs += weight * row.rhs
    sigma = cert.negation_multiplier
    if sigma < ZERO:
        return False
    if sigma > ZERO:
        if target is None or len(target.coeffs) != len(coeffs):
            return False
        coeffs = [c - sigma * t for c, t in zip(coeffs, target.coeffs)]
        rhs -= sigma * target.rhs
        return all(c == ZERO for c in coeffs) and rhs >= ZERO and rhs == cert.combined_rhs
    return all(c == ZERO for c in coeffs) and rhs > ZERO and rhs == cert.combined_rhs


def verify_witness(sys: LinIneqSystem, point: Sequence[Fraction]) -> bool:
    point = fractions(point)
    return len(point) == len(sys.variables) and all(row.holds(point) for row in sys.constraints)


def is_implied(sys: LinIneqSystem, ineq: Constraint) -> ImplicationResult:
    """Whether every point of sys satisfies ineq; the negation is taken strictly."""
    if ineq.relation != Relation.GE:
        raise InputError("implication targets are GE constraints; split an equality into two")
    _check_width(sys, ineq.coeffs, "implication target")
    status, point = _solve(sys, [-c for c in ineq.coeffs])
    if status == LPStatus.INFEASIBLE:
        return ImplicationResult(implied=True, certificate=infeasibility_certificate(sys))
    if status == LPStatus.UNBOUNDED:
        violated = sys.extended(
            [Constraint(coeffs=[-c for c in ineq.coeffs], relation=Relation.GE, rhs=-ineq.rhs + ONE)]
        )
        _, witness = _solve(violated, [ZERO] * len(sys.variables))
        return ImplicationResult(implied=False, witness=witness)
    assert point is not None
    minimum = _dot(ineq.coeffs, point)
    if minimum < ineq.rhs:
        witness = _lexicographic_refine(sys, [-c for c in ineq.coeffs], -minimum, point)
        return ImplicationResult(implied=False, witness=witness)
    multipliers = _find_combination(sys, target_coeffs=ineq.coeffs, target_rhs=ineq.rhs, exact_rhs=False)
    if multipliers is None:
        raise SolverError({"message": "bounded minimum without dual multipliers", "system": sys.name})
    combined = _dot(multipliers, [row.rhs for row in sys.constraints]) - ineq.rhs
    return ImplicationResult(
        implied=True,
        certificate=FarkasCertificate(multipliers=multipliers, negation_multiplier=ONE, combined_rhs=combined),
    )


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------
def _normalized(coeffs: List[Fraction], rhs: Fraction, relation: Relation) -> Tuple[List[Fraction], Fraction]:
    scale = max((abs(c) for c in coeffs), default=ZERO)
    if scale == ZERO:
        return coeffs, rhs
    if relation == Relation.EQ:
        lead = next(c for c in coeffs if c != ZERO)
        scale = lead
    return [c / scale for c in coeffs], rhs / scale


def eliminate(sys: LinIneqSystem, var: str) -> LinIneqSystem:
    """Project the feasible set along ``var``."""
    try:
        j = sys.index(var)
    except KeyError as exc:
        raise InputError(str(exc)) from None

    rows = list(sys.constraints)
    pivot = next((row for row in rows if row.relation == Relation.EQ and row.coeffs[j] != ZERO), None)
    produced: List[Tuple[List[Fraction], Fraction, Relation]] = []
    if pivot is not None:
        for row in rows:
            if row is pivot:
                continue
            factor = row.coeffs[j] / pivot.coeffs[j]
            coeffs = [a - factor * b for a, b in zip(row.coeffs, pivot.coeffs)]
            produced.append((coeffs, row.rhs - factor * pivot.rhs, row.relation))
    else:
        positive = [row for row in rows if row.coeffs[j] > ZERO]
        negative = [row for row in rows if row.coeffs[j] < ZERO]
        produced.extend((list(row.coeffs), row.rhs, row.relation) for row in rows if row.coeffs[j] == ZERO)
        for p in positive:
            for q in negative:
                wp, wq = ONE / p.coeffs[j], ONE / -q.coeffs[j]
                coeffs = [wp * a + wq * b for a, b in zip(p.coeffs, q.coeffs)]
                produced.append((coeffs, wp * p.rhs + wq * q.rhs, Relation.GE))

    out: List[Constraint] = []
    seen: set = set()
    for coeffs, rhs, relation in produced:
        coeffs = coeffs[:j] + coeffs[j + 1:]
        if all(c == ZERO for c in coeffs):
            trivial = rhs <= ZERO if relation == Relation.GE else rhs == ZERO
            if trivial:
                continue
        coeffs, rhs = _normalized(coeffs, rhs, relation)
        key = (tuple(coeffs), rhs, relation)
        if key in seen:
            continue
        seen.add(key)
        out.append(Constraint(coeffs=coeffs, relation=relation, rhs=rhs))

    logger.debug("eliminated %s: %d rows -> %d rows", var, len(rows), len(out))
    return LinIneqSystem(
        variables=[v for v in sys.variables if v != var],
        constraints=out,
        name=sys.name,
    )


# ---------------------------------------------------------------------------
# Vertex enumeration oracle
# ---------------------------------------------------------------------------
def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def enumerate_vertices(sys: LinIneqSystem) -> List[List[Fraction]]:
    """All vertices, by solving every square subsystem of active rows."""
    n = len(sys.variables)
    if n == 0:
        return [[]] if all(row.holds([]) for row in sys.constraints) else []
    vertices: List[List[Fraction]] = []
    seen: set = set()
    for subset in itertools.combinations(sys.constraints, n):
        matrix = sympy.Matrix([[_to_sympy(c) for c in row.coeffs] for row in subset])
        if matrix.det() == 0:
            continue
        solution = matrix.LUsolve(sympy.Matrix([_to_sympy(row.rhs) for row in subset]))
        point = fractions(sympy.Rational(x) for x in solution)
        key = tuple(point)
        if key in seen or not verify_witness(sys, point):
            continue
        seen.add(key)
        vertices.append(point)
    vertices.sort()
    return vertices


def maximize_by_vertices(sys: LinIneqSystem, objective: Sequence[Fraction]) -> Optional[Tuple[Fraction, List[Fraction]]]:
    """Best vertex; meaningful for bounded pointed polyhedra only."""
    objective = fractions(objective)
    _check_width(sys, objective, "objective")
    best: Optional[Tuple[Fraction, List[Fraction]]] = None
    for vertex in enumerate_vertices(sys):
        value = _dot(objective, vertex)
        if best is None or value > best[0]:
            best = (value, vertex)
    return best
