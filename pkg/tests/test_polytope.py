"""
Exact linear inequality engine.

Core claims:
    - The simplex returns exact optima with lexicographically smallest witnesses
    - Infeasible systems come with Farkas certificates that verify without the solver
    - Implication is decided against the strict negation, with a certificate or a witness
    - Fourier-Motzkin elimination projects, normalizes and deduplicates
    - Vertex enumeration agrees with the simplex on bounded systems and seeded random ones
"""
from fractions import Fraction

import numpy as np
import pytest

from conftest import fr
from schemas.enums import LPStatus, Relation
from schemas.polytope import Constraint, FarkasCertificate, LinIneqSystem
from src.exceptions import InputError
from src.service.catalog import base_system
from src.service.polytope import (
    eliminate,
    enumerate_vertices,
    infeasibility_certificate,
    is_implied,
    maximize,
    maximize_by_vertices,
    minimize,
    objective_for,
    verify_certificate,
    verify_witness,
)
from src.service.resolution import parse_dynkin


# -- Helpers -----------------------------------------------------------------

def _ge(coeffs, rhs=0):
    return Constraint(coeffs=fr(*coeffs), relation=Relation.GE, rhs=Fraction(rhs))


def _make_square():
    """0 <= x <= 1, 0 <= y <= 1"""
    return LinIneqSystem(
        variables=["x", "y"],
        constraints=[_ge((1, 0)), _ge((-1, 0), -1), _ge((0, 1)), _ge((0, -1), -1)],
        name="square",
    )


def _make_contradiction():
    """x >= 1 and -x >= 0"""
    return LinIneqSystem(variables=["x"], constraints=[_ge((1,), 1), _ge((-1,))], name="contradiction")


def _make_staircase():
    """x >= 0, y - x >= 0, 1 - y >= 0"""
    return LinIneqSystem(variables=["x", "y"], constraints=[_ge((1, 0)), _ge((-1, 1)), _ge((0, -1), -1)])


# == 1. Optimization ==========================================================

class TestOptimization:
    def test_square_maximum(self):
        result = maximize(_make_square(), fr(1, 1))
        assert result.status == LPStatus.OPTIMAL
        assert result.value == 2
        assert result.witness == fr(1, 1)

    def test_lexicographic_witness_on_a_face(self):
        result = maximize(_make_square(), fr(1, 0))
        assert result.value == 1
        assert result.witness == fr(1, 0)

    def test_minimize_negates_back(self):
        result = minimize(_make_staircase(), fr(0, 1))
        assert result.value == 0
        assert result.witness == fr(0, 0)

    def test_unbounded(self):
        system = LinIneqSystem(variables=["x"], constraints=[_ge((1,))])
        assert maximize(system, fr(1)).status == LPStatus.UNBOUNDED

    def test_free_variables_go_negative(self):
        system = LinIneqSystem(variables=["x"], constraints=[_ge((1,), -3)])
        result = minimize(system, fr(1))
        assert result.value == -3

    def test_equalities(self):
        system = LinIneqSystem(
            variables=["x", "y"],
            constraints=[Constraint(coeffs=fr(1, 1), relation=Relation.EQ, rhs=Fraction(1)), _ge((1, 0)), _ge((0, 1))],
        )
        result = maximize(system, fr(2, 1))
        assert result.value == 2
        assert result.witness == fr(1, 0)

    def test_wrong_objective_width(self):
        with pytest.raises(InputError):
            maximize(_make_square(), fr(1))

    def test_objective_for_unknown_variable(self):
        with pytest.raises(InputError):
            objective_for(_make_square(), "z")

    @pytest.mark.parametrize("m", range(1, 9))
    def test_a_chain_maxima(self, m):
        system = base_system(parse_dynkin(f"A{m}"))
        for k in range(1, m + 1):
            result = maximize(system, system.unit(f"a{k}"), lexicographic=False)
            assert result.value == Fraction(k * (m + 1 - k), m + 1)

    @pytest.mark.parametrize(
        "label, value",
        [("D4", 1), ("D5", Fraction(3, 2)), ("D6", 2), ("D7", Fraction(5, 2)), ("D8", 3), ("E6", 2), ("E7", 3), ("E8", 5)],
    )
    def test_third_coefficient_maxima(self, label, value):
        system = base_system(parse_dynkin(label))
        assert maximize(system, system.unit("a3"), lexicographic=False).value == value

    def test_d8_maximum_witness(self):
        system = base_system(parse_dynkin("D8"))
        result = maximize(system, system.unit("a3"))
        assert verify_witness(system, result.witness)
        assert verify_witness(system, fr("3/2", "3/2", 3, "5/2", 2, "3/2", 1, "1/2"))


# == 2. Farkas certificates ===================================================

class TestCertificates:
    def test_infeasible_certificate(self):
        system = _make_contradiction()
        result = maximize(system, fr(1))
        assert result.status == LPStatus.INFEASIBLE
        assert result.certificate.multipliers == fr(1, 1)
        assert result.certificate.combined_rhs == 1
        assert verify_certificate(system, result.certificate)

    def test_feasible_has_no_certificate(self):
        assert infeasibility_certificate(_make_square()) is None

    def test_tampered_certificate_fails(self):
        system = _make_contradiction()
        bad = FarkasCertificate(multipliers=fr(1, 2), combined_rhs=Fraction(1))
        assert not verify_certificate(system, bad)

    def test_negative_multiplier_on_ge_row_fails(self):
        system = _make_contradiction()
        bad = FarkasCertificate(multipliers=fr(-1, -1), combined_rhs=Fraction(-1))
        assert not verify_certificate(system, bad)

    def test_wrong_length_fails(self):
        bad = FarkasCertificate(multipliers=fr(1), combined_rhs=Fraction(1))
        assert not verify_certificate(_make_contradiction(), bad)


# == 3. Implication ===========================================================

class TestImplication:
    def test_implied_bound(self):
        system = _make_square()
        target = _ge((-1, -1), -2)
        result = is_implied(system, target)
        assert result.implied
        assert result.certificate.negation_multiplier == 1
        assert verify_certificate(system, result.certificate, target)

    def test_tight_bound_is_implied(self):
        # x + y >= 0 holds with equality at the origin
        system = _make_square()
        target = _ge((1, 1), 0)
        result = is_implied(system, target)
        assert result.implied
        assert result.certificate.combined_rhs == 0
        assert verify_certificate(system, result.certificate, target)

    def test_not_implied_gives_witness(self):
        system = base_system(parse_dynkin("A3"))
        target = _ge((1, -1, 0))
        result = is_implied(system, target)
        assert not result.implied
        assert result.witness == fr("1/2", 1, "1/2")
        assert verify_witness(system, result.witness)
        assert not target.holds(result.witness)

    def test_unbounded_direction_gives_witness(self):
        system = LinIneqSystem(variables=["x"], constraints=[_ge((1,))])
        target = _ge((-1,), -5)
        result = is_implied(system, target)
        assert not result.implied
        assert not target.holds(result.witness)

    def test_infeasible_system_implies_anything(self):
        system = _make_contradiction()
        result = is_implied(system, _ge((1,), 100))
        assert result.implied
        assert verify_certificate(system, result.certificate)

    def test_certificate_does_not_prove_a_different_target(self):
        system = _make_square()
        result = is_implied(system, _ge((-1, -1), -2))
        assert not verify_certificate(system, result.certificate, _ge((-1, -1), -1))

    def test_equality_target_refused(self):
        target = Constraint(coeffs=fr(1, 0), relation=Relation.EQ, rhs=Fraction(0))
        with pytest.raises(InputError):
            is_implied(_make_square(), target)


# == 4. Fourier-Motzkin =======================================================

class TestElimination:
    def test_staircase_projection(self):
        projected = eliminate(_make_staircase(), "x")
        assert projected.variables == ["y"]
        assert [(row.coeffs, row.rhs) for row in projected.constraints] == [(fr(-1), -1), (fr(1), 0)]

    def test_equality_substitution(self):
        system = LinIneqSystem(
            variables=["x", "y"],
            constraints=[Constraint(coeffs=fr(1, -1), relation=Relation.EQ, rhs=Fraction(0)), _ge((1, 0), 2)],
        )
        projected = eliminate(system, "x")
        assert [(row.coeffs, row.rhs) for row in projected.constraints] == [(fr(1), 2)]

    def test_projection_preserves_optimum(self):
        system = base_system(parse_dynkin("A4"))
        projected = system
        for name in ("a1", "a3", "a4"):
            projected = eliminate(projected, name)
        assert projected.variables == ["a2"]
        assert maximize(projected, fr(1)).value == Fraction(6, 5)

    def test_detects_infeasibility(self):
        projected = eliminate(_make_contradiction(), "x")
        assert projected.variables == []
        assert [row.rhs for row in projected.constraints] == [Fraction(1)]

    def test_unknown_variable(self):
        with pytest.raises(InputError):
            eliminate(_make_square(), "z")


# == 5. Vertex enumeration ====================================================

class TestVertices:
    def test_square_vertices(self):
        assert enumerate_vertices(_make_square()) == [fr(0, 0), fr(0, 1), fr(1, 0), fr(1, 1)]

    def test_staircase_vertices(self):
        assert enumerate_vertices(_make_staircase()) == [fr(0, 0), fr(0, 1), fr(1, 1)]

    @pytest.mark.parametrize("label", ["A5", "D5", "E6"])
    def test_agrees_with_simplex(self, label):
        system = base_system(parse_dynkin(label))
        for name in system.variables:
            objective = system.unit(name)
            value, vertex = maximize_by_vertices(system, objective)
            assert value == maximize(system, objective, lexicographic=False).value
            assert verify_witness(system, vertex)

    def test_d8_third_coefficient_by_vertices(self):
        system = base_system(parse_dynkin("D8"))
        value, vertex = maximize_by_vertices(system, system.unit("a3"))
        assert value == 3
        assert verify_witness(system, vertex)
        assert value == maximize(system, system.unit("a3"), lexicographic=False).value

    def test_random_systems_agree_with_simplex(self):
        """x >= 0 plus c.x <= r with c in {-2..2}, r in {0, 1}; the origin is always a vertex."""
        rng = np.random.default_rng(2024)
        for trial in range(30):
            n = int(rng.integers(1, 5))
            rows = [_ge([1 if j == i else 0 for j in range(n)]) for i in range(n)]
            for _ in range(int(rng.integers(1, 5))):
                c = [int(v) for v in rng.integers(-2, 3, size=n)]
                rows.append(_ge([-v for v in c], -int(rng.integers(0, 2))))
            system = LinIneqSystem(variables=[f"x{i}" for i in range(1, n + 1)], constraints=rows, name=f"random {trial}")
            objective = fr(*(int(v) for v in rng.integers(-2, 3, size=n)))

            vertices = enumerate_vertices(system)
            assert [Fraction(0)] * n in vertices
            assert all(verify_witness(system, v) for v in vertices)
            result = maximize(system, objective, lexicographic=False)
            assert result.status in (LPStatus.OPTIMAL, LPStatus.UNBOUNDED), trial
            if result.status == LPStatus.OPTIMAL:
                value, _ = maximize_by_vertices(system, objective)
                assert value == result.value, trial
