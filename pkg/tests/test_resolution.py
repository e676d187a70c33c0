"""
Resolution graphs and pullback coefficients.

Core claims:
    - Intersection matrices are negative definite with the expected edges
    - Pullback coefficients solve (L + sum n_i E_i) . E_j = 0 exactly, for any incidences on any type
    - Anticanonical pullbacks are (1,...,1) on A, (1,1,2,...,2,1) on D, the fork values on E
    - Intersection numbers on X come from the strict product plus the pullback, and are symmetric
    - The covering involution reverses A chains; Cartier checks detect integrality
"""
from fractions import Fraction

import numpy as np
import pytest

from conftest import fr
from schemas.enums import DynkinKind
from schemas.resolution import CurveClass
from src.exceptions import InputError
from src.service.resolution import (
    add_coefficients,
    anticanonical_incidence,
    anticanonical_pullback,
    basis_curve,
    cartier_check,
    graph_edges,
    intersection_matrix,
    intersection_number,
    involution_reverse,
    is_negative_definite,
    leading_minors,
    parse_dynkin,
    pullback_coefficients,
    pullback_residual,
)


def _unit(t, k):
    b = [0] * t.rank
    b[k - 1] = 1
    return b


ALL_TYPES = [f"A{m}" for m in range(1, 9)] + [f"D{m}" for m in range(4, 9)] + ["E6", "E7", "E8"]


def _random_incidences(rng, t):
    return [int(v) for v in rng.integers(0, 3, size=t.rank)]


def _make_curve(t, b, name="L"):
    curve = CurveClass(name=name, anticanonical_degree=Fraction(1), self_intersection_strict=Fraction(-1), exc_intersections=b)
    return curve, pullback_coefficients(t, b)


# == 1. Graphs ================================================================

class TestGraphs:
    def test_parse_round_trips_label(self):
        t = parse_dynkin(" a7 ")
        assert t.kind == DynkinKind.A and t.rank == 7
        assert t.label == "A7"

    @pytest.mark.parametrize("label", ["A9", "D3", "E5", "B2", "A", ""])
    def test_rejects_unknown_types(self, label):
        with pytest.raises(InputError):
            parse_dynkin(label)

    def test_d_fork_at_e3(self):
        assert graph_edges(parse_dynkin("D5")) == [(1, 3), (2, 3), (3, 4), (4, 5)]

    def test_e_fork_at_e3(self):
        assert graph_edges(parse_dynkin("E6")) == [(1, 2), (2, 3), (3, 4), (3, 5), (5, 6)]

    @pytest.mark.parametrize("label", ["A1", "A4", "A8", "D4", "D8", "E6", "E7", "E8"])
    def test_negative_definite(self, label):
        assert is_negative_definite(intersection_matrix(parse_dynkin(label)))

    def test_a_chain_minors(self):
        # det of the k x k A_k matrix is (-1)^k (k+1)
        minors = leading_minors(intersection_matrix(parse_dynkin("A4")))
        assert minors == fr(-2, 3, -4, 5)

    def test_entry_is_one_based(self):
        matrix = intersection_matrix(parse_dynkin("A3"))
        assert matrix.entry(1, 1) == -2
        assert matrix.entry(1, 2) == 1
        assert matrix.entry(1, 3) == 0


# == 2. Pullbacks =============================================================

class TestPullbacks:
    @pytest.mark.parametrize(
        "label, k, expected",
        [
            ("A7", 4, ("1/2", 1, "3/2", 2, "3/2", 1, "1/2")),
            ("A8", 3, ("2/3", "4/3", 2, "5/3", "4/3", 1, "2/3", "1/3")),
            ("A6", 2, ("5/7", "10/7", "8/7", "6/7", "4/7", "2/7")),
            ("A6", 3, ("4/7", "8/7", "12/7", "9/7", "6/7", "3/7")),
            ("A7", 2, ("3/4", "3/2", "5/4", 1, "3/4", "1/2", "1/4")),
            ("A7", 3, ("5/8", "5/4", "15/8", "3/2", "9/8", "3/4", "3/8")),
            ("A5", 3, ("1/2", 1, "3/2", 1, "1/2")),
            ("D7", 1, ("7/4", "5/4", "5/2", 2, "3/2", 1, "1/2")),
            ("D7", 2, ("5/4", "7/4", "5/2", 2, "3/2", 1, "1/2")),
            ("D8", 1, (2, "3/2", 3, "5/2", 2, "3/2", 1, "1/2")),
        ],
    )
    def test_basis_curve_pullbacks(self, label, k, expected):
        t = parse_dynkin(label)
        n = pullback_coefficients(t, _unit(t, k))
        assert n.coeffs == fr(*expected)
        assert all(r == 0 for r in pullback_residual(t, _unit(t, k), n))

    @pytest.mark.parametrize(
        "label, expected",
        [
            ("A1", [2]),
            ("A3", [1, 0, 1]),
            ("D5", [0, 0, 0, 1, 0]),
            ("E8", [0, 0, 0, 0, 0, 0, 0, 1]),
        ],
    )
    def test_anticanonical_incidence(self, label, expected):
        assert anticanonical_incidence(parse_dynkin(label)) == expected

    @pytest.mark.parametrize("label", ALL_TYPES)
    def test_residual_vanishes_on_random_incidences(self, label):
        t = parse_dynkin(label)
        rng = np.random.default_rng(sum(map(ord, label)))
        for _ in range(12):
            b = _random_incidences(rng, t)
            assert all(r == 0 for r in pullback_residual(t, b, pullback_coefficients(t, b))), b

    def test_a_chain_maximum_on_the_touched_curve(self):
        # n_k = k(m+1-k)/(m+1) for L meeting E_k once
        for m in range(1, 9):
            t = parse_dynkin(f"A{m}")
            for k in range(1, m + 1):
                n = pullback_coefficients(t, _unit(t, k))
                assert n.coeffs[k - 1] == Fraction(k * (m + 1 - k), m + 1)

    @pytest.mark.parametrize("label", [f"A{m}" for m in range(1, 9)])
    def test_anticanonical_on_a_is_all_ones(self, label):
        t = parse_dynkin(label)
        assert anticanonical_pullback(t).coeffs == [Fraction(1)] * t.rank

    @pytest.mark.parametrize("label", [f"D{m}" for m in range(4, 9)])
    def test_anticanonical_on_d(self, label):
        t = parse_dynkin(label)
        assert anticanonical_pullback(t).coeffs == fr(1, 1, *([2] * (t.rank - 3)), 1)

    @pytest.mark.parametrize(
        "label, expected",
        [
            ("E6", (1, 2, 3, 2, 2, 1)),
            ("E7", (2, 3, 4, 2, 3, 2, 1)),
            ("E8", (2, 4, 6, 3, 5, 4, 3, 2)),
        ],
    )
    def test_anticanonical_on_e(self, label, expected):
        assert anticanonical_pullback(parse_dynkin(label)).coeffs == fr(*expected)

    def test_wrong_length(self):
        with pytest.raises(InputError):
            pullback_coefficients(parse_dynkin("A3"), [1, 0])

    def test_non_integer_incidence(self):
        with pytest.raises(InputError):
            pullback_coefficients(parse_dynkin("A2"), [1, "1/2"])


# == 3. Intersection numbers ==================================================

class TestIntersectionNumbers:
    def test_a6(self):
        t = parse_dynkin("A6")
        l2, n2 = basis_curve(t, 2)
        l3, n3 = basis_curve(t, 3)
        l2b, _ = basis_curve(t, 2, "L2'")
        assert intersection_number(l2, n2, l2, l2.self_intersection_strict) == Fraction(3, 7)
        assert intersection_number(l3, n3, l3, l3.self_intersection_strict) == Fraction(5, 7)
        assert intersection_number(l2, n2, l3, Fraction(0)) == Fraction(8, 7)
        assert intersection_number(l2, n2, l2b, Fraction(0)) == Fraction(10, 7)

    def test_a7(self):
        t = parse_dynkin("A7")
        l2, n2 = basis_curve(t, 2)
        l3, n3 = basis_curve(t, 3)
        assert intersection_number(l2, n2, l2, Fraction(-1)) == Fraction(1, 2)
        assert intersection_number(l3, n3, l3, Fraction(-1)) == Fraction(7, 8)
        assert intersection_number(l2, n2, l3, Fraction(0)) == Fraction(5, 4)

    def test_symmetric(self):
        t = parse_dynkin("A7")
        l2, n2 = basis_curve(t, 2)
        l5, n5 = basis_curve(t, 5)
        assert intersection_number(l2, n2, l5, Fraction(0)) == intersection_number(l5, n5, l2, Fraction(0))

    @pytest.mark.parametrize("label", ALL_TYPES)
    def test_symmetric_on_random_curves(self, label):
        t = parse_dynkin(label)
        rng = np.random.default_rng(7 + t.rank)
        for _ in range(8):
            strict = Fraction(int(rng.integers(0, 3)))
            l1, n1 = _make_curve(t, _random_incidences(rng, t), "L1")
            l2, n2 = _make_curve(t, _random_incidences(rng, t), "L2")
            assert intersection_number(l1, n1, l2, strict) == intersection_number(l2, n2, l1, strict)

    def test_rank_mismatch(self):
        l2, n2 = basis_curve(parse_dynkin("A7"), 2)
        l3, _ = basis_curve(parse_dynkin("A6"), 3)
        with pytest.raises(InputError):
            intersection_number(l2, n2, l3, Fraction(0))


# == 4. Involution and Cartier checks =========================================

class TestInvolutionAndCartier:
    def test_reverse_maps_l3_to_l6_on_a8(self):
        t = parse_dynkin("A8")
        _, n3 = basis_curve(t, 3)
        _, n6 = basis_curve(t, 6)
        assert involution_reverse(n3).coeffs == n6.coeffs

    def test_reverse_refuses_d(self):
        _, n = basis_curve(parse_dynkin("D5"), 1)
        with pytest.raises(InputError):
            involution_reverse(n)

    def test_add_coefficients_z_on_a5(self):
        t = parse_dynkin("A5")
        _, n3 = basis_curve(t, 3)
        assert add_coefficients([(n3, Fraction(1)), (involution_reverse(n3), Fraction(1))]) == fr(1, 2, 3, 2, 1)

    def test_a6_witness_is_cartier(self):
        t = parse_dynkin("A6")
        _, n2 = basis_curve(t, 2)
        _, n3 = basis_curve(t, 3)
        assert add_coefficients([(n2, Fraction(2)), (n3, Fraction(1))]) == fr(2, 4, 4, 3, 2, 1)
        assert cartier_check([n2, n2, n3])

    def test_single_basis_curve_is_not_cartier(self):
        _, n2 = basis_curve(parse_dynkin("A6"), 2)
        assert not cartier_check([n2])

    def test_reference_multiple(self):
        t = parse_dynkin("A4")
        _, n1 = basis_curve(t, 1)
        # 5 L1 - (5 L1) is trivially integral; L1 - 0 * L1 is not
        assert cartier_check([n1] * 5, reference=n1, multiple=5)
        assert not cartier_check([n1], reference=n1, multiple=0)
