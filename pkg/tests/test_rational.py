"""
Exact rationals on the wire.

Core claims:
    - Integers, Fractions and integer or p/q strings parse exactly
    - Decimals, floats, booleans and zero denominators are refused
    - Every rational is written p/q, integers included
"""
from fractions import Fraction

import pytest
from pydantic import ValidationError

from schemas.local import TheoremIParams
from schemas.rational import fraction_str, fractions, to_fraction


def _make_params(**overrides):
    values = {"A": "2", "B": "3/2", "M": "1/2", "N": "1/2", "alpha": "1", "beta": "1"}
    values.update(overrides)
    return values


# == 1. Parsing ===============================================================

class TestParsing:
    @pytest.mark.parametrize(
        "value, expected",
        [
            ("2", Fraction(2)),
            ("-3/4", Fraction(-3, 4)),
            (" 1/2 ", Fraction(1, 2)),
            ("+3", Fraction(3)),
            ("6/4", Fraction(3, 2)),
            (5, Fraction(5)),
            (Fraction(7, 3), Fraction(7, 3)),
        ],
    )
    def test_accepted(self, value, expected):
        assert to_fraction(value) == expected

    @pytest.mark.parametrize("value", ["1.5", "0.5", "1e3", ".5", "1/2.0", "abc", "", "1/0", "1/-2", 0.5, True])
    def test_refused(self, value):
        with pytest.raises(ValueError):
            to_fraction(value)

    def test_decimal_message(self):
        with pytest.raises(ValueError, match="decimals are refused"):
            to_fraction("1.5")

    def test_list(self):
        assert fractions(["1/2", 0, "3"]) == [Fraction(1, 2), Fraction(0), Fraction(3)]


# == 2. Models ================================================================

class TestModels:
    def test_model_field_accepts_p_q(self):
        params = TheoremIParams.model_validate(_make_params())
        assert params.B == Fraction(3, 2)

    def test_model_field_refuses_decimal(self):
        with pytest.raises(ValidationError):
            TheoremIParams.model_validate(_make_params(B="1.5"))

    def test_written_p_q(self):
        assert fraction_str(2) == "2/1"
        assert fraction_str(Fraction(-6, 4)) == "-3/2"
        assert TheoremIParams.model_validate(_make_params()).model_dump(mode="json")["A"] == "2/1"
