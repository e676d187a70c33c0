"""Exact rational type shared by every schema.

Values are ``fractions.Fraction`` in Python and ``"p/q"`` strings on the wire.
Floats are refused so nothing inexact slips into a certificate.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Annotated, Any, Iterable, List

from pydantic import PlainSerializer, PlainValidator, WithJsonSchema

RATIONAL_PATTERN = r"^-?\d+/\d+$"
_INPUT = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def to_fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(f"floats are not accepted, pass {value!r} as a 'p/q' string")
    if isinstance(value, str):
        text = value.strip()
        if not _INPUT.match(text):
            raise ValueError(f"not a rational: {value!r}; write integers or p/q, decimals are refused")
        try:
            parsed = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
        return parsed
    # sympy.Rational and friends expose p and q
    numerator = getattr(value, "p", None)
    denominator = getattr(value, "q", None)
    if isinstance(numerator, int) and isinstance(denominator, int):
        return Fraction(numerator, denominator)
    raise ValueError(f"not a rational: {value!r} ({type(value).__name__})")


def fraction_str(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def fractions(values: Iterable[Any]) -> List[Fraction]:
    return [to_fraction(v) for v in values]


Rational = Annotated[
    Fraction,
    PlainValidator(to_fraction),
    PlainSerializer(fraction_str, return_type=str, when_used="json"),
    WithJsonSchema(
        {
            "type": "string",
            "pattern": RATIONAL_PATTERN,
            "description": "Exact rational in lowest terms, written p/q with q >= 1.",
        }
    ),
]
