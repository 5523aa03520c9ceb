"""Exact rational formatting: "p/q" in lowest terms with q >= 1, never
floats."""

from __future__ import annotations

from fractions import Fraction


def format_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str | int) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den)) if den else Fraction(int(num))
