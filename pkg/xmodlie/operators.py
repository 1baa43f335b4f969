"""
Scalar operators over exact rationals.

Every entry stored anywhere in the package is a :class:`fractions.Fraction`.
"""

from fractions import Fraction
import re

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def rational(x):
    """
    Coerce `x` to an exact :class:`Fraction`.

    Accepts ints, Fractions and strings of the form ``"p/q"`` or ``"p"``.
    Floats are rejected: no value in this package is ever approximate.

    Args:
        x (int, Fraction or str): value to convert

    Returns:
        Fraction : normalized rational
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError(f"Boolean {x!r} is not a rational entry.")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        match = _RATIONAL_RE.match(x)
        if match is None:
            raise ValueError(f"Cannot parse {x!r} as a rational of the form p/q.")
        num, den = match.groups()
        den = int(den) if den is not None else 1
        if den == 0:
            raise ValueError(f"Zero denominator in {x!r}.")
        return Fraction(int(num), den)
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"Cannot use {x!r} ({type(x).__name__}) as an exact rational.")


def format_rational(x):
    """:math:`f(p/q) =` ``"p/q"``, or ``"p"`` when q is 1."""
    x = rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
