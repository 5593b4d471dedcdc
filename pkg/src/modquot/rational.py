"""Exact rationals as used in reports: ``fractions.Fraction`` plus the "p/q" wire format."""

from fractions import Fraction

from .errors import DomainError


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise DomainError("floating point values are not accepted; pass an int, Fraction or 'p/q'")
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a rational 'p/q': {text!r}") from None


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return f"{q.numerator}/1"
    return f"{q.numerator}/{q.denominator}"


def format_offset(q: Fraction, base: int = 13) -> str:
    """Render q relative to an integer, e.g. ``13 - 11/396``."""
    d = Fraction(q) - base
    if d == 0:
        return str(base)
    sign = "+" if d > 0 else "-"
    return f"{base} {sign} {abs(d)}"
