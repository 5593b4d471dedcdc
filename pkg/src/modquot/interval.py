"""Closed rational intervals with infinite ends, for partially known coefficients.

An exact coefficient q is the degenerate interval [q, q].  Untracked
coefficients carry an upper bound and the ids of the assumptions that supply
it; the ids propagate through arithmetic so a verified inequality can report
what it relied on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .rational import as_fraction, format_rational, parse_rational


@dataclass(frozen=True)
class CoefInterval:
    lo: Optional[Fraction]  # None is -inf
    hi: Optional[Fraction]  # None is +inf
    tags: frozenset = frozenset()

    def __post_init__(self):
        lo = None if self.lo is None else as_fraction(self.lo)
        hi = None if self.hi is None else as_fraction(self.hi)
        if lo is not None and hi is not None and lo > hi:
            raise DomainError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        tags = frozenset(self.tags)
        if lo is not None and lo == hi:
            tags = frozenset()
        object.__setattr__(self, "tags", tags)

    @classmethod
    def exact(cls, q) -> "CoefInterval":
        q = as_fraction(q)
        return cls(q, q)

    @classmethod
    def at_most(cls, hi, *tags: str) -> "CoefInterval":
        return cls(None, hi, frozenset(tags))

    @property
    def is_exact(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise DomainError(f"{self} is not exact")
        return self.lo

    def is_zero(self) -> bool:
        return self.is_exact and self.lo == 0

    def __add__(self, other: "CoefInterval") -> "CoefInterval":
        if not isinstance(other, CoefInterval):
            other = CoefInterval.exact(other)
        lo = None if self.lo is None or other.lo is None else self.lo + other.lo
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return CoefInterval(lo, hi, self.tags | other.tags)

    __radd__ = __add__

    def __neg__(self) -> "CoefInterval":
        return CoefInterval(
            None if self.hi is None else -self.hi,
            None if self.lo is None else -self.lo,
            self.tags,
        )

    def __sub__(self, other: "CoefInterval") -> "CoefInterval":
        if not isinstance(other, CoefInterval):
            other = CoefInterval.exact(other)
        return self + (-other)

    def scale(self, c) -> "CoefInterval":
        c = as_fraction(c)
        if c == 0:
            return CoefInterval.exact(0)
        lo = None if self.lo is None else c * self.lo
        hi = None if self.hi is None else c * self.hi
        if c < 0:
            lo, hi = hi, lo
        return CoefInterval(lo, hi, self.tags)

    def __rmul__(self, c) -> "CoefInterval":
        return self.scale(c)

    def contains(self, q) -> bool:
        q = as_fraction(q)
        return (self.lo is None or self.lo <= q) and (self.hi is None or q <= self.hi)

    def nonnegative(self) -> bool:
        """True when every value in the interval is >= 0."""
        return self.lo is not None and self.lo >= 0

    def __str__(self):
        if self.is_exact:
            return str(self.lo)
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"[{lo}, {hi}]"

    def to_json(self) -> dict:
        out = {
            "lo": "-inf" if self.lo is None else format_rational(self.lo),
            "hi": "+inf" if self.hi is None else format_rational(self.hi),
        }
        if self.tags:
            out["assumptions"] = sorted(self.tags)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CoefInterval":
        lo, hi = data["lo"], data["hi"]
        return cls(
            None if lo == "-inf" else parse_rational(lo),
            None if hi == "+inf" else parse_rational(hi),
            frozenset(data.get("assumptions", ())),
        )


EXACT_ZERO = CoefInterval.exact(0)
