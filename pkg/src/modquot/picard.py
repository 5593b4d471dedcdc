"""Divisor classes on the moduli space of n-pointed genus-g stable curves.

A class is a rational combination of lambda, psi_1..psi_n, delta_irr and the
boundary classes delta_{i,S}.  Boundary classes are stored sparsely under a
canonical key: (i, S) and (g - i, S^c) name the same divisor, and delta_{0,S}
with |S| <= 1 is the zero class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

from .errors import DomainError, SizeCapExceeded
from .rational import as_fraction, format_rational, parse_rational

FULL_BASIS_CAP = 200_000


class SpaceId(NamedTuple):
    g: int
    n: int

    def check(self) -> "SpaceId":
        if self.g < 2 or self.n < 0:
            raise DomainError(f"need g >= 2 and n >= 0, got {tuple(self)}")
        return self

    @property
    def labels(self) -> range:
        return range(1, self.n + 1)


class BoundaryIndex(NamedTuple):
    i: int
    S: tuple[int, ...]


class _ZeroClass:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_CLASS"

    def __bool__(self):
        return False


ZERO_CLASS = _ZeroClass()


def canonical_boundary(g: int, n: int, i: int, S: Iterable[int]):
    """Canonical key of delta_{i,S}, or ``ZERO_CLASS``.

    The representative has i <= g/2; when g is even and i = g/2 the side
    containing label 1 is kept.
    """
    S = frozenset(S)
    if not 0 <= i <= g:
        raise DomainError(f"node order {i} outside 0..{g}")
    if any(not 1 <= x <= n for x in S):
        raise DomainError(f"labels {sorted(S)} not in 1..{n}")
    if 2 * i > g or (2 * i == g and n > 0 and 1 not in S):
        i, S = g - i, frozenset(range(1, n + 1)) - S
    if i == 0 and len(S) <= 1:
        return ZERO_CLASS
    return BoundaryIndex(i, tuple(sorted(S)))


def boundary_indices(g: int, n: int, cap: int = FULL_BASIS_CAP) -> list[BoundaryIndex]:
    """All canonical boundary keys of (g, n), sorted."""
    if (g // 2 + 1) * 2**n > cap:
        raise SizeCapExceeded(f"full boundary basis of ({g}, {n}) exceeds {cap}")
    out = set()
    for i in range(g // 2 + 1):
        for s in range(n + 1):
            for S in combinations(range(1, n + 1), s):
                key = canonical_boundary(g, n, i, S)
                if key is not ZERO_CLASS:
                    out.add(key)
    return sorted(out)


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


@dataclass(frozen=True)
class FullDivisorClass:
    """Class in the subset-indexed basis.  Treat as immutable."""

    space: SpaceId
    lam: Fraction = Fraction(0)
    psi: dict[int, Fraction] = field(default_factory=dict)
    irr: Fraction = Fraction(0)
    boundary: dict[BoundaryIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        space = SpaceId(*self.space).check()
        g, n = space
        psi = {}
        for label, c in self.psi.items():
            if not 1 <= label <= n:
                raise DomainError(f"psi label {label} not in 1..{n}")
            psi[label] = as_fraction(c)
        bnd: dict[BoundaryIndex, Fraction] = {}
        for key, c in self.boundary.items():
            canon = canonical_boundary(g, n, key[0], key[1])
            if canon is ZERO_CLASS:
                continue
            bnd[canon] = bnd.get(canon, Fraction(0)) + as_fraction(c)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "lam", as_fraction(self.lam))
        object.__setattr__(self, "irr", as_fraction(self.irr))
        object.__setattr__(self, "psi", _clean(psi))
        object.__setattr__(self, "boundary", _clean(bnd))

    # basis elements
    @classmethod
    def zero(cls, space) -> "FullDivisorClass":
        return cls(space)

    @classmethod
    def lambda_class(cls, space) -> "FullDivisorClass":
        return cls(space, lam=1)

    @classmethod
    def psi_class(cls, space, label: int) -> "FullDivisorClass":
        return cls(space, psi={label: 1})

    @classmethod
    def irr_class(cls, space) -> "FullDivisorClass":
        return cls(space, irr=1)

    @classmethod
    def boundary_class(cls, space, i: int, S: Iterable[int]) -> "FullDivisorClass":
        g, n = space
        key = canonical_boundary(g, n, i, S)
        if key is ZERO_CLASS:
            return cls(space)
        return cls(space, boundary={key: 1})

    def basis_elements(self) -> Iterator["FullDivisorClass"]:
        """Every basis class of this space (small n only)."""
        yield self.lambda_class(self.space)
        yield self.irr_class(self.space)
        for label in self.space.labels:
            yield self.psi_class(self.space, label)
        for key in boundary_indices(*self.space):
            yield FullDivisorClass(self.space, boundary={key: 1})

    # arithmetic
    def _check_same(self, other: "FullDivisorClass"):
        if self.space != other.space:
            raise DomainError(f"mixed spaces {self.space} and {other.space}")

    def __add__(self, other: "FullDivisorClass") -> "FullDivisorClass":
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: "FullDivisorClass") -> "FullDivisorClass":
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self) -> "FullDivisorClass":
        return linear_combine([(-1, self)])

    def __rmul__(self, c) -> "FullDivisorClass":
        return linear_combine([(c, self)])

    def is_zero(self) -> bool:
        return self.lam == 0 and self.irr == 0 and not self.psi and not self.boundary

    def coefficient(self, i: int, S: Iterable[int]) -> Fraction:
        key = canonical_boundary(self.space.g, self.space.n, i, S)
        if key is ZERO_CLASS:
            return Fraction(0)
        return self.boundary.get(key, Fraction(0))

    def psi_coefficient(self, label: int) -> Fraction:
        return self.psi.get(label, Fraction(0))

    def permute(self, sigma: dict[int, int]) -> "FullDivisorClass":
        """Relabel marked points: psi_i -> psi_sigma(i), delta_{i,S} -> delta_{i,sigma(S)}."""
        return FullDivisorClass(
            self.space,
            lam=self.lam,
            psi={sigma.get(x, x): c for x, c in self.psi.items()},
            irr=self.irr,
            boundary={
                BoundaryIndex(k.i, tuple(sigma.get(x, x) for x in k.S)): c
                for k, c in self.boundary.items()
            },
        )

    # serialization
    def to_json(self) -> dict:
        return {
            "g": self.space.g,
            "n": self.space.n,
            "lambda": format_rational(self.lam),
            "psi": {str(k): format_rational(v) for k, v in sorted(self.psi.items())},
            "irr": format_rational(self.irr),
            "boundary": [
                {"i": k.i, "S": list(k.S), "c": format_rational(v)}
                for k, v in sorted(self.boundary.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FullDivisorClass":
        try:
            space = SpaceId(int(data["g"]), int(data["n"]))
            boundary: dict = {}
            for entry in data.get("boundary", []):
                key = canonical_boundary(space.g, space.n, int(entry["i"]), entry["S"])
                if key is ZERO_CLASS:
                    continue
                boundary[key] = boundary.get(key, Fraction(0)) + parse_rational(entry["c"])
            return cls(
                space,
                lam=parse_rational(data.get("lambda", "0")),
                psi={int(k): parse_rational(v) for k, v in data.get("psi", {}).items()},
                irr=parse_rational(data.get("irr", "0")),
                boundary=boundary,
            )
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed divisor class JSON: {exc}") from None


def linear_combine(terms: Iterable[tuple]) -> FullDivisorClass:
    """Exact linear combination of classes on one space."""
    terms = [(as_fraction(c), x) for c, x in terms]
    if not terms:
        raise DomainError("empty combination has no space")
    space = terms[0][1].space
    lam = irr = Fraction(0)
    psi: dict[int, Fraction] = {}
    bnd: dict[BoundaryIndex, Fraction] = {}
    for c, x in terms:
        if x.space != space:
            raise DomainError(f"mixed spaces {space} and {x.space}")
        if c == 0:
            continue
        lam += c * x.lam
        irr += c * x.irr
        for k, v in x.psi.items():
            psi[k] = psi.get(k, Fraction(0)) + c * v
        for k, v in x.boundary.items():
            bnd[k] = bnd.get(k, Fraction(0)) + c * v
    return FullDivisorClass(space, lam=lam, psi=psi, irr=irr, boundary=bnd)


def delta_total(space) -> FullDivisorClass:
    """delta: the sum of delta_irr and every boundary class."""
    space = SpaceId(*space)
    return FullDivisorClass(
        space, irr=1, boundary={k: 1 for k in boundary_indices(*space)}
    )


def canonical_class(space) -> FullDivisorClass:
    """K = 13 lambda + psi - 2 delta."""
    space = SpaceId(*space).check()
    return FullDivisorClass(
        space,
        lam=13,
        psi={i: 1 for i in space.labels},
        irr=-2,
        boundary={k: -2 for k in boundary_indices(*space)},
    )
