"""Effective divisor templates used by the certificates.

Every template records its tracked coefficients exactly and an upper bound
for each untracked boundary family.  Bounds name the assumption that supplies
them (see ``ASSUMPTIONS``); "quoted" bounds are stated with the source
formulas, "declared" ones are choices made here and are reported as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DomainError, Unsupported
from .groups import BlockPartition
from .interval import EXACT_ZERO, CoefInterval
from .picard import FullDivisorClass, SpaceId, canonical_boundary
from .profile import ProfileDivisorClass, all_profiles
from .pullback import omega_base_change

ASSUMPTIONS = {
    "W-ho": ("Weierstrass higher-order boundary terms enter with non-positive coefficients", "quoted"),
    "W-s": ("summed Weierstrass divisor: w_s >= s * w_psi for s >= 3", "quoted"),
    "W-b2": ("normalized Weierstrass divisor: b_s > b_2 for s > 2", "quoted"),
    "W-genus": ("Weierstrass delta_{i>=1,S} coefficients are <= 0 (no sharper bound available)", "declared"),
    "ht-2": ("T/F/Ftilde higher-order terms have coefficients <= -2", "quoted"),
    "slope-tail": ("slope divisor normalized to -delta_irr has delta_{i>=1} coefficients <= -1", "declared"),
    "sporadic-tail": ("sporadic small-slope divisor assumed to share the Brill-Noether tail shape", "declared"),
}

SPORADIC_SLOPES = {
    10: Fraction(7),
    12: 6 + Fraction(563, 642),
    16: 6 + Fraction(41, 61),
    21: 6 + Fraction(197, 377),
}


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _is_composite(x: int) -> bool:
    return x > 3 and any(x % d == 0 for d in range(2, int(x**0.5) + 1))


@dataclass(frozen=True)
class SlopeEntry:
    g: int
    slope: Fraction
    provenance: str  # BrillNoether | GieseckerPetri | Sporadic
    candidates: dict = field(default_factory=dict, compare=False)


@lru_cache(maxsize=None)
def slope_min(g: int) -> SlopeEntry:
    """Smallest known slope of an effective divisor on M_g among the catalogued families."""
    if g < 4:
        raise Unsupported(f"no slope divisor catalogued for g = {g} (need g >= 4)")
    cands = {}
    if _is_composite(g + 1):
        cands["BrillNoether"] = 6 + Fraction(12, g + 1)
    if (g + 1) % 2 == 1:
        cands["GieseckerPetri"] = 6 + Fraction(14 * g + 4, g * g + 2 * g)
    if g in SPORADIC_SLOPES:
        cands["Sporadic"] = SPORADIC_SLOPES[g]
    name = min(cands, key=cands.get)
    return SlopeEntry(g, cands[name], name, cands)


@dataclass(frozen=True)
class WeierstrassParams:
    g: int
    m: int
    k: int
    r: int
    weights: tuple[int, ...]


def weierstrass_params(g: int, m: int) -> WeierstrassParams:
    """Weights for W(g; a_1..a_m) as even as possible: g = k*m + r, r heavy points of weight k+1."""
    if m < 1 or g < 2:
        raise DomainError(f"need m >= 1 and g >= 2, got g={g}, m={m}")
    k, r = divmod(g, m)
    return WeierstrassParams(g, m, k, r, (k + 1,) * r + (k,) * (m - r))


@dataclass(frozen=True)
class WeierstrassFactor:
    """The generalized Weierstrass divisor on M_{g,m}, tracked part in omega form."""

    params: WeierstrassParams
    omega: tuple[Fraction, ...]
    pair: dict  # frozenset({i, j}) -> coefficient (negative)

    @property
    def space(self) -> SpaceId:
        return SpaceId(self.params.g, self.params.m)

    def omega_class(self) -> FullDivisorClass:
        """Tracked part with ``psi`` slots holding omega coefficients."""
        g, m = self.space
        return FullDivisorClass(
            self.space,
            lam=-1,
            psi={i + 1: c for i, c in enumerate(self.omega)},
            boundary={canonical_boundary(g, m, 0, p): c for p, c in self.pair.items()},
        )

    def tracked_class(self) -> FullDivisorClass:
        return omega_base_change(self.omega_class())

    def profile_class(self) -> ProfileDivisorClass:
        """Psi-basis class over the heavy/light blocks, untracked terms as bounds."""
        p = self.params
        sizes = tuple(s for s in (p.r, p.m - p.r) if s)
        part = BlockPartition.from_sizes(sizes)
        w = [Fraction(a * (a + 1), 2) for a, s in ((p.k + 1, p.r), (p.k, p.m - p.r)) if s]
        full = self.tracked_class()
        profiles = {}
        for prof in all_profiles(p.g, part):
            if prof.i == 0 and sum(prof.counts) == 2:
                S = list(part.subsets_with_counts(prof.counts))[0]
                profiles[prof] = CoefInterval.exact(full.coefficient(0, S))
            elif prof.i == 0:
                base = -sum(c * wk for c, wk in zip(prof.counts, w))
                profiles[prof] = CoefInterval.at_most(base, "W-ho")
            else:
                profiles[prof] = CoefInterval.at_most(0, "W-genus")
        return ProfileDivisorClass(self.space, part, lam=-1, psi=tuple(w), irr=0, profiles=profiles)


def weierstrass_factor(g: int, m: int) -> WeierstrassFactor:
    """W(g; k+1 (r times), k (m-r times)) on M_{g,m}."""
    if m > g:
        raise Unsupported(f"Weierstrass weights need m <= g, got m={m}, g={g}")
    p = weierstrass_params(g, m)
    omega = tuple(Fraction(a * (a + 1), 2) for a in p.weights)
    pair = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            pair[frozenset((i, j))] = -Fraction(p.weights[i - 1] * p.weights[j - 1])
    return WeierstrassFactor(p, omega, pair)


@dataclass(frozen=True)
class WeierstrassSum:
    g: int
    n: int
    m: int
    w_lambda: Fraction
    w_psi: Fraction
    w_2: Fraction

    def delta0_bound(self, s: int) -> CoefInterval:
        """Coefficient of delta_{0,S}, |S| = s >= 3: at most -s * w_psi."""
        return CoefInterval.at_most(-s * self.w_psi, "W-s")

    def genus_bound(self) -> CoefInterval:
        return CoefInterval.at_most(0, "W-genus")


def weierstrass_summed(g: int, n: int, m: int) -> WeierstrassSum:
    """Coefficients of the sum of all pullbacks of W(g; ...) from M_{g,m} to M_{g,n}."""
    if m > n or m > g or m < 1:
        raise DomainError(f"need 1 <= m <= min(n, g), got g={g}, n={n}, m={m}")
    k, r = divmod(g, m)
    heavy = Fraction((k + 1) * (k + 2), 2)
    light = Fraction(k * (k + 1), 2)
    w_lambda = Fraction(binom(n, r) * binom(n - r, m - r))
    w_psi = (binom(n - 1, r - 1) * binom(n - r, m - r) * heavy
             + binom(n - 1, r) * binom(n - r - 1, m - r - 1) * light)
    w_2 = (2 * w_psi
           + binom(n - 2, r - 2) * binom(n - r, m - r) * (k + 1) ** 2
           + 2 * binom(n - 2, r - 1) * binom(n - r - 1, m - r - 1) * k * (k + 1)
           + binom(n - 2, r) * binom(n - r - 2, m - r - 2) * k * k)
    return WeierstrassSum(g, n, m, w_lambda, w_psi, Fraction(w_2))


def a_closed(g: int, n: int) -> Fraction:
    """lambda-magnitude of the normalized Weierstrass divisor W_{g,n}."""
    if n < 1:
        raise DomainError("n >= 1 required")
    if n > g:
        return Fraction(n, g)
    k, r = divmod(g, n)
    return Fraction(2 * n, (k + 1) * (g + r))


def b_closed(g: int, n: int) -> Fraction:
    """delta_{0,2}-magnitude of W_{g,n}.  For n = 1 there are no pairs; the value 2 is formal."""
    if n < 1:
        raise DomainError("n >= 1 required")
    if n > g:
        return 2 + Fraction(g - 1, n - 1)
    if n == 1:
        return Fraction(2)
    k, r = divmod(g, n)
    num = r * (r - 1) * (k + 1) ** 2 + 2 * r * (n - r) * k * (k + 1) + (n - r) * (n - r - 1) * k * k
    den = r * (k + 1) * (k + 2) + (n - r) * k * (k + 1)
    return 2 + Fraction(2, n - 1) * Fraction(num, den)


@dataclass(frozen=True)
class ZeroTail:
    """Upper bound -max(const, per_point * s) on delta_{0,S} coefficients, |S| = s >= 3."""

    const: Fraction
    per_point: Fraction
    tags: tuple[str, ...]

    def bound(self, s: int) -> CoefInterval:
        return CoefInterval.at_most(-max(self.const, self.per_point * s), *self.tags)

    def describe(self) -> str:
        if self.per_point == 0:
            return f"<= -{self.const}"
        return f"<= -max({self.const}, {self.per_point}*s)"


@dataclass(frozen=True)
class GenusTail:
    """Upper bound on delta_{i,S} coefficients with i >= 1."""

    hi: Fraction
    tags: tuple[str, ...]

    def bound(self) -> CoefInterval:
        return CoefInterval.at_most(self.hi, *self.tags)


@dataclass(frozen=True)
class CatalogEntry:
    """Normalized template  a*lambda + psi - b_irr*delta_irr - b_pair*delta_{0,2} + tails."""

    name: str
    space: SpaceId
    a: Fraction
    b_irr: Fraction
    b_pair: Fraction
    zero_tail: ZeroTail
    genus_tail: GenusTail
    params: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.space.n

    def profile_class(self) -> ProfileDivisorClass:
        g, n = self.space
        part = BlockPartition.single(n)
        profiles = {}
        for p in all_profiles(g, part):
            s = p.counts[0]
            if p.i > 0:
                profiles[p] = self.genus_tail.bound()
            elif s == 2:
                profiles[p] = CoefInterval.exact(-self.b_pair)
            else:
                profiles[p] = self.zero_tail.bound(s)
        return ProfileDivisorClass(
            self.space, part, lam=self.a, psi=(1,), irr=-self.b_irr, profiles=profiles
        )

    def untracked_bounds(self) -> dict:
        return {
            "delta_{0,s}, s>=3": self.zero_tail.describe(),
            "delta_{i,S}, i>=1": f"<= {self.genus_tail.hi}",
        }

    def assumptions(self) -> list[str]:
        return sorted(set(self.zero_tail.tags) | set(self.genus_tail.tags))

    def to_json(self) -> dict:
        from .rational import format_rational

        return {
            "name": self.name,
            "g": self.space.g,
            "n": self.space.n,
            "params": {k: (format_rational(v) if isinstance(v, Fraction) else v)
                       for k, v in self.params.items()},
            "lambda": format_rational(self.a),
            "psi": "1/1",
            "irr": format_rational(-self.b_irr),
            "delta_0_2": format_rational(-self.b_pair),
            "untracked_bounds": self.untracked_bounds(),
            "assumptions": [
                {"id": t, "kind": ASSUMPTIONS[t][1], "text": ASSUMPTIONS[t][0]}
                for t in self.assumptions()
            ],
        }


_HT = ZeroTail(Fraction(2), Fraction(0), ("ht-2",))
_HT_GENUS = GenusTail(Fraction(-2), ("ht-2",))


def weierstrass_normalized(g: int, n: int) -> CatalogEntry:
    """W_{g,n}: the summed Weierstrass divisor with m = min(g, n), scaled to psi-coefficient 1."""
    if n < 1:
        raise DomainError("n >= 1 required")
    ws = weierstrass_summed(g, n, min(g, n))
    a = ws.w_lambda / ws.w_psi
    b = ws.w_2 / ws.w_psi
    return CatalogEntry(
        "W", SpaceId(g, n), -a, Fraction(0), b,
        ZeroTail(b, Fraction(1), ("W-s", "W-b2")),
        GenusTail(Fraction(0), ("W-genus",)),
        params={"m": min(g, n), "w_lambda": ws.w_lambda, "w_psi": ws.w_psi, "w_2": ws.w_2},
    )


def _check_g(g):
    if g < 3:
        raise Unsupported(f"catalog entries need g >= 3, got {g}")


def catalog_entry(name: str, g: int, m: int | None = None) -> CatalogEntry:
    """T_g on M_{g,g-1}; F_{g,m} on M_{g,g-2m}; Ftilde_{g,m} on M_{g,g-2m+1}."""
    _check_g(g)
    if name == "T":
        n = g - 1
        return CatalogEntry(
            "T", SpaceId(g, n), -Fraction(g - 7, g - 2), Fraction(1, 2 * g - 4),
            3 + Fraction(1, 2 * g - 4), _HT, _HT_GENUS, params={},
        )
    if name not in ("F", "Ftilde"):
        raise DomainError(f"unknown catalog entry {name!r}")
    if m is None or not 1 <= m or 2 * m > g:
        raise Unsupported(f"{name} needs 1 <= m <= g/2, got m={m}")
    base = Fraction(10 * m, g - 2) + Fraction(1 - g, g - m)
    if name == "F":
        n = g - 2 * m
        if n < 2:
            raise Unsupported(f"F_{{{g},{m}}} lives on n = {n} < 2 points")
        a = Fraction(n, n - 1) * base
        b_pair = 3 + Fraction((g - n) * (n + 1), (g + n) * (n - 1))
        b_irr = Fraction(n * m, (g - 2) * (n - 1))
    else:
        n = g - 2 * m + 1
        if n < 3:
            raise Unsupported(f"Ftilde_{{{g},{m}}} lives on n = {n} < 3 points")
        a = Fraction(n, n - 2) * base
        b_pair = 3 + Fraction(g - n - 1, g + n - 1)
        b_irr = Fraction(n * m, (g - 2) * (n - 2))
    return CatalogEntry(name, SpaceId(g, n), a, b_irr, b_pair, _HT, _HT_GENUS, params={"m": m})


def parse_choice(text: str, g: int, n: int) -> CatalogEntry:
    """Block divisor choice ``W``, ``T``, ``F:m`` or ``Ftilde:m`` for a block of size n."""
    text = text.strip()
    if text == "W":
        entry = weierstrass_normalized(g, n)
    elif text == "T":
        entry = catalog_entry("T", g)
    else:
        name, _, m = text.partition(":")
        if name not in ("F", "Ftilde") or not m.isdigit():
            raise DomainError(f"unknown divisor choice {text!r}")
        entry = catalog_entry(name, g, int(m))
    if entry.n != n:
        raise DomainError(f"{text} lives on n = {entry.n} points, block has {n}")
    return entry


def slope_divisor_class(g: int, partition: BlockPartition) -> ProfileDivisorClass:
    """Pullback of the minimal-slope divisor D = s*lambda - delta_irr + tail to M_{g,n}."""
    entry = slope_min(g)
    tags = ("slope-tail", "sporadic-tail") if entry.provenance == "Sporadic" else ("slope-tail",)
    profiles = {p: CoefInterval.at_most(-1, *tags) for p in all_profiles(g, partition) if p.i > 0}
    return ProfileDivisorClass(
        SpaceId(g, partition.n), partition, lam=entry.slope,
        psi=(EXACT_ZERO,) * partition.m, irr=-1, profiles=profiles,
    )
