"""Block-symmetric divisor classes.

For a partition of the labels into blocks S_1..S_m, the classes invariant
under S_{n_1} x ... x S_{n_m} are spanned by lambda, delta_irr, the block sums
Psi_k of psi_i over S_k, and one orbit sum per *profile* (i; c_1..c_m): all
delta_{i,S} with |S cap S_k| = c_k.  A profile coefficient is the coefficient
of every divisor in its orbit, so expansion copies it rather than dividing.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Iterator, NamedTuple

from .errors import DomainError, SizeCapExceeded
from .groups import BlockPartition, GroupSpec, orbit_partition, transpositions
from .interval import EXACT_ZERO, CoefInterval
from .picard import (
    FULL_BASIS_CAP,
    ZERO_CLASS,
    FullDivisorClass,
    SpaceId,
    canonical_boundary,
)

DEFAULT_PROFILE_CAP = 500_000


def profile_cap() -> int:
    return int(os.environ.get("MODQUOT_PROFILE_CAP", DEFAULT_PROFILE_CAP))


class Profile(NamedTuple):
    i: int
    counts: tuple[int, ...]


def canonical_profile(g: int, sizes, i: int, counts):
    """Canonical representative of profile (i; counts), or ``ZERO_CLASS``.

    (i; c) is identified with (g - i; n - c).  The representative has
    i <= g/2, and at i = g/2 the lexicographically larger counts vector.
    """
    sizes = tuple(sizes)
    counts = tuple(counts)
    if len(counts) != len(sizes) or any(not 0 <= c <= s for c, s in zip(counts, sizes)):
        raise DomainError(f"counts {counts} incompatible with block sizes {sizes}")
    if not 0 <= i <= g:
        raise DomainError(f"node order {i} outside 0..{g}")
    comp = tuple(s - c for s, c in zip(sizes, counts))
    if 2 * i > g or (2 * i == g and counts < comp):
        i, counts = g - i, comp
    if i == 0 and sum(counts) <= 1:
        return ZERO_CLASS
    return Profile(i, counts)


def profile_count_bound(g: int, sizes) -> int:
    return (g // 2 + 1) * prod(s + 1 for s in sizes)


def all_profiles(g: int, partition: BlockPartition, cap: int | None = None) -> list[Profile]:
    """Every canonical profile of (g, partition), sorted."""
    cap = profile_cap() if cap is None else cap
    sizes = partition.sizes
    if profile_count_bound(g, sizes) > cap:
        raise SizeCapExceeded(
            f"profile basis of genus {g} with blocks {sizes} exceeds {cap} entries"
        )
    return list(_profiles(g, sizes))


@lru_cache(maxsize=256)
def _profiles(g: int, sizes: tuple[int, ...]) -> tuple[Profile, ...]:
    out = set()
    for i in range(g // 2 + 1):
        for counts in product(*(range(s + 1) for s in sizes)):
            p = canonical_profile(g, sizes, i, counts)
            if p is not ZERO_CLASS:
                out.add(p)
    return tuple(sorted(out))


def orbit_size(g: int, partition: BlockPartition, p: Profile) -> int:
    """Number of distinct boundary divisors in the orbit of a canonical profile."""
    raw = prod(comb(s, c) for s, c in zip(partition.sizes, p.counts))
    comp = tuple(s - c for s, c in zip(partition.sizes, p.counts))
    if 2 * p.i == g and p.counts == comp and partition.n > 0:
        return raw // 2
    return raw


def profile_of(g: int, partition: BlockPartition, i: int, S):
    return canonical_profile(g, partition.sizes, i, partition.counts(S))


@dataclass(frozen=True)
class ProfileDivisorClass:
    """Block-symmetric class with interval coefficients.  Treat as immutable."""

    space: SpaceId
    partition: BlockPartition
    lam: CoefInterval = EXACT_ZERO
    psi: tuple[CoefInterval, ...] = ()
    irr: CoefInterval = EXACT_ZERO
    profiles: dict[Profile, CoefInterval] = field(default_factory=dict)

    def __post_init__(self):
        space = SpaceId(*self.space).check()
        if self.partition.n != space.n:
            raise DomainError(f"partition covers {self.partition.n} labels, space has {space.n}")
        psi = tuple(_iv(c) for c in self.psi) or (EXACT_ZERO,) * self.partition.m
        if len(psi) != self.partition.m:
            raise DomainError("one psi coefficient per block is required")
        profiles = {}
        for key, c in self.profiles.items():
            canon = canonical_profile(space.g, self.partition.sizes, key[0], key[1])
            if canon is ZERO_CLASS:
                continue
            c = _iv(c)
            profiles[canon] = profiles[canon] + c if canon in profiles else c
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "lam", _iv(self.lam))
        object.__setattr__(self, "irr", _iv(self.irr))
        object.__setattr__(self, "psi", psi)
        object.__setattr__(
            self, "profiles", {k: v for k, v in profiles.items() if not v.is_zero()}
        )

    def _trusted(self, lam, psi, irr, profiles) -> "ProfileDivisorClass":
        # same space and partition, keys already canonical: skip validation
        out = object.__new__(ProfileDivisorClass)
        for name, value in (("space", self.space), ("partition", self.partition), ("lam", lam),
                            ("psi", psi), ("irr", irr)):
            object.__setattr__(out, name, value)
        object.__setattr__(out, "profiles", {k: v for k, v in profiles.items() if not v.is_zero()})
        return out

    @property
    def g(self) -> int:
        return self.space.g

    def coefficient(self, i: int, counts) -> CoefInterval:
        key = canonical_profile(self.g, self.partition.sizes, i, counts)
        if key is ZERO_CLASS:
            return EXACT_ZERO
        return self.profiles.get(key, EXACT_ZERO)

    def is_exact(self) -> bool:
        parts = [self.lam, self.irr, *self.psi, *self.profiles.values()]
        return all(c.is_exact for c in parts)

    def _check_same(self, other):
        if self.space != other.space or self.partition != other.partition:
            raise DomainError("profile classes live on different spaces or partitions")

    def __add__(self, other: "ProfileDivisorClass") -> "ProfileDivisorClass":
        self._check_same(other)
        profiles = dict(self.profiles)
        for k, v in other.profiles.items():
            profiles[k] = profiles[k] + v if k in profiles else v
        return self._trusted(
            self.lam + other.lam,
            tuple(a + b for a, b in zip(self.psi, other.psi)),
            self.irr + other.irr,
            profiles,
        )

    def scale(self, c) -> "ProfileDivisorClass":
        return self._trusted(
            self.lam.scale(c),
            tuple(x.scale(c) for x in self.psi),
            self.irr.scale(c),
            {k: v.scale(c) for k, v in self.profiles.items()},
        )

    def __rmul__(self, c) -> "ProfileDivisorClass":
        return self.scale(c)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "n": self.space.n,
            "blocks": [list(b) for b in self.partition.blocks],
            "lambda": self.lam.to_json(),
            "psi": [c.to_json() for c in self.psi],
            "irr": self.irr.to_json(),
            "profiles": [
                {"profile": {"i": p.i, "counts": list(p.counts)}, **c.to_json()}
                for p, c in sorted(self.profiles.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProfileDivisorClass":
        try:
            part = BlockPartition(tuple(tuple(b) for b in data["blocks"]))
            return cls(
                SpaceId(int(data["g"]), int(data["n"])),
                part,
                lam=CoefInterval.from_json(data["lambda"]),
                psi=tuple(CoefInterval.from_json(c) for c in data["psi"]),
                irr=CoefInterval.from_json(data["irr"]),
                profiles={
                    Profile(int(e["profile"]["i"]), tuple(e["profile"]["counts"])):
                        CoefInterval.from_json(e)
                    for e in data.get("profiles", [])
                },
            )
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed profile class JSON: {exc}") from None


def _iv(c) -> CoefInterval:
    return c if isinstance(c, CoefInterval) else CoefInterval.exact(c)


def constant_profile_class(g, partition, lam=0, psi=0, irr=0, profile_value=None,
                           cap=None) -> ProfileDivisorClass:
    """lam*lambda + psi*(sum of all psi_i) + irr*delta_irr + profile_value on every profile."""
    profiles = {}
    if profile_value is not None:
        profiles = {p: _iv(profile_value) for p in all_profiles(g, partition, cap)}
    return ProfileDivisorClass(
        SpaceId(g, partition.n), partition,
        lam=lam, psi=(_iv(psi),) * partition.m, irr=irr, profiles=profiles,
    )


def symmetrize(x: FullDivisorClass, partition: BlockPartition) -> ProfileDivisorClass:
    """Average of x over the block product group, in profile form."""
    g, n = x.space
    if partition.n != n:
        raise DomainError("partition does not match the class's space")
    block_of = partition.block_of()
    psi = [Fraction(0)] * partition.m
    for label, c in x.psi.items():
        psi[block_of[label]] += c
    psi = [c / len(b) for c, b in zip(psi, partition.blocks)]
    sums: dict[Profile, Fraction] = {}
    for key, c in x.boundary.items():
        p = profile_of(g, partition, key.i, key.S)
        sums[p] = sums.get(p, Fraction(0)) + c
    profiles = {p: s / orbit_size(g, partition, p) for p, s in sums.items()}
    return ProfileDivisorClass(
        x.space, partition, lam=x.lam, psi=tuple(psi), irr=x.irr, profiles=profiles
    )


def expand(y: ProfileDivisorClass, cap: int = FULL_BASIS_CAP) -> FullDivisorClass:
    """Write an exact profile class in the subset basis."""
    if not y.is_exact():
        raise DomainError("only exact profile classes can be expanded")
    g, n = y.space
    if (g // 2 + 1) * 2**n > cap:
        raise SizeCapExceeded(f"expanding ({g}, {n}) exceeds {cap} boundary entries")
    psi = {}
    for c, b in zip(y.psi, y.partition.blocks):
        for label in b:
            psi[label] = c.value
    boundary = {}
    for p, c in y.profiles.items():
        for S in y.partition.subsets_with_counts(p.counts):
            key = canonical_boundary(g, n, p.i, S)
            if key is not ZERO_CLASS:
                boundary[key] = c.value
    return FullDivisorClass(y.space, lam=y.lam.value, psi=psi, irr=y.irr.value, boundary=boundary)


def refine(y: ProfileDivisorClass, finer: BlockPartition) -> ProfileDivisorClass:
    """Restate a class in the profile basis of a finer partition."""
    if finer.n != y.partition.n:
        raise DomainError("partitions have different sizes")
    coarse_of = y.partition.block_of()
    owner = []
    for b in finer.blocks:
        ks = {coarse_of[x] for x in b}
        if len(ks) != 1:
            raise DomainError(f"block {b} straddles blocks of {y.partition.blocks}")
        owner.append(ks.pop())
    profiles = {}
    for p in all_profiles(y.g, finer):
        coarse = [0] * y.partition.m
        for k, c in zip(owner, p.counts):
            coarse[k] += c
        c = y.coefficient(p.i, coarse)
        if not c.is_zero():
            profiles[p] = c
    return ProfileDivisorClass(
        y.space, finer, lam=y.lam, psi=tuple(y.psi[k] for k in owner), irr=y.irr,
        profiles=profiles,
    )


def pair_profile(partition: BlockPartition, k: int) -> Profile:
    return Profile(0, tuple(2 if j == k else 0 for j in range(partition.m)))


def ramification_full(g: int, group: GroupSpec) -> FullDivisorClass:
    """R = sum over transpositions (i j) in G of delta_{0,{i,j}}, subset basis."""
    space = SpaceId(g, group.n)
    return FullDivisorClass(
        space, boundary={canonical_boundary(g, group.n, 0, t): 1 for t in transpositions(group)}
    )


def ramification_class(g: int, group: GroupSpec) -> ProfileDivisorClass:
    """R in the profile basis of the orbit partition.

    Requires that inside each orbit the group contains either every
    transposition or none of them; otherwise R is not symmetric under the
    full product over orbits and only ``ramification_full`` applies.
    """
    part = orbit_partition(group)
    block_of = part.block_of()
    per_orbit = [0] * part.m
    for t in transpositions(group):
        a, b = sorted(t)
        if block_of[a] != block_of[b]:
            raise DomainError("transposition across orbits")  # impossible for a group
        per_orbit[block_of[a]] += 1
    profiles = {}
    for k, size in enumerate(part.sizes):
        if per_orbit[k] == 0:
            continue
        if per_orbit[k] != comb(size, 2):
            raise DomainError(
                f"orbit {part.blocks[k]} contains only some of its transpositions; "
                "use ramification_full"
            )
        profiles[pair_profile(part, k)] = 1
    return ProfileDivisorClass(SpaceId(g, group.n), part, profiles=profiles)


def canonical_class_KG(g: int, group: GroupSpec, cap: int | None = None) -> ProfileDivisorClass:
    """K_G = 13 lambda + psi - 2 delta - R in the orbit-partition profile basis."""
    r = ramification_class(g, group)
    k = constant_profile_class(g, r.partition, lam=13, psi=1, irr=-2, profile_value=-2, cap=cap)
    return k - r
