"""Pullbacks along forgetful maps and the omega/psi change of basis.

``pullback_aggregate`` works in the profile basis and is what certificates
use.  ``pullback_onepoint_oracle`` adds one marked point at a time in the
subset basis; it is exponential in n and exists to cross-check the aggregate
rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DomainError, SizeCapExceeded
from .groups import BlockPartition
from .interval import EXACT_ZERO
from .picard import (
    FULL_BASIS_CAP,
    ZERO_CLASS,
    BoundaryIndex,
    FullDivisorClass,
    SpaceId,
    canonical_boundary,
)
from .profile import ProfileDivisorClass, all_profiles, canonical_profile


@dataclass(frozen=True)
class ForgetfulMap:
    """M_{g,n} -> M_{g,|kept|}, keeping the labels in ``kept`` (in increasing order)."""

    source: SpaceId
    kept: tuple[int, ...]

    def __post_init__(self):
        kept = tuple(sorted(set(self.kept)))
        src = SpaceId(*self.source).check()
        if not kept:
            raise DomainError("a forgetful map must keep at least one label")
        if any(not 1 <= x <= src.n for x in kept):
            raise DomainError(f"kept labels {kept} not in 1..{src.n}")
        object.__setattr__(self, "kept", kept)
        object.__setattr__(self, "source", src)

    @property
    def target(self) -> SpaceId:
        return SpaceId(self.source.g, len(self.kept))

    @property
    def forgotten(self) -> tuple[int, ...]:
        return tuple(x for x in self.source.labels if x not in self.kept)


def pullback_aggregate(
    target: ProfileDivisorClass, fmap: ForgetfulMap, partition: BlockPartition
) -> ProfileDivisorClass:
    """Pull a symmetric class on M_{g,n_k} back to M_{g,n}, where the kept set is a block.

    lambda and delta_irr pull back to themselves; psi to Psi_k minus every
    genus-0 profile with exactly one point of the block; delta_{i,s} to every
    profile with node order i and c_k = s.
    """
    g = fmap.source.g
    if partition.n != fmap.source.n:
        raise DomainError("ambient partition does not match the source space")
    if fmap.kept not in partition.blocks:
        raise DomainError(f"kept set {fmap.kept} is not a block of {partition.blocks}")
    if target.partition.m != 1 or target.space != fmap.target:
        raise DomainError("target class must be fully symmetric on the target space")
    k = partition.blocks.index(fmap.kept)
    nk = len(fmap.kept)
    psi_t = target.psi[0]
    profiles = {}
    for p in all_profiles(g, partition):
        c = EXACT_ZERO
        tp = canonical_profile(g, (nk,), p.i, (p.counts[k],))
        if tp is not ZERO_CLASS:
            c = target.profiles.get(tp, EXACT_ZERO)
        if p.i == 0 and p.counts[k] == 1:
            c = c - psi_t
        if not c.is_zero():
            profiles[p] = c
    psi = tuple(psi_t if j == k else EXACT_ZERO for j in range(partition.m))
    return ProfileDivisorClass(
        fmap.source, partition, lam=target.lam, psi=psi, irr=target.irr, profiles=profiles
    )


def pullback_onepoint_oracle(x: FullDivisorClass, new_label: int | None = None) -> FullDivisorClass:
    """Pull back along M_{g,n+1} -> M_{g,n} forgetting ``new_label``.

    Old labels >= new_label shift up by one.  psi_i -> psi_i - delta_{0,{i,p}}
    and delta_{i,T} -> delta_{i,T} + delta_{i,T+p}.
    """
    g, n = x.space
    p = n + 1 if new_label is None else new_label
    if not 1 <= p <= n + 1:
        raise DomainError(f"new label {p} not in 1..{n + 1}")
    if (g // 2 + 1) * 2 ** (n + 1) > FULL_BASIS_CAP:
        raise SizeCapExceeded(f"one-point pullback to ({g}, {n + 1}) exceeds the size cap")

    def shift(a):
        return a if a < p else a + 1

    new = SpaceId(g, n + 1)
    psi = {}
    boundary: dict[BoundaryIndex, Fraction] = {}

    def add(i, S, c):
        key = canonical_boundary(g, n + 1, i, S)
        if key is not ZERO_CLASS:
            boundary[key] = boundary.get(key, Fraction(0)) + c

    for a, c in x.psi.items():
        psi[shift(a)] = c
        add(0, (shift(a), p), -c)
    for key, c in x.boundary.items():
        T = [shift(a) for a in key.S]
        add(key.i, T, c)
        if not (n == 0 and 2 * key.i == g):  # delta_{g/2} on M_g has a single preimage
            add(key.i, T + [p], c)
    return FullDivisorClass(new, lam=x.lam, psi=psi, irr=x.irr, boundary=boundary)


def pullback_oracle(x: FullDivisorClass, fmap: ForgetfulMap) -> FullDivisorClass:
    """Iterated one-point pullback realizing ``fmap``; labels 1..|kept| map to kept in order."""
    if x.space != fmap.target:
        raise DomainError(f"class lives on {x.space}, map targets {fmap.target}")
    for label in fmap.forgotten:
        x = pullback_onepoint_oracle(x, label)
    return x


def _omega_shift(x: FullDivisorClass, sign: int) -> FullDivisorClass:
    g, n = x.space
    boundary = dict(x.boundary)
    for label, c in x.psi.items():
        others = [a for a in x.space.labels if a != label]
        for size in range(1, n):
            for rest in combinations(others, size):
                key = canonical_boundary(g, n, 0, (label, *rest))
                boundary[key] = boundary.get(key, Fraction(0)) - sign * c
    return FullDivisorClass(x.space, lam=x.lam, psi=x.psi, irr=x.irr, boundary=boundary)


def omega_base_change(x: FullDivisorClass) -> FullDivisorClass:
    """Read ``x.psi`` as omega coefficients and rewrite in psi, using
    omega_i = psi_i - sum_{S containing i} delta_{0,S}."""
    return _omega_shift(x, +1)


def psi_to_omega(x: FullDivisorClass) -> FullDivisorClass:
    """Inverse of ``omega_base_change``."""
    return _omega_shift(x, -1)
