"""Certificates that K_G is big on a block-product quotient.

For blocks S_1..S_m of sizes n_1..n_m we write

    K_G = c_D * D + P * sum_k pi_k^* L_k + Q * W + eta * Psi + remainder

with D the minimal-slope divisor pulled back from M_g, L_k a normalized
divisor on M_{g,n_k} (Weierstrass by default), W the Weierstrass divisor on
M_{g,n} and Psi the sum of all psi classes.  The certificate succeeds when
every remainder coordinate is provably >= 0.  The lambda coordinate equals
13 - f, so the scalar test is f <= 13.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import (
    ASSUMPTIONS,
    CatalogEntry,
    SlopeEntry,
    parse_choice,
    slope_divisor_class,
    slope_min,
    weierstrass_normalized,
)
from .errors import CriterionInapplicable, DomainError
from .groups import BlockPartition, GroupSpec
from .interval import CoefInterval
from .profile import ProfileDivisorClass, all_profiles, canonical_class_KG, constant_profile_class, refine
from .pullback import ForgetfulMap, pullback_aggregate
from .rational import format_rational

PROVED_EXACT = "ProvedExact"
PROVED_BY_BOUND = "ProvedByBound"
UNPROVED = "Unproved"

GENERAL_TYPE = "GeneralType"
NON_NEGATIVE = "NonNegativeKodaira"
FAIL = "Fail"


def _sizes(partition) -> tuple[int, ...]:
    if isinstance(partition, BlockPartition):
        return partition.sizes
    sizes = tuple(int(s) for s in partition)
    if not sizes or any(s < 1 for s in sizes):
        raise DomainError(f"block sizes must be positive, got {sizes}")
    return sizes


def block_entries(g: int, partition, choices=None) -> list[CatalogEntry]:
    """One normalized divisor per block.

    ``choices`` maps a 1-based block index to ``W``, ``T``, ``F:m`` or
    ``Ftilde:m``; it may also be a sequence with one choice per block.
    Unlisted blocks use the Weierstrass divisor.
    """
    sizes = _sizes(partition)
    if choices is None:
        choices = {}
    elif not isinstance(choices, dict):
        choices = list(choices)
        if len(choices) != len(sizes):
            raise DomainError(f"{len(choices)} choices for {len(sizes)} blocks")
        choices = {k + 1: c for k, c in enumerate(choices)}
    bad = [k for k in choices if not 1 <= k <= len(sizes)]
    if bad:
        raise DomainError(f"block indices {bad} outside 1..{len(sizes)}")
    return [parse_choice(choices.get(k + 1, "W"), g, n) for k, n in enumerate(sizes)]


@dataclass(frozen=True)
class Multipliers:
    epsilon: Fraction
    P: Fraction  # multiplier of each pulled-back L_k
    Q: Fraction  # multiplier of W_{g,n}
    eta: Fraction
    D: Fraction
    slope: SlopeEntry
    a_total: Fraction  # a(g, n), positive
    b_total: Fraction
    closed: bool

    @property
    def psi_sum(self) -> Fraction:
        return self.P + self.Q + self.eta


def multipliers(g: int, partition, entries: list[CatalogEntry]) -> Multipliers:
    sizes = _sizes(partition)
    if len(entries) != len(sizes):
        raise DomainError("one entry per block is required")
    if all(s == 1 for s in sizes):
        raise CriterionInapplicable(
            "every block is a singleton; the group is trivial and the transposition-free rule applies"
        )
    closed = all(e.name == "W" for e in entries)
    if closed and max(sizes) > g:
        raise CriterionInapplicable(f"block of size {max(sizes)} > g = {g}: b(g, n_k) < 3")
    gaps = [e.b_pair - 3 for e, s in zip(entries, sizes) if s >= 2]
    if not closed and min(gaps) <= 0:
        raise CriterionInapplicable("some block divisor has b_k <= 3, so epsilon is not positive")
    eps = min(gaps)
    n = sum(sizes)
    w = weierstrass_normalized(g, n)
    a, b = -w.a, w.b_pair
    P = 1 / (1 + eps)
    Q = 2 * eps / (b * (1 + eps))
    eta = eps / (1 + eps) * (1 - 2 / b)
    D = max(Fraction(0), 2 - P * sum(e.b_irr for e in entries))
    return Multipliers(eps, P, Q, eta, D, slope_min(g), a, b, closed)


def f_value(g: int, partition, entries: list[CatalogEntry]) -> Fraction:
    mu = multipliers(g, partition, entries)
    return mu.D * mu.slope.slope + mu.P * sum(e.a for e in entries) - mu.Q * mu.a_total


def f_closed(g: int, partition) -> Fraction:
    """f with the Weierstrass divisor on every block; the criterion is f <= 13."""
    return f_value(g, partition, block_entries(g, partition))


def f_general(g: int, partition, entries) -> Fraction:
    """f with catalog divisors; ``entries`` as for ``block_entries`` or CatalogEntry objects."""
    if entries and all(isinstance(e, CatalogEntry) for e in entries):
        entries = list(entries)
    else:
        entries = block_entries(g, partition, entries)
    sizes = _sizes(partition)
    for e, s in zip(entries, sizes):
        if s >= 2 and e.b_pair <= 3:
            raise CriterionInapplicable(f"{e.name} on {s} points has b = {e.b_pair} <= 3")
    return f_value(g, partition, entries)


@dataclass(frozen=True)
class CoordinateStatus:
    kind: str
    assumptions: tuple[str, ...] = ()

    @property
    def proved(self) -> bool:
        return self.kind != UNPROVED

    def to_json(self):
        out = {"status": self.kind}
        if self.assumptions:
            out["assumptions"] = list(self.assumptions)
        return out


def coordinate_status(c: CoefInterval) -> CoordinateStatus:
    if c.is_exact:
        return CoordinateStatus(PROVED_EXACT if c.value >= 0 else UNPROVED)
    if c.nonnegative():
        return CoordinateStatus(PROVED_BY_BOUND, tuple(sorted(c.tags)))
    return CoordinateStatus(UNPROVED, tuple(sorted(c.tags)))


@dataclass(frozen=True)
class CertificateInput:
    g: int
    sizes: tuple[int, ...]
    choices: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "sizes", _sizes(self.sizes))
        object.__setattr__(self, "choices", dict(self.choices))

    def to_json(self):
        return {
            "g": self.g,
            "blocks": list(self.sizes),
            "entries": [self.choices.get(k + 1, "W") for k in range(len(self.sizes))],
        }


@dataclass(frozen=True)
class Certificate:
    input: CertificateInput
    entries: tuple[CatalogEntry, ...]
    mult: Multipliers
    f_value: Fraction
    remainder: ProfileDivisorClass
    status: dict  # coordinate name -> CoordinateStatus
    grade: str

    @property
    def epsilon(self):
        return self.mult.epsilon

    @property
    def eta(self):
        return self.mult.eta

    @property
    def multiplier_D(self):
        return self.mult.D

    @property
    def multiplier_L(self):
        return self.mult.P

    @property
    def multiplier_W(self):
        return self.mult.Q

    def coordinates(self) -> dict:
        """Remainder coefficient per named coordinate."""
        r = self.remainder
        out = {"lambda": r.lam, "irr": r.irr}
        for k, c in enumerate(r.psi):
            out[f"psi[{k + 1}]"] = c
        for p in all_profiles(r.g, r.partition):
            out[profile_name(p)] = r.profiles.get(p, CoefInterval.exact(0))
        return out

    def assumptions_used(self) -> list[str]:
        used = set()
        for st in self.status.values():
            if st.kind == PROVED_BY_BOUND:
                used.update(st.assumptions)
        return sorted(used)

    def to_json(self) -> dict:
        coords = self.coordinates()
        remainder = []
        for name, c in coords.items():
            remainder.append({"coordinate": name, **c.to_json(), **self.status[name].to_json()})
        used = self.assumptions_used()
        return {
            "input": self.input.to_json(),
            "epsilon": format_rational(self.epsilon),
            "eta": format_rational(self.eta),
            "f": format_rational(self.f_value),
            "slope": {"value": format_rational(self.mult.slope.slope),
                      "provenance": self.mult.slope.provenance},
            "multipliers": {
                "D": format_rational(self.multiplier_D),
                "L": format_rational(self.multiplier_L),
                "W": format_rational(self.multiplier_W),
                "psi": format_rational(self.eta),
            },
            "remainder": remainder,
            "status": {
                "proved": sum(1 for s in self.status.values() if s.proved),
                "unproved": sorted(k for k, s in self.status.items() if not s.proved),
                "total": len(self.status),
            },
            "verdict": self.grade,
            "assumptions": [
                {
                    "id": a,
                    "kind": ASSUMPTIONS[a][1],
                    "text": ASSUMPTIONS[a][0],
                    "coordinates": sorted(
                        k for k, s in self.status.items()
                        if s.kind == PROVED_BY_BOUND and a in s.assumptions
                    ),
                }
                for a in used
            ],
        }


def profile_name(p) -> str:
    return f"delta[{p.i};{','.join(map(str, p.counts))}]"


def build_certificate(inp: CertificateInput, cap: int | None = None) -> Certificate:
    """Assemble the decomposition in the profile basis and grade every coordinate."""
    g, sizes = inp.g, inp.sizes
    entries = block_entries(g, sizes, inp.choices)
    if any(e.name != "W" for e in entries):
        f = f_general(g, sizes, entries)
    else:
        f = f_closed(g, sizes)
    mu = multipliers(g, sizes, entries)
    part = BlockPartition.from_sizes(sizes)
    n = part.n
    all_profiles(g, part, cap)  # enforce the size cap before any work
    kg = canonical_class_KG(g, GroupSpec.block_product(part), cap)
    total = mu.D * slope_divisor_class(g, part)
    for block, entry in zip(part.blocks, entries):
        fmap = ForgetfulMap((g, n), block)
        total = total + mu.P * pullback_aggregate(entry.profile_class(), fmap, part)
    w = weierstrass_normalized(g, n).profile_class()
    total = total + mu.Q * refine(w, part)
    total = total + constant_profile_class(g, part, psi=mu.eta)
    remainder = kg - total
    cert = Certificate(inp, tuple(entries), mu, f, remainder, {}, FAIL)
    status = {name: coordinate_status(c) for name, c in cert.coordinates().items()}
    if all(s.proved for s in status.values()):
        grade = GENERAL_TYPE if mu.eta > 0 else NON_NEGATIVE
    else:
        grade = FAIL
    return Certificate(inp, tuple(entries), mu, f, remainder, status, grade)
