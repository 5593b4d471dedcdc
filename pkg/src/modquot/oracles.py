"""Brute-force cross-checks.  Exponential in n; meant for n <= 7."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from .catalog import weierstrass_normalized, weierstrass_params
from .certify import Certificate
from .errors import DomainError
from .groups import BlockPartition, GroupSpec
from .picard import FullDivisorClass, SpaceId, boundary_indices, canonical_class
from .profile import ProfileDivisorClass, all_profiles, expand, ramification_full
from .pullback import ForgetfulMap, pullback_aggregate, pullback_onepoint_oracle, pullback_oracle


def weierstrass_sums_bruteforce(g: int, n: int, m: int) -> tuple[int, Fraction, Fraction]:
    """(w_lambda, w_psi, w_2) by summing over every choice of heavy set H and light set L.

    Each choice contributes -lambda, omega_a for a kept label a, and on
    delta_{0,{1,2}} minus the omega coefficients of the kept points among 1, 2
    and minus the product of weights when both are kept.
    """
    p = weierstrass_params(g, m)
    k, r = p.k, p.r
    heavy_w, light_w = k + 1, k
    w_lam = 0
    w_psi = Fraction(0)
    w_2 = Fraction(0)
    labels = range(1, n + 1)
    for H in combinations(labels, r):
        rest = [x for x in labels if x not in H]
        for L in combinations(rest, m - r):
            weight = {**{x: heavy_w for x in H}, **{x: light_w for x in L}}
            omega = {x: Fraction(a * (a + 1), 2) for x, a in weight.items()}
            w_lam += 1
            w_psi += omega.get(1, 0)
            w_2 += omega.get(1, 0) + omega.get(2, 0)
            if 1 in weight and 2 in weight:
                w_2 += weight[1] * weight[2]
    return w_lam, w_psi, w_2


def profile_basis(g: int, n: int) -> list[ProfileDivisorClass]:
    """lambda, psi, delta_irr and one indicator per profile, on one block."""
    part = BlockPartition.single(n)
    space = SpaceId(g, n)
    out = [
        ProfileDivisorClass(space, part, lam=1),
        ProfileDivisorClass(space, part, psi=(1,) if n else ()),
        ProfileDivisorClass(space, part, irr=1),
    ]
    out += [ProfileDivisorClass(space, part, profiles={p: 1}) for p in all_profiles(g, part)]
    return out


def pullback_equivalence(g: int, n: int) -> list[str]:
    """Compare aggregate and iterated pullbacks for every kept set and basis class.

    Returns descriptions of the mismatches (empty when all agree).
    """
    bad = []
    for size in range(1, n + 1):
        for kept in combinations(range(1, n + 1), size):
            rest = tuple(x for x in range(1, n + 1) if x not in kept)
            part = BlockPartition((kept, rest) if rest else (kept,))
            fmap = ForgetfulMap((g, n), kept)
            for x in profile_basis(g, size):
                agg = expand(pullback_aggregate(x, fmap, part))
                ora = pullback_oracle(expand(x), fmap)
                if agg != ora:
                    bad.append(f"g={g} n={n} kept={kept} class={x.to_json()}")
    return bad


@dataclass
class SampleReport:
    trials: int
    negative: int
    worst: Fraction
    worst_coordinate: str


def _entry_parts(entry, g):
    """Exact part and untracked (key, hi) pairs of a catalog entry on its own space."""
    n = entry.n
    space = SpaceId(g, n)
    pairs, untracked = {}, []
    for key in boundary_indices(g, n):
        if key.i == 0 and len(key.S) == 2:
            pairs[key] = -entry.b_pair
        elif key.i == 0:
            untracked.append((key, entry.zero_tail.bound(len(key.S)).hi))
        else:
            untracked.append((key, entry.genus_tail.bound().hi))
    exact = FullDivisorClass(space, lam=entry.a, psi={i: 1 for i in space.labels},
                             irr=-entry.b_irr, boundary=pairs)
    return exact, untracked


def _pull(x: FullDivisorClass, source: SpaceId, kept) -> FullDivisorClass:
    """Pull back to ``source`` keeping ``kept``; from M_g every label is forgotten."""
    if x.space == source:
        return x
    if not kept:
        for label in range(1, source.n + 1):
            x = pullback_onepoint_oracle(x, label)
        return x
    return pullback_oracle(x, ForgetfulMap(source, kept))


def sample_remainders(cert: Certificate, trials: int = 1000, seed: int = 0,
                      spread: int = 3) -> SampleReport:
    """Expand the certificate's decomposition with random untracked coefficients.

    Every untracked coefficient of every ingredient, before pullback, is drawn
    independently from [hi - spread, hi] in steps of 1/12.  The remainder
    K_G - sum is then checked coordinate by coordinate in the subset basis.
    """
    g, sizes = cert.input.g, cert.input.sizes
    n = sum(sizes)
    if n > 7:
        raise DomainError("sampling expands the full basis; n <= 7 only")
    part = BlockPartition.from_sizes(sizes)
    mu = cert.mult
    space = SpaceId(g, n)
    fixed = canonical_class(space) - ramification_full(g, GroupSpec.block_product(part))
    fixed = fixed - FullDivisorClass(space, psi={i: mu.eta for i in space.labels})
    terms = []  # (multiplier, upper bound, pulled-back basis class)

    def add(mult, exact, untracked, kept):
        nonlocal fixed
        fixed = fixed - mult * _pull(exact, space, kept)
        for key, hi in untracked:
            basis = FullDivisorClass(exact.space, boundary={key: 1})
            terms.append((mult, hi, _pull(basis, space, kept)))

    mg = SpaceId(g, 0)
    add(mu.D, FullDivisorClass(mg, lam=mu.slope.slope, irr=-1),
        [(key, Fraction(-1)) for key in boundary_indices(g, 0)], ())
    for block, entry in zip(part.blocks, cert.entries):
        add(mu.P, *_entry_parts(entry, g), block)
    add(mu.Q, *_entry_parts(weierstrass_normalized(g, n), g), space.labels)

    # value = base + sum_t (mult_t * c / 12) * j_t with j_t uniform in 0..12*spread;
    # everything is scaled to one common denominator so the trials use ints
    keys = boundary_indices(g, n)
    index = {k: i for i, k in enumerate(keys)}
    base = [fixed.boundary.get(k, Fraction(0)) for k in keys]
    steps = []
    for mult, hi, image in terms:
        vec = {}
        for key, c in image.boundary.items():
            base[index[key]] -= mult * hi * c
            vec[index[key]] = mult * c / 12
        steps.append(vec)
    scale = lcm(*(q.denominator for q in base), *(q.denominator for v in steps for q in v.values()))
    base_int = [int(q * scale) for q in base]
    steps_int = [[(i, int(q * scale)) for i, q in v.items()] for v in steps]
    names = [f"delta{k.i}{list(k.S)}" for k in keys]
    exact = {"lambda": fixed.lam, "irr": fixed.irr}
    exact.update({f"psi_{i}": fixed.psi_coefficient(i) for i in space.labels})
    exact_name = min(exact, key=exact.get)

    rng = random.Random(seed)
    worst, worst_at, negative = exact[exact_name], exact_name, 0
    for _ in range(trials):
        vals = list(base_int)
        for vec in steps_int:
            j = rng.randint(0, spread * 12)
            if j:
                for i, w in vec:
                    vals[i] += w * j
        low = min(range(len(vals)), key=vals.__getitem__) if vals else None
        trial_min = exact[exact_name]
        at = exact_name
        if low is not None and Fraction(vals[low], scale) < trial_min:
            trial_min, at = Fraction(vals[low], scale), names[low]
        if trial_min < 0:
            negative += 1
        if trial_min < worst:
            worst, worst_at = trial_min, at
    return SampleReport(trials, negative, worst, worst_at)
