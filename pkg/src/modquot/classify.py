"""Kodaira-type verdicts for quotients M_{g,n}/G."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .certify import (
    GENERAL_TYPE,
    NON_NEGATIVE,
    Certificate,
    CertificateInput,
    build_certificate,
    f_closed,
    f_general,
)
from .errors import CriterionInapplicable, DomainError, SizeCapExceeded, Unsupported
from .groups import GroupSpec, equals_orbit_product, orbit_partition, transpositions
from .tables import THRESHOLD, general_choices, table

CLASSES = ("GeneralType", "NonNegativeKodaira", "IntermediateKodaira", "Uniruled",
           "Unirational", "Unknown")

MAX_CHOICE_COMBINATIONS = 729


@dataclass
class Verdict:
    classification: str
    justification: list[str] = field(default_factory=list)
    value: int | None = None  # Kodaira dimension for IntermediateKodaira
    certificate: Certificate | None = None
    notes: list[str] = field(default_factory=list)

    def __str__(self):
        if self.classification == "IntermediateKodaira":
            return f"IntermediateKodaira({self.value})"
        return self.classification

    def to_json(self) -> dict:
        out = {
            "classification": self.classification,
            "justification": list(self.justification),
        }
        if self.value is not None:
            out["kodaira_dimension"] = self.value
        if self.notes:
            out["notes"] = list(self.notes)
        if self.certificate is not None:
            c = self.certificate
            out["certificate"] = {
                "input": c.input.to_json(),
                "f": str(c.f_value),
                "epsilon": str(c.epsilon),
                "eta": str(c.eta),
                "grade": c.grade,
                "assumptions": c.assumptions_used(),
            }
        return out


def classify(g: int, n: int, group: GroupSpec) -> Verdict:
    """Apply the classification rules in priority order; the first decisive one wins."""
    if g < 2 or n < 0:
        raise DomainError(f"need g >= 2 and n >= 0, got g={g}, n={n}")
    if group.n != n:
        raise DomainError(f"group acts on {group.n} points, space has {n}")
    trail: list[str] = []
    notes: list[str] = []

    verdict = _transposition_free(g, n, group, trail)
    if verdict:
        return verdict

    kind, sizes = _normalize(group, trail)
    if kind == "symmetric":
        return _symmetric(g, n, trail, notes)
    if kind == "product":
        return _block_product(g, sizes, trail, notes)

    # a proper subgroup of the product over its orbits
    part = orbit_partition(group)
    trail.append(f"G is a proper subgroup of the product over its orbits {list(part.sizes)}")
    parent = (_symmetric(g, n, [], notes) if part.m == 1
              else _block_product(g, part.sizes, [], notes))
    if parent.classification == "GeneralType":
        trail.append("subgroup lemma: a quotient by a subgroup of a general-type quotient is of general type")
        trail.extend("  " + step for step in parent.justification)
        return Verdict("GeneralType", trail, certificate=parent.certificate, notes=notes)
    sym = _symmetric(g, n, [], [])
    if sym.classification == "GeneralType":
        trail.append("subgroup lemma applied to G inside S_n")
        trail.extend("  " + step for step in sym.justification)
        return Verdict("GeneralType", trail, notes=notes)
    trail.append(f"orbit product gives {parent}; no rule decides a proper subgroup")
    return Verdict("Unknown", trail, notes=notes)


def _transposition_free(g, n, group, trail):
    if group.kind == "alternating" or group.kind == "trivial":
        has = False
    else:
        has = bool(transpositions(group))
    if has:
        trail.append("G contains transpositions")
        return None
    trail.append("G contains no transposition: M_{g,n}/G is of general type whenever M_{g,n} is")
    if group.kind == "alternating" and n >= 2:
        trail.append("(conjecture for all subgroups of A_n is reported only, not used)")
    if g >= 23:
        trail.append(f"M_{{g,n}} is of general type for g = {g} >= 23")
        return Verdict("GeneralType", trail)
    if 4 <= g <= 22:
        n_min = table("table1")[g]
        if n >= n_min:
            trail.append(f"Table 1: M_{{{g},n}} is of general type for n >= {n_min}")
            return Verdict("GeneralType", trail)
        trail.append(f"Table 1: n = {n} < n_min({g}) = {n_min}")
    else:
        trail.append(f"no general-type statement for M_{{{g},n}} with g = {g}")
    if group.kind in ("trivial", "alternating") or n <= 1:
        return Verdict("Unknown", trail)
    return None


def _normalize(group, trail):
    """Recognize products of symmetric groups; returns (kind, block sizes)."""
    if group.kind == "symmetric":
        return "symmetric", (group.n,)
    if group.kind == "product":
        sizes = group.partition.sizes
        nontrivial = [s for s in sizes if s > 1]
        if len(nontrivial) == 1 and len(sizes) == 1:
            return "symmetric", sizes
        return "product", sizes
    if group.kind == "generated":
        part = orbit_partition(group)
        if equals_orbit_product(group):
            trail.append(f"G equals the product of symmetric groups on its orbits {list(part.sizes)}")
            if part.m == 1:
                return "symmetric", part.sizes
            return "product", part.sizes
    return "generated", None


def _symmetric(g, n, trail, notes) -> Verdict:
    if n > g:
        trail.append(f"G = S_{n} with n > g: the fibres Sym^n(C) are covered by pencils (uniruled)")
        return Verdict("Uniruled", trail, notes=notes)
    if g in (10, 11) and n != g:
        trail.append(f"G = S_{n}, g in {{10, 11}}, n != g: uniruled")
        return Verdict("Uniruled", trail, notes=notes)
    if g < 10:
        trail.append(f"G = S_{n}, g < 10 and n <= g: unirational")
        return Verdict("Unirational", trail, notes=notes)
    if g >= 12 and n == g:
        trail.append(f"G = S_{g}, n = g >= 12: Kodaira dimension 3g - 3 = {3 * g - 3}")
        return Verdict("IntermediateKodaira", trail, value=3 * g - 3, notes=notes)
    if g >= 24 and n < g:
        trail.append(f"G = S_{n}, g >= 24, n < g: general type")
        return Verdict("GeneralType", trail, notes=notes)
    t2 = table("table2")
    if g in t2:
        if t2[g] <= n <= g - 1:
            trail.append(f"Table 2: M_{{{g},n}}/S_n is of general type for {t2[g]} <= n <= {g - 1}")
            if g == 12:
                trail.append("note: the stated genus range starts at 13 but the table lists g = 12; the row is used")
            return Verdict("GeneralType", trail, notes=notes)
        trail.append(f"Table 2: n = {n} < n_min({g}) = {t2[g]}")
    else:
        trail.append(f"no rule for S_n quotients at g = {g}, n = {n}")
    return Verdict("Unknown", trail, notes=notes)


def _catalog_combinations(g, sizes):
    per_block = [["W"] + general_choices(g, s) if s >= 2 else ["W"] for s in sizes]
    total = 1
    for c in per_block:
        total *= len(c)
    if total > MAX_CHOICE_COMBINATIONS:
        width = max(len(c) for c in per_block)
        return [[c[min(j, len(c) - 1)] for c in per_block] for j in range(width)]
    return [list(c) for c in product(*per_block)]


def _block_product(g, sizes, trail, notes) -> Verdict:
    sizes = tuple(sizes)
    n = sum(sizes)
    trail.append(f"G = product of symmetric groups on blocks of sizes {list(sizes)}")
    if max(sizes) > g:
        trail.append(f"a block has {max(sizes)} > g points: uniruled (a product with a uniruled factor)")
        return Verdict("Uniruled", trail, notes=notes)
    if g >= 24 and max(sizes) <= g - 1:
        trail.append("g >= 24 and every block has at most g - 1 points: general type (large-genus block-product rule)")
        return Verdict("GeneralType", trail, notes=notes)
    if g < 4:
        trail.append(f"no slope divisor for g = {g}")
        return Verdict("Unknown", trail, notes=notes)

    best_nonneg = None
    candidates = []
    for combo in _catalog_combinations(g, sizes):
        try:
            f = f_closed(g, sizes) if all(c == "W" for c in combo) else f_general(g, sizes, combo)
        except (CriterionInapplicable, Unsupported):
            continue
        if f <= THRESHOLD:
            candidates.append((f, combo))
    candidates.sort(key=lambda t: (t[0], t[1]))
    for f, combo in candidates:
        choices = {k + 1: c for k, c in enumerate(combo) if c != "W"}
        label = "Weierstrass on every block" if not choices else f"block divisors {combo}"
        try:
            cert = build_certificate(CertificateInput(g, sizes, choices))
        except SizeCapExceeded:
            notes.append(f"certificate for {label} skipped: profile basis over the size cap; f = {f} only")
            continue
        if cert.grade == GENERAL_TYPE:
            trail.append(f"certificate with {label}: f = {f} <= 13, eta = {cert.eta} > 0, all coordinates proved")
            declared = [a for a in cert.assumptions_used() if a in ("W-genus", "slope-tail", "sporadic-tail")]
            if declared:
                trail.append(f"declared assumptions used: {', '.join(declared)}")
            return Verdict("GeneralType", trail, certificate=cert, notes=notes)
        if cert.grade == NON_NEGATIVE and best_nonneg is None:
            best_nonneg = (label, f, cert)

    sym = _symmetric(g, n, [], [])
    if sym.classification == "GeneralType":
        trail.append("subgroup lemma: G lies in S_n and M_{g,n}/S_n is of general type")
        trail.extend("  " + step for step in sym.justification)
        return Verdict("GeneralType", trail, notes=notes)
    if best_nonneg is not None:
        label, f, cert = best_nonneg
        trail.append(f"certificate with {label}: f = {f} <= 13 but eta = 0: non-negative Kodaira dimension")
        return Verdict("NonNegativeKodaira", trail, certificate=cert, notes=notes)
    trail.append("no certificate reaches f <= 13")
    return Verdict("Unknown", trail, notes=notes)
