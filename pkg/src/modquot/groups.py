"""Subgroups of S_n acting on marked-point labels.

Only what the classifier needs is implemented: transpositions, orbits, the
group order and brute-force enumeration of generated groups (capped).
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb, factorial, prod
from typing import Iterator

from .errors import DomainError, GroupTooLarge

DEFAULT_GROUP_CAP = 10**7

Perm = tuple[int, ...]  # perm[i - 1] is the image of label i


def group_cap() -> int:
    raw = os.environ.get("MODQUOT_GROUP_CAP")
    if raw is None:
        return DEFAULT_GROUP_CAP
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"MODQUOT_GROUP_CAP is not an integer: {raw!r}") from None


@dataclass(frozen=True)
class BlockPartition:
    """Ordered blocks S_1..S_m covering {1..n}."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(len(b) == 0 for b in blocks):
            raise DomainError("empty block")
        flat = [x for b in blocks for x in b]
        n = len(flat)
        if sorted(flat) != list(range(1, n + 1)):
            raise DomainError(f"blocks {blocks} are not a disjoint cover of 1..{n}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_sizes(cls, sizes) -> "BlockPartition":
        blocks, start = [], 1
        for s in sizes:
            if s < 1:
                raise DomainError(f"block sizes must be positive, got {tuple(sizes)}")
            blocks.append(tuple(range(start, start + s)))
            start += s
        return cls(tuple(blocks))

    @classmethod
    def single(cls, n: int) -> "BlockPartition":
        return cls((tuple(range(1, n + 1)),)) if n else cls(())

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)

    def block_of(self) -> dict[int, int]:
        return {x: k for k, b in enumerate(self.blocks) for x in b}

    def counts(self, S) -> tuple[int, ...]:
        S = set(S)
        return tuple(len(S.intersection(b)) for b in self.blocks)

    def subsets_with_counts(self, counts) -> Iterator[frozenset]:
        """All subsets S of {1..n} with |S cap S_k| = counts[k]."""
        choices = [combinations(b, c) for b, c in zip(self.blocks, counts)]
        for parts in product(*choices):
            yield frozenset(x for part in parts for x in part)

    def elements(self) -> Iterator[dict[int, int]]:
        """Every element of the product of symmetric groups on the blocks."""
        per_block = [list(permutations(b)) for b in self.blocks]
        for images in product(*per_block):
            sigma = {}
            for b, img in zip(self.blocks, images):
                sigma.update(zip(b, img))
            yield sigma

    def order(self) -> int:
        return prod(factorial(s) for s in self.sizes)


KINDS = ("trivial", "symmetric", "alternating", "product", "generated")


@dataclass(frozen=True)
class GroupSpec:
    n: int
    kind: str
    partition: BlockPartition | None = None
    generators: tuple[Perm, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown group kind {self.kind!r}")
        if self.n < 0:
            raise DomainError("n must be >= 0")
        if self.kind == "product":
            if self.partition is None or self.partition.n != self.n:
                raise DomainError("block product needs a partition of n")
        for p in self.generators:
            if sorted(p) != list(range(1, self.n + 1)):
                raise DomainError(f"{p} is not a permutation of 1..{self.n}")

    @classmethod
    def trivial(cls, n):
        return cls(n, "trivial")

    @classmethod
    def symmetric(cls, n):
        return cls(n, "symmetric")

    @classmethod
    def alternating(cls, n):
        return cls(n, "alternating")

    @classmethod
    def block_product(cls, sizes_or_partition):
        part = sizes_or_partition
        if not isinstance(part, BlockPartition):
            part = BlockPartition.from_sizes(part)
        return cls(part.n, "product", partition=part)

    @classmethod
    def generated(cls, n, generators):
        return cls(n, "generated", generators=tuple(tuple(p) for p in generators))

    def __str__(self):
        if self.kind == "trivial":
            return "trivial"
        if self.kind == "symmetric":
            return f"S{self.n}"
        if self.kind == "alternating":
            return f"A{self.n}"
        if self.kind == "product":
            return "prod:" + ",".join(map(str, self.partition.sizes))
        return "gen:" + ";".join(format_cycles(p) for p in self.generators)

    def order(self, cap: int | None = None) -> int:
        if self.kind == "trivial":
            return 1
        if self.kind == "symmetric":
            return factorial(self.n)
        if self.kind == "alternating":
            return max(factorial(self.n) // 2, 1)
        if self.kind == "product":
            return self.partition.order()
        return sum(1 for _ in self.elements(cap))

    def elements(self, cap: int | None = None) -> Iterator[Perm]:
        """Breadth-first closure of the generators; raises GroupTooLarge past the cap."""
        if self.kind != "generated":
            raise DomainError("explicit enumeration is only needed for generated groups")
        cap = group_cap() if cap is None else cap
        identity = tuple(range(1, self.n + 1))
        seen = {identity}
        queue = deque([identity])
        yield identity
        while queue:
            p = queue.popleft()
            for s in self.generators:
                q = compose(s, p)
                if q not in seen:
                    seen.add(q)
                    if len(seen) > cap:
                        raise GroupTooLarge(f"group exceeds {cap} elements")
                    queue.append(q)
                    yield q


def compose(s: Perm, p: Perm) -> Perm:
    """s after p."""
    return tuple(s[x - 1] for x in p)


def format_cycles(p: Perm) -> str:
    seen, out = set(), []
    for start in range(1, len(p) + 1):
        if start in seen or p[start - 1] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = p[x - 1]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Perm:
    text = text.strip()
    if _CYCLE.sub("", text).strip():
        raise DomainError(f"malformed cycle notation: {text!r}")
    img = list(range(1, n + 1))
    used = set()
    for body in _CYCLE.findall(text):
        try:
            cyc = [int(t) for t in body.split()]
        except ValueError:
            raise DomainError(f"malformed cycle ({body})") from None
        if any(not 1 <= x <= n for x in cyc):
            raise DomainError(f"cycle ({body}) has labels outside 1..{n}")
        if len(set(cyc)) != len(cyc) or used.intersection(cyc):
            raise DomainError(f"cycles in {text!r} are not disjoint")
        used.update(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
    return tuple(img)


def parse_group(text: str, n: int) -> GroupSpec:
    """Parse ``Sn | An | S<k> | A<k> | trivial | prod:n1,n2,... | gen:(a b)(c d);(...)``."""
    t = text.strip()
    if t == "trivial":
        return GroupSpec.trivial(n)
    m = re.fullmatch(r"([SA])(n|\d+)", t)
    if m:
        if m.group(2) != "n" and int(m.group(2)) != n:
            raise DomainError(f"group {t} does not act on {n} points")
        return GroupSpec.symmetric(n) if m.group(1) == "S" else GroupSpec.alternating(n)
    if t.startswith("prod:"):
        try:
            sizes = [int(x) for x in t[5:].split(",")]
        except ValueError:
            raise DomainError(f"malformed block sizes in {t!r}") from None
        if sum(sizes) != n:
            raise DomainError(f"block sizes {sizes} do not sum to {n}")
        return GroupSpec.block_product(sizes)
    if t.startswith("gen:"):
        gens = [g for g in t[4:].split(";") if g.strip()]
        if not gens:
            raise DomainError("gen: needs at least one generator")
        return GroupSpec.generated(n, [parse_cycles(g, n) for g in gens])
    raise DomainError(f"cannot parse group {text!r}")


def transpositions(group: GroupSpec, cap: int | None = None) -> set[frozenset]:
    """The set of transpositions {i, j} contained in the group."""
    n = group.n
    if group.kind in ("trivial", "alternating"):
        return set()
    if group.kind == "symmetric":
        return {frozenset(p) for p in combinations(range(1, n + 1), 2)}
    if group.kind == "product":
        return {
            frozenset(p) for b in group.partition.blocks for p in combinations(b, 2)
        }
    out = set()
    for p in group.elements(cap):
        moved = [i for i in range(1, n + 1) if p[i - 1] != i]
        if len(moved) == 2:
            out.add(frozenset(moved))
    return out


def orbit_partition(group: GroupSpec) -> BlockPartition:
    """Orbits of the group on {1..n}, ordered by smallest label."""
    n = group.n
    if group.kind == "product":
        return group.partition
    if group.kind == "symmetric" or (group.kind == "alternating" and n >= 3):
        return BlockPartition.single(n)
    if group.kind != "generated":
        return BlockPartition(tuple((i,) for i in range(1, n + 1)))
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in group.generators:
        for i in range(1, n + 1):
            a, b = find(i), find(p[i - 1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        orbits.setdefault(find(i), []).append(i)
    return BlockPartition(tuple(tuple(v) for _, v in sorted(orbits.items())))


def equals_orbit_product(group: GroupSpec, cap: int | None = None) -> bool:
    """Whether the group is the full product of symmetric groups on its orbits."""
    if group.kind in ("product", "symmetric"):
        return True
    part = orbit_partition(group)
    target = part.order()
    if group.kind != "generated":
        return group.order() == target
    count = 0
    for _ in group.elements(cap):
        count += 1
        if count > target:
            return False
    return count == target


def transposition_count_formula(sizes) -> int:
    return sum(comb(s, 2) for s in sizes)
