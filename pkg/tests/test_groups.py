"""Permutation groups on marked points."""

import random
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from modquot.errors import DomainError, GroupTooLarge
from modquot.groups import (
    BlockPartition,
    GroupSpec,
    compose,
    equals_orbit_product,
    format_cycles,
    orbit_partition,
    parse_cycles,
    parse_group,
    transposition_count_formula,
    transpositions,
)


class TestParsing:
    def test_cycles(self):
        assert parse_cycles("(1 2)(3 4)", 5) == (2, 1, 4, 3, 5)
        assert parse_cycles("(1 3 5)", 5) == (3, 2, 5, 4, 1)
        assert format_cycles((3, 2, 5, 4, 1)) == "(1 3 5)"
        assert format_cycles((1, 2)) == "()"

    @pytest.mark.parametrize("bad", ["(1 2", "(1 1)", "(1 2)(2 3)", "(1 9)", "(a b)", "1 2"])
    def test_bad_cycles(self, bad):
        with pytest.raises(DomainError):
            parse_cycles(bad, 4)

    def test_group_specs(self):
        assert parse_group("S5", 5).kind == "symmetric"
        assert parse_group("Sn", 7).kind == "symmetric"
        assert parse_group("A40", 40).order() == factorial(40) // 2
        assert parse_group("prod:2,3", 5).partition.sizes == (2, 3)
        assert str(parse_group("gen:(1 2)(3 4)", 4)) == "gen:(1 2)(3 4)"

    @pytest.mark.parametrize("text,n", [("S4", 5), ("prod:2,2", 5), ("gen:", 3), ("foo", 3), ("prod:a", 2)])
    def test_bad_groups(self, text, n):
        with pytest.raises(DomainError):
            parse_group(text, n)


class TestPartition:
    def test_cover_required(self):
        with pytest.raises(DomainError):
            BlockPartition(((1, 2), (2, 3)))
        with pytest.raises(DomainError):
            BlockPartition.from_sizes([2, 0])

    def test_subsets_with_counts(self):
        p = BlockPartition.from_sizes([2, 3])
        subsets = list(p.subsets_with_counts((1, 2)))
        assert len(subsets) == 2 * 3
        assert all(p.counts(S) == (1, 2) for S in subsets)

    def test_elements_are_the_product(self):
        p = BlockPartition.from_sizes([2, 2])
        els = [tuple(sorted(s.items())) for s in p.elements()]
        assert len(set(els)) == p.order() == 4


class TestGeneratedGroups:
    def test_closure_matches_product(self):
        g = GroupSpec.generated(4, [parse_cycles("(1 2)", 4), parse_cycles("(3 4)", 4)])
        assert g.order() == 4
        assert equals_orbit_product(g)
        assert orbit_partition(g).blocks == ((1, 2), (3, 4))

    def test_double_transposition_has_no_transposition(self):
        g = parse_group("gen:(1 2)(3 4)", 4)
        assert transpositions(g) == set()
        assert not equals_orbit_product(g)

    def test_s4_from_two_generators(self):
        g = parse_group("gen:(1 2);(1 2 3 4)", 4)
        assert g.order() == 24
        assert len(transpositions(g)) == 6

    def test_cap(self):
        g = parse_group("gen:(1 2);(1 2 3 4 5 6 7 8)", 8)
        with pytest.raises(GroupTooLarge):
            g.order(cap=100)

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("MODQUOT_GROUP_CAP", "10")
        with pytest.raises(GroupTooLarge):
            parse_group("gen:(1 2 3 4 5)(6 7);(1 2)", 7).order()
        monkeypatch.setenv("MODQUOT_GROUP_CAP", "ten")
        with pytest.raises(DomainError):
            parse_group("gen:(1 2)", 2).order()

    def test_closure_is_closed(self):
        g = parse_group("gen:(1 2 3);(2 3 4)", 4)
        els = set(g.elements())
        assert len(els) == 12  # A4
        assert all(compose(a, b) in els for a in els for b in els)


class TestTranspositionCounts:
    def test_fifty_random_block_products(self):
        rng = random.Random(7)
        for _ in range(50):
            sizes = [rng.randint(1, 4) for _ in range(rng.randint(1, 3))]
            group = GroupSpec.block_product(sizes)
            # count elements moving exactly two points
            brute = sum(
                1 for sigma in group.partition.elements()
                if sum(a != b for a, b in sigma.items()) == 2
            )
            assert len(transpositions(group)) == transposition_count_formula(sizes) == brute

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    def test_generated_product_matches_formula(self, sizes):
        part = BlockPartition.from_sizes(sizes)
        gens = []
        n = part.n
        for b in part.blocks:
            for a, c in zip(b, b[1:]):
                img = list(range(1, n + 1))
                img[a - 1], img[c - 1] = c, a
                gens.append(tuple(img))
        group = GroupSpec.generated(n, gens or [tuple(range(1, n + 1))])
        assert len(transpositions(group)) == transposition_count_formula(sizes)
        assert equals_orbit_product(group)

    def test_symmetric_matches_brute_force(self):
        perms = list(permutations(range(1, 5)))
        brute = sum(1 for p in perms if sum(p[i] != i + 1 for i in range(4)) == 2)
        assert len(transpositions(GroupSpec.symmetric(4))) == brute
        assert transpositions(GroupSpec.alternating(4)) == set()
