"""Profile basis, symmetrization and pullbacks against subset-level oracles."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from modquot.errors import DomainError, SizeCapExceeded
from modquot.groups import BlockPartition, GroupSpec, parse_group
from modquot.interval import CoefInterval
from modquot.oracles import profile_basis, pullback_equivalence
from modquot.picard import FullDivisorClass, SpaceId, boundary_indices, canonical_class
from modquot.profile import (
    Profile,
    ProfileDivisorClass,
    all_profiles,
    canonical_class_KG,
    canonical_profile,
    expand,
    orbit_size,
    profile_of,
    ramification_class,
    ramification_full,
    refine,
    symmetrize,
)
from modquot.pullback import (
    ForgetfulMap,
    omega_base_change,
    psi_to_omega,
    pullback_aggregate,
    pullback_onepoint_oracle,
    pullback_oracle,
)


class TestProfiles:
    def test_canonical_profile(self):
        assert canonical_profile(5, (2, 2), 3, (1, 0)) == Profile(2, (1, 2))
        assert canonical_profile(4, (2, 2), 2, (0, 1)) == Profile(2, (2, 1))
        assert canonical_profile(4, (2, 2), 0, (1, 0)).__class__.__name__ == "_ZeroClass"

    @pytest.mark.parametrize("g,sizes", [(2, (2,)), (3, (2, 1)), (4, (2, 2)), (4, (1, 1, 2)), (5, (3,))])
    def test_orbit_sizes_partition_the_basis(self, g, sizes):
        part = BlockPartition.from_sizes(sizes)
        total = sum(orbit_size(g, part, p) for p in all_profiles(g, part))
        assert total == len(boundary_indices(g, part.n))

    @pytest.mark.parametrize("g,sizes", [(3, (2, 2)), (4, (3, 1)), (4, (2, 2))])
    def test_profile_of_every_key(self, g, sizes):
        part = BlockPartition.from_sizes(sizes)
        counts = {}
        for key in boundary_indices(g, part.n):
            p = profile_of(g, part, key.i, key.S)
            counts[p] = counts.get(p, 0) + 1
        assert counts == {p: orbit_size(g, part, p) for p in all_profiles(g, part)}

    def test_cap(self):
        with pytest.raises(SizeCapExceeded):
            all_profiles(30, BlockPartition.from_sizes([30, 30, 30]), cap=1000)

    def test_json_round_trip(self):
        part = BlockPartition.from_sizes([2, 1])
        x = ProfileDivisorClass(SpaceId(3, 3), part, lam=1, psi=(2, 0),
                                profiles={Profile(1, (1, 0)): CoefInterval.at_most(-1, "slope-tail")})
        assert ProfileDivisorClass.from_json(x.to_json()) == x
        with pytest.raises(DomainError):
            ProfileDivisorClass.from_json({"g": 3})


class TestSymmetrize:
    @pytest.mark.parametrize("g,sizes", [(3, (2, 1)), (4, (2, 2)), (2, (3,))])
    def test_matches_explicit_group_average(self, g, sizes):
        part = BlockPartition.from_sizes(sizes)
        space = SpaceId(g, part.n)
        keys = boundary_indices(g, part.n)
        x = FullDivisorClass(space, lam=2, psi={1: 3}, irr=-1,
                             boundary={k: Fraction(i + 1, 3) for i, k in enumerate(keys)})
        elements = list(part.elements())
        avg = None
        for sigma in elements:
            y = x.permute(sigma)
            avg = y if avg is None else avg + y
        avg = Fraction(1, len(elements)) * avg
        assert expand(symmetrize(x, part)) == avg

    def test_expand_symmetrize_fixed(self):
        part = BlockPartition.from_sizes([2, 2])
        y = ProfileDivisorClass(SpaceId(4, 4), part, lam=1, psi=(1, 2),
                                profiles={p: k for k, p in enumerate(all_profiles(4, part))})
        assert symmetrize(expand(y), part) == y

    def test_refine(self):
        part = BlockPartition.single(4)
        y = ProfileDivisorClass(SpaceId(3, 4), part, psi=(1,),
                                profiles={p: p.counts[0] + 10 * p.i for p in all_profiles(3, part)})
        fine = BlockPartition.from_sizes([1, 3])
        assert expand(refine(y, fine)) == expand(y)
        with pytest.raises(DomainError):
            refine(refine(y, fine), BlockPartition.from_sizes([2, 2]))


class TestCanonicalClass:
    @pytest.mark.parametrize("sizes", [(2, 2), (3, 1), (1, 1, 2)])
    def test_KG_matches_subset_basis(self, sizes):
        group = GroupSpec.block_product(sizes)
        g = 3
        kg = canonical_class_KG(g, group)
        brute = canonical_class(SpaceId(g, group.n)) - ramification_full(g, group)
        assert expand(kg) == brute

    def test_partial_transpositions_rejected(self):
        group = parse_group("gen:(1 2);(1 2)(3 4)", 4)  # contains (1 2) and (3 4)
        assert ramification_class(3, group).partition.sizes == (2, 2)
        group = parse_group("gen:(1 2 3 4);(1 3)", 4)  # dihedral of order 8
        with pytest.raises(DomainError):
            ramification_class(3, group)


class TestPullback:
    def test_onepoint_rule(self):
        x = FullDivisorClass(SpaceId(3, 2), psi={1: 1}, boundary={(1, (1,)): 1})
        y = pullback_onepoint_oracle(x)
        assert y.coefficient(0, {1, 3}) == -1
        assert y.coefficient(1, {1}) == 1 and y.coefficient(1, {1, 3}) == 1

    def test_from_mg_half_genus(self):
        x = FullDivisorClass(SpaceId(4, 0), boundary={(2, ()): 1})
        y = pullback_onepoint_oracle(x)
        assert y == FullDivisorClass(SpaceId(4, 1), boundary={(2, (1,)): 1})

    def test_forgetful_map_checks(self):
        with pytest.raises(DomainError):
            ForgetfulMap((3, 3), ())
        with pytest.raises(DomainError):
            ForgetfulMap((3, 3), (4,))
        assert ForgetfulMap((3, 4), (3, 1)).forgotten == (2, 4)

    def test_aggregate_requires_block(self):
        part = BlockPartition.from_sizes([2, 2])
        x = profile_basis(3, 2)[1]
        with pytest.raises(DomainError):
            pullback_aggregate(x, ForgetfulMap((3, 4), (1, 3)), part)

    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_aggregate_equals_oracle(self, g, n):
        assert pullback_equivalence(g, n) == []

    def test_composition(self):
        # forgetting two points at once equals forgetting them one at a time
        x = FullDivisorClass(SpaceId(3, 2), lam=1, psi={1: 2, 2: -1}, boundary={(1, (2,)): 3})
        direct = pullback_oracle(x, ForgetfulMap((3, 4), (1, 2)))
        stepwise = pullback_onepoint_oracle(pullback_onepoint_oracle(x, 3), 4)
        assert direct == stepwise


class TestOmega:
    @settings(max_examples=25, deadline=None)
    @given(st.dictionaries(st.integers(1, 4), st.fractions(max_denominator=9), max_size=4))
    def test_round_trip(self, psi):
        x = FullDivisorClass(SpaceId(3, 4), lam=1, psi=psi, boundary={(1, (1, 2)): 2})
        assert psi_to_omega(omega_base_change(x)) == x

    def test_omega_definition(self):
        x = FullDivisorClass(SpaceId(2, 3), psi={1: 1})
        y = omega_base_change(x)
        for size in (1, 2):
            for rest in combinations((2, 3), size):
                assert y.coefficient(0, (1, *rest)) == -1
        assert y.coefficient(0, (2, 3)) == 0
