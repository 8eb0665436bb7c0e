import random
from itertools import product

import pytest

from trapspaces.errors import CapExceededError, TrapSpacesError
from trapspaces.space import (
    Subspace,
    image_state,
    image_subspace,
    is_trap_space,
    referenced_states,
    smallest_enclosing_subspace,
    subspace_leq,
    subspace_lt,
)

S = Subspace.from_str


class TestSubspaceBasics:
    def test_text_round_trip(self):
        for text in ("1-01", "----", "0000", "1111", "-0-1"):
            assert str(S(text)) == text

    def test_canonical_form_rejects_value_on_free_bit(self):
        with pytest.raises(ValueError):
            Subspace(4, 0b1000, 0b1100)

    def test_bits_outside_vocabulary_rejected(self):
        with pytest.raises(ValueError):
            Subspace(2, 0b100, 0)

    def test_bad_character(self):
        with pytest.raises(ValueError):
            S("1-x1")

    def test_from_items_matches_from_str(self):
        assert Subspace.from_items(4, [(0, 1), (2, 0), (3, 1)]) == S("1-01")

    def test_fixed_and_free_vars(self):
        p = S("1-01")
        assert p.fixed_vars() == [0, 2, 3]
        assert p.free_vars() == [1]
        assert p.num_fixed == 3
        assert p.items() == [(0, 1), (2, 0), (3, 1)]

    def test_state_properties(self):
        x = S("1101")
        assert x.is_state and x.state_int == 0b1101
        assert not S("1-01").is_state
        with pytest.raises(TrapSpacesError):
            S("1-01").state_int

    def test_intersection(self):
        assert S("1--0").intersect(S("-0-0")) == S("10-0")
        assert S("1---").intersect(S("0---")) is None


class TestPartialOrder:
    def test_examples(self):
        assert subspace_leq(S("1-01"), S("1--1"))
        assert not subspace_leq(S("1--1"), S("1-01"))
        assert subspace_leq(S("0000"), S("----"))
        assert not subspace_leq(S("--1-"), S("-0--"))

    def test_strict_order(self):
        assert subspace_lt(S("1-01"), S("1--1"))
        assert not subspace_lt(S("1--1"), S("1--1"))

    def test_different_vocabularies_rejected(self):
        with pytest.raises(TrapSpacesError):
            subspace_leq(S("1-"), S("1-1"))

    def test_agrees_with_state_set_containment_exhaustively(self):
        # all 27 x 27 subspace pairs over n=3
        all_spaces = []
        for choices in product("01-", repeat=3):
            all_spaces.append(S("".join(choices)))
        for p in all_spaces:
            sp = set(referenced_states(p))
            for q in all_spaces:
                sq = set(referenced_states(q))
                assert subspace_leq(p, q) == (sp <= sq)


class TestReferencedStates:
    def test_examples(self):
        assert referenced_states(S("1-01")) == [0b1001, 0b1101]
        assert referenced_states(S("11--")) == [0b1100, 0b1101, 0b1110, 0b1111]
        assert len(referenced_states(S("----"))) == 16

    def test_cap(self):
        with pytest.raises(CapExceededError):
            referenced_states(Subspace.whole(30), cap=24)


class TestEnclosingSubspace:
    def test_examples(self):
        assert smallest_enclosing_subspace([0b1001, 0b1101], 4) == S("1-01")
        assert smallest_enclosing_subspace([0b0110], 4) == S("0110")
        assert smallest_enclosing_subspace([0b0000, 0b1111], 4) == S("----")

    def test_empty_rejected(self):
        with pytest.raises(TrapSpacesError):
            smallest_enclosing_subspace([], 4)

    def test_galois_round_trip(self):
        # enclosing(states(p)) == p for every subspace
        rng = random.Random(5)
        for _ in range(100):
            items = [(i, rng.randrange(2)) for i in range(6) if rng.random() < 0.5]
            p = Subspace.from_items(6, items)
            assert smallest_enclosing_subspace(referenced_states(p), 6) == p


class TestNetworkImages:
    def test_image_state_examples(self, example_net):
        assert image_state(example_net, S("0000")) == S("0001")
        assert image_state(example_net, S("0110")) == S("1000")
        assert image_state(example_net, S("1111")) == S("1100")

    def test_image_subspace_examples(self, example_net):
        assert image_subspace(example_net, S("1---")) == S("1-0-")
        assert image_subspace(example_net, S("00--")) == S("00--")
        assert image_subspace(example_net, S("--11")) == S("---0")

    def test_image_of_state_agrees_with_image_state(self, example_net):
        for x in range(16):
            p = Subspace.from_state(4, x)
            assert image_subspace(example_net, p) == image_state(example_net, p)

    def test_is_trap_space_examples(self, example_net):
        for text in ("----", "1---", "1-0-", "1-01", "00--", "1101"):
            assert is_trap_space(example_net, S(text)), text
        for text in ("0---", "--1-", "0000", "--11", "0011"):
            assert not is_trap_space(example_net, S(text)), text

    def test_trap_space_iff_no_transition_leaves(self, example_net):
        # p >= F[p] must coincide with "every state of p maps into p"
        for choices in product("01-", repeat=4):
            p = S("".join(choices))
            stays = all(
                p.contains_state(example_net.image_int(x))
                for x in referenced_states(p)
            )
            assert is_trap_space(example_net, p) == stays

    def test_restricted_constant(self, example_net):
        # f2 = v1 & v4 under 1--- collapses to v4: not constant
        assert example_net.restricted_constant(1, S("1---")) is None
        # f1 = v1 | v2 under 00-- is the constant 0
        assert example_net.restricted_constant(0, S("00--")) == 0
        assert example_net.restricted_constant(3, S("--0-")) == 1


class TestNetworkValidation:
    def test_duplicate_names_rejected(self):
        from trapspaces.space import BooleanNetwork

        with pytest.raises(ValueError):
            BooleanNetwork.from_strings([("a", "a"), ("a", "a")])
