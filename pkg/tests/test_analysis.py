import pytest

from trapspaces import parse_network
from trapspaces.analysis import (
    attractor_trapspace_audit,
    commitment_table,
    cyclic_attractor_lower_bound,
    reduce,
)
from trapspaces.dynamics import attractors, build_stg
from trapspaces.errors import NotATrapSpaceError
from trapspaces.expr import Const, Not, Var, format_expression
from trapspaces.space import Subspace

from conftest import corpus

S = Subspace.from_str


class TestReduce:
    def test_example_reduction(self, example_net):
        red = reduce(example_net, S("1---"))
        assert red.network.variables == ("v2", "v3", "v4")
        # v1 fixed at 1: f2 collapses to v4, f3 to 0, f4 stays !v3
        assert red.network.functions == (Var(2), Const(0), Not(Var(1)))
        assert red.index_map == {1: 0, 2: 1, 3: 2}

    def test_embed_state(self, example_net):
        red = reduce(example_net, S("1---"))
        assert red.embed_state(0b101) == 0b1101
        assert red.embed_state(0b000) == 0b1000

    def test_non_trap_space_rejected(self, example_net):
        with pytest.raises(NotATrapSpaceError):
            reduce(example_net, S("0---"))

    def test_unchecked_bypasses_validation(self, example_net):
        red = reduce(example_net, S("0---"), unchecked=True)
        assert red.network.n == 3

    def test_all_variables_fixed_rejected(self, example_net):
        with pytest.raises(NotATrapSpaceError):
            reduce(example_net, S("1101"))

    def test_reduction_preserves_dynamics(self, example_net):
        # inside the trap space, the reduced image matches the parent image
        red = reduce(example_net, S("1-0-"))
        rn = red.network.n
        for y in range(1 << rn):
            x = red.embed_state(y)
            fy = red.network.image_int(y)
            assert red.embed_state(fy) == example_net.image_int(x)


class TestCyclicLowerBound:
    def test_example(self, example_net):
        bound = cyclic_attractor_lower_bound(example_net)
        assert bound.count == 1
        assert [str(p) for p in bound.witnesses] == ["00--"]
        assert bound.oscillating_candidates == [["v3", "v4"]]

    def test_negation_cycle(self, negation_cycle):
        bound = cyclic_attractor_lower_bound(negation_cycle)
        assert bound.count == 1
        assert [str(p) for p in bound.witnesses] == ["--"]

    def test_steady_only_network(self):
        net = parse_network("targets, factors\na, a\nb, a\n")
        assert cyclic_attractor_lower_bound(net).count == 0

    def test_bound_holds_against_exhaustive_attractors(self):
        for net in corpus(30, sizes=(4, 5, 6), seed0=1100):
            bound = cyclic_attractor_lower_bound(net)
            for rule in ("sync", "async"):
                cyclic = [
                    a for a in attractors(build_stg(net, rule)) if len(a) > 1
                ]
                assert len(cyclic) >= bound.count


class TestCommitmentTable:
    def test_example(self, example_net):
        table = commitment_table(example_net)
        assert [str(p) for p in table.spaces] == ["00--", "1---"]
        assert table.steady_counts == [0, 1]
        assert table.sync_cyclic_counts == [1, 0]
        assert table.async_cyclic_counts == [1, 0]

    def test_attractor_columns_omitted_beyond_cap(self, example_net):
        table = commitment_table(example_net, stg_cap=3)
        assert table.steady_counts == [0, 1]
        assert table.sync_cyclic_counts is None
        assert table.async_cyclic_counts is None


class TestAttractorAudit:
    def test_example_sync(self, example_net):
        audit = attractor_trapspace_audit(example_net, "sync")
        assert audit.rule == "sync"
        by_space = {str(a.space): a for a in audit.per_space}
        assert set(by_space) == {"00--", "1101"}
        assert by_space["00--"].attractor_count == 1
        assert by_space["00--"].tight == [True]
        assert by_space["1101"].attractor_count == 1
        assert by_space["1101"].tight == [True]
        assert audit.outside == []

    def test_async_attractor_need_not_be_tight(self, example_net):
        audit = attractor_trapspace_audit(example_net, "async")
        by_space = {str(a.space): a for a in audit.per_space}
        assert by_space["1101"].tight == [True]
        assert by_space["00--"].attractor_count == 1
        assert audit.outside == []

    def test_every_attractor_is_counted_somewhere_or_outside(self):
        for net in corpus(20, sizes=(4, 5, 6), seed0=1200):
            for rule in ("sync", "async"):
                audit = attractor_trapspace_audit(net, rule)
                total = sum(a.attractor_count for a in audit.per_space)
                n_attrs = len(attractors(build_stg(net, rule)))
                # minimal trap spaces are disjoint, so counts partition
                assert total + len(audit.outside) == n_attrs
