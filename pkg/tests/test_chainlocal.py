from collections import Counter

import pytest

from unipdade.chainlocal import (ChainError, block_of_local, census_by_length, closing_chain, cp, delta,
                                 enumerate_chains, local_count, local_data, m_is_last, plus_m,
                                 pseudo_set, transport_check, trivial_chain, triples)
from unipdade.genre import GroupDescriptor, LeviClass, esplit_levis
from unipdade.labelcomb import Partition
from unipdade.oracle import oracle_chain_count_small
from unipdade.uniphc import BlockId, CountTable, check_ell, unipotent_blocks

GL3 = GroupDescriptor("A", 3, "gl")
SL3 = GroupDescriptor("A", 3, "sc")
SP4 = GroupDescriptor("C", 2)

SMALL = [GroupDescriptor(s, n, m) for s in ("A", "2A") for n in (2, 3, 4) for m in ("gl", "sc")] + \
        [GroupDescriptor(s, n) for s in ("B", "C") for n in (2, 3)]


def chain_named(G, e, text):
    return next(c for c in enumerate_chains(G, e) if c.render() == text)


def semisimple_rank(G):
    return G.rank - 1 if G.is_linear else G.rank


class TestCensus:
    def test_gl3_period_two(self):
        chains = enumerate_chains(GL3, 2)
        assert [c.render() for c in chains] == ["G", "G > GL1(q)xGL1(q^2)"]
        assert census_by_length(chains) == {0: 1, 1: 1}

    def test_only_trivial_chain_when_nothing_splits(self):
        for G in (GL3, SP4):
            assert enumerate_chains(G, 9) == [trivial_chain(G, 9)]

    @pytest.mark.parametrize("G", SMALL, ids=str)
    def test_matches_labelled_slot_oracle(self, G):
        for e in range(1, 7):
            got = census_by_length(enumerate_chains(G, e))
            want = Counter(len(c) - 1 for c in oracle_chain_count_small(G, e))
            assert got == dict(sorted(want.items()))

    def test_oracle_rejects_large_rank(self):
        with pytest.raises(ValueError):
            oracle_chain_count_small(GroupDescriptor("A", 5), 1)

    @pytest.mark.parametrize("G", SMALL, ids=str)
    def test_length_bound_and_distinct_forms(self, G):
        for e in range(1, 7):
            chains = enumerate_chains(G, e)
            assert all(c.length <= semisimple_rank(G) for c in chains)
            assert len({c.root for c in chains}) == len(chains)
            assert len({c.render() for c in chains}) <= len(chains)

    def test_first_steps_are_levis(self):
        for e in (1, 2):
            first = {c.levi(1) for c in enumerate_chains(SP4, e) if c.length >= 1}
            assert first == set(esplit_levis(SP4, e)) - {trivial_chain(SP4, e).last}


class TestPairs:
    def test_gl3_trivial_chain(self):
        assert cp(trivial_chain(GL3, 2)) == [Partition((1,))]

    def test_sp4_trivial_chain_excludes_cuspidal(self):
        labels = cp(trivial_chain(SP4, 1))
        assert len(labels) == 1 and labels[0].rank == 0

    def test_minimal_levi_chain(self):
        ch = chain_named(GL3, 2, "G > GL1(q)xGL1(q^2)")
        assert cp(ch) == [Partition((1,))]
        assert m_is_last(ch, Partition((1,)))

    @pytest.mark.parametrize("G", SMALL, ids=str)
    def test_delta_is_sign_flipping_involution(self, G):
        for e in range(1, 7):
            trip = triples(G, e)
            keys = {(c.root, str(g)) for c, g in trip}
            for ch, g in trip:
                other = delta(ch, g)
                assert abs(other.length - ch.length) == 1
                assert (other.root, str(g)) in keys
                assert delta(other, g) == ch


class TestPseudoSets:
    def test_sc_model_whole_group_singleton(self):
        for q in (2, 3, 4, 5):
            assert len(pseudo_set(trivial_chain(SL3, 2), Partition((1,)), q)) == 1

    def test_gl3_centre(self):
        assert len(pseudo_set(trivial_chain(GL3, 2), Partition((1,)), 2)) == 1
        orbits = pseudo_set(trivial_chain(GL3, 1), Partition(), 4)
        assert [o.size for o in orbits] == [1, 1, 1]


class TestLocalCounts:
    def test_gl3_worked_example(self):
        ch = chain_named(GL3, 2, "G > GL1(q)xGL1(q^2)")
        assert local_count(ch, Partition((1,)), 2, 3) == CountTable({(BlockId("[1]"), 1): 2})

    def test_chain_built_for_other_period(self):
        with pytest.raises(ChainError):
            local_count(trivial_chain(GL3, 1), Partition(), 2, 3)

    def test_nothing_to_count_when_ell_misses(self):
        # |GL3(2)| = 168 is prime to 5, so no proper Levi is 4-split
        assert triples(GL3, check_ell(2, 5)) == []

    @pytest.mark.parametrize("G,q,ell", [(GL3, 2, 3), (SL3, 2, 3), (SP4, 3, 5), (SP4, 2, 3),
                                         (GroupDescriptor("A", 4, "gl"), 5, 3),
                                         (GroupDescriptor("B", 3), 3, 5)], ids=str)
    def test_trivial_chain_fibre_matches_series(self, G, q, ell):
        e = check_ell(q, ell)
        ch = trivial_chain(G, e)
        total = CountTable()
        for g in cp(ch):
            total = total.add(local_count(ch, g, q, ell))
        want = CountTable()
        for b in unipotent_blocks(G, q, ell):
            want = want.add(b.k_u).add(b.k_cu, -1)
        assert total.nonzero() == want.nonzero()

    @pytest.mark.parametrize("G,q,ell", [(GL3, 2, 3), (SP4, 3, 5), (GroupDescriptor("A", 4, "sc"), 4, 5)],
                             ids=str)
    def test_transport(self, G, q, ell):
        e = check_ell(q, ell)
        for ch, g in triples(G, e):
            if not m_is_last(ch, g):
                assert transport_check(ch, g, q, ell)
                assert closing_chain(ch, g) == plus_m(ch, g)

    def test_transport_needs_room(self):
        ch = chain_named(GL3, 2, "G > GL1(q)xGL1(q^2)")
        with pytest.raises(ChainError):
            transport_check(ch, Partition((1,)), 2, 3)

    def test_local_data_render(self):
        ch = chain_named(GL3, 2, "G > GL1(q)xGL1(q^2)")
        rendered = [x.render() for x in local_data(ch, Partition((1,)), 2, 3)]
        assert len(rendered) == 2 and all(r.startswith("(G > GL1(q)xGL1(q^2); [1];") for r in rendered)


class TestBlockOfLocal:
    G = GroupDescriptor("A", 4, "gl")
    TEXT = "G > GL2(q)xGL1(q^2) > GL1(q^2)xGL1(q^2)"

    def test_trivial_z_gives_unipotent_block(self):
        ch = chain_named(self.G, 2, self.TEXT)
        assert block_of_local(ch, Partition(), (0, 0), 5, 3) == BlockId("[]")

    def test_ell_power_order_is_invisible(self):
        # Z_24 at q = 5: exponent 8 has order 3
        ch = chain_named(self.G, 2, self.TEXT)
        assert block_of_local(ch, Partition(), (0, 8), 5, 3) == BlockId("[]")

    def test_order_two_is_not_unipotent(self):
        ch = chain_named(self.G, 2, self.TEXT)
        b = block_of_local(ch, Partition(), (0, 12), 5, 3)
        assert not b.unipotent and b.pair == "[]"
