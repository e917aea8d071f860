from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from w6h.errors import Unsatisfiable
from w6h.model import (
    CANONICAL_ORDER,
    DependencyRule,
    Interrogative,
    PrecedenceGraph,
)
from w6h.ordering import (
    canonical_order,
    enumerate_valid_orders,
    is_valid_order,
    unblocked,
)

from conftest import arbitrary_graphs, interrogative_sequences, satisfiable_graphs

WHO = Interrogative.WHO
WHAT = Interrogative.WHAT
WHICH = Interrogative.WHICH
WHERE = Interrogative.WHERE
HOW = Interrogative.HOW
WHY = Interrogative.WHY
WHEN = Interrogative.WHEN


class TestIsValidOrder:
    def test_lone_how_reports_both_unmet_parts(self, graph):
        violations = is_valid_order(graph, [HOW])
        assert len(violations) == 1
        v = violations[0]
        assert v.position == 0
        assert v.interrogative is HOW
        assert v.unmet_all_of == frozenset({WHAT})
        assert v.unmet_any_of == (frozenset({WHICH, WHERE}),)

    def test_partial_sequence_with_repeats_is_valid(self, graph):
        assert is_valid_order(graph, [WHO, WHAT, WHAT, WHICH, WHERE, HOW]) == []

    def test_how_after_what_and_where_is_valid(self, graph):
        assert is_valid_order(graph, [WHAT, WHERE, HOW]) == []

    def test_how_after_what_alone_violates_the_or_group(self, graph):
        violations = is_valid_order(graph, [WHAT, HOW])
        assert len(violations) == 1
        assert violations[0].unmet_all_of == frozenset()
        assert violations[0].unmet_any_of == (frozenset({WHICH, WHERE}),)

    def test_repeat_occurrences_are_not_rechecked(self, graph):
        violations = is_valid_order(graph, [HOW, WHAT, WHICH, HOW])
        assert [v.position for v in violations] == [0]

    def test_empty_sequence_is_valid(self, graph):
        assert is_valid_order(graph, []) == []

    def test_canonical_order_is_valid(self, graph):
        assert is_valid_order(graph, CANONICAL_ORDER) == []

    def test_reversed_canonical_order_is_invalid(self, graph):
        assert is_valid_order(graph, list(reversed(CANONICAL_ORDER)))

    def test_everything_valid_under_empty_graph(self):
        empty = PrecedenceGraph()
        assert is_valid_order(empty, [WHEN, WHY, HOW, WHO]) == []

    @given(graph=arbitrary_graphs(), sequence=interrogative_sequences())
    def test_agrees_with_naive_recheck(self, graph, sequence):
        violations = is_valid_order(graph, sequence)
        seen: set[Interrogative] = set()
        expected_positions = []
        for pos, interrogative in enumerate(sequence):
            if interrogative in seen:
                continue
            rule = graph.rule_for(interrogative)
            if rule is not None and not rule.is_met_by(seen):
                expected_positions.append(pos)
            seen.add(interrogative)
        assert [v.position for v in violations] == expected_positions

    @given(graph=satisfiable_graphs(), sequence=interrogative_sequences())
    def test_valid_prefix_stays_valid(self, graph, sequence):
        if is_valid_order(graph, sequence):
            return
        for cut in range(len(sequence)):
            assert is_valid_order(graph, sequence[:cut]) == []


class TestUnblocked:
    def test_nothing_satisfied(self, graph):
        assert unblocked(graph, set()) == {WHO, WHAT, WHICH, WHERE}

    def test_what_and_where_open_how(self, graph):
        assert unblocked(graph, {WHAT, WHERE}) == {WHO, WHICH, HOW}

    def test_what_alone_does_not_open_how(self, graph):
        assert unblocked(graph, {WHAT}) == {WHO, WHICH, WHERE}

    def test_near_complete_set_opens_the_rest(self, graph):
        satisfied = {WHO, WHAT, WHICH, WHERE, HOW}
        assert unblocked(graph, satisfied) == {WHY, WHEN}

    def test_all_satisfied_leaves_nothing(self, graph):
        assert unblocked(graph, set(Interrogative)) == set()

    def test_empty_graph_unblocks_everything(self):
        assert unblocked(PrecedenceGraph(), set()) == set(Interrogative)

    @given(graph=arbitrary_graphs(),
           satisfied=st.sets(st.sampled_from(list(CANONICAL_ORDER))))
    def test_monotone_in_satisfied_set(self, graph, satisfied):
        base = unblocked(graph, satisfied)
        for extra in Interrogative:
            grown = unblocked(graph, satisfied | {extra})
            # adding a satisfied word never blocks a previously open one
            assert base - {extra} <= grown | satisfied


class TestCanonicalOrder:
    def test_default_graph_gives_rank_order(self, graph):
        assert canonical_order(graph) == list(CANONICAL_ORDER)

    def test_empty_graph_gives_rank_order(self):
        assert canonical_order(PrecedenceGraph()) == list(CANONICAL_ORDER)

    def test_rule_can_pull_a_word_later(self):
        rule = DependencyRule(target=WHO, all_of={WHEN})
        order = canonical_order(PrecedenceGraph(rules=(rule,)))
        assert order.index(WHO) > order.index(WHEN)
        assert order == [WHAT, WHICH, WHERE, HOW, WHY, WHEN, WHO]

    def test_cycle_raises_unsatisfiable(self):
        rules = (
            DependencyRule(target=WHO, all_of={WHAT}),
            DependencyRule(target=WHAT, all_of={WHO}),
        )
        with pytest.raises(Unsatisfiable, match="who"):
            canonical_order(PrecedenceGraph(rules=rules))

    @given(graph=satisfiable_graphs())
    def test_result_is_a_valid_permutation(self, graph):
        order = canonical_order(graph)
        assert sorted(order, key=lambda i: i.rank) == list(CANONICAL_ORDER)
        assert is_valid_order(graph, order) == []

    @given(graph=satisfiable_graphs())
    @settings(max_examples=25, deadline=None)
    def test_is_lexicographically_first_enumerated(self, graph):
        orders = enumerate_valid_orders(graph)
        assert orders
        assert tuple(canonical_order(graph)) == orders[0]


class TestEnumerateValidOrders:
    def test_empty_graph_admits_all_5040(self):
        assert len(enumerate_valid_orders(PrecedenceGraph())) == 5040

    def test_default_graph_admits_exactly_168(self, graph):
        orders = enumerate_valid_orders(graph)
        assert len(orders) == 168
        assert all(is_valid_order(graph, order) == [] for order in orders)

    def test_total_chain_admits_exactly_one(self):
        rules = tuple(
            DependencyRule(
                target=CANONICAL_ORDER[i],
                all_of=frozenset(CANONICAL_ORDER[:i]),
            )
            for i in range(1, 7)
        )
        orders = enumerate_valid_orders(PrecedenceGraph(rules=rules))
        assert orders == [CANONICAL_ORDER]

    def test_results_are_unique_and_lexicographically_sorted(self, graph):
        orders = enumerate_valid_orders(graph)
        keyed = [tuple(i.rank for i in order) for order in orders]
        assert keyed == sorted(keyed)
        assert len(set(keyed)) == len(keyed)

    def test_unsatisfiable_graph_returns_nothing(self):
        rules = (
            DependencyRule(target=WHO, all_of={WHAT}),
            DependencyRule(target=WHAT, all_of={WHO}),
        )
        assert enumerate_valid_orders(PrecedenceGraph(rules=rules)) == []

    @given(graph=arbitrary_graphs())
    @settings(max_examples=20, deadline=None)
    def test_membership_matches_is_valid_order(self, graph):
        member = {tuple(o) for o in enumerate_valid_orders(graph)}
        # spot-check a deterministic slice of all permutations
        for index, perm in enumerate(permutations(CANONICAL_ORDER)):
            if index % 97:
                continue
            assert (perm in member) == (is_valid_order(graph, perm) == [])
