"""Graph algorithms over the precedence graph: order validation, the
unblocked set, canonical ordering, and exhaustive enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .errors import Unsatisfiable
from .model import CANONICAL_ORDER, Interrogative, PrecedenceGraph


@dataclass(frozen=True)
class OrderViolation:
    """A prerequisite unmet at the first occurrence of an interrogative."""

    position: int
    interrogative: Interrogative
    unmet_all_of: frozenset[Interrogative]
    unmet_any_of: tuple[frozenset[Interrogative], ...]


def is_valid_order(
    graph: PrecedenceGraph, sequence: Sequence[Interrogative]
) -> list[OrderViolation]:
    """Check a question sequence against the graph.

    Repeats are allowed and the sequence need not cover all seven words;
    only first occurrences are checked, and an interrogative counts as
    available once its first occurrence has passed. Returns one violation
    per offending first occurrence; an empty list means the order is valid.
    """
    violations: list[OrderViolation] = []
    seen: set[Interrogative] = set()
    for position, interrogative in enumerate(sequence):
        if interrogative in seen:
            continue
        rule = graph.rule_for(interrogative)
        if rule is not None:
            unmet_all = rule.all_of - seen
            unmet_any = tuple(group for group in rule.any_of if not group & seen)
            if unmet_all or unmet_any:
                violations.append(
                    OrderViolation(
                        position=position,
                        interrogative=interrogative,
                        unmet_all_of=frozenset(unmet_all),
                        unmet_any_of=unmet_any,
                    )
                )
        seen.add(interrogative)
    return violations


def unblocked(
    graph: PrecedenceGraph, satisfied: Iterable[Interrogative]
) -> set[Interrogative]:
    """Interrogatives outside ``satisfied`` whose rule, if any, is met by it."""
    satisfied_set = frozenset(satisfied)
    result: set[Interrogative] = set()
    for interrogative in CANONICAL_ORDER:
        if interrogative in satisfied_set:
            continue
        rule = graph.rule_for(interrogative)
        if rule is None or rule.is_met_by(satisfied_set):
            result.add(interrogative)
    return result


def canonical_order(graph: PrecedenceGraph) -> list[Interrogative]:
    """The valid permutation of all seven words that is lexicographically
    minimal by rank: greedily emit the lowest-rank unblocked interrogative.

    Raises Unsatisfiable if the rules admit no valid permutation.
    """
    emitted: list[Interrogative] = []
    satisfied: set[Interrogative] = set()
    remaining = set(CANONICAL_ORDER)
    while remaining:
        for candidate in CANONICAL_ORDER:
            if candidate not in remaining:
                continue
            rule = graph.rule_for(candidate)
            if rule is None or rule.is_met_by(satisfied):
                emitted.append(candidate)
                satisfied.add(candidate)
                remaining.discard(candidate)
                break
        else:
            raise Unsatisfiable(
                "no valid ordering exists; blocked on "
                + ", ".join(sorted(i.value for i in remaining))
            )
    return emitted


def enumerate_valid_orders(
    graph: PrecedenceGraph,
) -> list[tuple[Interrogative, ...]]:
    """Every violation-free permutation of all seven interrogatives, found by
    exhaustively checking all 5040, in lexicographic rank order.

    This is the brute-force oracle the faster paths are tested against, so it
    re-checks each rule inline rather than delegating.
    """
    valid: list[tuple[Interrogative, ...]] = []
    rules = {rule.target: rule for rule in graph.rules}
    for perm in permutations(CANONICAL_ORDER):
        satisfied: set[Interrogative] = set()
        for interrogative in perm:
            rule = rules.get(interrogative)
            if rule is not None:
                if not rule.all_of <= satisfied:
                    break
                if any(not group & satisfied for group in rule.any_of):
                    break
            satisfied.add(interrogative)
        else:
            valid.append(perm)
    return valid
