from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from w6h.defaults import default_graph, default_matrix
from w6h.model import (
    CANONICAL_ORDER,
    Concern,
    DependencyRule,
    Interrogative,
    PatternMatrix,
    PrecedenceGraph,
    StakeholderGroup,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def matrix() -> PatternMatrix:
    return default_matrix()


@pytest.fixture(scope="session")
def graph() -> PrecedenceGraph:
    return default_graph()


def tiny_matrix() -> PatternMatrix:
    """A hand-built two-group matrix exercising tags, gatekeepers, and
    candidate binding."""
    groups = (
        StakeholderGroup(id="ops", display_name="Operations"),
        StakeholderGroup(id="sec", display_name="Security"),
    )
    concerns = (
        Concern(
            id="actors",
            text="Involved actors",
            interrogative=Interrogative.WHO,
            groups=frozenset({"ops", "sec"}),
        ),
        Concern(
            id="entities",
            text="Handled entities",
            interrogative=Interrogative.WHAT,
            groups=frozenset({"ops", "sec"}),
            tags=frozenset({"inventory"}),
        ),
        Concern(
            id="chosen-entities",
            text="Entities kept in scope",
            interrogative=Interrogative.WHICH,
            groups=frozenset({"ops"}),
            candidates_from="entities",
            tags=frozenset({"inventory"}),
        ),
        Concern(
            id="sites",
            text="Operating sites",
            interrogative=Interrogative.WHERE,
            groups=frozenset({"ops"}),
        ),
        Concern(
            id="procedure",
            text="Working procedure",
            interrogative=Interrogative.HOW,
            groups=frozenset({"ops"}),
            tags=frozenset({"inventory"}),
        ),
        Concern(
            id="need",
            text="Underlying need",
            interrogative=Interrogative.WHY,
            groups=frozenset({"ops", "sec"}),
            gatekeeper=True,
        ),
        Concern(
            id="deadline",
            text="Delivery deadline",
            interrogative=Interrogative.WHEN,
            groups=frozenset({"ops"}),
        ),
        Concern(
            id="audit-trail",
            text="Audit trail retention",
            interrogative=Interrogative.WHY,
            groups=frozenset({"sec"}),
        ),
    )
    return PatternMatrix(name="tiny", version="1", groups=groups, concerns=concerns)


@pytest.fixture()
def small_matrix() -> PatternMatrix:
    return tiny_matrix()


# --- hypothesis strategies ---------------------------------------------------


@st.composite
def satisfiable_graphs(draw: st.DrawFn) -> PrecedenceGraph:
    """Graphs guaranteed satisfiable: rules only require interrogatives that
    appear earlier in a drawn witness permutation."""
    witness = draw(st.permutations(list(CANONICAL_ORDER)))
    rules: list[DependencyRule] = []
    for index in range(1, len(witness)):
        if not draw(st.booleans()):
            continue
        preds = witness[:index]
        all_of = frozenset(draw(st.sets(st.sampled_from(preds))))
        rest = [p for p in preds if p not in all_of]
        any_of: list[frozenset[Interrogative]] = []
        while rest and draw(st.booleans()):
            size = draw(st.integers(min_value=1, max_value=len(rest)))
            any_of.append(frozenset(rest[:size]))
            rest = rest[size:]
        if not all_of and not any_of:
            continue
        rules.append(
            DependencyRule(target=witness[index], all_of=all_of, any_of=tuple(any_of))
        )
    return PrecedenceGraph(rules=tuple(rules), version="hyp")


@st.composite
def arbitrary_graphs(draw: st.DrawFn) -> PrecedenceGraph:
    """Graphs with no satisfiability guarantee (may contain cycles)."""
    targets = draw(st.sets(st.sampled_from(list(CANONICAL_ORDER))))
    rules = []
    for target in sorted(targets, key=lambda i: i.rank):
        others = [i for i in CANONICAL_ORDER if i is not target]
        all_of = frozenset(draw(st.sets(st.sampled_from(others))))
        rest = [i for i in others if i not in all_of]
        any_of = []
        while rest and draw(st.booleans()):
            size = draw(st.integers(min_value=1, max_value=len(rest)))
            any_of.append(frozenset(rest[:size]))
            rest = rest[size:]
        if not all_of and not any_of:
            continue
        rules.append(
            DependencyRule(target=target, all_of=all_of, any_of=tuple(any_of))
        )
    return PrecedenceGraph(rules=tuple(rules), version="hyp")


@st.composite
def interrogative_sequences(draw: st.DrawFn) -> list[Interrogative]:
    return draw(
        st.lists(st.sampled_from(list(CANONICAL_ORDER)), min_size=0, max_size=12)
    )
