"""Core domain model: interrogatives, precedence rules, stakeholder groups,
concerns, and the stakeholder-by-interrogative pattern matrix.

All types are immutable value objects; operations return new values.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import DuplicateId, UnknownGroup


class Category(str, Enum):
    """Typological weight of an interrogative word."""

    MAJOR = "major"
    MINOR = "minor"
    INCIDENTAL = "incidental"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class Interrogative(str, Enum):
    """The seven English question words, each with a canonical rank."""

    WHO = "who"
    WHAT = "what"
    WHICH = "which"
    WHERE = "where"
    HOW = "how"
    WHY = "why"
    WHEN = "when"

    @property
    def rank(self) -> int:
        return _RANKS[self]

    @property
    def category(self) -> Category:
        return _CATEGORIES[self]

    @property
    def label(self) -> str:
        return self.value.capitalize()


_RANKS: dict[Interrogative, int] = {
    Interrogative.WHO: 1,
    Interrogative.WHAT: 2,
    Interrogative.WHICH: 3,
    Interrogative.WHERE: 4,
    Interrogative.HOW: 5,
    Interrogative.WHY: 6,
    Interrogative.WHEN: 7,
}

_CATEGORIES: dict[Interrogative, Category] = {
    Interrogative.WHO: Category.MAJOR,
    Interrogative.WHAT: Category.MAJOR,
    Interrogative.WHICH: Category.MAJOR,
    Interrogative.WHERE: Category.MAJOR,
    Interrogative.HOW: Category.MINOR,
    Interrogative.WHEN: Category.MINOR,
    Interrogative.WHY: Category.INCIDENTAL,
}

#: All seven interrogatives in canonical rank order.
CANONICAL_ORDER: tuple[Interrogative, ...] = tuple(
    sorted(Interrogative, key=lambda i: i.rank)
)


@dataclass(frozen=True)
class DependencyRule:
    """Prerequisites of one interrogative.

    ``all_of`` members must all be satisfied; each ``any_of`` group needs at
    least one satisfied member. An interrogative may appear at most once
    across ``all_of`` and the ``any_of`` groups, and never be its own target.
    """

    target: Interrogative
    all_of: frozenset[Interrogative] = frozenset()
    any_of: tuple[frozenset[Interrogative], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "all_of", frozenset(self.all_of))
        object.__setattr__(
            self, "any_of", tuple(frozenset(group) for group in self.any_of)
        )
        seen: set[Interrogative] = set(self.all_of)
        if self.target in seen:
            raise ValueError(f"rule target {self.target.value} cannot require itself")
        for group in self.any_of:
            if not group:
                raise ValueError("any_of groups must be non-empty")
            if self.target in group:
                raise ValueError(
                    f"rule target {self.target.value} cannot require itself"
                )
            overlap = seen & group
            if overlap:
                raise ValueError(
                    "rule members must be pairwise distinct; "
                    f"{sorted(i.value for i in overlap)} repeated"
                )
            seen |= group

    def is_met_by(self, satisfied: frozenset[Interrogative] | set[Interrogative]) -> bool:
        """True if every all_of member and at least one member per any_of
        group is in ``satisfied``."""
        if not self.all_of <= satisfied:
            return False
        return all(group & satisfied for group in self.any_of)


@dataclass(frozen=True)
class PrecedenceGraph:
    """Hard ordering constraints among interrogatives, at most one rule per
    target. Interrogatives without a rule have no prerequisites."""

    rules: tuple[DependencyRule, ...] = ()
    version: str = "1"

    def __post_init__(self) -> None:
        canonical = tuple(sorted(self.rules, key=lambda r: r.target.rank))
        targets = [rule.target for rule in canonical]
        if len(targets) != len(set(targets)):
            raise ValueError("at most one rule per target interrogative")
        object.__setattr__(self, "rules", canonical)

    def rule_for(self, interrogative: Interrogative) -> DependencyRule | None:
        for rule in self.rules:
            if rule.target is interrogative:
                return rule
        return None


@dataclass(frozen=True)
class StakeholderGroup:
    id: str
    display_name: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("group id must be non-empty")


@dataclass(frozen=True)
class Concern:
    """A noun-phrase topic a question addresses for one or more groups.

    ``gatekeeper`` marks an early rationale check and is meaningful only on
    why concerns; ``candidates_from`` binds a which concern to the who/what
    concern that supplies its finite candidate set.
    """

    id: str
    text: str
    interrogative: Interrogative
    groups: frozenset[str]
    question: str | None = None
    tags: frozenset[str] = frozenset()
    gatekeeper: bool = False
    candidates_from: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "groups", frozenset(self.groups))
        object.__setattr__(self, "tags", frozenset(self.tags))
        if not self.id:
            raise ValueError("concern id must be non-empty")
        if not self.groups:
            raise ValueError(f"concern {self.id!r} must name at least one group")

    @property
    def prompt(self) -> str:
        """The question text asked for this concern."""
        if self.question:
            return self.question
        return f"{self.interrogative.label}? — {self.text}"


@dataclass(frozen=True)
class ValidationFinding:
    code: str
    message: str
    severity: Severity = Severity.ERROR


@dataclass(frozen=True)
class PatternMatrix:
    """Stakeholder groups by interrogatives grid of concerns."""

    name: str
    version: str
    groups: tuple[StakeholderGroup, ...]
    concerns: tuple[Concern, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "concerns", tuple(self.concerns))

    def group_ids(self) -> tuple[str, ...]:
        return tuple(group.id for group in self.groups)

    def find_group(self, key: str) -> StakeholderGroup | None:
        """Look up a group by id, falling back to display name (case-insensitive)."""
        for group in self.groups:
            if group.id == key:
                return group
        folded = key.casefold()
        for group in self.groups:
            if group.display_name.casefold() == folded:
                return group
        return None

    def concern_by_id(self, concern_id: str) -> Concern | None:
        for concern in self.concerns:
            if concern.id == concern_id:
                return concern
        return None

    def cell(self, group_id: str, interrogative: Interrogative) -> tuple[Concern, ...]:
        """Concerns of one group for one interrogative, in matrix order."""
        return tuple(
            concern
            for concern in self.concerns
            if group_id in concern.groups and concern.interrogative is interrogative
        )


def validate_matrix(matrix: PatternMatrix) -> list[ValidationFinding]:
    """Check referential integrity and flag coverage gaps.

    An empty result means the matrix is valid; empty cells are reported as
    warnings, everything else as errors.
    """
    findings: list[ValidationFinding] = []
    declared = set(matrix.group_ids())
    ids_seen: set[str] = set()
    by_id: dict[str, Concern] = {}
    for concern in matrix.concerns:
        if concern.id in ids_seen:
            findings.append(
                ValidationFinding(
                    code="duplicate-id",
                    message=f"concern id {concern.id!r} declared more than once",
                )
            )
        ids_seen.add(concern.id)
        by_id.setdefault(concern.id, concern)

    for concern in matrix.concerns:
        for group_id in sorted(concern.groups):
            if group_id not in declared:
                findings.append(
                    ValidationFinding(
                        code="unknown-group",
                        message=(
                            f"concern {concern.id!r} references undeclared group "
                            f"{group_id!r}"
                        ),
                    )
                )
        if concern.gatekeeper and concern.interrogative is not Interrogative.WHY:
            findings.append(
                ValidationFinding(
                    code="gatekeeper-on-non-why",
                    message=(
                        f"concern {concern.id!r} sets gatekeeper but asks "
                        f"{concern.interrogative.value!r}"
                    ),
                )
            )
        if concern.candidates_from is not None:
            if concern.interrogative is not Interrogative.WHICH:
                findings.append(
                    ValidationFinding(
                        code="candidates-from-on-non-which",
                        message=(
                            f"concern {concern.id!r} sets candidates_from but asks "
                            f"{concern.interrogative.value!r}"
                        ),
                    )
                )
            source = by_id.get(concern.candidates_from)
            if source is None:
                findings.append(
                    ValidationFinding(
                        code="dangling-candidates-from",
                        message=(
                            f"concern {concern.id!r} references missing concern "
                            f"{concern.candidates_from!r}"
                        ),
                    )
                )
            elif source.interrogative not in (Interrogative.WHO, Interrogative.WHAT):
                findings.append(
                    ValidationFinding(
                        code="candidate-source-not-who-or-what",
                        message=(
                            f"concern {concern.id!r} draws candidates from "
                            f"{source.id!r}, which asks {source.interrogative.value!r} "
                            "instead of who or what"
                        ),
                    )
                )

    for group in matrix.groups:
        for interrogative in CANONICAL_ORDER:
            if not matrix.cell(group.id, interrogative):
                findings.append(
                    ValidationFinding(
                        code="empty-cell",
                        message=(
                            f"no concerns for group {group.id!r} under "
                            f"{interrogative.value!r}"
                        ),
                        severity=Severity.WARNING,
                    )
                )
    return findings


def add_concern(matrix: PatternMatrix, concern: Concern) -> PatternMatrix:
    """Insert a concern, growing exactly the cells named by its groups and
    interrogative; all other cells are untouched."""
    if matrix.concern_by_id(concern.id) is not None:
        raise DuplicateId(f"concern id {concern.id!r} already exists")
    declared = set(matrix.group_ids())
    for group_id in sorted(concern.groups):
        if group_id not in declared:
            raise UnknownGroup(f"group {group_id!r} is not declared in the matrix")
    return replace(matrix, concerns=matrix.concerns + (concern,))
