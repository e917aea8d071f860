"""Live elicitation session: question instances scheduled by the precedence
graph, answer recording, verdict gating, and coverage reporting.

A session is a pure value; every operation returns a new session. Callers
that share one session across threads must serialize its mutating
operations themselves.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum

from .errors import (
    DanglingCandidateRef,
    NotAnswered,
    NotPending,
    NotWhy,
    SubsetViolation,
    UnknownGroup,
    UnknownInstance,
    VerdictOnNonWhy,
)
from .model import CANONICAL_ORDER, Interrogative, PatternMatrix, PrecedenceGraph
from .ordering import unblocked


class Status(str, Enum):
    PENDING = "pending"
    ANSWERED = "answered"
    SKIPPED = "skipped"
    GATED_OUT = "gated_out"


class Mode(str, Enum):
    FULL = "full"
    TRIAGE = "triage"


class Verdict(str, Enum):
    PROCEED = "proceed"
    NOT_NEEDED = "not_needed"


def now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class ScopeEntry:
    """One slice of a session: a stakeholder group, optionally narrowed to
    concerns carrying a tag."""

    group: str
    tag: str | None = None


@dataclass(frozen=True)
class QuestionInstance:
    id: str
    concern_id: str
    group: str
    interrogative: Interrogative
    prompt: str
    status: Status = Status.PENDING
    gatekeeper: bool = False
    candidates_from: str | None = None
    tags: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "tags", frozenset(self.tags))


@dataclass(frozen=True)
class Answer:
    instance_id: str
    text: str
    items: tuple[str, ...] | None = None
    verdict: Verdict | None = None
    timestamp: str = ""

    def __post_init__(self) -> None:
        if self.items is not None:
            object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Session:
    id: str
    matrix_ref: str
    graph_ref: str
    scope: tuple[ScopeEntry, ...]
    mode: Mode
    instances: tuple[QuestionInstance, ...]
    answers: tuple[Answer, ...]
    created: str
    graph: PrecedenceGraph

    def instance(self, instance_id: str) -> QuestionInstance:
        for inst in self.instances:
            if inst.id == instance_id:
                return inst
        raise UnknownInstance(f"no instance {instance_id!r} in session {self.id!r}")

    def answer_for(self, instance_id: str) -> Answer | None:
        for answer in self.answers:
            if answer.instance_id == instance_id:
                return answer
        return None

    def _with_status(self, instance_id: str, status: Status) -> Session:
        instances = tuple(
            replace(inst, status=status) if inst.id == instance_id else inst
            for inst in self.instances
        )
        return replace(self, instances=instances)


def instance_id_for(group: str, concern_id: str) -> str:
    return f"{group}:{concern_id}"


def create_session(
    matrix: PatternMatrix,
    graph: PrecedenceGraph,
    scope: tuple[ScopeEntry, ...] | list[ScopeEntry],
    mode: Mode = Mode.FULL,
    session_id: str | None = None,
    created: str | None = None,
) -> Session:
    """Instantiate one pending question per in-scope concern per group.

    Candidate bindings are resolved to the same-group instance of the
    referenced concern; a binding whose supplier is filtered out of scope is
    an error.
    """
    scope = tuple(scope)
    declared = set(matrix.group_ids())
    for entry in scope:
        if entry.group not in declared:
            raise UnknownGroup(f"group {entry.group!r} is not declared in the matrix")

    pairs: list[tuple[str, object]] = []
    seen: set[str] = set()
    for entry in scope:
        for concern in matrix.concerns:
            if entry.group not in concern.groups:
                continue
            if entry.tag is not None and entry.tag not in concern.tags:
                continue
            iid = instance_id_for(entry.group, concern.id)
            if iid not in seen:
                seen.add(iid)
                pairs.append((entry.group, concern))

    instances: list[QuestionInstance] = []
    for group, concern in pairs:
        candidates_from = None
        if concern.candidates_from is not None:
            candidates_from = instance_id_for(group, concern.candidates_from)
            if candidates_from not in seen:
                raise DanglingCandidateRef(
                    f"concern {concern.id!r} draws candidates from "
                    f"{concern.candidates_from!r}, which is not in scope for "
                    f"group {group!r}"
                )
        instances.append(
            QuestionInstance(
                id=instance_id_for(group, concern.id),
                concern_id=concern.id,
                group=group,
                interrogative=concern.interrogative,
                prompt=concern.prompt,
                status=Status.PENDING,
                gatekeeper=concern.gatekeeper,
                candidates_from=candidates_from,
                tags=concern.tags,
            )
        )

    return Session(
        id=session_id or f"sess-{uuid.uuid4().hex[:12]}",
        matrix_ref=f"{matrix.name}@{matrix.version}",
        graph_ref=graph.version,
        scope=scope,
        mode=mode,
        instances=tuple(instances),
        answers=(),
        created=created or now_iso(),
        graph=graph,
    )


def _satisfied_interrogatives(session: Session) -> set[Interrogative]:
    """Interrogatives with at least one answered instance and none pending.

    Skipped and gated-out instances do not block; interrogatives with no
    instance in scope are never satisfied.
    """
    answered: set[Interrogative] = set()
    pending: set[Interrogative] = set()
    for inst in session.instances:
        if inst.status is Status.ANSWERED:
            answered.add(inst.interrogative)
        elif inst.status is Status.PENDING:
            pending.add(inst.interrogative)
    return answered - pending


def _has_answered(session: Session, interrogative: Interrogative) -> bool:
    return any(
        inst.status is Status.ANSWERED and inst.interrogative is interrogative
        for inst in session.instances
    )


def next_questions(session: Session) -> list[QuestionInstance]:
    """Pending instances that may be asked now, by canonical rank then
    matrix cell order.

    An instance is emitted when its interrogative's rule is met (at least
    one instance of each prerequisite answered and none still pending) and,
    for candidate-bound selection questions, the supplying instance is
    answered. In triage mode a pending gatekeeper why focuses the session:
    only who and what questions are offered alongside it, and the gatekeeper
    itself unblocks as soon as one who and one what are answered.
    """
    satisfied = _satisfied_interrogatives(session)
    open_interrogatives = unblocked(session.graph, satisfied)
    triage = session.mode is Mode.TRIAGE
    gatekeeper_open = triage and any(
        inst.gatekeeper and inst.status is Status.PENDING for inst in session.instances
    )
    gatekeeper_ready = _has_answered(session, Interrogative.WHO) and _has_answered(
        session, Interrogative.WHAT
    )

    emitted: list[QuestionInstance] = []
    for inst in session.instances:
        if inst.status is not Status.PENDING:
            continue
        if triage and inst.gatekeeper:
            ok = gatekeeper_ready
        else:
            ok = inst.interrogative in open_interrogatives
            if gatekeeper_open and inst.interrogative not in (
                Interrogative.WHO,
                Interrogative.WHAT,
            ):
                ok = False
        if ok and inst.candidates_from is not None:
            if session.instance(inst.candidates_from).status is not Status.ANSWERED:
                ok = False
        if ok:
            emitted.append(inst)

    order = {inst.id: index for index, inst in enumerate(session.instances)}
    emitted.sort(key=lambda inst: (inst.interrogative.rank, order[inst.id]))
    return emitted


def record_answer(session: Session, instance_id: str, answer: Answer) -> Session:
    """Mark a pending instance answered and append its answer."""
    if answer.instance_id != instance_id:
        raise ValueError(
            f"answer is for {answer.instance_id!r}, not {instance_id!r}"
        )
    inst = session.instance(instance_id)
    if inst.status is not Status.PENDING:
        raise NotPending(f"instance {instance_id!r} is {inst.status.value}")
    if answer.verdict is not None and inst.interrogative is not Interrogative.WHY:
        raise VerdictOnNonWhy(
            f"instance {instance_id!r} asks {inst.interrogative.value!r}; only "
            "why answers carry a verdict"
        )
    if inst.candidates_from is not None and answer.items:
        source_answer = session.answer_for(inst.candidates_from)
        candidates = set(source_answer.items or ()) if source_answer else set()
        extras = set(answer.items) - candidates
        if extras:
            raise SubsetViolation(
                f"items {sorted(extras)} are not among the candidates supplied "
                f"by {inst.candidates_from!r}"
            )
    updated = session._with_status(instance_id, Status.ANSWERED)
    return replace(updated, answers=updated.answers + (answer,))


def skip(session: Session, instance_id: str) -> Session:
    """Mark a pending instance skipped; it is never offered again."""
    inst = session.instance(instance_id)
    if inst.status is not Status.PENDING:
        raise NotPending(f"instance {instance_id!r} is {inst.status.value}")
    return session._with_status(instance_id, Status.SKIPPED)


def apply_verdict(
    session: Session,
    why_instance_id: str,
    verdict: Verdict,
    affected_tag: str,
) -> Session:
    """Act on an answered why: not_needed gates out every pending instance
    carrying the tag, proceed changes nothing."""
    inst = session.instance(why_instance_id)
    if inst.interrogative is not Interrogative.WHY:
        raise NotWhy(f"instance {why_instance_id!r} asks {inst.interrogative.value!r}")
    if inst.status is not Status.ANSWERED:
        raise NotAnswered(f"instance {why_instance_id!r} is {inst.status.value}")
    answer = session.answer_for(why_instance_id)
    if answer is None or answer.verdict is None:
        raise NotAnswered(
            f"instance {why_instance_id!r} has no verdict recorded on its answer"
        )
    if verdict is not Verdict.NOT_NEEDED:
        return session
    instances = tuple(
        replace(other, status=Status.GATED_OUT)
        if other.status is Status.PENDING and affected_tag in other.tags
        else other
        for other in session.instances
    )
    return replace(session, instances=instances)


@dataclass(frozen=True)
class CellCoverage:
    total: int = 0
    answered: int = 0
    skipped: int = 0
    gated_out: int = 0

    @property
    def pending(self) -> int:
        return self.total - self.answered - self.skipped - self.gated_out


@dataclass(frozen=True)
class CoverageReport:
    cells: dict[tuple[str, Interrogative], CellCoverage]


def coverage(session: Session) -> CoverageReport:
    """Per-cell status tallies over every scope group and interrogative."""
    groups: list[str] = []
    for entry in session.scope:
        if entry.group not in groups:
            groups.append(entry.group)
    counts: dict[tuple[str, Interrogative], dict[str, int]] = {
        (group, interrogative): {"total": 0, "answered": 0, "skipped": 0, "gated_out": 0}
        for group in groups
        for interrogative in CANONICAL_ORDER
    }
    for inst in session.instances:
        cell = counts.setdefault(
            (inst.group, inst.interrogative),
            {"total": 0, "answered": 0, "skipped": 0, "gated_out": 0},
        )
        cell["total"] += 1
        if inst.status is Status.ANSWERED:
            cell["answered"] += 1
        elif inst.status is Status.SKIPPED:
            cell["skipped"] += 1
        elif inst.status is Status.GATED_OUT:
            cell["gated_out"] += 1
    return CoverageReport(
        cells={key: CellCoverage(**values) for key, values in counts.items()}
    )


@dataclass(frozen=True)
class LinkMatrix:
    """Cross-reference between data entities (rows) and functions (columns)
    derived from answered selection questions."""

    rows: tuple[str, ...]
    columns: tuple[str, ...]
    links: frozenset[tuple[str, str]]


def link_matrix(session: Session) -> LinkMatrix:
    """Build the entity-to-function link matrix from answered which
    instances tagged "link"; the function context comes from the concern's
    "function:<name>" tags."""
    rows: set[str] = set()
    columns: set[str] = set()
    links: set[tuple[str, str]] = set()
    for inst in session.instances:
        if inst.status is not Status.ANSWERED:
            continue
        if inst.interrogative is not Interrogative.WHICH or "link" not in inst.tags:
            continue
        functions = [
            tag.removeprefix("function:")
            for tag in sorted(inst.tags)
            if tag.startswith("function:")
        ]
        if not functions:
            continue
        answer = session.answer_for(inst.id)
        items = answer.items if answer and answer.items else ()
        columns.update(functions)
        for item in items:
            rows.add(item)
            for function in functions:
                links.add((item, function))
    return LinkMatrix(
        rows=tuple(sorted(rows)),
        columns=tuple(sorted(columns)),
        links=frozenset(links),
    )
