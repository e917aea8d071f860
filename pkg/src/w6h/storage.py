"""Document formats and persistence.

Matrix and graph documents are JSON (extension .w6h.json) with a
format_version field; session logs are append-only JSON lines (extension
.w6hlog.jsonl), one event per line, with a gap-free seq starting at 1. The
first event of a log embeds a full session snapshot, so a log file is
self-contained. Questionnaire exports are markdown or CSV.

Serialization is deterministic: the same value always produces the same
bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    CorruptEvent,
    ParseError,
    SeqGap,
    UnknownGroup,
    UnsupportedVersion,
    W6HError,
)
from .linter import LintFinding
from .model import (
    CANONICAL_ORDER,
    Concern,
    DependencyRule,
    Interrogative,
    PatternMatrix,
    PrecedenceGraph,
    StakeholderGroup,
)
from .session import (
    Answer,
    Mode,
    QuestionInstance,
    ScopeEntry,
    Session,
    Status,
    Verdict,
    apply_verdict,
    now_iso,
    record_answer,
    skip,
)

FORMAT_VERSION = "1"
MATRIX_SUFFIX = ".w6h.json"
LOG_SUFFIX = ".w6hlog.jsonl"


# --------------------------------------------------------------------------
# matrix and graph documents


def _parse_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ParseError("document root must be a JSON object")
    return data


def _check_version(data: dict) -> None:
    version = data.get("format_version")
    if version is None:
        raise ParseError("document has no format_version field")
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(
            f"format_version {version!r} is not supported (expected {FORMAT_VERSION!r})"
        )


def _by_rank(interrogatives: Iterable[Interrogative]) -> list[str]:
    return [i.value for i in sorted(interrogatives, key=lambda i: i.rank)]


def concern_to_dict(concern: Concern) -> dict:
    data: dict = {
        "id": concern.id,
        "text": concern.text,
        "interrogative": concern.interrogative.value,
        "groups": sorted(concern.groups),
    }
    if concern.question is not None:
        data["question"] = concern.question
    if concern.tags:
        data["tags"] = sorted(concern.tags)
    if concern.gatekeeper:
        data["gatekeeper"] = True
    if concern.candidates_from is not None:
        data["candidates_from"] = concern.candidates_from
    return data


def concern_from_dict(data: dict) -> Concern:
    try:
        return Concern(
            id=data["id"],
            text=data["text"],
            interrogative=Interrogative(data["interrogative"]),
            groups=frozenset(data["groups"]),
            question=data.get("question"),
            tags=frozenset(data.get("tags", ())),
            gatekeeper=bool(data.get("gatekeeper", False)),
            candidates_from=data.get("candidates_from"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed concern record: {exc}") from exc


def matrix_to_dict(matrix: PatternMatrix) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "matrix",
        "name": matrix.name,
        "version": matrix.version,
        "groups": [
            {"id": group.id, "display_name": group.display_name}
            for group in matrix.groups
        ],
        "concerns": [concern_to_dict(concern) for concern in matrix.concerns],
    }


def matrix_from_dict(data: dict) -> PatternMatrix:
    _check_version(data)
    if data.get("kind", "matrix") != "matrix":
        raise ParseError(f"expected a matrix document, got kind {data.get('kind')!r}")
    try:
        groups = tuple(
            StakeholderGroup(id=g["id"], display_name=g["display_name"])
            for g in data["groups"]
        )
        concerns = tuple(concern_from_dict(c) for c in data["concerns"])
        return PatternMatrix(
            name=data["name"],
            version=data["version"],
            groups=groups,
            concerns=concerns,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix document: {exc}") from exc


def save_matrix(matrix: PatternMatrix) -> str:
    return json.dumps(matrix_to_dict(matrix), indent=2, ensure_ascii=False) + "\n"


def load_matrix(text: str) -> PatternMatrix:
    return matrix_from_dict(_parse_json(text))


def graph_to_dict(graph: PrecedenceGraph) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "graph",
        "version": graph.version,
        "rules": [
            {
                "target": rule.target.value,
                "all_of": _by_rank(rule.all_of),
                "any_of": [_by_rank(group) for group in rule.any_of],
            }
            for rule in graph.rules
        ],
    }


def graph_from_dict(data: dict) -> PrecedenceGraph:
    _check_version(data)
    if data.get("kind", "graph") != "graph":
        raise ParseError(f"expected a graph document, got kind {data.get('kind')!r}")
    try:
        rules = tuple(
            DependencyRule(
                target=Interrogative(r["target"]),
                all_of=frozenset(Interrogative(i) for i in r.get("all_of", ())),
                any_of=tuple(
                    frozenset(Interrogative(i) for i in group)
                    for group in r.get("any_of", ())
                ),
            )
            for r in data["rules"]
        )
        return PrecedenceGraph(rules=rules, version=data["version"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph document: {exc}") from exc


def save_graph(graph: PrecedenceGraph) -> str:
    return json.dumps(graph_to_dict(graph), indent=2, ensure_ascii=False) + "\n"


def load_graph(text: str) -> PrecedenceGraph:
    return graph_from_dict(_parse_json(text))


# --------------------------------------------------------------------------
# session snapshots (used by the created event and by the HTTP layer)


def instance_to_dict(instance: QuestionInstance) -> dict:
    return {
        "id": instance.id,
        "concern_id": instance.concern_id,
        "group": instance.group,
        "interrogative": instance.interrogative.value,
        "prompt": instance.prompt,
        "status": instance.status.value,
        "gatekeeper": instance.gatekeeper,
        "candidates_from": instance.candidates_from,
        "tags": sorted(instance.tags),
    }


def instance_from_dict(data: dict) -> QuestionInstance:
    return QuestionInstance(
        id=data["id"],
        concern_id=data["concern_id"],
        group=data["group"],
        interrogative=Interrogative(data["interrogative"]),
        prompt=data["prompt"],
        status=Status(data["status"]),
        gatekeeper=bool(data.get("gatekeeper", False)),
        candidates_from=data.get("candidates_from"),
        tags=frozenset(data.get("tags", ())),
    )


def answer_to_dict(answer: Answer) -> dict:
    return {
        "instance_id": answer.instance_id,
        "text": answer.text,
        "items": list(answer.items) if answer.items is not None else None,
        "verdict": answer.verdict.value if answer.verdict is not None else None,
        "timestamp": answer.timestamp,
    }


def answer_from_dict(data: dict) -> Answer:
    verdict = data.get("verdict")
    items = data.get("items")
    return Answer(
        instance_id=data["instance_id"],
        text=data["text"],
        items=tuple(items) if items is not None else None,
        verdict=Verdict(verdict) if verdict is not None else None,
        timestamp=data.get("timestamp", ""),
    )


def session_to_dict(session: Session) -> dict:
    return {
        "id": session.id,
        "matrix_ref": session.matrix_ref,
        "graph_ref": session.graph_ref,
        "scope": [
            {"group": entry.group, "tag": entry.tag} for entry in session.scope
        ],
        "mode": session.mode.value,
        "created": session.created,
        "graph": graph_to_dict(session.graph),
        "instances": [instance_to_dict(i) for i in session.instances],
        "answers": [answer_to_dict(a) for a in session.answers],
    }


def session_from_dict(data: dict) -> Session:
    try:
        return Session(
            id=data["id"],
            matrix_ref=data["matrix_ref"],
            graph_ref=data["graph_ref"],
            scope=tuple(
                ScopeEntry(group=e["group"], tag=e.get("tag")) for e in data["scope"]
            ),
            mode=Mode(data["mode"]),
            instances=tuple(instance_from_dict(i) for i in data["instances"]),
            answers=tuple(answer_from_dict(a) for a in data["answers"]),
            created=data["created"],
            graph=graph_from_dict(data["graph"]),
        )
    except (KeyError, TypeError, ValueError, ParseError, UnsupportedVersion) as exc:
        raise CorruptEvent(f"malformed session snapshot: {exc}") from exc


# --------------------------------------------------------------------------
# session event log


class EventKind(str, Enum):
    CREATED = "created"
    ANSWERED = "answered"
    SKIPPED = "skipped"
    GATED = "gated"


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    kind: EventKind
    payload: dict
    timestamp: str


def created_event(session: Session, timestamp: str | None = None) -> SessionEvent:
    return SessionEvent(
        seq=1,
        kind=EventKind.CREATED,
        payload=session_to_dict(session),
        timestamp=timestamp or session.created,
    )


def answered_event(seq: int, answer: Answer, timestamp: str | None = None) -> SessionEvent:
    return SessionEvent(
        seq=seq,
        kind=EventKind.ANSWERED,
        payload={"instance_id": answer.instance_id, "answer": answer_to_dict(answer)},
        timestamp=timestamp or answer.timestamp or now_iso(),
    )


def skipped_event(seq: int, instance_id: str, timestamp: str | None = None) -> SessionEvent:
    return SessionEvent(
        seq=seq,
        kind=EventKind.SKIPPED,
        payload={"instance_id": instance_id},
        timestamp=timestamp or now_iso(),
    )


def gated_event(
    seq: int,
    why_instance_id: str,
    verdict: Verdict,
    affected_tag: str,
    timestamp: str | None = None,
) -> SessionEvent:
    return SessionEvent(
        seq=seq,
        kind=EventKind.GATED,
        payload={
            "instance_id": why_instance_id,
            "verdict": verdict.value,
            "affected_tag": affected_tag,
        },
        timestamp=timestamp or now_iso(),
    )


def append_event(
    log: Sequence[SessionEvent], event: SessionEvent
) -> list[SessionEvent]:
    """Append one event, enforcing a gap-free seq starting at 1."""
    expected = log[-1].seq + 1 if log else 1
    if event.seq != expected:
        raise SeqGap(f"expected seq {expected}, got {event.seq}")
    return list(log) + [event]


def replay(log: Sequence[SessionEvent]) -> Session:
    """Fold a log back into the session that produced it.

    The first event must be the created snapshot; later events are applied
    through the session operations, so a replayed log re-checks every
    transition it claims.
    """
    if not log:
        raise CorruptEvent("empty log: no created event")
    expected = 1
    for event in log:
        if event.seq != expected:
            raise SeqGap(f"expected seq {expected}, got {event.seq}")
        expected += 1
    first = log[0]
    if first.kind is not EventKind.CREATED:
        raise CorruptEvent(f"log must start with a created event, got {first.kind.value!r}")
    session = session_from_dict(first.payload)
    for event in log[1:]:
        try:
            if event.kind is EventKind.CREATED:
                raise CorruptEvent(f"second created event at seq {event.seq}")
            elif event.kind is EventKind.ANSWERED:
                answer = answer_from_dict(event.payload["answer"])
                session = record_answer(session, event.payload["instance_id"], answer)
            elif event.kind is EventKind.SKIPPED:
                session = skip(session, event.payload["instance_id"])
            else:
                session = apply_verdict(
                    session,
                    event.payload["instance_id"],
                    Verdict(event.payload["verdict"]),
                    event.payload["affected_tag"],
                )
        except (SeqGap, CorruptEvent):
            raise
        except (W6HError, KeyError, TypeError, ValueError) as exc:
            raise CorruptEvent(f"event seq {event.seq} cannot be applied: {exc}") from exc
    return session


def event_to_line(event: SessionEvent) -> str:
    return json.dumps(
        {
            "seq": event.seq,
            "kind": event.kind.value,
            "timestamp": event.timestamp,
            "payload": event.payload,
        },
        ensure_ascii=False,
    )


def event_from_line(line: str, lineno: int | None = None) -> SessionEvent:
    where = f" at line {lineno}" if lineno is not None else ""
    try:
        data = json.loads(line)
        return SessionEvent(
            seq=int(data["seq"]),
            kind=EventKind(data["kind"]),
            payload=data["payload"],
            timestamp=data.get("timestamp", ""),
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CorruptEvent(f"unreadable event{where}: {exc}") from exc


def read_log(path: str | Path) -> list[SessionEvent]:
    """Read and validate a whole log file (gap-free seq from 1)."""
    events: list[SessionEvent] = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        events = append_event(events, event_from_line(line, lineno))
    return events


def write_log(path: str | Path, events: Sequence[SessionEvent]) -> None:
    text = "".join(event_to_line(event) + "\n" for event in events)
    Path(path).write_text(text, encoding="utf-8")


def append_to_log(path: str | Path, event: SessionEvent) -> None:
    with open(path, "a", encoding="utf-8") as handle:
        handle.write(event_to_line(event) + "\n")


# --------------------------------------------------------------------------
# exports


def export_questionnaire(
    matrix: PatternMatrix, group: str, format: str = "markdown"
) -> str:
    """Render one group's questions in canonical rank order.

    Markdown output starts with "## <group display name>", groups questions
    under "### <Interrogative>" subheadings, and lists each prompt as a
    "- " line, so parse_questionnaire reads it back with the same question
    order and text. CSV has columns group, interrogative, rank, concern_id,
    prompt.
    """
    resolved = matrix.find_group(group)
    if resolved is None:
        raise UnknownGroup(f"group {group!r} is not declared in the matrix")
    cells = [
        (interrogative, matrix.cell(resolved.id, interrogative))
        for interrogative in CANONICAL_ORDER
    ]
    if format == "markdown":
        lines: list[str] = [f"## {resolved.display_name}", ""]
        for interrogative, concerns in cells:
            if not concerns:
                continue
            lines.append(f"### {interrogative.label}")
            lines.append("")
            for concern in concerns:
                lines.append(f"- {concern.prompt}")
            lines.append("")
        while lines and lines[-1] == "":
            lines.pop()
        return "\n".join(lines) + "\n"
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["group", "interrogative", "rank", "concern_id", "prompt"])
        for interrogative, concerns in cells:
            for concern in concerns:
                writer.writerow(
                    [
                        resolved.id,
                        interrogative.value,
                        interrogative.rank,
                        concern.id,
                        concern.prompt,
                    ]
                )
        return buffer.getvalue()
    raise ValueError(f"unknown export format {format!r}")


def findings_to_json(findings: Sequence[LintFinding]) -> str:
    """Machine-readable lint findings: a JSON list of code/line/severity/message."""
    return (
        json.dumps(
            [
                {
                    "code": finding.code.value,
                    "line": finding.line,
                    "severity": finding.severity.value,
                    "message": finding.message,
                }
                for finding in findings
            ],
            indent=2,
            ensure_ascii=False,
        )
        + "\n"
    )
