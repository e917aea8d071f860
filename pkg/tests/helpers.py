"""Shared builders for randomized tests: satisfiable graphs, valid matrices,
and a random session driver that checks scheduling invariants as it goes."""

from __future__ import annotations

import random
import string

from w6h.model import (
    CANONICAL_ORDER,
    Concern,
    DependencyRule,
    Interrogative,
    PatternMatrix,
    PrecedenceGraph,
    StakeholderGroup,
)
from w6h.session import (
    Answer,
    Mode,
    QuestionInstance,
    ScopeEntry,
    Session,
    Status,
    Verdict,
    apply_verdict,
    coverage,
    create_session,
    next_questions,
    record_answer,
    skip,
)
from w6h.storage import (
    SessionEvent,
    answered_event,
    created_event,
    gated_event,
    skipped_event,
)

WORDS = ("alpha", "beta", "gamma", "delta", "omega", "sigma", "kappa", "lambda")


def random_satisfiable_graph(rng: random.Random) -> PrecedenceGraph:
    """A graph built around a witness permutation, so it is satisfiable by
    construction: every rule only requires interrogatives earlier in the
    witness."""
    witness = list(CANONICAL_ORDER)
    rng.shuffle(witness)
    rules: list[DependencyRule] = []
    for index in range(1, len(witness)):
        if rng.random() < 0.45:
            continue
        preds = witness[:index]
        chosen = rng.sample(preds, rng.randint(1, len(preds)))
        cut = rng.randint(0, len(chosen))
        all_of = frozenset(chosen[:cut])
        rest = chosen[cut:]
        any_of: list[frozenset[Interrogative]] = []
        while rest:
            size = rng.randint(1, len(rest))
            any_of.append(frozenset(rest[:size]))
            rest = rest[size:]
        rules.append(
            DependencyRule(target=witness[index], all_of=all_of, any_of=tuple(any_of))
        )
    return PrecedenceGraph(rules=tuple(rules), version="rnd")


def random_text(rng: random.Random, max_words: int = 4) -> str:
    return " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, max_words)))


def random_matrix(rng: random.Random) -> PatternMatrix:
    """A small structurally valid matrix: unique ids, declared groups, some
    tags, an occasional gatekeeper why, and candidate-bound which concerns
    whose supplier covers the same groups and tags."""
    group_ids = [f"g{i}" for i in range(rng.randint(1, 3))]
    groups = tuple(
        StakeholderGroup(id=gid, display_name=gid.upper()) for gid in group_ids
    )
    concerns: list[Concern] = []
    tag_pool = ["req-a", "req-b", "req-c"]
    for index in range(rng.randint(3, 14)):
        interrogative = rng.choice(CANONICAL_ORDER)
        c_groups = frozenset(rng.sample(group_ids, rng.randint(1, len(group_ids))))
        tags = frozenset(rng.sample(tag_pool, rng.randint(0, 2)))
        gatekeeper = interrogative is Interrogative.WHY and rng.random() < 0.4
        candidates_from = None
        if interrogative is Interrogative.WHICH and rng.random() < 0.5:
            suppliers = [
                c
                for c in concerns
                if c.interrogative in (Interrogative.WHO, Interrogative.WHAT)
                and c.groups >= c_groups
                and c.tags >= tags
            ]
            if suppliers:
                candidates_from = rng.choice(suppliers).id
        concerns.append(
            Concern(
                id=f"c{index}",
                text=random_text(rng),
                interrogative=interrogative,
                groups=c_groups,
                question=None if rng.random() < 0.7 else f"{random_text(rng)}?",
                tags=tags,
                gatekeeper=gatekeeper,
                candidates_from=candidates_from,
            )
        )
    return PatternMatrix(
        name=f"m-{rng.randint(0, 999)}",
        version=str(rng.randint(1, 9)),
        groups=groups,
        concerns=tuple(concerns),
    )


def random_document_matrix(rng: random.Random) -> PatternMatrix:
    """A matrix with adversarial field content (unicode, punctuation) for
    serialization round-trips."""
    alphabet = string.ascii_letters + string.digits + " -_'\",.:;()[]{}/\\\nüßéπ漢字"

    def text(max_len: int) -> str:
        return "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))

    group_ids = [f"grp-{i}" for i in range(rng.randint(1, 4))]
    groups = tuple(StakeholderGroup(id=g, display_name=text(18)) for g in group_ids)
    concerns = []
    for index in range(rng.randint(0, 12)):
        concerns.append(
            Concern(
                id=f"c{index}-{rng.randint(0, 99)}",
                text=text(40),
                interrogative=rng.choice(CANONICAL_ORDER),
                groups=frozenset(rng.sample(group_ids, rng.randint(1, len(group_ids)))),
                question=None if rng.random() < 0.5 else text(40),
                tags=frozenset(text(8) for _ in range(rng.randint(0, 3))),
                gatekeeper=rng.random() < 0.2,
                candidates_from=None if rng.random() < 0.8 else f"c{rng.randint(0, 12)}",
            )
        )
    return PatternMatrix(
        name=text(12), version=text(4), groups=groups, concerns=tuple(concerns)
    )


def effective_rule_satisfied(session: Session, inst: QuestionInstance) -> bool:
    """Independent re-check of the emission condition for one instance."""
    answered = {
        i.interrogative for i in session.instances if i.status is Status.ANSWERED
    }
    pending = {i.interrogative for i in session.instances if i.status is Status.PENDING}
    satisfied = answered - pending
    if session.mode is Mode.TRIAGE and inst.gatekeeper:
        ok = Interrogative.WHO in answered and Interrogative.WHAT in answered
    else:
        rule = session.graph.rule_for(inst.interrogative)
        ok = rule is None or rule.is_met_by(satisfied)
    if ok and inst.candidates_from is not None:
        source = next(i for i in session.instances if i.id == inst.candidates_from)
        ok = source.status is Status.ANSWERED
    return ok


def assert_coverage_conserved(session: Session) -> None:
    report = coverage(session)
    for cell in report.cells.values():
        assert cell.pending + cell.answered + cell.skipped + cell.gated_out == cell.total
        assert cell.pending >= 0


def drive_random_session(
    rng: random.Random,
    matrix: PatternMatrix | None = None,
    graph: PrecedenceGraph | None = None,
    mode: Mode | None = None,
    max_steps: int = 30,
) -> tuple[Session, list[SessionEvent]]:
    """Run a random session, asserting scheduling soundness at every step.

    Only emitted instances are answered, so in full mode the final answer
    transcript must also pass order validation (checked by callers).
    """
    matrix = matrix if matrix is not None else random_matrix(rng)
    graph = graph if graph is not None else random_satisfiable_graph(rng)
    mode = mode if mode is not None else rng.choice([Mode.FULL, Mode.TRIAGE])
    group_ids = list(matrix.group_ids())
    scope = [
        ScopeEntry(group=g, tag=None)
        for g in rng.sample(group_ids, rng.randint(1, len(group_ids)))
    ]
    session = create_session(
        matrix, graph, scope, mode, session_id=f"drv-{rng.randint(0, 10**9)}"
    )
    events = [created_event(session)]
    dead: set[str] = set()  # ids ever skipped or gated out

    for _ in range(max_steps):
        emitted = next_questions(session)
        for inst in emitted:
            assert inst.status is Status.PENDING
            assert inst.id not in dead, f"{inst.id} re-emitted after skip/gate"
            assert effective_rule_satisfied(session, inst), (
                f"{inst.id} emitted with unmet prerequisites"
            )
        assert_coverage_conserved(session)

        pending = [i for i in session.instances if i.status is Status.PENDING]
        if not pending:
            break
        roll = rng.random()
        gateable = [
            (i, a)
            for i in session.instances
            if i.status is Status.ANSWERED and i.interrogative is Interrogative.WHY
            for a in [session.answer_for(i.id)]
            if a is not None and a.verdict is not None
        ]
        if roll < 0.68 and emitted:
            inst = rng.choice(emitted)
            items: tuple[str, ...] | None = None
            if inst.candidates_from is not None:
                source_answer = session.answer_for(inst.candidates_from)
                pool = list(source_answer.items or ()) if source_answer else []
                items = tuple(rng.sample(pool, rng.randint(0, len(pool))))
            elif rng.random() < 0.5:
                items = tuple(
                    random_text(rng, 1) for _ in range(rng.randint(1, 3))
                )
            verdict = None
            if inst.interrogative is Interrogative.WHY and rng.random() < 0.8:
                verdict = rng.choice([Verdict.PROCEED, Verdict.NOT_NEEDED])
            answer = Answer(
                instance_id=inst.id,
                text=random_text(rng),
                items=items,
                verdict=verdict,
                timestamp=f"2026-08-19T00:00:{len(events):02d}+00:00",
            )
            session = record_answer(session, inst.id, answer)
            events.append(answered_event(len(events) + 1, answer))
        elif roll < 0.85:
            inst = rng.choice(pending)
            session = skip(session, inst.id)
            events.append(skipped_event(len(events) + 1, inst.id, timestamp="t"))
            dead.add(inst.id)
        elif gateable:
            inst, answer = rng.choice(gateable)
            verdict = answer.verdict
            tags = sorted({t for p in pending for t in p.tags})
            tag = rng.choice(tags) if tags and rng.random() < 0.8 else "no-such-tag"
            before = {
                i.id for i in session.instances if i.status is Status.PENDING
            }
            session = apply_verdict(session, inst.id, verdict, tag)
            events.append(
                gated_event(len(events) + 1, inst.id, verdict, tag, timestamp="t")
            )
            if verdict is Verdict.NOT_NEEDED:
                for i in session.instances:
                    if i.status is Status.GATED_OUT and i.id in before:
                        dead.add(i.id)
    return session, events
