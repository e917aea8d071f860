"""Elicitation planning around the seven interrogatives: questionnaire
generation, question-order linting, live interview sessions, and coverage
reporting, driven by a precedence graph and a stakeholder pattern matrix."""

from .defaults import default_graph, default_matrix
from .errors import (
    CorruptEvent,
    DanglingCandidateRef,
    DuplicateId,
    NotAnswered,
    NotPending,
    NotWhy,
    ParseError,
    SeqGap,
    SubsetViolation,
    Unclassifiable,
    UnknownGroup,
    UnknownInstance,
    Unsatisfiable,
    UnsupportedVersion,
    VerdictOnNonWhy,
    W6HError,
)
from .linter import (
    Classification,
    LintCode,
    LintFinding,
    QuestionnaireDoc,
    classify,
    lint_document,
    parse_questionnaire,
)
from .model import (
    CANONICAL_ORDER,
    Category,
    Concern,
    DependencyRule,
    Interrogative,
    PatternMatrix,
    PrecedenceGraph,
    Severity,
    StakeholderGroup,
    ValidationFinding,
    add_concern,
    validate_matrix,
)
from .ordering import (
    OrderViolation,
    canonical_order,
    enumerate_valid_orders,
    is_valid_order,
    unblocked,
)
from .session import (
    Answer,
    CoverageReport,
    LinkMatrix,
    Mode,
    QuestionInstance,
    ScopeEntry,
    Session,
    Status,
    Verdict,
    apply_verdict,
    coverage,
    create_session,
    link_matrix,
    next_questions,
    record_answer,
    skip,
)
from .storage import (
    EventKind,
    SessionEvent,
    append_event,
    export_questionnaire,
    findings_to_json,
    load_graph,
    load_matrix,
    read_log,
    replay,
    save_graph,
    save_matrix,
    write_log,
)

__version__ = "0.1.0"

__all__ = [
    "CANONICAL_ORDER",
    "Answer",
    "Category",
    "Classification",
    "Concern",
    "CorruptEvent",
    "CoverageReport",
    "DanglingCandidateRef",
    "DependencyRule",
    "DuplicateId",
    "EventKind",
    "Interrogative",
    "LintCode",
    "LintFinding",
    "LinkMatrix",
    "Mode",
    "NotAnswered",
    "NotPending",
    "NotWhy",
    "OrderViolation",
    "ParseError",
    "PatternMatrix",
    "PrecedenceGraph",
    "QuestionInstance",
    "QuestionnaireDoc",
    "ScopeEntry",
    "SeqGap",
    "Session",
    "SessionEvent",
    "Severity",
    "StakeholderGroup",
    "Status",
    "SubsetViolation",
    "Unclassifiable",
    "UnknownGroup",
    "UnknownInstance",
    "Unsatisfiable",
    "UnsupportedVersion",
    "ValidationFinding",
    "Verdict",
    "VerdictOnNonWhy",
    "W6HError",
    "add_concern",
    "append_event",
    "apply_verdict",
    "canonical_order",
    "classify",
    "coverage",
    "create_session",
    "default_graph",
    "default_matrix",
    "enumerate_valid_orders",
    "export_questionnaire",
    "findings_to_json",
    "is_valid_order",
    "lint_document",
    "link_matrix",
    "load_graph",
    "load_matrix",
    "next_questions",
    "parse_questionnaire",
    "read_log",
    "record_answer",
    "replay",
    "save_graph",
    "save_matrix",
    "skip",
    "unblocked",
    "validate_matrix",
    "write_log",
]
