"""Question classification and questionnaire document linting.

Rule codes:

* W6H001 (error): a question's prerequisites are not met by the questions
  asked before it in its section.
* W6H002 (warning): a section asks questions but never a *which* question,
  so selection among alternatives is left implicit.
* W6H003 (error): a question contains no interrogative token.
* W6H004 (warning): a section matching a stakeholder group leaves a
  non-empty matrix cell without any question.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import Unclassifiable
from .model import (
    CANONICAL_ORDER,
    Interrogative,
    PatternMatrix,
    PrecedenceGraph,
    Severity,
)
from .ordering import is_valid_order

_TOKEN_RE = re.compile(r"[a-z']+")

_ALIASES = {"whom": Interrogative.WHO, "whose": Interrogative.WHO}
_BY_TOKEN = {i.value: i for i in Interrogative} | _ALIASES

_QUESTION_LINE_RE = re.compile(r"^(?:- |\d+\. )(?P<text>.*)$")


class LintCode(str, Enum):
    ORDER_VIOLATION = "W6H001"
    MISSING_WHICH = "W6H002"
    UNCLASSIFIABLE = "W6H003"
    EMPTY_CELL_COVERAGE = "W6H004"


_SEVERITY_BY_CODE = {
    LintCode.ORDER_VIOLATION: Severity.ERROR,
    LintCode.MISSING_WHICH: Severity.WARNING,
    LintCode.UNCLASSIFIABLE: Severity.ERROR,
    LintCode.EMPTY_CELL_COVERAGE: Severity.WARNING,
}


@dataclass(frozen=True)
class Classification:
    """The interrogatives found in one question; ``primary`` is the first."""

    primary: Interrogative
    embedded: tuple[Interrogative, ...]
    raw: str


@dataclass(frozen=True)
class Question:
    line: int
    text: str


@dataclass(frozen=True)
class Section:
    label: str | None
    questions: tuple[Question, ...]


@dataclass(frozen=True)
class QuestionnaireDoc:
    sections: tuple[Section, ...]


@dataclass(frozen=True)
class LintFinding:
    code: LintCode
    line: int
    message: str
    severity: Severity

    def render(self) -> str:
        return f"{self.code.value} line {self.line}: {self.message}"


def _finding(code: LintCode, line: int, message: str) -> LintFinding:
    return LintFinding(code=code, line=line, message=message, severity=_SEVERITY_BY_CODE[code])


def classify(question: str) -> Classification:
    """Classify a question by its interrogative tokens.

    Tokenization is case-insensitive on word boundaries; whom and whose
    count as who. The first interrogative token is the primary (so
    prepositional lead-ins like "for whom" or "in which" classify by the
    token itself); later distinct interrogatives are recorded as embedded.

    Raises Unclassifiable when no interrogative token occurs.
    """
    primary: Interrogative | None = None
    embedded: list[Interrogative] = []
    for token in _TOKEN_RE.findall(question.lower()):
        interrogative = _BY_TOKEN.get(token.strip("'"))
        if interrogative is None:
            continue
        if primary is None:
            primary = interrogative
        elif interrogative is not primary and interrogative not in embedded:
            embedded.append(interrogative)
    if primary is None:
        raise Unclassifiable(f"no interrogative token in {question!r}")
    return Classification(primary=primary, embedded=tuple(embedded), raw=question)


def parse_questionnaire(text: str) -> QuestionnaireDoc:
    """Parse markdown-style questionnaire text.

    Lines starting with "## " open a section; "- " or "N. " lines are
    questions; everything else is ignored. Questions before the first
    heading fall into an implicit unlabeled section.
    """
    sections: list[Section] = []
    label: str | None = None
    questions: list[Question] = []
    started = False

    def flush() -> None:
        if started:
            sections.append(Section(label=label, questions=tuple(questions)))

    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("## "):
            flush()
            label = line[3:].strip()
            questions = []
            started = True
            continue
        match = _QUESTION_LINE_RE.match(line)
        if match:
            question_text = match.group("text").strip()
            if question_text:
                questions.append(Question(line=lineno, text=question_text))
                started = True
    flush()
    return QuestionnaireDoc(sections=tuple(sections))


def lint_document(
    doc: QuestionnaireDoc,
    graph: PrecedenceGraph,
    matrix: PatternMatrix | None = None,
) -> list[LintFinding]:
    """Lint every section of a questionnaire document.

    Classification failures produce W6H003; the primary interrogatives of
    the classifiable questions are order-checked for W6H001; a section with
    questions but no which question gets one W6H002; with a matrix given,
    sections whose label matches a group get W6H004 for each interrogative
    whose cell has concerns but no question.
    """
    findings: list[LintFinding] = []
    for section in doc.sections:
        if not section.questions:
            continue
        classified: list[tuple[Question, Classification]] = []
        for question in section.questions:
            try:
                classified.append((question, classify(question.text)))
            except Unclassifiable:
                findings.append(
                    _finding(
                        LintCode.UNCLASSIFIABLE,
                        question.line,
                        f"no interrogative word found in {question.text!r}",
                    )
                )

        primaries = [classification.primary for _, classification in classified]
        for violation in is_valid_order(graph, primaries):
            question = classified[violation.position][0]
            missing: list[str] = sorted(i.value for i in violation.unmet_all_of)
            for group in violation.unmet_any_of:
                missing.append(" or ".join(sorted(i.value for i in group)))
            findings.append(
                _finding(
                    LintCode.ORDER_VIOLATION,
                    question.line,
                    f"{violation.interrogative.value!r} question asked before "
                    f"its prerequisites ({', '.join(missing)})",
                )
            )

        first_line = section.questions[0].line
        if Interrogative.WHICH not in primaries:
            where = f"section {section.label!r}" if section.label else "section"
            findings.append(
                _finding(
                    LintCode.MISSING_WHICH,
                    first_line,
                    f"{where} asks no 'which' question; selection among "
                    "alternatives is left implicit",
                )
            )

        if matrix is not None and section.label:
            group = matrix.find_group(section.label)
            if group is not None:
                asked = set(primaries)
                for interrogative in CANONICAL_ORDER:
                    if interrogative in asked:
                        continue
                    if matrix.cell(group.id, interrogative):
                        findings.append(
                            _finding(
                                LintCode.EMPTY_CELL_COVERAGE,
                                first_line,
                                f"group {group.display_name!r} has "
                                f"{interrogative.value!r} concerns but the section "
                                "asks no such question",
                            )
                        )
    findings.sort(key=lambda f: (f.line, f.code.value))
    return findings
