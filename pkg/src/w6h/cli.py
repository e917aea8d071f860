"""Command-line front end.

Exit codes: 0 clean, 1 findings or state errors, 2 usage and IO errors.
Commands that read a matrix honor the W6H_MATRIX environment variable as
the default path and fall back to the embedded defaults. Set W6H_NOW to a
fixed ISO-8601 string to pin timestamps (used in tests).
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from . import defaults, linter, model, session as sess, storage
from .errors import ParseError, UnsupportedVersion, W6HError

def _now() -> str:
    return os.environ.get("W6H_NOW") or sess.now_iso()


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(str(exc), 2)
        raise AssertionError("unreachable")


def _load_matrix(path: str | None) -> model.PatternMatrix:
    path = path or os.environ.get("W6H_MATRIX")
    if not path:
        return defaults.default_matrix()
    try:
        return storage.load_matrix(_read_text(path))
    except (ParseError, UnsupportedVersion) as exc:
        _fail(f"{path}: {exc}", 2)
        raise AssertionError("unreachable")


def _load_graph(path: str | None) -> model.PrecedenceGraph:
    if not path:
        return defaults.default_graph()
    try:
        return storage.load_graph(_read_text(path))
    except (ParseError, UnsupportedVersion) as exc:
        _fail(f"{path}: {exc}", 2)
        raise AssertionError("unreachable")


def _write_out(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            _fail(str(exc), 2)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(package_name="w6h")
def main() -> None:
    """Interrogative-driven elicitation planning: questionnaires, linting,
    live sessions, and the companion HTTP service."""


# --------------------------------------------------------------------------
# generate


@main.command()
@click.option("--matrix", "matrix_path", type=str, default=None, help="Matrix document path (default: W6H_MATRIX or embedded).")
@click.option("--group", required=True, help="Stakeholder group id or display name.")
@click.option("--format", "fmt", type=click.Choice(["markdown", "csv"]), default="markdown", show_default=True)
@click.option("--out", type=str, default=None, help="Write to a file instead of stdout.")
def generate(matrix_path: str | None, group: str, fmt: str, out: str | None) -> None:
    """Export one group's questionnaire in canonical question order."""
    matrix = _load_matrix(matrix_path)
    try:
        text = storage.export_questionnaire(matrix, group, fmt)
    except W6HError as exc:
        _fail(str(exc), 2)
        raise AssertionError("unreachable")
    _write_out(text, out)


# --------------------------------------------------------------------------
# lint


@main.command()
@click.argument("doc", type=str)
@click.option("--graph", "graph_path", type=str, default=None, help="Precedence graph document (default: embedded).")
@click.option("--matrix", "matrix_path", type=str, default=None, help="Check cell coverage against this matrix (default: W6H_MATRIX if set).")
@click.option("--json", "as_json", is_flag=True, help="Emit findings as JSON.")
def lint(doc: str, graph_path: str | None, matrix_path: str | None, as_json: bool) -> None:
    """Lint a questionnaire document; exit 1 if any error-severity finding."""
    text = _read_text(doc)
    graph = _load_graph(graph_path)
    matrix: model.PatternMatrix | None = None
    if matrix_path or os.environ.get("W6H_MATRIX"):
        matrix = _load_matrix(matrix_path)
    findings = linter.lint_document(linter.parse_questionnaire(text), graph, matrix)
    if as_json:
        click.echo(storage.findings_to_json(findings), nl=False)
    else:
        for finding in findings:
            click.echo(finding.render())
    if any(f.severity is model.Severity.ERROR for f in findings):
        sys.exit(1)


# --------------------------------------------------------------------------
# matrix


@main.group()
def matrix() -> None:
    """Inspect and edit matrix documents."""


@matrix.command("init")
@click.option("--out", type=str, default=None, help="Destination path (default: stdout).")
def matrix_init(out: str | None) -> None:
    """Write the embedded default matrix as a document."""
    _write_out(storage.save_matrix(defaults.default_matrix()), out)


@matrix.command("validate")
@click.option("--matrix", "matrix_path", type=str, default=None)
def matrix_validate(matrix_path: str | None) -> None:
    """Validate a matrix document; exit 1 on error-severity findings."""
    findings = model.validate_matrix(_load_matrix(matrix_path))
    for finding in findings:
        click.echo(f"{finding.severity.value}: {finding.code}: {finding.message}")
    if not findings:
        click.echo("matrix is valid")
    if any(f.severity is model.Severity.ERROR for f in findings):
        sys.exit(1)


@matrix.command("add-concern")
@click.option("--matrix", "matrix_path", type=str, default=None)
@click.option("--id", "concern_id", required=True)
@click.option("--text", required=True)
@click.option("--interrogative", required=True, type=click.Choice([i.value for i in model.Interrogative]))
@click.option("--group", "groups", multiple=True, required=True, help="Group id; repeatable.")
@click.option("--question", default=None, help="Explicit question prose.")
@click.option("--tag", "tags", multiple=True)
@click.option("--gatekeeper", is_flag=True)
@click.option("--candidates-from", default=None)
@click.option("--out", type=str, default=None, help="Destination (default: the --matrix path, in place).")
def matrix_add_concern(
    matrix_path: str | None,
    concern_id: str,
    text: str,
    interrogative: str,
    groups: tuple[str, ...],
    question: str | None,
    tags: tuple[str, ...],
    gatekeeper: bool,
    candidates_from: str | None,
    out: str | None,
) -> None:
    """Insert a concern into the matrix and write the updated document."""
    destination = out or matrix_path or os.environ.get("W6H_MATRIX")
    if not destination:
        _fail("no destination: pass --out, --matrix, or set W6H_MATRIX", 2)
    loaded = _load_matrix(matrix_path)
    try:
        concern = model.Concern(
            id=concern_id,
            text=text,
            interrogative=model.Interrogative(interrogative),
            groups=frozenset(groups),
            question=question,
            tags=frozenset(tags),
            gatekeeper=gatekeeper,
            candidates_from=candidates_from,
        )
        updated = model.add_concern(loaded, concern)
    except (W6HError, ValueError) as exc:
        _fail(str(exc), 1)
        raise AssertionError("unreachable")
    _write_out(storage.save_matrix(updated), destination)
    click.echo(f"added {concern_id!r} to {destination}", err=True)


# --------------------------------------------------------------------------
# session


@main.group("session")
def session_group() -> None:
    """Run live elicitation sessions backed by an event-log file."""


def _read_session(log_path: str) -> tuple[list[storage.SessionEvent], sess.Session]:
    try:
        events = storage.read_log(log_path)
        return events, storage.replay(events)
    except OSError as exc:
        _fail(str(exc), 2)
    except W6HError as exc:
        _fail(f"{log_path}: {exc}", 2)
    raise AssertionError("unreachable")


def _append(log_path: str, event: storage.SessionEvent) -> None:
    try:
        storage.append_to_log(log_path, event)
    except OSError as exc:
        _fail(str(exc), 2)


def _state_fail(exc: W6HError) -> None:
    _fail(str(exc), 1)


@session_group.command("start")
@click.option("--log", "log_path", required=True, help="Event log path to create.")
@click.option("--matrix", "matrix_path", type=str, default=None)
@click.option("--graph", "graph_path", type=str, default=None)
@click.option("--scope", "scopes", multiple=True, required=True, help="GROUP or GROUP:TAG; repeatable.")
@click.option("--mode", type=click.Choice(["full", "triage"]), default="full", show_default=True)
@click.option("--id", "session_id", default=None, help="Explicit session id.")
def session_start(
    log_path: str,
    matrix_path: str | None,
    graph_path: str | None,
    scopes: tuple[str, ...],
    mode: str,
    session_id: str | None,
) -> None:
    """Create a session over the given scope and write its first event."""
    if Path(log_path).exists():
        _fail(f"{log_path} already exists; refusing to overwrite a session log", 2)
    loaded = _load_matrix(matrix_path)
    graph = _load_graph(graph_path)
    scope = []
    for raw in scopes:
        group, _, tag = raw.partition(":")
        scope.append(sess.ScopeEntry(group=group, tag=tag or None))
    try:
        created = sess.create_session(
            loaded, graph, scope, sess.Mode(mode), session_id=session_id, created=_now()
        )
    except W6HError as exc:
        _state_fail(exc)
        raise AssertionError("unreachable")
    try:
        storage.write_log(log_path, [storage.created_event(created)])
    except OSError as exc:
        _fail(str(exc), 2)
    click.echo(f"session {created.id} with {len(created.instances)} questions -> {log_path}")


@session_group.command("next")
@click.option("--log", "log_path", required=True)
@click.option("--json", "as_json", is_flag=True)
def session_next(log_path: str, as_json: bool) -> None:
    """List the questions that may be asked now."""
    _, current = _read_session(log_path)
    questions = sess.next_questions(current)
    if as_json:
        import json

        click.echo(json.dumps([storage.instance_to_dict(q) for q in questions], indent=2))
        return
    for q in questions:
        click.echo(f"{q.id}  [{q.interrogative.value}]  {q.prompt}")


@session_group.command("answer")
@click.option("--log", "log_path", required=True)
@click.argument("instance_id")
@click.option("--text", required=True)
@click.option("--item", "items", multiple=True, help="Answer item; repeatable (selection answers).")
@click.option("--verdict", type=click.Choice(["proceed", "not_needed"]), default=None)
def session_answer(
    log_path: str, instance_id: str, text: str, items: tuple[str, ...], verdict: str | None
) -> None:
    """Record an answer for a pending question."""
    events, current = _read_session(log_path)
    answer = sess.Answer(
        instance_id=instance_id,
        text=text,
        items=items or None,
        verdict=sess.Verdict(verdict) if verdict else None,
        timestamp=_now(),
    )
    try:
        updated = sess.record_answer(current, instance_id, answer)
    except W6HError as exc:
        _state_fail(exc)
        raise AssertionError("unreachable")
    _append(log_path, storage.answered_event(len(events) + 1, answer))
    newly = [q.id for q in sess.next_questions(updated)]
    click.echo(f"answered {instance_id}; {len(newly)} question(s) now unblocked")


@session_group.command("skip")
@click.option("--log", "log_path", required=True)
@click.argument("instance_id")
def session_skip(log_path: str, instance_id: str) -> None:
    """Skip a pending question; it will not be offered again."""
    events, current = _read_session(log_path)
    try:
        sess.skip(current, instance_id)
    except W6HError as exc:
        _state_fail(exc)
        raise AssertionError("unreachable")
    _append(log_path, storage.skipped_event(len(events) + 1, instance_id, timestamp=_now()))
    click.echo(f"skipped {instance_id}")


@session_group.command("gate")
@click.option("--log", "log_path", required=True)
@click.argument("instance_id")
@click.option("--verdict", required=True, type=click.Choice(["proceed", "not_needed"]))
@click.option("--tag", "affected_tag", required=True)
def session_gate(log_path: str, instance_id: str, verdict: str, affected_tag: str) -> None:
    """Apply an answered why's verdict to everything carrying a tag."""
    events, current = _read_session(log_path)
    try:
        updated = sess.apply_verdict(current, instance_id, sess.Verdict(verdict), affected_tag)
    except W6HError as exc:
        _state_fail(exc)
        raise AssertionError("unreachable")
    _append(
        log_path,
        storage.gated_event(len(events) + 1, instance_id, sess.Verdict(verdict), affected_tag, timestamp=_now()),
    )
    gated = sum(1 for i in updated.instances if i.status is sess.Status.GATED_OUT)
    click.echo(f"verdict {verdict} applied via {instance_id}; {gated} gated out in total")


@session_group.command("report")
@click.option("--log", "log_path", required=True)
@click.option("--json", "as_json", is_flag=True)
def session_report(log_path: str, as_json: bool) -> None:
    """Print the per-cell coverage table."""
    _, current = _read_session(log_path)
    report = sess.coverage(current)
    rows = [
        {
            "group": group,
            "interrogative": interrogative.value,
            "total": cell.total,
            "answered": cell.answered,
            "skipped": cell.skipped,
            "gated_out": cell.gated_out,
            "pending": cell.pending,
        }
        for (group, interrogative), cell in sorted(
            report.cells.items(), key=lambda kv: (kv[0][0], kv[0][1].rank)
        )
    ]
    if as_json:
        import json

        click.echo(json.dumps(rows, indent=2))
        return
    header = f"{'group':<18}{'interrogative':<15}{'total':>6}{'answered':>10}{'skipped':>9}{'gated_out':>11}{'pending':>9}"
    click.echo(header)
    for row in rows:
        click.echo(
            f"{row['group']:<18}{row['interrogative']:<15}{row['total']:>6}"
            f"{row['answered']:>10}{row['skipped']:>9}{row['gated_out']:>11}{row['pending']:>9}"
        )


# --------------------------------------------------------------------------
# serve


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=6480, show_default=True, type=int)
@click.option("--matrix", "matrix_path", type=str, default=None, help="Matrix document to serve and persist edits to.")
@click.option("--graph", "graph_path", type=str, default=None)
@click.option("--ui-dir", default=None, help="Directory of built UI assets to serve at / (default: W6H_UI_DIR).")
def serve(host: str, port: int, matrix_path: str | None, graph_path: str | None, ui_dir: str | None) -> None:
    """Run the HTTP service until interrupted."""
    import uvicorn

    from .api import create_app

    resolved_path = matrix_path or os.environ.get("W6H_MATRIX")
    app = create_app(
        matrix=_load_matrix(matrix_path),
        graph=_load_graph(graph_path),
        matrix_path=resolved_path,
        static_dir=ui_dir or os.environ.get("W6H_UI_DIR"),
    )
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except (OSError, SystemExit) as exc:
        if isinstance(exc, SystemExit) and not exc.code:
            return
        _fail(f"cannot serve on {host}:{port}: {exc}", 2)


if __name__ == "__main__":
    main()
