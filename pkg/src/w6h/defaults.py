"""The embedded default precedence graph and stakeholder pattern matrix,
loaded from the data files shipped with the package."""

from __future__ import annotations

from functools import cache
from importlib import resources

from .model import PatternMatrix, PrecedenceGraph
from .storage import load_graph, load_matrix


def _read(name: str) -> str:
    return resources.files("w6h.data").joinpath(name).read_text(encoding="utf-8")


@cache
def default_graph() -> PrecedenceGraph:
    """Three rules: how needs what plus one of which/where; why needs what
    and how; when needs what, which, where, and how."""
    return load_graph(_read("default_graph.w6h.json"))


@cache
def default_matrix() -> PatternMatrix:
    """The four stakeholder groups with every embedded concern; all 28
    cells are non-empty."""
    return load_matrix(_read("default_matrix.w6h.json"))
