"""AST and output types for lowering templates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from semflow.rdf.query import Query


@dataclass(frozen=True)
class TextNode:
    text: str


@dataclass(frozen=True)
class InterpNode:
    loop_var: str
    query_var: str
    raw: bool


@dataclass(frozen=True)
class ForNode:
    var: str
    query_name: str
    separator: str
    body: tuple["Node", ...]


Node = Union[TextNode, InterpNode, ForNode]


@dataclass(frozen=True)
class LoweringTemplate:
    output_format: str  # "json" | "csv"
    queries: dict[str, Query]
    body: tuple[Node, ...]


@dataclass(frozen=True)
class RenderedOutput:
    text: str
    output_format: str

    @property
    def bytes(self) -> bytes:
        return self.text.encode("utf-8")
