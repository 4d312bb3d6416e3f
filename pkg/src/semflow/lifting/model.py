"""Data model for declarative lifting mappings."""

from __future__ import annotations

from dataclasses import dataclass, field

from semflow.rdf.terms import Term

# template string pre-split into ("lit", text) / ("ref", path) segments
TemplateSegments = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class FunctionCall:
    name: str
    args: tuple["TermRule", ...]


@dataclass(frozen=True)
class TermRule:
    """Exactly one of template/reference/constant/function is set."""

    template: TemplateSegments | None = None
    reference: str | None = None
    constant: Term | None = None
    function: FunctionCall | None = None
    datatype: str | None = None
    lang: str | None = None

    @property
    def mints_iri(self) -> bool:
        """Templates without datatype/lang mint IRIs; everything else is a literal."""
        return self.template is not None and self.datatype is None and self.lang is None


@dataclass(frozen=True)
class JoinRule:
    map: str
    child_key: str
    parent_key: str


@dataclass(frozen=True)
class PropertyRule:
    predicate: str  # absolute IRI after parse
    value: TermRule | None = None
    join: JoinRule | None = None


@dataclass(frozen=True)
class EntityMap:
    name: str
    source_format: str  # csv | json | xml
    iterator: str | None
    source_name: str
    subject: TermRule
    types: tuple[str, ...]
    properties: tuple[PropertyRule, ...]


@dataclass(frozen=True)
class LookupRef:
    name: str
    csv_path: str


@dataclass
class LookupTable:
    name: str
    rows: dict[str, str] = field(default_factory=dict)


@dataclass
class LiftingMapping:
    prefixes: dict[str, str]
    maps: list[EntityMap]
    lookup_refs: list[LookupRef] = field(default_factory=list)

    def map_named(self, name: str) -> EntityMap:
        for m in self.maps:
            if m.name == name:
                return m
        raise KeyError(name)
