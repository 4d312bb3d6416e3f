"""RDF atoms: IRIs, typed literals, triples, and prefix maps.

The engine deliberately has no blank nodes: lifting always mints IRIs, so
every entity stays globally addressable through fusion and lowering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF_NS + "type"
RDF_LANGSTRING = RDF_NS + "langString"
XSD_STRING = XSD_NS + "string"
XSD_INTEGER = XSD_NS + "integer"
XSD_DECIMAL = XSD_NS + "decimal"
XSD_BOOLEAN = XSD_NS + "boolean"
XSD_DATETIME = XSD_NS + "dateTime"


def _is_absolute_iri(value: str) -> bool:
    head, sep, _ = value.partition(":")
    if not sep or not head:
        return False
    if not head[0].isalpha():
        return False
    return all(c.isalnum() or c in "+.-" for c in head)


@dataclass(frozen=True, slots=True)
class Term:
    """An IRI or a literal. Literals carry exactly one datatype IRI."""

    kind: str  # "iri" | "literal"
    value: str  # IRI string, or the literal's lexical form
    datatype: str | None = None
    lang: str | None = None

    def __post_init__(self):
        if self.kind == "iri":
            if self.datatype is not None or self.lang is not None:
                raise ValueError("IRI terms carry no datatype or language tag")
            if not _is_absolute_iri(self.value):
                raise ValueError(f"IRI must be absolute: {self.value!r}")
        elif self.kind == "literal":
            if self.lang is not None and self.datatype != RDF_LANGSTRING:
                raise ValueError("language-tagged literals must use rdf:langString")
            if self.datatype is None:
                raise ValueError("literal needs a datatype")
        else:
            raise ValueError(f"unknown term kind {self.kind!r}")

    @property
    def is_iri(self) -> bool:
        return self.kind == "iri"

    @property
    def is_literal(self) -> bool:
        return self.kind == "literal"


def iri(value: str) -> Term:
    return Term("iri", value)


def literal(lexical: str, datatype: str | None = None, lang: str | None = None) -> Term:
    if lang is not None:
        return Term("literal", lexical, RDF_LANGSTRING, lang)
    return Term("literal", lexical, datatype or XSD_STRING)


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self):
        if not self.subject.is_iri:
            raise ValueError("triple subject must be an IRI")
        if not self.predicate.is_iri:
            raise ValueError("triple predicate must be an IRI")


@dataclass
class PrefixMap:
    """Label -> namespace IRI bindings for CURIE expansion/compaction."""

    bindings: dict[str, str] = field(default_factory=dict)

    def bind(self, label: str, namespace: str) -> None:
        self.bindings[label] = namespace

    def expand(self, curie: str) -> str:
        label, sep, rest = curie.partition(":")
        if sep and label in self.bindings:
            return self.bindings[label] + rest
        return curie

    def compact(self, iri_value: str) -> str:
        # longest-namespace match wins so nested namespaces stay unambiguous
        best: tuple[str, str] | None = None
        for label, ns in self.bindings.items():
            if iri_value.startswith(ns) and (best is None or len(ns) > len(best[1])):
                best = (label, ns)
        if best is None:
            return iri_value
        return f"{best[0]}:{iri_value[len(best[1]):]}"
