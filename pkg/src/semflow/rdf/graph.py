"""In-memory triple set with set semantics.

Graphs are mutable while a pipeline stage builds them and treated as
immutable values once handed to the next stage; nothing in the engine
mutates a graph it received.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from semflow.rdf.terms import RDF_TYPE, Term, Triple, iri

_RDF_TYPE_TERM = iri(RDF_TYPE)


class Graph:
    __slots__ = ("_triples",)

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: set[Triple] = set(triples)

    def add(self, triple: Triple) -> "Graph":
        """Insert a triple; duplicates leave the graph unchanged."""
        self._triples.add(triple)
        return self

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __repr__(self) -> str:
        return f"<Graph size={len(self._triples)}>"

    def triples(self) -> frozenset[Triple]:
        return frozenset(self._triples)

    def copy(self) -> "Graph":
        return Graph(self._triples)

    # small navigation helpers used by graph ops and the catalogue exporter

    def subjects_of_type(self, class_iri: Term) -> set[Term]:
        return {
            t.subject
            for t in self._triples
            if t.predicate == _RDF_TYPE_TERM and t.object == class_iri
        }

    def objects(self, subject: Term, predicate: Term) -> list[Term]:
        return [t.object for t in self._triples if t.subject == subject and t.predicate == predicate]

    def triples_with_subject(self, subject: Term) -> list[Triple]:
        return [t for t in self._triples if t.subject == subject]
