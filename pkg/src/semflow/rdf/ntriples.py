"""N-Triples subset (no blank nodes), UTF-8, byte-stable serialization.

Serialization sorts lines lexically so goldens can be diffed; parse and
serialize are mutual inverses on the supported subset.
"""

from __future__ import annotations

from semflow.errors import NTriplesSyntaxError
from semflow.rdf.graph import Graph
from semflow.rdf.terms import RDF_LANGSTRING, XSD_STRING, Term, Triple, iri, literal

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape(text: str) -> str:
    out = []
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def term_to_nt(term: Term) -> str:
    if term.is_iri:
        return f"<{term.value}>"
    body = f'"{_escape(term.value)}"'
    if term.lang is not None:
        return f"{body}@{term.lang}"
    if term.datatype == XSD_STRING:
        return body
    return f"{body}^^<{term.datatype}>"


def triple_to_nt(t: Triple) -> str:
    return f"{term_to_nt(t.subject)} {term_to_nt(t.predicate)} {term_to_nt(t.object)} ."


def serialize_ntriples(graph: Graph) -> str:
    lines = sorted(triple_to_nt(t) for t in graph)
    return "".join(line + "\n" for line in lines)


class _LineParser:
    def __init__(self, text: str, lineno: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def error(self, message: str):
        raise NTriplesSyntaxError(message, self.lineno)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def _unescape(self, raw: str) -> str:
        out = []
        i = 0
        while i < len(raw):
            ch = raw[i]
            if ch != "\\":
                out.append(ch)
                i += 1
                continue
            if i + 1 >= len(raw):
                self.error("dangling escape")
            nxt = raw[i + 1]
            simple = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}
            if nxt in simple:
                out.append(simple[nxt])
                i += 2
            elif nxt == "u" and i + 6 <= len(raw):
                out.append(chr(int(raw[i + 2:i + 6], 16)))
                i += 6
            elif nxt == "U" and i + 10 <= len(raw):
                out.append(chr(int(raw[i + 2:i + 10], 16)))
                i += 10
            else:
                self.error(f"unsupported escape \\{nxt}")
        return "".join(out)

    def parse_iri(self) -> str:
        end = self.text.find(">", self.pos)
        if end < 0:
            self.error("unterminated IRI")
        value = self.text[self.pos + 1:end]
        self.pos = end + 1
        return value

    def parse_term(self) -> Term:
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("unexpected end of line")
        ch = self.text[self.pos]
        if ch == "<":
            return iri(self.parse_iri())
        if ch == "_":
            self.error("blank nodes are not supported")
        if ch != '"':
            self.error(f"unexpected character {ch!r}")
        i = self.pos + 1
        while i < len(self.text):
            if self.text[i] == "\\":
                i += 2
                continue
            if self.text[i] == '"':
                break
            i += 1
        else:
            self.error("unterminated literal")
        lexical = self._unescape(self.text[self.pos + 1:i])
        self.pos = i + 1
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            if self.pos >= len(self.text) or self.text[self.pos] != "<":
                self.error("datatype IRI expected after ^^")
            return literal(lexical, self.parse_iri())
        if self.text.startswith("@", self.pos):
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "-"):
                self.pos += 1
            tag = self.text[start:self.pos]
            if not tag:
                self.error("empty language tag")
            return Term("literal", lexical, RDF_LANGSTRING, tag)
        return literal(lexical, XSD_STRING)


def parse_ntriples(text: str) -> Graph:
    graph = Graph()
    for lineno, raw_line in enumerate(text.split("\n"), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        lp = _LineParser(line, lineno)
        try:
            subject = lp.parse_term()
            predicate = lp.parse_term()
            obj = lp.parse_term()
        except ValueError as exc:  # Term invariants (e.g. relative IRI)
            raise NTriplesSyntaxError(str(exc), lineno) from exc
        lp.skip_ws()
        if lp.pos >= len(line) or line[lp.pos] != ".":
            lp.error("expected terminating '.'")
        lp.pos += 1
        lp.skip_ws()
        if lp.pos != len(line):
            lp.error("trailing content after '.'")
        try:
            graph.add(Triple(subject, predicate, obj))
        except ValueError as exc:
            raise NTriplesSyntaxError(str(exc), lineno) from exc
    return graph
