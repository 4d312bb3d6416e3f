"""Parser for the lowering template language (.lot files).

Layout:

    {% output json %}                         -- mandatory first line
    {% prefix mob: <https://...#> %}          -- optional, any number
    {% query dets: ?d <rdf:type> <mob:TrafficDetector> . ?d <mob:flow> ?f
             filter ?f > 0 order by ?f %}     -- queries precede the body
    [{% for d in dets sep "," %}{"flow":$!{d.f}}{% end %}]

`${loop.var}` interpolates with output-format escaping, `$!{loop.var}`
verbatim. One newline directly after a `{% ... %}` tag is consumed so
directives can sit on their own lines without leaking blank lines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from semflow.errors import (
    TemplateSyntaxError,
    UnboundTemplateVariable,
    UnboundVariable,
    UnknownPrefix,
    UnknownQuery,
)
from semflow.lifting.parser import DEFAULT_PREFIXES, expand_iri
from semflow.lowering.model import ForNode, InterpNode, LoweringTemplate, Node, TextNode
from semflow.rdf.query import FilterClause, Query, TriplePattern, Var
from semflow.rdf.terms import iri, literal


@dataclass
class _Token:
    kind: str  # "text" | "tag" | "interp"
    value: str
    raw: bool
    line: int
    col: int


def _position(text: str, index: int) -> tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    last_nl = text.rfind("\n", 0, index)
    return line, index - last_nl


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    buf_start = 0

    def flush(end: int) -> None:
        if end > buf_start:
            line, col = _position(text, buf_start)
            tokens.append(_Token("text", text[buf_start:end], False, line, col))

    while i < len(text):
        if text.startswith("{%", i):
            end = text.find("%}", i + 2)
            if end < 0:
                line, col = _position(text, i)
                raise TemplateSyntaxError("unterminated {% directive", line, col)
            flush(i)
            line, col = _position(text, i)
            tokens.append(_Token("tag", text[i + 2:end].strip(), False, line, col))
            i = end + 2
            if i < len(text) and text[i] == "\n":  # trim one newline after a tag
                i += 1
            buf_start = i
        elif text.startswith("${", i) or text.startswith("$!{", i):
            raw = text[i + 1] == "!"
            start = i + (3 if raw else 2)
            end = text.find("}", start)
            if end < 0:
                line, col = _position(text, i)
                raise TemplateSyntaxError("unterminated interpolation", line, col)
            flush(i)
            line, col = _position(text, i)
            tokens.append(_Token("interp", text[start:end].strip(), raw, line, col))
            i = end + 1
            buf_start = i
        else:
            i += 1
    flush(len(text))
    return tokens


# --- query directive --------------------------------------------------------

_QUERY_TOKEN = re.compile(
    r"""\s*(?:
        (?P<var>\?[A-Za-z_]\w*)
      | (?P<iri><[^>\s]+>)
      | (?P<string>"(?:[^"\\]|\\.)*")
      | (?P<op>!=|<=|>=|=|<|>)
      | (?P<dot>\.(?!\d))
      | (?P<caret>\^\^)
      | (?P<lang>@[A-Za-z][A-Za-z0-9-]*)
      | (?P<number>[+-]?\d+(?:\.\d+)?)
      | (?P<word>[A-Za-z_]\w*)
    )""",
    re.VERBOSE,
)

_STRING_UNESCAPES = {"\\n": "\n", "\\t": "\t", "\\r": "\r", '\\"': '"', "\\\\": "\\"}


def _unescape_string(quoted: str) -> str:
    body = quoted[1:-1]
    return re.sub(r"\\[ntr\"\\]", lambda m: _STRING_UNESCAPES[m.group(0)], body)


class _QueryParser:
    def __init__(self, text: str, prefixes: dict[str, str], line: int, col: int):
        self.prefixes = prefixes
        self.line, self.col = line, col
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _QUERY_TOKEN.match(text, pos)
            if m is None:
                raise TemplateSyntaxError(f"cannot tokenize query near {text[pos:pos + 20]!r}", line, col)
            self.tokens.append((m.lastgroup, m.group(m.lastgroup)))
            pos = m.end()
        self.index = 0

    def error(self, message: str):
        raise TemplateSyntaxError(message, self.line, self.col)

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of query")
        self.index += 1
        return tok

    def parse_pattern_term(self):
        kind, value = self.next()
        if kind == "var":
            return Var(value[1:])
        if kind == "iri":
            try:
                return iri(expand_iri(value[1:-1], self.prefixes))
            except UnknownPrefix as exc:
                self.error(str(exc))
        if kind == "string":
            lexical = _unescape_string(value)
            nxt = self.peek()
            if nxt and nxt[0] == "caret":
                self.next()
                dt_kind, dt_value = self.next()
                if dt_kind != "iri":
                    self.error("datatype IRI expected after ^^")
                return literal(lexical, expand_iri(dt_value[1:-1], self.prefixes))
            if nxt and nxt[0] == "lang":
                self.next()
                return literal(lexical, lang=nxt[1][1:])
            return literal(lexical)
        self.error(f"unexpected token {value!r} in triple pattern")

    def parse(self) -> Query:
        patterns = []
        while True:
            s = self.parse_pattern_term()
            p = self.parse_pattern_term()
            o = self.parse_pattern_term()
            patterns.append(TriplePattern(s, p, o))
            nxt = self.peek()
            if nxt and nxt[0] == "dot":
                self.next()
                continue
            break

        filters = []
        while (nxt := self.peek()) and nxt == ("word", "filter"):
            self.next()
            var_kind, var_value = self.next()
            if var_kind != "var":
                self.error("filter expects a ?variable")
            op_kind, op_value = self.next()
            if op_kind != "op":
                self.error("filter expects a comparison operator")
            val_kind, val_value = self.next()
            if val_kind == "string":
                operand = _unescape_string(val_value)
            elif val_kind == "number":
                operand = val_value
            else:
                self.error("filter operand must be a quoted string or a number")
            filters.append(FilterClause(var_value[1:], op_value, operand))

        order_by = None
        if (nxt := self.peek()) and nxt == ("word", "order"):
            self.next()
            if self.next() != ("word", "by"):
                self.error("expected 'by' after 'order'")
            var_kind, var_value = self.next()
            if var_kind != "var":
                self.error("order by expects a ?variable")
            order_by = var_value[1:]

        if self.peek() is not None:
            self.error(f"trailing tokens in query: {self.peek()[1]!r}")
        query = Query(tuple(patterns), tuple(filters), order_by)
        bound = set(query.variables())
        for clause in query.filters:
            if clause.var not in bound:
                raise UnboundVariable(
                    f"{self.line}:{self.col}: filter variable ?{clause.var} not used in any pattern")
        if query.order_by is not None and query.order_by not in bound:
            raise UnboundVariable(
                f"{self.line}:{self.col}: order-by variable ?{query.order_by} not used in any pattern")
        return query


# --- template parser ----------------------------------------------------------

_FOR_RE = re.compile(r'^for\s+([A-Za-z_]\w*)\s+in\s+([A-Za-z_]\w*)\s+sep\s+("(?:[^"\\]|\\.)*")$')
_PREFIX_RE = re.compile(r"^prefix\s+([A-Za-z_][\w-]*):\s*<([^>\s]+)>$")
_QUERY_RE = re.compile(r"^query\s+([A-Za-z_]\w*)\s*:\s*(.+)$", re.DOTALL)


def parse_template(text: str) -> LoweringTemplate:
    if not text.startswith("{% output "):
        raise TemplateSyntaxError("first line must be an output directive", 1, 1)
    tokens = _tokenize(text)

    out_tag = tokens[0]
    fmt = out_tag.value[len("output"):].strip()
    if fmt not in ("json", "csv"):
        raise TemplateSyntaxError(f"output format must be json or csv, got {fmt!r}", out_tag.line, out_tag.col)

    prefixes = dict(DEFAULT_PREFIXES)
    queries: dict[str, Query] = {}
    i = 1
    while i < len(tokens):
        tok = tokens[i]
        if tok.kind == "text" and tok.value.strip() == "" and i + 1 < len(tokens) \
                and tokens[i + 1].kind == "tag" \
                and (tokens[i + 1].value.startswith("prefix") or tokens[i + 1].value.startswith("query")):
            i += 1  # whitespace between top directives
            continue
        if tok.kind != "tag":
            break
        if m := _PREFIX_RE.match(tok.value):
            prefixes[m.group(1)] = m.group(2)
            i += 1
        elif m := _QUERY_RE.match(tok.value):
            name = m.group(1)
            if name in queries:
                raise TemplateSyntaxError(f"query {name!r} declared twice", tok.line, tok.col)
            queries[name] = _QueryParser(m.group(2), prefixes, tok.line, tok.col).parse()
            i += 1
        else:
            break

    body, end = _parse_body(tokens, i, queries, scopes=[])
    if end != len(tokens):
        tok = tokens[end]
        raise TemplateSyntaxError("unexpected {% end %}", tok.line, tok.col)
    return LoweringTemplate(output_format=fmt, queries=queries, body=tuple(body))


def _parse_body(
    tokens: list[_Token],
    i: int,
    queries: dict[str, Query],
    scopes: list[tuple[str, str]],  # (loop var, query name), innermost last
) -> tuple[list[Node], int]:
    nodes: list[Node] = []
    while i < len(tokens):
        tok = tokens[i]
        if tok.kind == "text":
            nodes.append(TextNode(tok.value))
            i += 1
        elif tok.kind == "interp":
            nodes.append(_parse_interp(tok, queries, scopes))
            i += 1
        else:  # tag
            if tok.value == "end":
                return nodes, i
            if m := _FOR_RE.match(tok.value):
                var, query_name, sep_quoted = m.group(1), m.group(2), m.group(3)
                if query_name not in queries:
                    raise UnknownQuery(f"{tok.line}:{tok.col}: for-block names undeclared query {query_name!r}")
                inner, j = _parse_body(tokens, i + 1, queries, scopes + [(var, query_name)])
                if j >= len(tokens) or tokens[j].value != "end":
                    raise TemplateSyntaxError("for-block without {% end %}", tok.line, tok.col)
                nodes.append(ForNode(var, query_name, _unescape_string(sep_quoted), tuple(inner)))
                i = j + 1
            elif tok.value.startswith(("query", "prefix", "output")):
                raise TemplateSyntaxError(
                    f"{tok.value.split()[0]} directives must precede the template body", tok.line, tok.col)
            else:
                raise TemplateSyntaxError(f"unknown directive {tok.value!r}", tok.line, tok.col)
    return nodes, i


def _parse_interp(tok: _Token, queries: dict[str, Query], scopes: list[tuple[str, str]]) -> InterpNode:
    if not scopes:
        raise UnboundTemplateVariable(
            f"{tok.line}:{tok.col}: ${{{tok.value}}} appears outside any for-block")
    loop_var, sep, query_var = tok.value.partition(".")
    if not sep:
        raise UnboundTemplateVariable(
            f"{tok.line}:{tok.col}: interpolation must be <loop>.<variable>, got {tok.value!r}")
    query_name = dict(scopes).get(loop_var)
    if query_name is None:
        raise UnboundTemplateVariable(
            f"{tok.line}:{tok.col}: {loop_var!r} is not a loop variable in scope")
    if query_var not in queries[query_name].variables():
        raise UnboundTemplateVariable(
            f"{tok.line}:{tok.col}: query {query_name!r} does not bind ?{query_var}")
    return InterpNode(loop_var, query_var, tok.raw)
