"""Deterministic basic-graph-pattern matching.

Patterns are joined on shared variables, filters applied afterwards, and
results sorted into a stable total order: by the order-by value (numeric
when the value parses as a number, lexical otherwise), ties broken by the
full binding tuple in variable-name-then-value order. Output is therefore
byte-stable across runs and across triple insertion orders.
"""

from __future__ import annotations

import re
from array import array
from dataclasses import dataclass, field
from typing import Union

from semflow.errors import UnboundVariable
from semflow.rdf import kernel
from semflow.rdf.graph import Graph
from semflow.rdf.ntriples import term_to_nt
from semflow.rdf.terms import Term


@dataclass(frozen=True, slots=True)
class Var:
    name: str


PatternTerm = Union[Term, Var]


@dataclass(frozen=True, slots=True)
class TriplePattern:
    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm


@dataclass(frozen=True, slots=True)
class FilterClause:
    var: str
    op: str  # = != < <= > >=
    operand: str


@dataclass(frozen=True)
class Query:
    patterns: tuple[TriplePattern, ...]
    filters: tuple[FilterClause, ...] = ()
    order_by: str | None = field(default=None)

    def variables(self) -> list[str]:
        seen: list[str] = []
        for pat in self.patterns:
            for slot in (pat.subject, pat.predicate, pat.object):
                if isinstance(slot, Var) and slot.name not in seen:
                    seen.append(slot.name)
        return seen


_NUMBER_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def parse_number(text: str) -> float | None:
    if _NUMBER_RE.match(text.strip()):
        return float(text)
    return None


def _compare(left: str, op: str, right: str) -> bool:
    ln, rn = parse_number(left), parse_number(right)
    a: object
    b: object
    if ln is not None and rn is not None:
        a, b = ln, rn
    else:
        a, b = left, right
    if op == "=":
        return a == b
    if op == "!=":
        return a != b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    raise ValueError(f"unknown comparison operator {op!r}")


def _order_key(term: Term) -> tuple:
    value = term.value
    num = parse_number(value)
    if num is not None:
        return (0, num, value, term_to_nt(term))
    return (1, 0.0, value, term_to_nt(term))


def _binding_key(binding: dict[str, Term]) -> tuple:
    return tuple(
        (name, binding[name].value, term_to_nt(binding[name]))
        for name in sorted(binding)
    )


def match(graph: Graph, query: Query) -> list[dict[str, Term]]:
    """Evaluate a query; returns bindings in the documented total order."""
    var_names = query.variables()
    var_index = {name: i for i, name in enumerate(var_names)}

    for f in query.filters:
        if f.var not in var_index:
            raise UnboundVariable(f"filter variable ?{f.var} not used in any pattern")
    if query.order_by is not None and query.order_by not in var_index:
        raise UnboundVariable(f"order-by variable ?{query.order_by} not used in any pattern")

    if not query.patterns:
        return []

    term_ids: dict[Term, int] = {}
    id_terms: list[Term] = []

    def intern(term: Term) -> int:
        tid = term_ids.get(term)
        if tid is None:
            tid = len(id_terms)
            term_ids[term] = tid
            id_terms.append(term)
        return tid

    s_ids: list[int] = []
    p_ids: list[int] = []
    o_ids: list[int] = []
    for t in graph:
        s_ids.append(intern(t.subject))
        p_ids.append(intern(t.predicate))
        o_ids.append(intern(t.object))

    pats: list[int] = []
    for pat in query.patterns:
        for slot in (pat.subject, pat.predicate, pat.object):
            if isinstance(slot, Var):
                pats.append(-(var_index[slot.name] + 1))
            else:
                pats.append(intern(slot))

    npat, nvar = len(query.patterns), len(var_names)
    use_compiled = (
        kernel.USING_COMPILED
        and nvar <= kernel.MAX_COMPILED_VARS
        and npat <= kernel.MAX_COMPILED_PATTERNS
    )
    if use_compiled:
        solutions = kernel.join_patterns_c(
            array("l", s_ids), array("l", p_ids), array("l", o_ids),
            array("l", pats), npat, nvar,
        )
    else:
        solutions = kernel.join_patterns_py(s_ids, p_ids, o_ids, pats, npat, nvar)

    bindings = [
        {name: id_terms[sol[i]] for name, i in var_index.items()}
        for sol in dict.fromkeys(solutions)
    ]

    for f in query.filters:
        bindings = [b for b in bindings if _compare(b[f.var].value, f.op, f.operand)]

    if query.order_by is not None:
        ov = query.order_by
        bindings.sort(key=lambda b: (_order_key(b[ov]), _binding_key(b)))
    else:
        bindings.sort(key=_binding_key)
    return bindings
