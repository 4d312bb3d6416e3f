"""Executes a lifting mapping over source bytes, producing a graph.

Missing-value semantics: an unresolvable rule is suppressed on its own;
a suppressed subject skips the whole record. IRI templates percent-encode
substituted values outside the unreserved/reserved IRI character sets.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from urllib.parse import quote

from semflow.errors import SourceMissing, SourceSyntaxError
from semflow.lifting import functions
from semflow.lifting.model import EntityMap, LiftingMapping, LookupTable, TermRule
from semflow.lifting.sources import Record, iterate
from semflow.rdf.graph import Graph
from semflow.rdf.terms import RDF_TYPE, Term, Triple, iri, literal

# RFC 3987 unreserved + gen-delims + sub-delims stay verbatim in minted IRIs
_IRI_SAFE = ":/?#[]@!$&'()*+,;=-._~"


def _eval_template(rule: TermRule, record: Record) -> str | None:
    parts = []
    for kind, value in rule.template or ():
        if kind == "lit":
            parts.append(value)
        else:
            resolved = record.get(value)
            if resolved is None:
                return None
            parts.append(quote(resolved, safe=_IRI_SAFE) if rule.mints_iri else resolved)
    return "".join(parts)


def evaluate_rule(rule: TermRule, record: Record, lookups: dict[str, LookupTable]) -> Term | None:
    """Produce a term for one record, or None when the rule is suppressed."""
    if rule.constant is not None:
        return rule.constant
    if rule.template is not None:
        value = _eval_template(rule, record)
        if value is None:
            return None
        if rule.mints_iri:
            return iri(value)
        return literal(value, rule.datatype, rule.lang)
    if rule.reference is not None:
        value = record.get(rule.reference)
        if value is None:
            return None
        return literal(value, rule.datatype, rule.lang)
    # function
    args = []
    for arg_rule in rule.function.args:
        term = evaluate_rule(arg_rule, record, lookups)
        if term is None:
            return None
        args.append(term.value)
    result = functions.call(rule.function.name, args, lookups)
    if result is None:
        return None
    return literal(result, rule.datatype, rule.lang)


def _check_functions(rule: TermRule) -> None:
    if rule.function is not None:
        functions.check_function(rule.function.name, len(rule.function.args))
        for arg in rule.function.args:
            _check_functions(arg)


def load_lookups(mapping: LiftingMapping, base_dir: str | Path) -> list[LookupTable]:
    """Load the mapping's declared lookup tables (CSV with a header row)."""
    tables = []
    for ref in mapping.lookup_refs:
        path = Path(base_dir) / ref.csv_path
        rows: dict[str, str] = {}
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                next(reader)  # header
            except StopIteration:
                raise SourceSyntaxError(f"lookup table {path} is empty") from None
            for row in reader:
                if len(row) < 2:
                    raise SourceSyntaxError(f"lookup table {path}: rows need key,value columns")
                rows[row[0]] = row[1]
        tables.append(LookupTable(ref.name, rows))
    return tables


def lift(
    mapping: LiftingMapping,
    sources: dict[str, bytes],
    lookups: list[LookupTable] | tuple[LookupTable, ...] = (),
) -> Graph:
    lookup_index = {t.name: t for t in lookups}

    for entity_map in mapping.maps:
        _check_functions(entity_map.subject)
        for rule in entity_map.properties:
            if rule.value is not None:
                _check_functions(rule.value)

    # first pass: records and subjects per map (joins need every map's subjects)
    records_by_map: dict[str, list[Record]] = {}
    subjects_by_map: dict[str, list[Term | None]] = {}
    for entity_map in mapping.maps:
        if entity_map.source_name not in sources:
            raise SourceMissing(f"no source bytes named {entity_map.source_name!r}")
        records = iterate(sources[entity_map.source_name], entity_map.source_format, entity_map.iterator)
        records_by_map[entity_map.name] = records
        subjects_by_map[entity_map.name] = [
            evaluate_rule(entity_map.subject, rec, lookup_index) for rec in records
        ]

    graph = Graph()
    for entity_map in mapping.maps:
        join_indexes = _build_join_indexes(entity_map, records_by_map, subjects_by_map)
        for record, subject in zip(records_by_map[entity_map.name], subjects_by_map[entity_map.name]):
            if subject is None:
                continue
            for type_iri in entity_map.types:
                graph.add(Triple(subject, iri(RDF_TYPE), iri(type_iri)))
            for rule in entity_map.properties:
                predicate = iri(rule.predicate)
                if rule.join is not None:
                    key = record.get(rule.join.child_key)
                    if key is None:
                        continue
                    for parent_subject in join_indexes[id(rule)].get(key, ()):
                        graph.add(Triple(subject, predicate, parent_subject))
                else:
                    obj = evaluate_rule(rule.value, record, lookup_index)
                    if obj is not None:
                        graph.add(Triple(subject, predicate, obj))
    return graph


def _build_join_indexes(
    entity_map: EntityMap,
    records_by_map: dict[str, list[Record]],
    subjects_by_map: dict[str, list[Term | None]],
) -> dict[int, dict[str, list[Term]]]:
    indexes: dict[int, dict[str, list[Term]]] = {}
    for rule in entity_map.properties:
        if rule.join is None:
            continue
        index: dict[str, list[Term]] = {}
        parents = records_by_map[rule.join.map]
        parent_subjects = subjects_by_map[rule.join.map]
        for parent, parent_subject in zip(parents, parent_subjects):
            if parent_subject is None:
                continue
            key = parent.get(rule.join.parent_key)
            if key is not None:
                index.setdefault(key, []).append(parent_subject)
        indexes[id(rule)] = index
    return indexes
