"""Parser/validator for the JSON mapping-document format.

CURIEs are expanded at parse time, so the executable mapping only holds
absolute IRIs. `rdf:` and `xsd:` are bound by default; documents may
rebind them.
"""

from __future__ import annotations

import json

from semflow.errors import DanglingJoin, MappingSyntaxError, UnknownPrefix
from semflow.lifting.model import (
    EntityMap,
    FunctionCall,
    JoinRule,
    LiftingMapping,
    LookupRef,
    PropertyRule,
    TermRule,
    TemplateSegments,
)
from semflow.rdf.terms import RDF_NS, XSD_NS, iri, literal

DEFAULT_PREFIXES = {"rdf": RDF_NS, "xsd": XSD_NS}

# schemes accepted as-is when the head of a CURIE-looking string is unbound
_KNOWN_SCHEMES = {"http", "https", "urn", "mailto", "file", "ftp", "tag", "data", "geo"}


def expand_iri(value: str, prefixes: dict[str, str]) -> str:
    """Expand a CURIE, or pass an absolute IRI through; anything else fails."""
    head, sep, _ = value.partition(":")
    if not sep:
        raise UnknownPrefix(value)
    if head in prefixes:
        return prefixes[head] + value[len(head) + 1:]
    if "://" in value or head in _KNOWN_SCHEMES:
        return value
    raise UnknownPrefix(head)


def split_template(template: str) -> TemplateSegments:
    """Split into literal/placeholder segments; {{ and }} are literal braces."""
    segments: list[tuple[str, str]] = []
    buf: list[str] = []
    i = 0
    while i < len(template):
        ch = template[i]
        if ch == "{":
            if template.startswith("{{", i):
                buf.append("{")
                i += 2
                continue
            end = template.find("}", i)
            if end < 0:
                raise MappingSyntaxError(f"unterminated placeholder in template {template!r}")
            name = template[i + 1:end]
            if not name:
                raise MappingSyntaxError(f"empty placeholder in template {template!r}")
            if buf:
                segments.append(("lit", "".join(buf)))
                buf = []
            segments.append(("ref", name))
            i = end + 1
        elif ch == "}":
            if template.startswith("}}", i):
                buf.append("}")
                i += 2
            else:
                raise MappingSyntaxError(f"stray '}}' in template {template!r}")
        else:
            buf.append(ch)
            i += 1
    if buf:
        segments.append(("lit", "".join(buf)))
    return tuple(segments)


def _expand_template_head(segments: TemplateSegments, prefixes: dict[str, str]) -> TemplateSegments:
    """Expand a CURIE prefix at the very start of an IRI template."""
    if not segments:
        raise MappingSyntaxError("empty template")
    kind, head = segments[0]
    if kind != "lit":
        # starts with a placeholder ("{uri}"): absoluteness checked when minted
        return segments
    return (("lit", expand_iri(head, prefixes)),) + segments[1:]


def _parse_term_rule(doc: object, prefixes: dict[str, str], where: str,
                     in_function: bool = False) -> TermRule:
    if not isinstance(doc, dict):
        raise MappingSyntaxError(f"{where}: term rule must be an object")
    kinds = [k for k in ("template", "reference", "constant", "function") if k in doc]
    if len(kinds) != 1:
        raise MappingSyntaxError(
            f"{where}: exactly one of template/reference/constant/function required, got {kinds or 'none'}"
        )
    datatype = doc.get("datatype")
    if datatype is not None:
        datatype = expand_iri(datatype, prefixes)
    lang = doc.get("lang")
    kind = kinds[0]

    if kind == "template":
        segments = split_template(doc["template"])
        if datatype is None and lang is None:
            segments = _expand_template_head(segments, prefixes)
        return TermRule(template=segments, datatype=datatype, lang=lang)
    if kind == "reference":
        if not isinstance(doc["reference"], str):
            raise MappingSyntaxError(f"{where}: reference must be a string")
        return TermRule(reference=doc["reference"], datatype=datatype, lang=lang)
    if kind == "constant":
        raw = doc["constant"]
        if not isinstance(raw, str):
            raise MappingSyntaxError(f"{where}: constant must be a string")
        if datatype is not None or lang is not None or in_function:
            # function arguments are plain strings, never IRIs
            term = literal(raw, datatype, lang)
        else:
            term = iri(expand_iri(raw, prefixes))
        return TermRule(constant=term)
    fn = doc["function"]
    if not isinstance(fn, dict) or "name" not in fn:
        raise MappingSyntaxError(f"{where}: function needs a name")
    args = tuple(
        _parse_term_rule(arg, prefixes, f"{where}.args[{i}]", in_function=True)
        for i, arg in enumerate(fn.get("args", []))
    )
    return TermRule(function=FunctionCall(fn["name"], args), datatype=datatype, lang=lang)


def _parse_entity_map(doc: dict, prefixes: dict[str, str]) -> EntityMap:
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise MappingSyntaxError("entity map needs a name")
    where = f"map {name!r}"
    source = doc.get("source")
    if not isinstance(source, dict) or source.get("format") not in ("csv", "json", "xml"):
        raise MappingSyntaxError(f"{where}: source.format must be csv, json or xml")
    fmt = source["format"]
    iterator = source.get("iterator")
    if fmt in ("json", "xml") and not iterator:
        raise MappingSyntaxError(f"{where}: {fmt} sources need an iterator")
    if fmt == "csv":
        iterator = None  # ignored for csv

    if "subject" not in doc:
        raise MappingSyntaxError(f"{where}: missing subject rule")
    subject = _parse_term_rule(doc["subject"], prefixes, f"{where}.subject")
    if subject.template is None and subject.constant is None:
        raise MappingSyntaxError(f"{where}: subject rule must be a template or a constant")
    if subject.constant is not None and not subject.constant.is_iri:
        raise MappingSyntaxError(f"{where}: subject must mint an IRI")
    if subject.datatype is not None or subject.lang is not None:
        raise MappingSyntaxError(f"{where}: subject must mint an IRI, not a literal")

    types = tuple(expand_iri(t, prefixes) for t in doc.get("types", []))

    properties = []
    for i, pdoc in enumerate(doc.get("properties", [])):
        pwhere = f"{where}.properties[{i}]"
        if not isinstance(pdoc, dict) or "predicate" not in pdoc:
            raise MappingSyntaxError(f"{pwhere}: missing predicate")
        predicate = expand_iri(pdoc["predicate"], prefixes)
        if "join" in pdoc:
            j = pdoc["join"]
            for key in ("map", "childKey", "parentKey"):
                if key not in j:
                    raise MappingSyntaxError(f"{pwhere}: join needs {key}")
            properties.append(PropertyRule(predicate, join=JoinRule(j["map"], j["childKey"], j["parentKey"])))
        else:
            rest = {k: v for k, v in pdoc.items() if k != "predicate"}
            properties.append(PropertyRule(predicate, value=_parse_term_rule(rest, prefixes, pwhere)))

    return EntityMap(
        name=name,
        source_format=fmt,
        iterator=iterator,
        source_name=source.get("sourceName", name),
        subject=subject,
        types=types,
        properties=tuple(properties),
    )


def parse_mapping(document: str | bytes) -> LiftingMapping:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MappingSyntaxError(f"mapping document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MappingSyntaxError("mapping document must be a JSON object")

    raw_prefixes = doc.get("prefixes", {})
    if not isinstance(raw_prefixes, dict):
        raise MappingSyntaxError("prefixes must be an object")
    prefixes = dict(DEFAULT_PREFIXES)
    prefixes.update(raw_prefixes)

    lookup_refs = []
    for ldoc in doc.get("lookups", []):
        if not isinstance(ldoc, dict) or "name" not in ldoc or "csvPath" not in ldoc:
            raise MappingSyntaxError("each lookup needs name and csvPath")
        lookup_refs.append(LookupRef(ldoc["name"], ldoc["csvPath"]))

    maps_doc = doc.get("maps")
    if not isinstance(maps_doc, list):
        raise MappingSyntaxError("maps must be a list")
    maps = [_parse_entity_map(m, prefixes) for m in maps_doc]

    names = [m.name for m in maps]
    if len(names) != len(set(names)):
        raise MappingSyntaxError("entity map names must be unique")
    for m in maps:
        for rule in m.properties:
            if rule.join is not None and rule.join.map not in names:
                raise DanglingJoin(f"map {m.name!r} joins to unknown map {rule.join.map!r}")

    return LiftingMapping(prefixes=prefixes, maps=maps, lookup_refs=lookup_refs)
