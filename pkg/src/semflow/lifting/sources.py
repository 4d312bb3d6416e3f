"""Record iteration over CSV, JSON and XML sources.

A Record answers `get(reference) -> str | None`; missing and empty values
are both None so the engine's suppression rule sees one case. Reference
syntax per format:

- csv: column name
- json: relative dot-path, numeric segments index into arrays
- xml: relative slash-path of element names; a final `@name` reads an
  attribute; an element resolves to its concatenated text, stripped
"""

from __future__ import annotations

import csv
import io
import json
import xml.etree.ElementTree as ET

from semflow.errors import IteratorNotFound, SourceSyntaxError


def _scalar_to_str(value: object) -> str | None:
    if value is None or isinstance(value, (dict, list)):
        return None
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


class CsvRecord:
    __slots__ = ("row",)

    def __init__(self, row: dict[str, str]):
        self.row = row

    def get(self, ref: str) -> str | None:
        value = self.row.get(ref)
        if value is None or value == "":
            return None
        return value


class JsonRecord:
    __slots__ = ("node",)

    def __init__(self, node: object):
        self.node = node

    def get(self, ref: str) -> str | None:
        current = self.node
        for seg in ref.split("."):
            if isinstance(current, dict):
                if seg not in current:
                    return None
                current = current[seg]
            elif isinstance(current, list):
                if not seg.isdigit() or int(seg) >= len(current):
                    return None
                current = current[int(seg)]
            else:
                return None
        value = _scalar_to_str(current)
        return None if value == "" else value


class XmlRecord:
    __slots__ = ("element",)

    def __init__(self, element: ET.Element):
        self.element = element

    def get(self, ref: str) -> str | None:
        el = self.element
        segments = ref.split("/")
        attr = None
        if segments and segments[-1].startswith("@"):
            attr = segments.pop()[1:]
        for seg in segments:
            if seg == "":
                continue
            child = el.find(seg)
            if child is None:
                return None
            el = child
        if attr is not None:
            value = el.get(attr)
            return None if value in (None, "") else value
        text = "".join(el.itertext()).strip()
        return text or None


Record = CsvRecord | JsonRecord | XmlRecord


def _iterate_csv(data: bytes) -> list[CsvRecord]:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SourceSyntaxError(f"csv source is not valid UTF-8: {exc}") from exc
    reader = csv.reader(io.StringIO(text, newline=""))
    rows = [row for row in reader if row]
    if not rows:
        return []
    header = rows[0]
    records = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise SourceSyntaxError(f"csv row {i} has {len(row)} fields, header has {len(header)}")
        records.append(CsvRecord(dict(zip(header, row))))
    return records


def _iterate_json(data: bytes, iterator: str) -> list[JsonRecord]:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SourceSyntaxError(f"invalid JSON source: {exc}") from exc
    if not iterator.endswith("[*]"):
        raise IteratorNotFound(f"json iterator must end with [*]: {iterator!r}")
    path = iterator[:-3]
    current: object = doc
    if path:
        for seg in path.split("."):
            if isinstance(current, dict) and seg in current:
                current = current[seg]
            elif isinstance(current, list) and seg.isdigit() and int(seg) < len(current):
                current = current[int(seg)]
            else:
                raise IteratorNotFound(f"path segment {seg!r} not found in source")
    if not isinstance(current, list):
        raise IteratorNotFound(f"json iterator {iterator!r} does not select an array")
    return [JsonRecord(item) for item in current]


def _iterate_xml(data: bytes, iterator: str) -> list[XmlRecord]:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise SourceSyntaxError(f"invalid XML source: {exc}") from exc
    segments = [s for s in iterator.split("/") if s]
    if not segments:
        raise IteratorNotFound("empty xml iterator")
    if root.tag != segments[0]:
        raise IteratorNotFound(f"document root is <{root.tag}>, iterator expects <{segments[0]}>")
    elements = [root]
    for seg in segments[1:]:
        elements = [child for el in elements for child in el.findall(seg)]
    return [XmlRecord(el) for el in elements]


def iterate(data: bytes, source_format: str, iterator: str | None = None) -> list[Record]:
    if source_format == "csv":
        return _iterate_csv(data)
    if source_format == "json":
        if iterator is None:
            raise IteratorNotFound("json sources need an iterator")
        return _iterate_json(data, iterator)
    if source_format == "xml":
        if iterator is None:
            raise IteratorNotFound("xml sources need an iterator")
        return _iterate_xml(data, iterator)
    raise SourceSyntaxError(f"unsupported source format {source_format!r}")
