"""Composable graph operations between lifting and lowering.

All operations are pure: inputs are never mutated, results are new graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

from semflow.errors import AmbiguousKey, InvalidRange
from semflow.rdf.graph import Graph
from semflow.rdf.query import parse_number
from semflow.rdf.terms import Term, Triple, iri


def union(g1: Graph, g2: Graph) -> Graph:
    result = g1.copy()
    for t in g2:
        result.add(t)
    return result


@dataclass(frozen=True)
class LinkSpec:
    class_a: str
    key_prop_a: str
    class_b: str
    key_prop_b: str


def _key_index(graph: Graph, class_iri: str, key_prop: str) -> dict[str, set[Term]]:
    index: dict[str, set[Term]] = {}
    nodes = graph.subjects_of_type(iri(class_iri))
    key_term = iri(key_prop)
    for node in nodes:
        for value in graph.objects(node, key_term):
            if value.is_literal:
                index.setdefault(value.value, set()).add(node)
    return index


def fuse(g1: Graph, g2: Graph, spec: LinkSpec) -> Graph:
    """Rewrite g2 nodes onto their g1 counterparts (g1 is canonical), then union.

    Matching is by equal key-literal lexical form; every occurrence of a
    matched g2 node (subject or object) is rewritten. Conflicting values
    stay multi-valued.
    """
    index_a = _key_index(g1, spec.class_a, spec.key_prop_a)
    for key, nodes in index_a.items():
        if len(nodes) > 1:
            raise AmbiguousKey(f"key {key!r} identifies {len(nodes)} canonical nodes")

    rewrite: dict[Term, Term] = {}
    index_b = _key_index(g2, spec.class_b, spec.key_prop_b)
    for key, nodes in index_b.items():
        target = index_a.get(key)
        if not target:
            continue
        (canonical,) = target
        for node in nodes:
            existing = rewrite.get(node)
            if existing is not None and existing != canonical:
                raise AmbiguousKey(f"node {node.value} matches multiple canonical nodes via its keys")
            rewrite[node] = canonical

    result = g1.copy()
    for t in g2:
        s = rewrite.get(t.subject, t.subject)
        o = rewrite.get(t.object, t.object) if t.object.is_iri else t.object
        result.add(Triple(s, t.predicate, o))
    return result


def parse_timestamp(value: str) -> datetime | None:
    """ISO-8601; naive timestamps are treated as UTC. None when unparseable."""
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(text)
    except ValueError:
        return None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def _concise_description(graph: Graph, keep: set[Term]) -> Graph:
    return Graph(t for t in graph if t.subject in keep)


def filter_temporal(graph: Graph, time_predicate: str, start: str, end: str) -> Graph:
    """Keep every node whose time value lies in [start, end], with all its triples."""
    start_dt, end_dt = parse_timestamp(start), parse_timestamp(end)
    if start_dt is None or end_dt is None:
        raise InvalidRange(f"unparseable window bound: {start!r} / {end!r}")
    if start_dt > end_dt:
        raise InvalidRange(f"window start {start} is after end {end}")
    pred = iri(time_predicate)
    keep: set[Term] = set()
    for t in graph:
        if t.predicate == pred and t.object.is_literal:
            when = parse_timestamp(t.object.value)
            if when is not None and start_dt <= when <= end_dt:
                keep.add(t.subject)
    return _concise_description(graph, keep)


@dataclass(frozen=True)
class BBox:
    min_lat: float
    min_lon: float
    max_lat: float
    max_lon: float

    def __post_init__(self):
        if self.min_lat > self.max_lat or self.min_lon > self.max_lon:
            raise InvalidRange(f"inverted bounding box: {self}")


def filter_bbox(graph: Graph, lat_predicate: str, lon_predicate: str, bbox: BBox) -> Graph:
    """Keep nodes whose (lat, lon) lies inside the closed box, with all their triples."""
    lat_p, lon_p = iri(lat_predicate), iri(lon_predicate)
    lats: dict[Term, list[float]] = {}
    lons: dict[Term, list[float]] = {}
    for t in graph:
        if t.object.is_literal:
            value = parse_number(t.object.value)
            if value is None:
                continue
            if t.predicate == lat_p:
                lats.setdefault(t.subject, []).append(value)
            elif t.predicate == lon_p:
                lons.setdefault(t.subject, []).append(value)
    keep = {
        node
        for node in lats.keys() & lons.keys()
        if any(
            bbox.min_lat <= lat <= bbox.max_lat and bbox.min_lon <= lon <= bbox.max_lon
            for lat in lats[node]
            for lon in lons[node]
        )
    }
    return _concise_description(graph, keep)
