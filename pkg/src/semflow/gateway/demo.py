"""Registers the demo integrations for the seeded catalogue.

Record ids are minted at seed time, so bindings are attached by looking
records up by title instead of shipping a pre-baked bindings file.
"""

from __future__ import annotations

from semflow.catalogue.store import CatalogueStore
from semflow.gateway.bindings import BindingStore, FetchSpec, SourceBinding

_MOB = "https://semflow.example/vocab/mobility#"

_DEMO_BINDINGS: list[tuple[str, dict]] = [
    ("Rennes road sensor feed", {
        "fetch": FetchSpec(kind="file", path="data/detectors.csv", media_type="text/csv"),
        "pipeline_ref": "det-csv-base",
        "param_map": {"temporal": {"predicate": _MOB + "observedAt"}},
        "cache_ttl_seconds": 0,
    }),
    ("Lisbon detector feed", {
        "fetch": FetchSpec(kind="file", path="data/detectors.json", media_type="application/json"),
        "pipeline_ref": "det-json-base",
        "param_map": {"temporal": {"predicate": _MOB + "observedAt"}},
        "cache_ttl_seconds": 0,
    }),
    ("Rennes PT delay feed", {
        "fetch": FetchSpec(kind="file", path="data/delays.xml", media_type="application/xml"),
        "pipeline_ref": None,
        "param_map": {
            "temporal": {"predicate": _MOB + "recordedAt"},
            "bbox": {"latPredicate": _MOB + "lat", "lonPredicate": _MOB + "lon"},
        },
        "cache_ttl_seconds": 0,
    }),
]


def seed_demo_bindings(store: CatalogueStore, bindings: BindingStore) -> int:
    by_title = {r.title: r for r in store.all_records()}
    count = 0
    for title, fields in _DEMO_BINDINGS:
        record = by_title.get(title)
        if record is None:
            continue
        bindings.put(SourceBinding(record_id=record.id, **fields))
        count += 1
    return count
