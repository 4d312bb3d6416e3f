"""Journal-backed catalogue store with the governance state machine.

Every mutation is validated, turned into an audit event, applied
mechanically, and appended to the JSON-Lines journal. Replaying the
journal from empty reconstructs the exact same state, which is both the
crash-recovery story and the audit guarantee.
"""

from __future__ import annotations

import json
import uuid
from datetime import datetime, timezone
from pathlib import Path
from threading import RLock
from typing import Callable, Iterable

from semflow.errors import Forbidden, IllegalTransition, NotFound, SchemaViolation, UnknownVocabularyTerm
from semflow.catalogue.model import AuditEvent, CatalogueRecord, Distribution, User
from semflow.catalogue.vocab import Vocabularies

# (status, action) -> (next status, guard); guard "owner" = record owner,
# "tmb" = any data-management-board member
TRANSITIONS: dict[tuple[str, str], tuple[str, str]] = {
    ("draft", "submit"): ("submitted", "owner"),
    ("submitted", "approve"): ("approved", "tmb"),
    ("submitted", "reject"): ("rejected", "tmb"),
    ("rejected", "revise"): ("draft", "owner"),
    ("approved", "deprecate"): ("deprecated", "tmb"),
}

ACTIONS = ["submit", "approve", "reject", "revise", "deprecate"]

_MANDATORY = ["title", "description", "dataRequirement", "sourceType"]

_PATCHABLE = {
    "title", "description", "publisherOrg", "caseStudy", "dataRequirement",
    "sourceType", "refreshPeriodSeconds", "endpointUrl", "distributions", "kind",
}


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _new_id() -> str:
    return "rec-" + uuid.uuid4().hex[:10]


class CatalogueStore:
    def __init__(
        self,
        journal_path: str | Path | None = None,
        vocab: Vocabularies | None = None,
        now_fn: Callable[[], str] = _utc_now,
        id_fn: Callable[[], str] = _new_id,
    ):
        self.vocab = vocab or Vocabularies()
        self.journal_path = Path(journal_path) if journal_path else None
        self._now = now_fn
        self._new_id = id_fn
        self._records: dict[str, CatalogueRecord] = {}
        self._events: list[AuditEvent] = []
        self._lock = RLock()

    # --- loading / persistence ---------------------------------------------

    @classmethod
    def open(cls, journal_path: str | Path, vocab: Vocabularies | None = None, **kwargs) -> "CatalogueStore":
        store = cls(journal_path, vocab, **kwargs)
        path = Path(journal_path)
        if path.exists():
            for line in path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    store.apply(AuditEvent.from_json(json.loads(line)))
        return store

    @classmethod
    def replay(cls, events: Iterable[AuditEvent], vocab: Vocabularies | None = None) -> "CatalogueStore":
        store = cls(None, vocab)
        for event in events:
            store.apply(event)
        return store

    def _commit(self, event: AuditEvent) -> None:
        self.apply(event)
        if self.journal_path is not None:
            with open(self.journal_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(event.to_json(), sort_keys=True) + "\n")
                fh.flush()

    def apply(self, event: AuditEvent) -> None:
        """Mechanically apply an event; no validation, no clock, no RNG."""
        with self._lock:
            self._events.append(event)
            if event.action == "create":
                record = CatalogueRecord.from_json(event.payload)
                self._records[record.id] = record
            elif event.action == "update":
                record = self._records[event.record_id]
                merged = record.to_json()
                merged.update(event.payload["fields"])
                merged["status"] = event.payload["status"]
                merged["modified"] = event.payload["modified"]
                # a patch may clear optional fields by sending null
                merged = {k: v for k, v in merged.items() if v is not None}
                self._records[record.id] = CatalogueRecord.from_json(merged)
            elif event.action in ACTIONS:
                record = self._records[event.record_id]
                self._records[record.id] = record.with_fields(
                    status=event.payload["to"], modified=event.payload["modified"])
            else:
                raise ValueError(f"unknown journal action {event.action!r}")

    def snapshot_json(self) -> str:
        """Canonical state serialization; byte-equal iff states are equal."""
        with self._lock:
            doc = {"records": {rid: rec.to_json() for rid, rec in sorted(self._records.items())}}
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @property
    def events(self) -> list[AuditEvent]:
        return list(self._events)

    # --- validation -----------------------------------------------------------

    def _validate_draft(self, doc: dict) -> None:
        missing = [f for f in _MANDATORY if not doc.get(f)]
        if missing:
            raise SchemaViolation(f"missing mandatory metadata: {', '.join(missing)}", missing)
        kind = doc.get("kind", "dataset")
        if kind not in ("dataset", "dataService"):
            raise SchemaViolation(f"kind must be dataset or dataService, got {kind!r}", ["kind"])
        if doc["dataRequirement"] not in self.vocab.data_requirement:
            raise SchemaViolation(
                f"dataRequirement {doc['dataRequirement']!r} is not in the controlled vocabulary",
                ["dataRequirement"])
        if doc["sourceType"] not in self.vocab.source_type:
            raise SchemaViolation(
                f"sourceType {doc['sourceType']!r} is not in the controlled vocabulary", ["sourceType"])
        if kind == "dataService" and not doc.get("endpointUrl"):
            raise SchemaViolation("a dataService needs an endpointUrl", ["endpointUrl"])
        refresh = doc.get("refreshPeriodSeconds")
        if refresh is not None and (not isinstance(refresh, int) or refresh < 0):
            raise SchemaViolation("refreshPeriodSeconds must be a non-negative integer",
                                  ["refreshPeriodSeconds"])
        seen = set()
        for dist in doc.get("distributions", []):
            for key in ("id", "format", "semanticsTag", "accessUrl"):
                if not dist.get(key):
                    raise SchemaViolation(f"distribution needs {key}", ["distributions"])
            pair = (dist["format"], dist["semanticsTag"])
            if pair in seen:
                raise SchemaViolation(
                    f"duplicate distribution for format/semantics {pair}", ["distributions"])
            seen.add(pair)

    # --- operations -------------------------------------------------------------

    def create_record(self, actor: User, draft: dict) -> CatalogueRecord:
        if actor.role != "publisher":
            raise Forbidden(f"only publishers create records (actor role: {actor.role})")
        unknown = set(draft) - _PATCHABLE
        if unknown:
            raise SchemaViolation(f"unknown fields: {', '.join(sorted(unknown))}", sorted(unknown))
        self._validate_draft(draft)
        now = self._now()
        doc = dict(draft)
        doc.update({
            "id": self._new_id(),
            "kind": draft.get("kind", "dataset"),
            "publisherOrg": draft.get("publisherOrg", ""),
            "caseStudy": draft.get("caseStudy", ""),
            "status": "draft",
            "owner": actor.user_id,
            "created": now,
            "modified": now,
        })
        with self._lock:
            self._commit(AuditEvent(now, actor.user_id, "create", doc["id"], doc))
            return self._records[doc["id"]]

    def import_record(self, actor: User, draft: dict) -> CatalogueRecord:
        """Create a harvested record directly in submitted status."""
        unknown = set(draft) - _PATCHABLE
        if unknown:
            raise SchemaViolation(f"unknown fields: {', '.join(sorted(unknown))}", sorted(unknown))
        self._validate_draft(draft)
        now = self._now()
        doc = dict(draft)
        doc.update({
            "id": self._new_id(),
            "kind": draft.get("kind", "dataset"),
            "publisherOrg": draft.get("publisherOrg", ""),
            "caseStudy": draft.get("caseStudy", ""),
            "status": "submitted",
            "owner": actor.user_id,
            "created": now,
            "modified": now,
        })
        with self._lock:
            self._commit(AuditEvent(now, actor.user_id, "create", doc["id"], doc))
            return self._records[doc["id"]]

    def get(self, record_id: str) -> CatalogueRecord:
        record = self._records.get(record_id)
        if record is None:
            raise NotFound(f"no catalogue record {record_id!r}")
        return record

    def all_records(self) -> list[CatalogueRecord]:
        return sorted(self._records.values(), key=lambda r: r.id)

    def transition(self, actor: User, record_id: str, action: str) -> CatalogueRecord:
        with self._lock:
            record = self.get(record_id)
            rule = TRANSITIONS.get((record.status, action))
            if rule is None:
                raise IllegalTransition(f"cannot {action} a {record.status} record")
            target, guard = rule
            if guard == "owner":
                if actor.user_id != record.owner:
                    raise Forbidden(f"only the record owner may {action}")
            elif guard == "tmb":
                if actor.role != "tmb":
                    raise Forbidden(f"only the data management board may {action}")
            now = self._now()
            self._commit(AuditEvent(now, actor.user_id, action, record_id,
                                    {"from": record.status, "to": target, "modified": now}))
            return self._records[record_id]

    def update_record(self, actor: User, record_id: str, patch: dict) -> CatalogueRecord:
        with self._lock:
            record = self.get(record_id)
            if actor.user_id != record.owner:
                raise Forbidden("only the record owner may edit metadata")
            if record.status not in ("draft", "approved"):
                raise IllegalTransition(f"cannot edit a {record.status} record")
            unknown = set(patch) - _PATCHABLE
            if unknown:
                raise SchemaViolation(f"unknown fields: {', '.join(sorted(unknown))}", sorted(unknown))
            merged = record.to_json()
            merged.update(patch)
            merged = {k: v for k, v in merged.items() if v is not None}
            self._validate_draft(merged)
            # editing an approved record sends it back through review
            new_status = "submitted" if record.status == "approved" else record.status
            now = self._now()
            self._commit(AuditEvent(now, actor.user_id, "update", record_id,
                                    {"fields": patch, "status": new_status, "modified": now}))
            return self._records[record_id]

    def search(
        self,
        text: str | None = None,
        status: str | None = None,
        data_requirement: str | None = None,
        source_type: str | None = None,
        case_study: str | None = None,
        dist_format: str | None = None,
    ) -> list[CatalogueRecord]:
        if status is not None and status not in self.vocab.status:
            raise UnknownVocabularyTerm(f"status {status!r} is not in the controlled vocabulary")
        if data_requirement is not None and data_requirement not in self.vocab.data_requirement:
            raise UnknownVocabularyTerm(f"dataRequirement {data_requirement!r} is not in the controlled vocabulary")
        if source_type is not None and source_type not in self.vocab.source_type:
            raise UnknownVocabularyTerm(f"sourceType {source_type!r} is not in the controlled vocabulary")

        results = []
        for record in self._records.values():
            if text is not None:
                needle = text.lower()
                if needle not in record.title.lower() and needle not in record.description.lower():
                    continue
            if status is not None and record.status != status:
                continue
            if data_requirement is not None and record.data_requirement != data_requirement:
                continue
            if source_type is not None and record.source_type != source_type:
                continue
            if case_study is not None and record.case_study != case_study:
                continue
            if dist_format is not None and dist_format not in {d.format for d in record.distributions}:
                continue
            results.append(record)
        results.sort(key=lambda r: r.id)
        results.sort(key=lambda r: r.modified, reverse=True)
        return results
