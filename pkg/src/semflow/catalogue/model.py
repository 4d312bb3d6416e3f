"""Catalogue records, distributions, users, and audit events."""

from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class User:
    user_id: str
    role: str  # publisher | tmb | user
    token: str = ""


@dataclass(frozen=True)
class Distribution:
    id: str
    format: str  # media type, e.g. "application/json"
    semantics: str  # "raw" | "harmonised:<templateId>" | "fused:<pipelineId>"
    access_url: str

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "format": self.format,
            "semanticsTag": self.semantics,
            "accessUrl": self.access_url,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Distribution":
        return cls(
            id=doc["id"],
            format=doc["format"],
            semantics=doc["semanticsTag"],
            access_url=doc["accessUrl"],
        )


@dataclass(frozen=True)
class CatalogueRecord:
    id: str
    kind: str  # dataset | dataService
    title: str
    description: str
    publisher_org: str
    case_study: str
    data_requirement: str
    source_type: str
    status: str
    owner: str
    created: str
    modified: str
    refresh_period_seconds: int | None = None
    endpoint_url: str | None = None  # dataService only
    distributions: tuple[Distribution, ...] = ()

    def to_json(self) -> dict:
        doc = {
            "id": self.id,
            "kind": self.kind,
            "title": self.title,
            "description": self.description,
            "publisherOrg": self.publisher_org,
            "caseStudy": self.case_study,
            "dataRequirement": self.data_requirement,
            "sourceType": self.source_type,
            "status": self.status,
            "owner": self.owner,
            "created": self.created,
            "modified": self.modified,
            "distributions": [d.to_json() for d in self.distributions],
        }
        if self.refresh_period_seconds is not None:
            doc["refreshPeriodSeconds"] = self.refresh_period_seconds
        if self.endpoint_url is not None:
            doc["endpointUrl"] = self.endpoint_url
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "CatalogueRecord":
        return cls(
            id=doc["id"],
            kind=doc["kind"],
            title=doc["title"],
            description=doc["description"],
            publisher_org=doc.get("publisherOrg", ""),
            case_study=doc.get("caseStudy", ""),
            data_requirement=doc["dataRequirement"],
            source_type=doc["sourceType"],
            status=doc["status"],
            owner=doc["owner"],
            created=doc["created"],
            modified=doc["modified"],
            refresh_period_seconds=doc.get("refreshPeriodSeconds"),
            endpoint_url=doc.get("endpointUrl"),
            distributions=tuple(Distribution.from_json(d) for d in doc.get("distributions", [])),
        )

    def with_fields(self, **changes) -> "CatalogueRecord":
        return replace(self, **changes)


@dataclass(frozen=True)
class AuditEvent:
    ts: str
    actor: str
    action: str
    record_id: str
    payload: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "ts": self.ts,
            "actor": self.actor,
            "action": self.action,
            "recordId": self.record_id,
            "payload": self.payload,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AuditEvent":
        return cls(doc["ts"], doc["actor"], doc["action"], doc["recordId"], doc.get("payload", {}))
