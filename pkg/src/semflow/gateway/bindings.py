"""Source bindings: how the gateway fetches and processes each record.

A binding ties a catalogue record to a fetch strategy (http/file/inline),
an optional pipeline, the query parameters it honours, and a cache TTL.
"""

from __future__ import annotations

import json
import mimetypes
import os
from dataclasses import dataclass, field
from pathlib import Path
from threading import RLock

import httpx

from semflow.errors import IntegrationError, UpstreamUnavailable


@dataclass(frozen=True)
class FetchSpec:
    kind: str  # http | file | inline
    url: str | None = None
    path: str | None = None
    text: str | None = None  # inline payload
    headers: dict = field(default_factory=dict)
    auth_ref: str | None = None
    media_type: str | None = None

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.url:
            doc["url"] = self.url
        if self.path:
            doc["path"] = self.path
        if self.text is not None:
            doc["text"] = self.text
        if self.headers:
            doc["headers"] = dict(self.headers)
        if self.auth_ref:
            doc["authRef"] = self.auth_ref
        if self.media_type:
            doc["mediaType"] = self.media_type
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "FetchSpec":
        kind = doc.get("kind")
        if kind not in ("http", "file", "inline"):
            raise IntegrationError(f"fetch.kind must be http, file or inline, got {kind!r}")
        if kind == "http" and not doc.get("url"):
            raise IntegrationError("http fetch needs a url")
        if kind == "file" and not doc.get("path"):
            raise IntegrationError("file fetch needs a path")
        if kind == "inline" and doc.get("text") is None:
            raise IntegrationError("inline fetch needs text")
        return cls(
            kind=kind,
            url=doc.get("url"),
            path=doc.get("path"),
            text=doc.get("text"),
            headers=doc.get("headers", {}),
            auth_ref=doc.get("authRef"),
            media_type=doc.get("mediaType"),
        )


@dataclass(frozen=True)
class SourceBinding:
    record_id: str
    fetch: FetchSpec
    pipeline_ref: str | None = None
    param_map: dict = field(default_factory=dict)
    cache_ttl_seconds: int = 0

    def to_json(self) -> dict:
        return {
            "recordId": self.record_id,
            "fetch": self.fetch.to_json(),
            "pipelineRef": self.pipeline_ref,
            "paramMap": dict(self.param_map),
            "cacheTtlSeconds": self.cache_ttl_seconds,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SourceBinding":
        if "recordId" not in doc or "fetch" not in doc:
            raise IntegrationError("binding needs recordId and fetch")
        ttl = doc.get("cacheTtlSeconds", 0)
        if not isinstance(ttl, int) or ttl < 0:
            raise IntegrationError("cacheTtlSeconds must be a non-negative integer")
        return cls(
            record_id=doc["recordId"],
            fetch=FetchSpec.from_json(doc["fetch"]),
            pipeline_ref=doc.get("pipelineRef"),
            param_map=doc.get("paramMap", {}),
            cache_ttl_seconds=ttl,
        )


class BindingStore:
    """In-memory binding registry persisted to a JSON config-store file."""

    def __init__(self, path: Path | None = None):
        self.path = path
        self._bindings: dict[str, SourceBinding] = {}
        self._lock = RLock()
        if path is not None and path.exists():
            doc = json.loads(path.read_text(encoding="utf-8"))
            for rid, bdoc in doc.items():
                self._bindings[rid] = SourceBinding.from_json(bdoc)

    def get(self, record_id: str) -> SourceBinding | None:
        return self._bindings.get(record_id)

    def put(self, binding: SourceBinding) -> None:
        with self._lock:
            self._bindings[binding.record_id] = binding
            if self.path is not None:
                doc = {rid: b.to_json() for rid, b in sorted(self._bindings.items())}
                tmp = self.path.with_suffix(".tmp")
                tmp.write_text(json.dumps(doc, indent=2, sort_keys=True), encoding="utf-8")
                tmp.replace(self.path)

    def all(self) -> list[SourceBinding]:
        return [self._bindings[rid] for rid in sorted(self._bindings)]


class Fetcher:
    """Resolves a FetchSpec to (bytes, media type)."""

    def __init__(self, data_dir: Path | None = None, secrets: dict[str, str] | None = None,
                 timeout: float = 10.0):
        self.data_dir = data_dir
        self.secrets = secrets or {}
        self.timeout = timeout

    def _auth_headers(self, spec: FetchSpec) -> dict:
        headers = dict(spec.headers)
        if spec.auth_ref:
            env_var = self.secrets.get(spec.auth_ref)
            if env_var is None:
                raise UpstreamUnavailable(f"secret {spec.auth_ref!r} is not configured")
            value = os.environ.get(env_var)
            if value is None:
                raise UpstreamUnavailable(f"environment variable {env_var} for secret {spec.auth_ref!r} is unset")
            headers["Authorization"] = f"Bearer {value}"
        return headers

    def __call__(self, spec: FetchSpec) -> tuple[bytes, str]:
        if spec.kind == "inline":
            return spec.text.encode("utf-8"), spec.media_type or "application/octet-stream"
        if spec.kind == "file":
            path = Path(spec.path)
            if not path.is_absolute():
                if self.data_dir is None:
                    raise UpstreamUnavailable("no data directory configured for relative file fetch")
                path = self.data_dir / path
            try:
                data = path.read_bytes()
            except OSError as exc:
                raise UpstreamUnavailable(f"cannot read {path}: {exc}") from exc
            media = spec.media_type or mimetypes.guess_type(str(path))[0] or "application/octet-stream"
            return data, media
        # http
        try:
            response = httpx.get(spec.url, headers=self._auth_headers(spec),
                                 timeout=self.timeout, follow_redirects=True)
        except httpx.HTTPError as exc:
            raise UpstreamUnavailable(f"fetch failed: {exc}") from exc
        if response.status_code >= 400:
            raise UpstreamUnavailable(f"upstream returned {response.status_code}")
        media = spec.media_type or response.headers.get("content-type", "application/octet-stream")
        return response.content, media.split(";")[0].strip()
