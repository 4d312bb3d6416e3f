"""Gateway/server configuration file handling.

JSON config, relative paths resolved against the config file's directory:

    {
      "port": 8080,
      "tokens": [{"token": "...", "userId": "alice", "role": "publisher"}],
      "secrets": {"upstreamKey": "UPSTREAM_KEY_ENV_VAR"},
      "journalPath": "journal.jsonl",
      "vocabDir": "vocab",
      "mappingsDir": "mappings",
      "templatesDir": "templates",
      "pipelinesDir": "pipelines",
      "bindingsPath": "bindings.json",
      "dataDir": "data"
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from semflow.catalogue.model import User


@dataclass
class GatewayConfig:
    base_dir: Path
    port: int = 8080
    tokens: list[User] = field(default_factory=list)
    secrets: dict[str, str] = field(default_factory=dict)  # secret name -> env var name
    journal_path: Path | None = None
    vocab_dir: Path | None = None
    mappings_dir: Path | None = None
    templates_dir: Path | None = None
    pipelines_dir: Path | None = None
    bindings_path: Path | None = None
    data_dir: Path | None = None

    @classmethod
    def load(cls, path: str | Path) -> "GatewayConfig":
        path = Path(path).resolve()
        doc = json.loads(path.read_text(encoding="utf-8"))
        base = path.parent

        def resolve(key: str) -> Path | None:
            value = doc.get(key)
            return (base / value) if value else None

        return cls(
            base_dir=base,
            port=doc.get("port", 8080),
            tokens=[User(t["userId"], t["role"], t["token"]) for t in doc.get("tokens", [])],
            secrets=doc.get("secrets", {}),
            journal_path=resolve("journalPath"),
            vocab_dir=resolve("vocabDir"),
            mappings_dir=resolve("mappingsDir"),
            templates_dir=resolve("templatesDir"),
            pipelines_dir=resolve("pipelinesDir"),
            bindings_path=resolve("bindingsPath"),
            data_dir=resolve("dataDir") or base,
        )

    def user_for_token(self, token: str) -> User | None:
        for user in self.tokens:
            if user.token == token:
                return user
        return None
