"""Controlled vocabularies governing catalogue metadata.

The data-requirement terms follow the reference model's coverage of road
traffic, public transport and weather content categories. Deployments can
override any list by dropping JSON files into the configured vocab dir.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

STATUS_TERMS = ["draft", "submitted", "approved", "rejected", "deprecated"]

DATA_REQUIREMENT_TERMS = [
    "Road Transport Network",
    "Road Equipment Position",
    "Road Traffic Measurements",
    "Floating Vehicle Data",
    "Road Travel Times",
    "Road Transport Network Events",
    "Influencing Planned Events",
    "Weather Events",
    "Forecasted Weather Data",
    "Weather Data",
    "Public Transport Network",
    "Public Transport Schedules",
    "Public Transport Network Events",
    "Floating PT Vehicle Data",
    "Public Transport Delays",
    "unclassified",
]

SOURCE_TYPE_TERMS = [
    "static-dataset",
    "real-time-feed",
    "data-service",
    "historical-archive",
    "unclassified",
]

_FILES = {
    "status": "status.json",
    "data_requirement": "data-requirement.json",
    "source_type": "source-type.json",
}


@dataclass
class Vocabularies:
    status: list[str] = field(default_factory=lambda: list(STATUS_TERMS))
    data_requirement: list[str] = field(default_factory=lambda: list(DATA_REQUIREMENT_TERMS))
    source_type: list[str] = field(default_factory=lambda: list(SOURCE_TYPE_TERMS))

    @classmethod
    def load(cls, vocab_dir: str | Path) -> "Vocabularies":
        vocab = cls()
        for attr, filename in _FILES.items():
            path = Path(vocab_dir) / filename
            if path.exists():
                terms = json.loads(path.read_text(encoding="utf-8"))
                if not isinstance(terms, list) or not all(isinstance(t, str) for t in terms):
                    raise ValueError(f"{path} must hold a JSON list of strings")
                setattr(vocab, attr, terms)
        return vocab

    def write(self, vocab_dir: str | Path) -> None:
        directory = Path(vocab_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for attr, filename in _FILES.items():
            (directory / filename).write_text(
                json.dumps(getattr(self, attr), indent=2) + "\n", encoding="utf-8")
