"""Loads mappings, templates, pipelines and static data files for pipelines.

Artifact ids are file stems: mappings/det-csv.mapping.json -> "det-csv",
templates/observations.lot -> "observations", pipelines/x.json -> "x".
"""

from __future__ import annotations

from pathlib import Path

from semflow.errors import NotFound
from semflow.lifting.engine import load_lookups
from semflow.lifting.model import LiftingMapping, LookupTable
from semflow.lifting.parser import parse_mapping
from semflow.lowering.model import LoweringTemplate
from semflow.lowering.parser import parse_template


class Registry:
    def __init__(
        self,
        mappings_dir: Path | None = None,
        templates_dir: Path | None = None,
        pipelines_dir: Path | None = None,
        data_dir: Path | None = None,
    ):
        self.data_dir = data_dir
        self.mappings: dict[str, LiftingMapping] = {}
        self.lookups: dict[str, list[LookupTable]] = {}
        self.templates: dict[str, LoweringTemplate] = {}
        self.pipelines: dict[str, "PipelineSpec"] = {}  # noqa: F821

        if mappings_dir and mappings_dir.exists():
            for path in sorted(mappings_dir.glob("*.json")):
                name = path.name.removesuffix(".mapping.json").removesuffix(".json")
                mapping = parse_mapping(path.read_text(encoding="utf-8"))
                self.mappings[name] = mapping
                self.lookups[name] = load_lookups(mapping, path.parent)
        if templates_dir and templates_dir.exists():
            for path in sorted(templates_dir.glob("*.lot")):
                self.templates[path.stem] = parse_template(path.read_text(encoding="utf-8"))
        if pipelines_dir and pipelines_dir.exists():
            from semflow.gateway.pipeline import parse_pipeline

            for path in sorted(pipelines_dir.glob("*.json")):
                name = path.name.removesuffix(".pipeline.json").removesuffix(".json")
                self.pipelines[name] = parse_pipeline(path.read_text(encoding="utf-8"), pipeline_id=name)

    def mapping(self, name: str) -> LiftingMapping:
        if name not in self.mappings:
            raise NotFound(f"no mapping named {name!r}")
        return self.mappings[name]

    def template(self, name: str) -> LoweringTemplate:
        if name not in self.templates:
            raise NotFound(f"no lowering template named {name!r}")
        return self.templates[name]

    def pipeline(self, name: str):
        if name not in self.pipelines:
            raise NotFound(f"no pipeline named {name!r}")
        return self.pipelines[name]

    def read_data_file(self, rel_path: str) -> bytes:
        if self.data_dir is None:
            raise NotFound(f"no data directory configured (wanted {rel_path!r})")
        path = self.data_dir / rel_path
        if not path.exists():
            raise NotFound(f"data file {rel_path!r} not found under {self.data_dir}")
        return path.read_bytes()
