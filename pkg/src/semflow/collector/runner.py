"""Historical-dataset collector: poll, harmonise, dedup, append, rotate.

Each job polls its record's upstream at a fixed frequency, runs the
CSV-lowering pipeline, and appends only rows whose dedup-key tuple has
not been seen in the active output file. Daily rotation archives the file
(gzipped on request) and starts a fresh one. Appends are buffered and
written with a single write call, so a reader never observes a torn row.
"""

from __future__ import annotations

import csv
import gzip
import io
import json
import logging
import random
import threading
from dataclasses import dataclass, field
from pathlib import Path

from semflow.errors import IntegrationError, PipelineError, UpstreamUnavailable
from semflow.collector.clock import Clock, SimulatedClock, utc_date
from semflow.gateway.bindings import BindingStore, Fetcher
from semflow.gateway.pipeline import run_pipeline
from semflow.gateway.registry import Registry
from semflow.lowering.render import render
from semflow.rdf.graph import Graph

log = logging.getLogger("semflow.collector")

_JITTER_FRACTION = 0.04  # < 5% of the period, per the scheduling contract


@dataclass(frozen=True)
class CollectionJob:
    record_id: str
    frequency_seconds: int
    pipeline_ref: str
    output_dir: str
    rotation: str = "none"  # none | daily
    compress: bool = False
    dedup_key: tuple[str, ...] = ()

    def __post_init__(self):
        if self.frequency_seconds < 1:
            raise IntegrationError("frequencySeconds must be >= 1")
        if self.rotation not in ("none", "daily"):
            raise IntegrationError(f"rotation must be none or daily, got {self.rotation!r}")

    @classmethod
    def from_json(cls, doc: dict) -> "CollectionJob":
        return cls(
            record_id=doc["recordId"],
            frequency_seconds=doc["frequencySeconds"],
            pipeline_ref=doc["pipelineRef"],
            output_dir=doc["outputDir"],
            rotation=doc.get("rotation", "none"),
            compress=doc.get("compress", False),
            dedup_key=tuple(doc.get("dedupKey", [])),
        )


def load_jobs(path: str | Path) -> list[CollectionJob]:
    docs = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(docs, list):
        raise IntegrationError("jobs file must hold a JSON list")
    return [CollectionJob.from_json(doc) for doc in docs]


class JobRunner:
    """One collection job; serialized with itself, state rebuilt from disk."""

    def __init__(self, job: CollectionJob, registry: Registry, bindings: BindingStore,
                 fetcher: Fetcher, clock: Clock, base_dir: Path | None = None):
        self.job = job
        self.registry = registry
        self.bindings = bindings
        self.fetcher = fetcher
        self.clock = clock
        out_dir = Path(job.output_dir)
        if not out_dir.is_absolute() and base_dir is not None:
            out_dir = base_dir / out_dir
        self.out_dir = out_dir
        self.active_path = out_dir / f"{job.record_id}.csv"

        spec = registry.pipeline(job.pipeline_ref)
        if spec.lower_template_id is None:
            raise IntegrationError(f"pipeline {job.pipeline_ref!r} has no lower step")
        template = registry.template(spec.lower_template_id)
        if template.output_format != "csv":
            raise IntegrationError(
                f"collection pipeline {job.pipeline_ref!r} must lower to csv")
        header_only = render(template, Graph()).text
        self.columns = next(csv.reader(io.StringIO(header_only)))
        missing = [c for c in job.dedup_key if c not in self.columns]
        if missing:
            raise IntegrationError(
                f"dedupKey column(s) {missing} not produced by template "
                f"{spec.lower_template_id!r} (columns: {self.columns})")

        self._busy = threading.Lock()
        self._seen: set[tuple[str, ...]] = set()
        self._file_day = utc_date(clock.now())
        self._rescan()

    def _rescan(self) -> None:
        """Rebuild the dedup set by scanning the active file."""
        self._seen.clear()
        if not self.active_path.exists():
            return
        with open(self.active_path, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                self._seen.add(tuple(row.get(c, "") for c in self.job.dedup_key))

    def _key(self, row: dict[str, str]) -> tuple[str, ...]:
        return tuple(row.get(c, "") for c in self.job.dedup_key)

    def maybe_rotate(self) -> bool:
        """Archive the active file when the UTC day rolled over."""
        if self.job.rotation != "daily":
            return False
        today = utc_date(self.clock.now())
        if today <= self._file_day or not self.active_path.exists():
            self._file_day = max(self._file_day, today)
            return False
        archived = self.out_dir / f"{self.job.record_id}.{self._file_day.isoformat()}.csv"
        self.active_path.replace(archived)
        if self.job.compress:
            gz_path = archived.with_suffix(".csv.gz")
            with open(archived, "rb") as src, gzip.open(gz_path, "wb") as dst:
                dst.write(src.read())
            archived.unlink()
        self._seen.clear()
        self._file_day = today
        log.info("rotated %s", self.active_path.name)
        return True

    def run_once(self) -> int:
        """Fetch + pipeline + deduplicated append; returns appended row count."""
        binding = self.bindings.get(self.job.record_id)
        if binding is None:
            raise IntegrationError(f"no binding registered for record {self.job.record_id!r}")
        self.maybe_rotate()
        try:
            upstream, _media = self.fetcher(binding.fetch)
        except UpstreamUnavailable as exc:
            log.warning("upstream unavailable for %s: %s", self.job.record_id, exc)
            return 0
        spec = self.registry.pipeline(self.job.pipeline_ref)
        result = run_pipeline(spec, {"upstream": upstream}, self.registry)
        if result.output is None or result.output.output_format != "csv":
            raise PipelineError(self.job.pipeline_ref, "pipeline did not produce csv output")

        rows = list(csv.reader(io.StringIO(result.output.text)))
        if not rows:
            return 0
        header, data_rows = rows[0], rows[1:]
        if header != self.columns:
            raise PipelineError(self.job.pipeline_ref,
                                f"output header {header} does not match expected {self.columns}")

        fresh: list[list[str]] = []
        for row in data_rows:
            key = self._key(dict(zip(header, row)))
            if key not in self._seen:
                self._seen.add(key)
                fresh.append(row)
        if not fresh and self.active_path.exists():
            return 0

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        new_file = not self.active_path.exists()
        if new_file:
            writer.writerow(header)
        writer.writerows(fresh)
        chunk = buf.getvalue().encode("utf-8")
        if chunk:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            # single buffered write: a crash can lose the chunk, never tear a row
            with open(self.active_path, "ab") as fh:
                fh.write(chunk)
                fh.flush()
        return len(fresh)

    def tick(self) -> int | None:
        """Scheduler entry; returns None when skipped because a run is active."""
        if not self._busy.acquire(blocking=False):
            return None
        try:
            return self.run_once()
        except (PipelineError, IntegrationError) as exc:
            log.error("collection run failed for %s: %s", self.job.record_id, exc)
            return 0
        finally:
            self._busy.release()


@dataclass
class Scheduler:
    """Fires each runner every period; a tick that lands while the previous
    run is still going is skipped, never queued."""

    runners: list[JobRunner]
    clock: Clock
    jitter_seed: int | None = 0
    run_counts: dict[str, int] = field(default_factory=dict)

    def _jitter(self, runner: JobRunner, k: int) -> float:
        if self.jitter_seed is None or isinstance(self.clock, SimulatedClock):
            return 0.0
        rng = random.Random((self.jitter_seed, runner.job.record_id, k))
        return rng.uniform(0, _JITTER_FRACTION * runner.job.frequency_seconds)

    def run(self, duration_seconds: float | None = None, max_ticks: int | None = None,
            stop: threading.Event | None = None) -> dict[str, int]:
        """Single-threaded event loop driven by the clock seam.

        The first fire for each job lands one full period after start.
        """
        start = self.clock.now()
        deadline = None if duration_seconds is None else start + duration_seconds
        next_k = {r.job.record_id: 1 for r in self.runners}
        self.run_counts = {r.job.record_id: 0 for r in self.runners}
        ticks = 0

        while self.runners:
            if stop is not None and stop.is_set():
                break
            upcoming = []
            for runner in self.runners:
                rid = runner.job.record_id
                k = next_k[rid]
                fire = start + k * runner.job.frequency_seconds + self._jitter(runner, k)
                upcoming.append((fire, rid, runner, k))
            upcoming.sort(key=lambda item: (item[0], item[1]))
            fire, rid, runner, k = upcoming[0]
            if deadline is not None and fire > deadline:
                break
            if max_ticks is not None and ticks >= max_ticks:
                break
            self.clock.sleep_until(fire)
            ticks += 1
            result = runner.tick()
            if result is not None:
                self.run_counts[rid] += 1
            # skip any periods that elapsed while the run was in progress
            now = self.clock.now()
            k_next = k + 1
            period = runner.job.frequency_seconds
            while start + k_next * period < now:
                k_next += 1
            next_k[rid] = k_next
        return dict(self.run_counts)
