"""Collector: deduplicated CSV appends, scheduling, and rotation."""

import csv
import gzip
import io
from pathlib import Path

import pytest

from semflow.errors import IntegrationError
from semflow.collector.clock import SimulatedClock
from semflow.collector.runner import CollectionJob, JobRunner, Scheduler
from semflow.gateway.bindings import BindingStore, FetchSpec, SourceBinding
from semflow.gateway.registry import Registry


class ScriptedFetcher:
    """Returns the current payload; optionally burns simulated time per call."""

    def __init__(self, payload: bytes, clock=None, cost_seconds: float = 0.0):
        self.payload = payload
        self.clock = clock
        self.cost_seconds = cost_seconds
        self.calls = 0

    def __call__(self, spec: FetchSpec):
        self.calls += 1
        if self.clock is not None and self.cost_seconds:
            self.clock.advance(self.cost_seconds)
        return self.payload, "text/csv"


def feed(ts: str, rows=(("D1", "420"), ("D2", "180"))) -> bytes:
    body = "".join(f"{d},{f},{ts}\n" for d, f in rows)
    return f"id,flow,timestamp\n{body}".encode()


@pytest.fixture
def env(demo_copy, tmp_path):
    registry = Registry(demo_copy / "mappings", demo_copy / "templates",
                        demo_copy / "pipelines", demo_copy)
    bindings = BindingStore()
    bindings.put(SourceBinding(
        record_id="rec-collect",
        fetch=FetchSpec(kind="inline", text="unused"),
    ))
    out_dir = tmp_path / "collect-out"
    job = CollectionJob(
        record_id="rec-collect",
        frequency_seconds=1,
        pipeline_ref="collect-observations",
        output_dir=str(out_dir),
        rotation="daily",
        compress=True,
        dedup_key=("entityId", "metric", "observedAt"),
    )
    return registry, bindings, job, out_dir


def make_runner(env, fetcher, clock):
    registry, bindings, job, out_dir = env
    runner = JobRunner(job, registry, bindings, fetcher, clock)
    return runner, out_dir / "rec-collect.csv"


def read_rows(path: Path):
    return list(csv.reader(io.StringIO(path.read_text())))


def test_first_run_writes_header_and_rows(env):
    clock = SimulatedClock(1_754_000_000)
    runner, active = make_runner(env, ScriptedFetcher(feed("2026-08-10T09:00:00Z")), clock)
    assert runner.run_once() == 2
    rows = read_rows(active)
    assert rows[0] == ["entityType", "entityId", "metric", "value", "observedAt"]
    assert len(rows) == 3


def test_second_run_with_unchanged_upstream_appends_nothing(env):
    clock = SimulatedClock(1_754_000_000)
    runner, active = make_runner(env, ScriptedFetcher(feed("2026-08-10T09:00:00Z")), clock)
    assert runner.run_once() == 2
    assert runner.run_once() == 0
    assert len(read_rows(active)) == 3  # header + 2, no duplicates


def test_three_runs_with_advancing_timestamps(env):
    clock = SimulatedClock(1_754_000_000)
    fetcher = ScriptedFetcher(feed("2026-08-10T09:00:00Z"))
    runner, active = make_runner(env, fetcher, clock)
    total = runner.run_once()
    for minute in ("09:01", "09:02"):
        fetcher.payload = feed(f"2026-08-10T{minute}:00Z")
        total += runner.run_once()
    assert total == 6
    rows = read_rows(active)
    assert len(rows) == 7  # header + 6
    assert all(len(r) == len(rows[0]) for r in rows)  # constant column count


def test_dedup_set_is_rebuilt_from_the_active_file(env):
    clock = SimulatedClock(1_754_000_000)
    fetcher = ScriptedFetcher(feed("2026-08-10T09:00:00Z"))
    runner, _ = make_runner(env, fetcher, clock)
    runner.run_once()
    # a fresh runner (process restart) must not re-append the same rows
    runner2, _ = make_runner(env, fetcher, clock)
    assert runner2.run_once() == 0


def test_upstream_failure_logs_and_appends_nothing(env):
    from semflow.errors import UpstreamUnavailable

    class FailingFetcher:
        def __call__(self, spec):
            raise UpstreamUnavailable("down")

    clock = SimulatedClock(1_754_000_000)
    runner, active = make_runner(env, FailingFetcher(), clock)
    assert runner.run_once() == 0
    assert not active.exists()


def test_schedule_three_and_a_half_periods_fires_three_runs(env):
    clock = SimulatedClock(1_754_000_000)
    runner, _ = make_runner(env, ScriptedFetcher(feed("2026-08-10T09:00:00Z")), clock)
    scheduler = Scheduler([runner], clock)
    counts = scheduler.run(duration_seconds=3.5)
    assert counts == {"rec-collect": 3}


def test_slow_run_skips_the_next_tick(env):
    clock = SimulatedClock(1_754_000_000)
    fetcher = ScriptedFetcher(feed("2026-08-10T09:00:00Z"), clock=clock, cost_seconds=1.5)
    runner, _ = make_runner(env, fetcher, clock)
    scheduler = Scheduler([runner], clock)
    counts = scheduler.run(duration_seconds=3.5)
    # fires at t=1 (ends 2.5; tick 2 skipped) and t=3 (ends 4.5)
    assert counts == {"rec-collect": 2}
    assert fetcher.calls == 2


def test_daily_rotation_gzips_previous_file(env):
    day = 86_400
    start = 1_754_006_400  # 2025-08-01T00:00:00Z, start of a UTC day
    clock = SimulatedClock(start)
    fetcher = ScriptedFetcher(feed("2026-08-10T09:00:00Z"))
    runner, active = make_runner(env, fetcher, clock)
    runner.run_once()
    before = active.read_bytes()
    file_day = runner._file_day.isoformat()

    clock.advance(day)
    fetcher.payload = feed("2026-08-11T09:00:00Z")
    assert runner.run_once() == 2

    registry, bindings, job, out_dir = env
    archived = out_dir / f"rec-collect.{file_day}.csv.gz"
    assert archived.exists()
    assert gzip.decompress(archived.read_bytes()) == before
    rows = read_rows(active)
    assert rows[0] == ["entityType", "entityId", "metric", "value", "observedAt"]
    assert len(rows) == 3  # fresh file: header + 2 new rows


def test_dedup_key_must_be_template_columns(env):
    registry, bindings, job, out_dir = env
    bad_job = CollectionJob(
        record_id="rec-collect", frequency_seconds=1,
        pipeline_ref="collect-observations", output_dir=str(out_dir),
        dedup_key=("noSuchColumn",),
    )
    with pytest.raises(IntegrationError):
        JobRunner(bad_job, registry, bindings, ScriptedFetcher(b""), SimulatedClock())


def test_output_is_parseable_after_every_run(env):
    clock = SimulatedClock(1_754_000_000)
    fetcher = ScriptedFetcher(feed("2026-08-10T09:00:00Z"))
    runner, active = make_runner(env, fetcher, clock)
    for minute in range(5):
        fetcher.payload = feed(f"2026-08-10T09:0{minute}:00Z")
        runner.run_once()
        rows = read_rows(active)
        assert all(len(r) == 5 for r in rows)
        keys = [tuple(r[1:3] + r[4:5]) for r in rows[1:]]
        assert len(keys) == len(set(keys))  # no duplicate dedup tuples
