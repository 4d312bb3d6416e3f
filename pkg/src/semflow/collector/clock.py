"""Clock seam so scheduling tests run in milliseconds on a simulated clock."""

from __future__ import annotations

import time
from datetime import date, datetime, timezone
from typing import Protocol


class Clock(Protocol):
    def now(self) -> float: ...
    def sleep_until(self, when: float) -> None: ...


class SystemClock:
    def now(self) -> float:
        return time.time()

    def sleep_until(self, when: float) -> None:
        delay = when - time.time()
        if delay > 0:
            time.sleep(delay)


class SimulatedClock:
    """Manually advanced clock; sleep_until jumps straight to the target."""

    def __init__(self, start: float = 0.0):
        self._now = start

    def now(self) -> float:
        return self._now

    def advance(self, seconds: float) -> None:
        self._now += seconds

    def sleep_until(self, when: float) -> None:
        if when > self._now:
            self._now = when


def utc_date(ts: float) -> date:
    return datetime.fromtimestamp(ts, tz=timezone.utc).date()
