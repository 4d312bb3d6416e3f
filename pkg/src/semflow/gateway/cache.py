"""Single-flight TTL cache for /data responses.

Concurrent identical requests collapse onto one computation: the leader
computes, followers wait on the flight and reuse its result. Expired
entries are kept around so the gateway can serve stale data when the
upstream is down.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from typing import Callable, TypeVar

T = TypeVar("T")


@dataclass
class _Entry:
    value: object
    expires_at: float


class _Flight:
    __slots__ = ("event", "value", "error")

    def __init__(self):
        self.event = threading.Event()
        self.value: object = None
        self.error: BaseException | None = None


class SingleFlightCache:
    def __init__(self, now: Callable[[], float] = time.monotonic):
        self._now = now
        self._lock = threading.Lock()
        self._entries: dict[object, _Entry] = {}
        self._flights: dict[object, _Flight] = {}

    def peek_stale(self, key: object):
        """Last known value regardless of expiry, or None."""
        with self._lock:
            entry = self._entries.get(key)
            return entry.value if entry else None

    def get_or_compute(self, key: object, ttl: float, compute: Callable[[], T]) -> tuple[T, bool]:
        """Returns (value, cached): cached=True when served without computing."""
        while True:
            with self._lock:
                entry = self._entries.get(key)
                if entry is not None and self._now() < entry.expires_at:
                    return entry.value, True  # type: ignore[return-value]
                flight = self._flights.get(key)
                if flight is None:
                    flight = _Flight()
                    self._flights[key] = flight
                    leader = True
                else:
                    leader = False
            if not leader:
                flight.event.wait()
                if flight.error is not None:
                    raise flight.error
                return flight.value, True  # type: ignore[return-value]
            try:
                value = compute()
            except BaseException as exc:
                with self._lock:
                    del self._flights[key]
                flight.error = exc
                flight.event.set()
                raise
            with self._lock:
                self._entries[key] = _Entry(value, self._now() + ttl)
                del self._flights[key]
            flight.value = value
            flight.event.set()
            return value, False
