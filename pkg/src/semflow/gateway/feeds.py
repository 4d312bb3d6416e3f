"""Per-record server-sent-event channels.

Channel `data.{recordId}` receives every lowered payload produced by a
fresh pipeline run. Each subscriber gets every message published during
its connection, exactly once, in publication order.
"""

from __future__ import annotations

import asyncio
import threading
from dataclasses import dataclass, field


@dataclass
class Subscription:
    channel: str
    queue: asyncio.Queue
    loop: asyncio.AbstractEventLoop


@dataclass
class FeedHub:
    _subs: dict[str, list[Subscription]] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def subscribe(self, channel: str, loop: asyncio.AbstractEventLoop) -> Subscription:
        sub = Subscription(channel, asyncio.Queue(), loop)
        with self._lock:
            self._subs.setdefault(channel, []).append(sub)
        return sub

    def unsubscribe(self, sub: Subscription) -> None:
        with self._lock:
            subs = self._subs.get(sub.channel, [])
            if sub in subs:
                subs.remove(sub)

    def publish(self, channel: str, payload: str) -> int:
        """Fan a payload out to current subscribers; safe from any thread."""
        with self._lock:
            subs = list(self._subs.get(channel, []))
        for sub in subs:
            sub.loop.call_soon_threadsafe(sub.queue.put_nowait, payload)
        return len(subs)


def sse_frame(payload: str) -> str:
    escaped = payload.replace("\\", "\\\\").replace("\r", "\\r").replace("\n", "\\n")
    return f"event: data\ndata: {escaped}\n\n"


def sse_unescape(data: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(data):
        if data.startswith("\\\\", i):
            out.append("\\")
            i += 2
        elif data.startswith("\\n", i):
            out.append("\n")
            i += 2
        elif data.startswith("\\r", i):
            out.append("\r")
            i += 2
        else:
            out.append(data[i])
            i += 1
    return "".join(out)
