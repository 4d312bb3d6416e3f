"""Integration registration and the SSE feed channels."""

import json
import threading
import time

import httpx
import pytest

from semflow.gateway.feeds import FeedHub, sse_frame, sse_unescape
from tests.conftest import ALICE, THEO, UMA, auth


def find_record(client, title):
    records = client.get("/catalogue/records").json()
    return next(r for r in records if r["title"] == title)


# --- admin ---------------------------------------------------------------


def test_register_binding_for_unknown_record_is_422(client):
    binding = {"recordId": "rec-ghost", "fetch": {"kind": "inline", "text": "x"}}
    response = client.post("/admin/integrations", json=binding, headers=auth(THEO))
    assert response.status_code == 422


def test_register_binding_requires_tmb(client):
    record = find_record(client, "Rennes road sensor feed")
    binding = {"recordId": record["id"], "fetch": {"kind": "inline", "text": "x"}}
    assert client.post("/admin/integrations", json=binding,
                       headers=auth(ALICE)).status_code == 403
    assert client.post("/admin/integrations", json=binding,
                       headers=auth(UMA)).status_code == 403


def test_ttl_must_respect_refresh_period(client):
    record = find_record(client, "Rennes road sensor feed")  # refresh 60s
    binding = {
        "recordId": record["id"],
        "fetch": {"kind": "inline", "text": "x"},
        "cacheTtlSeconds": 600,
    }
    response = client.post("/admin/integrations", json=binding, headers=auth(THEO))
    assert response.status_code == 422


def test_register_is_idempotent_and_enables_data(client):
    record = find_record(client, "Manchester traffic flow archive")
    binding = {
        "recordId": record["id"],
        "fetch": {"kind": "inline", "text": "a,b\n1,2\n", "mediaType": "text/csv"},
        "cacheTtlSeconds": 0,
    }
    first = client.post("/admin/integrations", json=binding, headers=auth(THEO))
    second = client.post("/admin/integrations", json=binding, headers=auth(THEO))
    assert first.status_code == second.status_code == 200
    assert first.json() == second.json()
    response = client.get(f"/data/{record['id']}", headers=auth(UMA))
    assert response.status_code == 200
    assert response.content == b"a,b\n1,2\n"


def test_unknown_pipeline_ref_is_rejected(client):
    record = find_record(client, "Manchester traffic flow archive")
    binding = {
        "recordId": record["id"],
        "fetch": {"kind": "inline", "text": "x"},
        "pipelineRef": "ghost-pipeline",
    }
    response = client.post("/admin/integrations", json=binding, headers=auth(THEO))
    assert response.status_code == 404


# --- feed hub unit behavior ---------------------------------------------------


def test_publish_without_subscribers_is_noop():
    hub = FeedHub()
    assert hub.publish("data.rec-x", "payload") == 0


def test_sse_frame_escapes_newlines():
    frame = sse_frame('line1\nline2\\x')
    assert frame == "event: data\ndata: line1\\nline2\\\\x\n\n"
    body = frame.split("data: ", 1)[1].rstrip("\n")
    assert sse_unescape(body) == "line1\nline2\\x"


# --- live SSE integration ----------------------------------------------------


def read_sse_events(base_url, record_id, count, out, ready):
    headers = auth(UMA)
    with httpx.Client(timeout=30) as client:
        with client.stream("GET", f"{base_url}/feeds/{record_id}", headers=headers) as response:
            assert response.status_code == 200
            ready.set()
            for line in response.iter_lines():
                if line.startswith("data: "):
                    out.append(line[len("data: "):])
                    if len(out) >= count:
                        return


def test_two_subscribers_receive_three_messages_in_order(live_gateway):
    base = live_gateway.base_url
    with httpx.Client(timeout=10) as client:
        records = client.get(f"{base}/catalogue/records").json()
        record = next(r for r in records if r["title"] == "Rennes road sensor feed")
        rid = record["id"]

        outs = [[], []]
        readies = [threading.Event(), threading.Event()]
        threads = [
            threading.Thread(target=read_sse_events, args=(base, rid, 3, outs[i], readies[i]),
                             daemon=True)
            for i in range(2)
        ]
        for t in threads:
            t.start()
        for ready in readies:
            assert ready.wait(timeout=10)
        time.sleep(0.2)  # let subscriptions register server-side

        # each fresh pipeline run publishes one message; TTL is 0 so every
        # request recomputes
        for _ in range(3):
            response = client.get(f"{base}/data/{rid}?distribution=harmonised-json",
                                  headers=auth(UMA))
            assert response.status_code == 200
        for t in threads:
            t.join(timeout=15)
            assert not t.is_alive()

    expected = json.loads(response.content)
    for out in outs:
        assert len(out) == 3
        payloads = [json.loads(sse_unescape(p)) for p in out]
        assert payloads == [expected] * 3


def test_feed_for_unknown_record_is_404(live_gateway):
    with httpx.Client(timeout=10) as client:
        response = client.get(f"{live_gateway.base_url}/feeds/rec-ghost", headers=auth(UMA))
        assert response.status_code == 404


def test_feed_for_non_approved_record_is_409(live_gateway):
    with httpx.Client(timeout=10) as client:
        records = client.get(f"{live_gateway.base_url}/catalogue/records").json()
        draft = next(r for r in records if r["status"] == "draft")
        response = client.get(f"{live_gateway.base_url}/feeds/{draft['id']}",
                              headers=auth(UMA))
        assert response.status_code == 409
