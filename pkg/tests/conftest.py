import shutil
import socket
import threading
import time
from pathlib import Path

import pytest
import uvicorn

from semflow.catalogue.model import User
from semflow.gateway.app import create_app
from semflow.gateway.config import GatewayConfig

REPO_ROOT = Path(__file__).resolve().parent.parent

ALICE = User("alice", "publisher", "tok-alice")
BOB = User("bob", "publisher", "tok-bob")
THEO = User("theo", "tmb", "tok-theo")
UMA = User("uma", "user", "tok-uma")


def auth(user: User) -> dict:
    return {"Authorization": f"Bearer {user.token}"}


@pytest.fixture
def demo_copy(tmp_path) -> Path:
    target = tmp_path / "demo"
    shutil.copytree(REPO_ROOT / "demo", target)
    return target


@pytest.fixture
def gateway_app(demo_copy):
    config = GatewayConfig.load(demo_copy / "config.json")
    return create_app(config, seed_demo=True)


@pytest.fixture
def client(gateway_app):
    from fastapi.testclient import TestClient

    with TestClient(gateway_app, raise_server_exceptions=False) as c:
        yield c


def _free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


class LiveServer:
    def __init__(self, app):
        self.port = _free_port()
        self.base_url = f"http://127.0.0.1:{self.port}"
        self._server = uvicorn.Server(uvicorn.Config(
            app, host="127.0.0.1", port=self.port, log_level="warning"))
        self._thread = threading.Thread(target=self._server.run, daemon=True)

    def start(self):
        self._thread.start()
        deadline = time.time() + 10
        while not self._server.started:
            if time.time() > deadline:
                raise RuntimeError("uvicorn did not start")
            time.sleep(0.02)
        return self

    def stop(self):
        self._server.should_exit = True
        self._thread.join(timeout=10)


@pytest.fixture
def live_gateway(gateway_app):
    server = LiveServer(gateway_app).start()
    yield server
    server.stop()
