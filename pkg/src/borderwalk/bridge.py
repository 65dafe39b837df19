"""Run an externally hosted classifier as an executor over a line protocol.

Wire format (newline-delimited UTF-8 JSON over the child's stdin/stdout):

  server hello:  {"hello": {"features": K, "kinds": [...], "labels": [...]?, "concurrent": bool}}
  request:       {"id": N, "x": [v1, ..., vK]}      (categoricals as strings, numerics as numbers)
  response:      {"id": N, "label": "..."}  or  {"id": N, "error": "..."}
  termination:   {"bye": true}                       (client to server)

Reals are serialized with the shortest round-trip decimal representation, so
recorded sessions replay byte-for-byte. One classifier execution happens per
acknowledged request; the executor counter counts exactly those.
"""

from __future__ import annotations

import json
import os
import queue
import shlex
import subprocess
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .classifiers import CONCURRENT, SERIAL, Executor, Label
from .space import Point, SpaceSchema, encode_point, feature_kind_name


class BridgeError(RuntimeError):
    pass


class HandshakeError(BridgeError):
    pass


class SchemaMismatchError(BridgeError):
    pass


class ProtocolError(BridgeError):
    pass


class ExecutionError(BridgeError):
    pass


class ExecutorClosedError(BridgeError):
    pass


@dataclass(frozen=True)
class BridgeConfig:
    command: tuple[str, ...]
    handshake_timeout_ms: int = 10_000
    request_timeout_ms: int = 10_000
    max_restarts: int = 0  # 0 = never restart, n = restart up to n times on crash
    env: dict[str, str] = field(default_factory=dict)
    transcript_path: str | Path | None = None

    def __post_init__(self):
        if isinstance(self.command, str):
            object.__setattr__(self, "command", tuple(shlex.split(self.command)))
        else:
            object.__setattr__(self, "command", tuple(self.command))
        if self.handshake_timeout_ms <= 0 or self.request_timeout_ms <= 0:
            raise ValueError("timeouts must be positive")


class _Child:
    """One spawned server process plus its stdout reader thread."""

    def __init__(self, cfg: BridgeConfig):
        env = dict(os.environ)
        env.update(cfg.env)
        self.proc = subprocess.Popen(
            list(cfg.command),
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            env=env,
            bufsize=0,
        )
        self.lines: queue.Queue[bytes | None] = queue.Queue()
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()

    def _pump(self):
        for line in iter(self.proc.stdout.readline, b""):
            self.lines.put(line)
        self.lines.put(None)

    def alive(self) -> bool:
        return self.proc.poll() is None

    def terminate(self, grace_s: float):
        try:
            self.proc.wait(timeout=grace_s)
        except subprocess.TimeoutExpired:
            self.proc.terminate()
            try:
                self.proc.wait(timeout=grace_s)
            except subprocess.TimeoutExpired:
                self.proc.kill()
                self.proc.wait()


class BridgeExecutor(Executor):
    """Executor backed by a child process speaking the line protocol."""

    def __init__(self, cfg: BridgeConfig, schema: SpaceSchema):
        self.cfg = cfg
        self._io_lock = threading.Lock()
        self._next_id = 0
        self._restarts_left = cfg.max_restarts
        self._closed = False
        self._transcript = None
        if cfg.transcript_path is not None:
            self._transcript = open(cfg.transcript_path, "wb")
        self._child = self._start(schema)
        super().__init__(None, schema, thread_safety=self._safety, name="bridge")

    # -- process / protocol plumbing ------------------------------------

    def _record(self, prefix: bytes, line: bytes):
        if self._transcript is not None:
            self._transcript.write(prefix + line)
            self._transcript.flush()

    def _start(self, schema: SpaceSchema) -> _Child:
        child = _Child(self.cfg)
        try:
            line = child.lines.get(timeout=self.cfg.handshake_timeout_ms / 1000)
        except queue.Empty:
            child.proc.kill()
            raise HandshakeError("server sent no hello within the handshake timeout")
        if line is None:
            raise HandshakeError("server exited before the handshake")
        self._record(b"< ", line)
        try:
            hello = json.loads(line)["hello"]
            declared_k = hello["features"]
        except (ValueError, KeyError, TypeError):
            raise HandshakeError(f"malformed hello line: {line!r}") from None
        k = len(schema.features)
        if declared_k != k:
            child.proc.kill()
            raise SchemaMismatchError(f"schema has {k} features, server declared {declared_k}")
        kinds = hello.get("kinds")
        expected = [feature_kind_name(f) for f in schema.features]
        if kinds is not None and list(kinds) != expected:
            child.proc.kill()
            raise SchemaMismatchError(f"server kinds {kinds} != schema kinds {expected}")
        self._safety = CONCURRENT if hello.get("concurrent") else SERIAL
        return child

    def _send(self, child: _Child, obj: dict):
        line = json.dumps(obj, separators=(",", ":")).encode("utf-8") + b"\n"
        self._record(b"> ", line)
        child.proc.stdin.write(line)
        child.proc.stdin.flush()

    def _recv(self, child: _Child) -> dict:
        try:
            line = child.lines.get(timeout=self.cfg.request_timeout_ms / 1000)
        except queue.Empty:
            if not child.alive():
                raise ExecutionError("server process exited") from None
            raise ExecutionError("server response timed out") from None
        if line is None:
            raise ExecutionError("server process exited")
        self._record(b"< ", line)
        try:
            return json.loads(line)
        except ValueError:
            raise ProtocolError(f"unparseable response line: {line!r}") from None

    def _exchange(self, req_id: int, payload: list) -> Label:
        self._send(self._child, {"id": req_id, "x": payload})
        resp = self._recv(self._child)
        if resp.get("id") != req_id:
            raise ProtocolError(f"expected response id {req_id}, got {resp.get('id')!r}")
        if "error" in resp:
            raise ExecutionError(f"server error: {resp['error']}")
        if "label" not in resp:
            raise ProtocolError(f"response carries neither label nor error: {resp}")
        return str(resp["label"])

    def _run(self, p: Point) -> Label:
        if self._closed:
            raise ExecutorClosedError("bridge executor was shut down")
        payload = encode_point(p)
        with self._io_lock:
            self._next_id += 1
            req_id = self._next_id
            while True:
                try:
                    return self._exchange(req_id, payload)
                except (ExecutionError, BrokenPipeError, OSError) as err:
                    if not self._child.alive() and self._restarts_left > 0:
                        self._restarts_left -= 1
                        self._child = self._start(self.schema)
                        continue
                    if isinstance(err, ExecutionError):
                        raise
                    raise ExecutionError(str(err)) from err

    def shutdown(self, grace_s: float = 2.0):
        """Send bye, wait briefly, then make sure the child is gone. Safe to
        call repeatedly and after crashes."""
        if self._closed:
            return
        self._closed = True
        try:
            self._send(self._child, {"bye": True})
        except Exception:
            pass
        try:
            self._child.terminate(grace_s)
        except Exception:
            pass
        if self._transcript is not None:
            self._transcript.close()
            self._transcript = None


def spawn(cfg: BridgeConfig, schema: SpaceSchema) -> BridgeExecutor:
    """Start the configured server and return a counting executor for it."""
    return BridgeExecutor(cfg, schema)


def shutdown(e: BridgeExecutor, grace_s: float = 2.0) -> None:
    e.shutdown(grace_s)
