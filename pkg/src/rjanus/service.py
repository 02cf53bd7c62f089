"""Debug service: reversible execution sessions over HTTP + WebSocket.

HTTP surface:
  POST   /sessions             create a session from {"source": ...}
  GET    /sessions/{id}/state  inspect (side-effect-free)
  DELETE /sessions/{id}        dispose
  WS     /sessions/{id}/channel  method protocol: requests
         {"id", "method", "params"} answered by {"id", "result"} or
         {"id", "error": {"message"}}; methods step, continue,
         setBreakpoints, inspect, timeline, dispose.

Backward stepping is always computed by the backward step relation; the
history is kept only for the timeline display, never replayed.

Sessions expire after RJANUS_SESSION_TTL_SECS (default 1800) of inactivity.
"""

from __future__ import annotations

import os
import threading
import time
import uuid

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse

from .cfg import label_program
from .checks import check_reversibility
from .errors import JanusError
from .parser import ParseError, parse
from .reversible import (
    RevConfig,
    frame_to_json,
    initial,
    is_initial,
    is_terminal,
    step_backward,
    step_forward,
)

DEFAULT_PORT = 7420
CONTINUE_FUEL = 1_000_000


def _ttl_seconds() -> float:
    return float(os.environ.get("RJANUS_SESSION_TTL_SECS", "1800"))


class Session:
    """One live execution; all operations hold the per-session lock."""

    def __init__(self, source: str):
        self.id = uuid.uuid4().hex
        self.source = source
        program = parse(source)
        diags = check_reversibility(program)
        errors = [d for d in diags if d.severity == "error"]
        if errors:
            raise JanusError("; ".join(str(d) for d in errors))
        self.lp = label_program(program)
        self.current: RevConfig = initial(self.lp)
        self.history = []  # (direction, rule, RevConfig)
        self.breakpoints: set[int] = set()
        self.lock = threading.Lock()
        self.last_used = time.monotonic()

    # -- snapshots --

    def snapshot(self, reason: str = "stepped", error=None) -> dict:
        c = self.current
        return {
            "prev": c.prev,
            "next": c.next,
            "store": c.store.to_json(),
            "stack": [frame_to_json(f) for f in c.stack],
            "reason": reason,
            "error": error,
            "atTerminal": is_terminal(self.lp, c),
            "atInitial": is_initial(self.lp, c),
            "historyIndex": len(self.history),
            "breakpoints": sorted(self.breakpoints),
        }

    def program_info(self) -> dict:
        labels = {}
        for label, block in self.lp.blocks.items():
            span = block.span()
            labels[str(label)] = {
                "text": block.text(),
                "unit": self.lp.unit_of[label],
                "start": span.start,
                "end": span.end,
                "line": span.line,
                "col": span.col,
            }
        return {"source": self.source, "labels": labels, "cfg": self.lp.to_json()}

    # -- operations (callers hold self.lock) --

    def _step_once(self, direction: str):
        if direction == "fwd":
            self.current, rule = step_forward(self.lp, self.current)
        else:
            self.current, rule = step_backward(self.lp, self.current)
        self.history.append((direction, rule, self.current))

    def _at_boundary(self, direction: str) -> str | None:
        if direction == "fwd" and is_terminal(self.lp, self.current):
            return "terminal"
        if direction == "bwd" and is_initial(self.lp, self.current):
            return "initial"
        return None

    def _watched_label(self, direction: str) -> int:
        # Forward pauses before executing a breakpointed block, backward
        # before un-executing one.
        return self.current.next if direction == "fwd" else self.current.prev

    def _run(self, direction: str, limit: int) -> dict:
        if direction not in ("fwd", "bwd"):
            raise ProtocolError(f"unknown direction {direction!r}")
        reason = "stepped"
        for _ in range(limit):
            boundary = self._at_boundary(direction)
            if boundary:
                return self.snapshot(boundary)
            try:
                self._step_once(direction)
            except JanusError as e:
                return self.snapshot("error", error={
                    "class": type(e).__name__, "message": str(e),
                })
            boundary = self._at_boundary(direction)
            if boundary:
                return self.snapshot(boundary)
            if self._watched_label(direction) in self.breakpoints:
                return self.snapshot("breakpoint")
        return self.snapshot(reason)

    def step(self, direction: str, count: int = 1) -> dict:
        if count < 1:
            raise ProtocolError("count must be positive")
        return self._run(direction, count)

    def continue_run(self, direction: str) -> dict:
        return self._run(direction, CONTINUE_FUEL)

    def set_breakpoints(self, labels) -> dict:
        labels = [int(l) for l in labels]
        for l in labels:
            if l not in self.lp.blocks:
                raise ProtocolError(f"unknown label {l}")
        self.breakpoints = set(labels)
        return {"breakpoints": sorted(self.breakpoints)}

    def timeline(self, from_idx: int = 0, to_idx: int = None) -> list:
        records = []
        entries = self.history[from_idx:to_idx]
        for offset, (direction, rule, c) in enumerate(entries):
            records.append({
                "idx": from_idx + offset + 1,
                "dir": direction,
                "rule": rule,
                "prev": c.prev,
                "next": c.next,
                "stack": [frame_to_json(f) for f in c.stack],
                "store": c.store.to_json(),
            })
        return records


class ProtocolError(Exception):
    pass


class SessionManager:
    def __init__(self):
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()

    def create(self, source: str) -> Session:
        self.sweep()
        session = Session(source)
        with self.lock:
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self.lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise ProtocolError(f"unknown session {session_id}")
        session.last_used = time.monotonic()
        return session

    def dispose(self, session_id: str) -> None:
        with self.lock:
            self.sessions.pop(session_id, None)

    def sweep(self) -> None:
        ttl = _ttl_seconds()
        cutoff = time.monotonic() - ttl
        with self.lock:
            stale = [sid for sid, s in self.sessions.items() if s.last_used < cutoff]
            for sid in stale:
                del self.sessions[sid]


def create_app() -> FastAPI:
    app = FastAPI(title="rjanus debug service")
    manager = SessionManager()
    app.state.manager = manager

    @app.post("/sessions")
    def create_session(payload: dict):
        source = payload.get("source", "")
        try:
            session = manager.create(source)
        except ParseError as e:
            return JSONResponse(status_code=422, content={
                "diagnostics": [str(e.diagnostic)],
            })
        except JanusError as e:
            return JSONResponse(status_code=422, content={
                "diagnostics": str(e).split("; "),
            })
        with session.lock:
            return {
                "sessionId": session.id,
                "snapshot": session.snapshot("initial"),
                "program": session.program_info(),
            }

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        try:
            session = manager.get(session_id)
        except ProtocolError as e:
            return JSONResponse(status_code=404, content={"error": str(e)})
        with session.lock:
            return session.snapshot("inspect")

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        manager.dispose(session_id)
        return {"disposed": session_id}

    @app.websocket("/sessions/{session_id}/channel")
    async def channel(ws: WebSocket, session_id: str):
        await ws.accept()
        try:
            while True:
                request = await ws.receive_json()
                await ws.send_json(_dispatch(manager, session_id, request))
        except WebSocketDisconnect:
            pass

    return app


def _dispatch(manager: SessionManager, session_id: str, request: dict) -> dict:
    req_id = request.get("id")
    method = request.get("method")
    params = request.get("params") or {}
    try:
        if method == "dispose":
            manager.get(session_id)
            manager.dispose(session_id)
            return {"id": req_id, "result": {"disposed": session_id}}
        session = manager.get(session_id)
        with session.lock:
            if method == "step":
                result = session.step(
                    params.get("direction", "fwd"), int(params.get("count", 1))
                )
            elif method == "continue":
                result = session.continue_run(params.get("direction", "fwd"))
            elif method == "setBreakpoints":
                result = session.set_breakpoints(params.get("labels", []))
            elif method == "inspect":
                result = session.snapshot("inspect")
            elif method == "timeline":
                result = session.timeline(
                    int(params.get("fromIdx", 0)),
                    None if params.get("toIdx") is None else int(params["toIdx"]),
                )
            else:
                raise ProtocolError(f"unknown method {method!r}")
        return {"id": req_id, "result": result}
    except ProtocolError as e:
        return {"id": req_id, "error": {"message": str(e)}}
    except (ValueError, TypeError) as e:
        return {"id": req_id, "error": {"message": f"bad request: {e}"}}


app = create_app()
