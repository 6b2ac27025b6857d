"""HTTP face of the pipeline.

One FastAPI app exposes the whole chain: face-string ingestion as the
detector would hand it over, solving, scrambling, lowering to machine
programs, and step-mode sessions for the console UI.  Everything lives in
process memory; this is a single-operator tool, not a multi-tenant service.

Error bodies are ``{"error": <name>, "detail": <message>}`` where the name
is the cube-core verdict or exception class (BadLength, TwistSum,
UnknownSession, ...), so clients can switch on it without parsing prose.
"""

from __future__ import annotations

import os
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from time import time
from typing import Optional

from fastapi import Body, FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .compiler import CostModel, compile_moves
from .cube import (
    CubeError,
    CubieState,
    Face,
    MoveSequence,
    apply_sequence,
    cubies_to_facelets,
    facelets_to_cubies,
    format_moves,
    parse_facelets,
    parse_moves,
    random_state,
)
from .search import InvalidState, NoSolutionWithinBound, solve
from .sim import encode_serial
from .tables import SolverTables, get_tables

_FACE_ALPHABET = frozenset("URFDLB")


class ServiceError(Exception):
    """Base for request-level failures with an HTTP status and error name."""

    status = 400

    def __init__(self, message: str):
        super().__init__(message)

    @property
    def name(self) -> str:
        return type(self).__name__


class BadFaceString(ServiceError):
    pass


class DuplicateCenterConflict(ServiceError):
    pass


class IncompleteCapture(ServiceError):
    status = 409


class UnknownSession(ServiceError):
    status = 404


class MoveNotAllowedMidPlayback(ServiceError):
    status = 409


class BadRequest(ServiceError):
    pass


@dataclass
class _Session:
    id: str
    base_state: CubieState
    user_moves: list
    solution: MoveSequence
    cursor: int
    created: float
    updated: float
    lock: threading.Lock = field(default_factory=threading.Lock)


def _error_response(status: int, name: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": name, "detail": detail})


def create_app(
    tables: Optional[SolverTables] = None,
    cost: Optional[CostModel] = None,
    max_sessions: int = 64,
) -> FastAPI:
    """Build the service app.

    ``tables`` may be injected (tests, CLI); left out, they are built or
    loaded from the cache on first use.  ``cost`` is the timing model used
    for every compiled program the service hands out.
    """
    app = FastAPI(title="cuberig", docs_url=None, redoc_url=None)
    # The browser console is served from wherever (a file:// page during
    # development); this is a single-operator tool, so open CORS is fine.
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    cost_model = cost if cost is not None else CostModel()

    state_lock = threading.Lock()
    solver_tables = {"value": tables}
    captures: "OrderedDict[str, str]" = OrderedDict()
    sessions: "OrderedDict[str, _Session]" = OrderedDict()
    session_counter = {"value": 0}

    def _tables() -> SolverTables:
        with state_lock:
            if solver_tables["value"] is None:
                solver_tables["value"] = get_tables()
            return solver_tables["value"]

    # -- shared pieces ----------------------------------------------------

    def _parse_state(text) -> CubieState:
        if not isinstance(text, str):
            raise BadRequest("field 'state' must be a facelet string")
        return facelets_to_cubies(parse_facelets(text))

    def _solve(c: CubieState, max_length: int = 24, improve: bool = False):
        return solve(c, max_length=max_length, improve=improve, tables=_tables())

    def _program_fields(seq: MoveSequence) -> dict:
        prog = compile_moves(seq, cost_model)
        return {
            "program": [p.name for p in prog.primitives],
            "serial_hex": encode_serial(prog).hex(),
            "total_ms": prog.total_ms,
        }

    def _session_view(s: _Session) -> dict:
        timeline = tuple(s.user_moves) + s.solution
        shown = apply_sequence(s.base_state, timeline[: s.cursor])
        return {
            "id": s.id,
            "state": str(cubies_to_facelets(shown)),
            "user_moves": format_moves(tuple(s.user_moves)),
            "solution": format_moves(s.solution),
            "cursor": s.cursor,
            "total_moves": len(s.user_moves) + len(s.solution),
        }

    def _get_session(session_id: str) -> _Session:
        with state_lock:
            s = sessions.get(session_id)
        if s is None:
            raise UnknownSession(f"no session {session_id!r}")
        return s

    def _store_face(face_string) -> None:
        if not isinstance(face_string, str) or len(face_string) != 9:
            raise BadFaceString("face strings are exactly 9 characters")
        if not set(face_string) <= _FACE_ALPHABET:
            raise BadFaceString("face strings use only U, R, F, D, L, B")
        center = face_string[4]
        captures.pop(center, None)  # re-capture moves it to the newest slot
        captures[center] = face_string

    # -- error translation --------------------------------------------------

    @app.exception_handler(ServiceError)
    def _service_error(request, exc: ServiceError):
        return _error_response(exc.status, exc.name, str(exc))

    @app.exception_handler(CubeError)
    def _cube_error(request, exc: CubeError):
        return _error_response(400, type(exc).__name__, str(exc))

    @app.exception_handler(InvalidState)
    def _invalid_state(request, exc: InvalidState):
        name = exc.verdict.value if exc.verdict is not None else "InvalidState"
        return _error_response(400, name, str(exc))

    @app.exception_handler(NoSolutionWithinBound)
    def _no_solution(request, exc: NoSolutionWithinBound):
        return _error_response(400, "NoSolutionWithinBound", str(exc))

    # -- solving ------------------------------------------------------------

    @app.post("/solve")
    def solve_endpoint(payload: dict = Body(...)):
        c = _parse_state(payload.get("state"))
        max_length = payload.get("max_length", 24)
        improve = payload.get("improve", False)
        if not isinstance(max_length, int) or not 0 <= max_length <= 24:
            raise BadRequest("max_length must be an integer in [0, 24]")
        solution = _solve(c, max_length=max_length, improve=bool(improve))
        return {"solution": format_moves(solution), **_program_fields(solution)}

    @app.post("/scramble")
    def scramble_endpoint(payload: dict = Body(default={})):
        mode = payload.get("mode", "virtual")
        if mode not in ("virtual", "real"):
            raise BadRequest("mode must be 'virtual' or 'real'")
        seed = payload.get("seed")
        if seed is None:
            seed = int.from_bytes(os.urandom(8), "little")
        if not isinstance(seed, int):
            raise BadRequest("seed must be an integer")
        length = payload.get("length", 24)
        if not isinstance(length, int) or not 0 <= length <= 24:
            raise BadRequest("length must be an integer in [0, 24]")
        state = random_state(seed)
        generating = tuple(m.inverse() for m in reversed(_solve(state, max_length=length)))
        body = {
            "state": str(cubies_to_facelets(state)),
            "moves": format_moves(generating),
            "seed": seed,
        }
        if mode == "real":
            body.update(_program_fields(generating))
        return body

    # -- face capture ---------------------------------------------------------

    @app.post("/faces")
    def ingest_faces(payload: dict = Body(...)):
        batch = payload.get("faces")
        single = payload.get("face")
        if batch is None and single is None:
            raise BadRequest("provide 'face' or 'faces'")
        with state_lock:
            if batch is not None:
                if not isinstance(batch, list):
                    raise BadRequest("'faces' must be a list of face strings")
                claimed: dict[str, str] = {}
                for text in batch:
                    if not isinstance(text, str) or len(text) != 9:
                        raise BadFaceString("face strings are exactly 9 characters")
                    center = text[4]
                    if claimed.get(center, text) != text:
                        raise DuplicateCenterConflict(
                            f"two different captures claim center {center!r}"
                        )
                    claimed[center] = text
                for text in batch:
                    _store_face(text)
            if single is not None:
                _store_face(single)
            captured = list(captures)
        missing = [f.name for f in Face if f.name not in captured]
        return {"captured": captured, "missing": missing}

    @app.get("/faces/assembled")
    def assembled_state():
        with state_lock:
            missing = [f.name for f in Face if f.name not in captures]
            if missing:
                raise IncompleteCapture(f"missing faces: {', '.join(missing)}")
            state = "".join(captures[f.name] for f in Face)
        return {"state": state}

    # -- sessions -------------------------------------------------------------

    @app.post("/sessions")
    def create_session(payload: dict = Body(...)):
        c = _parse_state(payload.get("state"))
        solution = _solve(c)
        now = time()
        with state_lock:
            session_counter["value"] += 1
            sid = f"s{session_counter['value']:04d}"
            s = _Session(sid, c, [], solution, 0, now, now)
            sessions[sid] = s
            while len(sessions) > max_sessions:
                sessions.popitem(last=False)
        return _session_view(s)

    @app.get("/sessions/{session_id}")
    def session_view(session_id: str):
        s = _get_session(session_id)
        with s.lock:
            return _session_view(s)

    @app.post("/sessions/{session_id}/moves")
    def session_user_move(session_id: str, payload: dict = Body(...)):
        text = payload.get("move")
        if not isinstance(text, str):
            raise BadRequest("field 'move' must be move notation")
        moves = parse_moves(text)
        if len(moves) != 1:
            raise BadRequest("exactly one move per request")
        s = _get_session(session_id)
        with s.lock:
            if s.cursor != len(s.user_moves):
                raise MoveNotAllowedMidPlayback(
                    "user moves are only allowed with the cursor at the end "
                    "of the user-move region"
                )
            candidate = s.user_moves + [moves[0]]
            shown = apply_sequence(s.base_state, tuple(candidate))
            s.solution = _solve(shown)
            s.user_moves = candidate
            s.cursor = len(candidate)
            s.updated = time()
            return _session_view(s)

    @app.post("/sessions/{session_id}/step")
    def session_step(session_id: str, payload: dict = Body(...)):
        direction = payload.get("direction")
        if direction not in ("next", "prev"):
            raise BadRequest("direction must be 'next' or 'prev'")
        s = _get_session(session_id)
        with s.lock:
            total = len(s.user_moves) + len(s.solution)
            if direction == "next":
                s.cursor = min(s.cursor + 1, total)
            else:
                s.cursor = max(s.cursor - 1, 0)
            s.updated = time()
            return _session_view(s)

    return app
