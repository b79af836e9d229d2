"""In-memory HTTP service for interactive sessions.

Sessions live for the lifetime of the process.  Each session carries its
own legality cache and (optionally) an engine strategy bound to one seat;
requests touching a session are serialized by a per-session lock.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from satgame.engine import (
    MAX,
    MINI,
    GameState,
    IllegalMoveError,
    LegalityCache,
    apply_move,
    is_saturated,
    legality,
)
from satgame.families import parse_family
from satgame.strategies import Strategy, StrategyError, StrategyFamilyError, parse_strategy
from satgame.structure import analyze, structure_payload


class EngineSpec(BaseModel):
    seat: str
    strategy: str


class NewGameBody(BaseModel):
    n: int
    family: str
    first_mover: str = MAX
    engine: EngineSpec | None = None


class MoveBody(BaseModel):
    u: int
    v: int


@dataclass
class GameSession:
    id: str
    state: GameState
    engine_seat: str | None
    engine: Strategy | None
    cache: LegalityCache
    lock: threading.Lock = field(default_factory=threading.Lock)

    def summary(self) -> dict:
        s = self.state
        return {
            "id": self.id,
            "n": s.graph.n,
            "family": s.family.spec,
            "first_mover": s.first_mover,
            "engine_seat": self.engine_seat,
            "edges": [{"u": m.u, "v": m.v, "mover": m.mover} for m in s.history],
            "edge_count": s.graph.edge_count(),
            "next_mover": s.next_mover,
            "saturated": is_saturated(s, self.cache),
        }

    def anchor(self) -> int:
        if not self.state.history:
            return 0
        return min(self.state.history[0].pair())


def create_app() -> FastAPI:
    app = FastAPI(title="satgame lab")
    sessions: dict[str, GameSession] = {}
    ids = itertools.count(1)
    registry_lock = threading.Lock()

    def get_session(game_id: str) -> GameSession:
        sess = sessions.get(game_id)
        if sess is None:
            raise HTTPException(status_code=404, detail=f"unknown game {game_id!r}")
        return sess

    def check_pair(sess: GameSession, u: int, v: int):
        n = sess.state.graph.n
        if not (0 <= u < n and 0 <= v < n):
            raise HTTPException(status_code=400, detail=f"vertex out of range for n={n}")
        if u == v:
            raise HTTPException(status_code=400, detail="loop move")

    @app.post("/games", status_code=201)
    def create_game(body: NewGameBody):
        if body.n < 2:
            raise HTTPException(status_code=400, detail="n must be at least 2")
        if body.first_mover not in (MAX, MINI):
            raise HTTPException(status_code=400, detail="first_mover must be max or mini")
        try:
            family = parse_family(body.family)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        engine = None
        engine_seat = None
        if body.engine is not None:
            if body.engine.seat not in (MAX, MINI):
                raise HTTPException(status_code=400, detail="engine seat must be max or mini")
            engine_seat = body.engine.seat
            try:
                engine = parse_strategy(body.engine.strategy)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
        state = GameState.new(body.n, family, body.first_mover)
        cache = LegalityCache()
        if engine is not None:
            try:
                engine.validate_family(family)
            except StrategyFamilyError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            engine.begin_match(state, cache)
        with registry_lock:
            game_id = f"g{next(ids)}"
            sess = GameSession(
                id=game_id,
                state=state,
                engine_seat=engine_seat,
                engine=engine,
                cache=cache,
            )
            sessions[game_id] = sess
        return sess.summary()

    @app.get("/games/{game_id}")
    def get_game(game_id: str):
        sess = get_session(game_id)
        with sess.lock:
            return sess.summary()

    @app.post("/games/{game_id}/moves")
    def post_move(game_id: str, body: MoveBody):
        sess = get_session(game_id)
        with sess.lock:
            check_pair(sess, body.u, body.v)
            mover = sess.state.next_mover
            if sess.engine_seat == mover:
                raise HTTPException(
                    status_code=409,
                    detail={"error": "wrong turn", "next_mover": mover},
                )
            try:
                sess.state = apply_move(sess.state, body.u, body.v, mover)
            except IllegalMoveError as exc:
                raise HTTPException(
                    status_code=409,
                    detail={
                        "error": str(exc),
                        "witness": list(exc.witness) if exc.witness else None,
                    },
                )
            return {
                "applied": {"u": min(body.u, body.v), "v": max(body.u, body.v), "mover": mover},
                **sess.summary(),
            }

    @app.post("/games/{game_id}/engine-move")
    def engine_move(game_id: str):
        sess = get_session(game_id)
        with sess.lock:
            if sess.engine is None:
                raise HTTPException(status_code=409, detail="no engine configured")
            mover = sess.state.next_mover
            if sess.engine_seat != mover:
                raise HTTPException(
                    status_code=409,
                    detail={"error": "wrong turn", "next_mover": mover},
                )
            try:
                move = sess.engine.choose(sess.state)
            except StrategyError as exc:
                raise HTTPException(status_code=500, detail=str(exc))
            if move is None:
                if not is_saturated(sess.state, sess.cache):
                    raise HTTPException(
                        status_code=500, detail="engine passed on a live position"
                    )
                return {"applied": None, **sess.summary()}
            u, v = move
            sess.state = apply_move(sess.state, u, v, mover)
            return {"applied": {"u": u, "v": v, "mover": mover}, **sess.summary()}

    @app.get("/games/{game_id}/legal")
    def legal_preview(game_id: str, u: int, v: int):
        sess = get_session(game_id)
        with sess.lock:
            check_pair(sess, u, v)
            if sess.state.graph.has_edge(u, v):
                raise HTTPException(status_code=400, detail="edge already present")
            verdict = legality(sess.state, u, v)
            return {
                "u": min(u, v),
                "v": max(u, v),
                "legal": verdict.legal,
                "witness": list(verdict.witness) if verdict.witness else None,
            }

    @app.get("/games/{game_id}/structure")
    def structure(game_id: str, k: int):
        sess = get_session(game_id)
        with sess.lock:
            try:
                view = analyze(sess.state.graph, sess.anchor(), k)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            return structure_payload(view)

    return app
