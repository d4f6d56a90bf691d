"""Session-oriented HTTP/JSON API for steering a live preference transition.

A session wraps a scenario: it holds the current filtered scores, the
step counter, the score history, and any preference updates posted while
the session runs.  Endpoints (all JSON):

* ``GET  /api/health``                 liveness probe
* ``POST /api/sessions``               create a session from a scenario
* ``GET  /api/sessions/{id}``          current state, history, events
* ``POST /api/sessions/{id}/step``     advance the filter ``count`` steps
* ``POST /api/sessions/{id}/model``    switch preferences from the next step on
* ``POST /api/sessions/{id}/whatif``   preview a hypothetical model/alpha
* ``POST /api/identify``               fit weights to scores or a ranking

Sessions live in memory and expire after an idle period (default one
hour).  Mutations within a session are serialized; distinct sessions are
fully independent.
"""

from __future__ import annotations

import logging
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from fastapi import Body, FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from .core import (
    CriteriaMatrix,
    PreferenceModel,
    criterion_net_flows,
    rank,
    static_scores,
    uniform_weights,
)
from .dynamics import (
    RankEvent,
    Scenario,
    ScheduleEntry,
    detect_events_from_scores,
    filter_step,
    _resolve_parameters,
)
from .errors import FlowrankError
from .identify import IdentificationProblem, fit_weights, fit_weights_from_ranking
from .io import (
    criteria_from_dict,
    event_to_dict,
    model_from_dict,
    scenario_from_dict,
)

logger = logging.getLogger("flowrank.service")

DEFAULT_SESSION_TTL_SECONDS = 3600.0


@dataclass(eq=False)
class _Session:
    session_id: str
    scenario: Scenario
    step: int
    history: list[np.ndarray]
    overrides: list[ScheduleEntry] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)

    @property
    def scores(self) -> np.ndarray:
        return self.history[self.step]

    def active_parameters(self, t: int) -> tuple[CriteriaMatrix, PreferenceModel]:
        criteria, model = _resolve_parameters(
            self.scenario.criteria, self.scenario.initial_model,
            self.scenario.schedule, t,
        )
        return _resolve_parameters(criteria, model, self.overrides, t)

    def events(self) -> list[RankEvent]:
        if len(self.history) < 2:
            return []
        return detect_events_from_scores(
            np.vstack(self.history), self.scenario.alternative_ids
        )


class SessionStore:
    """In-memory session registry with idle expiry."""

    def __init__(self, ttl_seconds: float = DEFAULT_SESSION_TTL_SECONDS):
        self.ttl_seconds = ttl_seconds
        self._sessions: dict[str, _Session] = {}
        self._lock = threading.Lock()

    def _purge(self, now: float) -> None:
        expired = [
            sid for sid, session in self._sessions.items()
            if now - session.last_access > self.ttl_seconds
        ]
        for sid in expired:
            del self._sessions[sid]

    def add(self, session: _Session) -> None:
        with self._lock:
            self._purge(time.monotonic())
            self._sessions[session.session_id] = session

    def get(self, session_id: str) -> _Session:
        with self._lock:
            now = time.monotonic()
            self._purge(now)
            session = self._sessions.get(session_id)
            if session is None:
                raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
            session.last_access = now
            return session


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


def _scores_payload(ids, scores) -> dict:
    return {alt: float(s) for alt, s in zip(ids, scores)}


def _ranking_payload(ids, scores) -> list[dict]:
    return [
        {"id": e.alternative_id, "score": e.score, "rank": e.rank}
        for e in rank(scores, ids)
    ]


def _state_payload(session: _Session) -> dict:
    ids = session.scenario.alternative_ids
    return {
        "session_id": session.session_id,
        "step": session.step,
        "scores": _scores_payload(ids, session.scores),
        "ranking": _ranking_payload(ids, session.scores),
    }


def create_app(*, session_ttl_seconds: float = DEFAULT_SESSION_TTL_SECONDS,
               static_dir: Optional[str] = None) -> FastAPI:
    """Build the service application; sessions are scoped to the app."""
    app = FastAPI(title="flowrank decision service")
    store = SessionStore(ttl_seconds=session_ttl_seconds)
    app.state.store = store

    @app.middleware("http")
    async def _log_requests(request, call_next):
        response = await call_next(request)
        logger.info("%s %s -> %s", request.method, request.url.path, response.status_code)
        return response

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/api/sessions")
    def create_session(payload: dict = Body(...)) -> dict:
        body = payload.get("scenario", payload)
        try:
            scenario = scenario_from_dict(body)
            scores = static_scores(scenario.criteria, scenario.initial_model).scores
        except FlowrankError as exc:
            raise _bad_request(exc) from None
        session = _Session(
            session_id=uuid.uuid4().hex,
            scenario=scenario,
            step=0,
            history=[scores],
        )
        store.add(session)
        return _state_payload(session)

    @app.get("/api/sessions/{session_id}")
    def get_state(session_id: str) -> dict:
        session = store.get(session_id)
        with session.lock:
            ids = session.scenario.alternative_ids
            history = [
                {
                    "step": t,
                    "scores": _scores_payload(ids, scores),
                    "ranking": _ranking_payload(ids, scores),
                }
                for t, scores in enumerate(session.history)
            ]
            state = _state_payload(session)
            state["history"] = history
            state["events"] = [event_to_dict(e) for e in session.events()]
            return state

    @app.post("/api/sessions/{session_id}/step")
    def advance(session_id: str, payload: dict = Body(default={})) -> dict:
        count = payload.get("count", 1)
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise HTTPException(status_code=400, detail="count must be an integer >= 1")
        session = store.get(session_id)
        with session.lock:
            step_before = session.step
            alpha = session.scenario.filter.alpha
            for _ in range(count):
                criteria, model = session.active_parameters(session.step)
                target = static_scores(criteria, model).scores
                session.history.append(filter_step(session.scores, target, alpha))
                session.step += 1
            new_events = [
                event_to_dict(e) for e in session.events() if e.step_after > step_before
            ]
            state = _state_payload(session)
            state["new_events"] = new_events
            return state

    @app.post("/api/sessions/{session_id}/model")
    def update_preferences(session_id: str, payload: dict = Body(...)) -> dict:
        body = payload.get("model", payload) if isinstance(payload, dict) else payload
        session = store.get(session_id)
        with session.lock:
            try:
                model = model_from_dict(body, "model")
                if model.n != session.scenario.criteria.n:
                    raise _bad_request(FlowrankError(
                        f"model covers {model.n} criteria, scenario has "
                        f"{session.scenario.criteria.n}"
                    ))
            except FlowrankError as exc:
                raise _bad_request(exc) from None
            session.overrides.append(ScheduleEntry(step=session.step, model=model))
            return {"acknowledged_at_step": session.step}

    @app.post("/api/sessions/{session_id}/whatif")
    def what_if(session_id: str, payload: dict = Body(...)) -> dict:
        horizon = payload.get("horizon")
        if isinstance(horizon, bool) or not isinstance(horizon, int) or horizon < 0:
            raise HTTPException(status_code=400, detail="horizon must be an integer >= 0")
        session = store.get(session_id)
        with session.lock:
            try:
                hypo_model = None
                if payload.get("model") is not None:
                    hypo_model = model_from_dict(payload["model"], "model")
                    if hypo_model.n != session.scenario.criteria.n:
                        raise _bad_request(FlowrankError(
                            f"model covers {hypo_model.n} criteria, scenario has "
                            f"{session.scenario.criteria.n}"
                        ))
                alpha = session.scenario.filter.alpha
                if payload.get("alpha") is not None:
                    alpha = payload["alpha"]
                    if isinstance(alpha, bool) or not isinstance(alpha, (int, float)) \
                            or not 0.0 < float(alpha) <= 1.0:
                        raise _bad_request(FlowrankError(f"alpha must lie in (0, 1], got {alpha!r}"))
                    alpha = float(alpha)
            except HTTPException:
                raise
            except FlowrankError as exc:
                raise _bad_request(exc) from None

            ids = session.scenario.alternative_ids
            start_step = session.step
            preview = [session.scores]
            for offset in range(horizon):
                criteria, model = session.active_parameters(start_step + offset)
                if hypo_model is not None:
                    model = hypo_model
                target = static_scores(criteria, model).scores
                preview.append(filter_step(preview[-1], target, alpha))

        trajectory = [
            {
                "step": start_step + offset,
                "scores": _scores_payload(ids, scores),
                "ranking": _ranking_payload(ids, scores),
            }
            for offset, scores in enumerate(preview)
        ]
        events = []
        if len(preview) >= 2:
            for event in detect_events_from_scores(np.vstack(preview), ids):
                shifted = RankEvent(
                    upper_id=event.upper_id,
                    lower_id=event.lower_id,
                    step_before=event.step_before + start_step,
                    step_after=event.step_after + start_step,
                    crossing_time=event.crossing_time + start_step,
                )
                events.append(event_to_dict(shifted))
        return {"trajectory": trajectory, "events": events}

    @app.post("/api/identify")
    def identify_endpoint(payload: dict = Body(...)) -> dict:
        scores_given = payload.get("scores") is not None
        ranking_given = payload.get("ranking") is not None
        if scores_given == ranking_given:
            raise HTTPException(
                status_code=400, detail="give exactly one of scores or ranking"
            )
        try:
            criteria = criteria_from_dict(payload.get("criteria"), "criteria")
            thresholds = _thresholds_from_payload(payload.get("thresholds"), criteria.n)
            exponent = payload.get("exponent", 3)
            if ranking_given:
                ranking = [str(r) for r in payload["ranking"]]
                fitted = fit_weights_from_ranking(criteria, thresholds, ranking, exponent)
                reproduced = fitted.ranking_reproduced
            else:
                targets = _targets_from_payload(payload["scores"], criteria)
                placeholder = PreferenceModel(uniform_weights(criteria.n), thresholds, exponent)
                flow = criterion_net_flows(criteria, placeholder)
                fitted = fit_weights(IdentificationProblem(flow_matrix=flow, target_scores=targets))
                induced = rank(
                    static_scores(criteria, placeholder.with_weights(fitted.weights)),
                    criteria.alternative_ids,
                )
                target_order = rank(targets, criteria.alternative_ids)
                reproduced = (
                    [e.alternative_id for e in induced]
                    == [e.alternative_id for e in target_order]
                )
        except FlowrankError as exc:
            raise _bad_request(exc) from None
        return {
            "weights": [float(w) for w in fitted.weights],
            "residual": float(fitted.residual),
            "ranking_reproduced": reproduced,
            "degenerate": fitted.degenerate,
            "method_note": fitted.method_note,
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def _thresholds_from_payload(raw, n: int):
    from .errors import SchemaError

    if raw is None:
        raise SchemaError("thresholds: missing")
    if isinstance(raw, dict):
        raw = [raw]
    if not isinstance(raw, list) or not raw:
        raise SchemaError("thresholds: expected an object or a non-empty list")
    triples = []
    for pos, item in enumerate(raw):
        if not isinstance(item, dict):
            raise SchemaError(f"thresholds[{pos}]: expected an object with q, p, v")
        try:
            triples.append((float(item["q"]), float(item["p"]), float(item["v"])))
        except (KeyError, TypeError, ValueError):
            raise SchemaError(f"thresholds[{pos}]: expected numeric q, p, v") from None
    if len(triples) == 1:
        triples = triples * n
    return triples


def _targets_from_payload(raw, criteria: CriteriaMatrix) -> np.ndarray:
    from .errors import SchemaError

    ids = criteria.alternative_ids
    if isinstance(raw, dict):
        missing = [alt for alt in ids if alt not in raw]
        if missing:
            raise SchemaError(f"scores: missing alternatives {missing}")
        values = [raw[alt] for alt in ids]
    elif isinstance(raw, list):
        if len(raw) != len(ids):
            raise SchemaError(f"scores: expected {len(ids)} values, got {len(raw)}")
        values = raw
    else:
        raise SchemaError("scores: expected a mapping or a list")
    try:
        return np.array([float(v) for v in values])
    except (TypeError, ValueError):
        raise SchemaError("scores: values must be numbers") from None
