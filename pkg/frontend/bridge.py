"""HTTP bridge between the browser testbed and the touchviz engine.

The UI talks to the engine exclusively through this message boundary: raw
event records in, versioned ViewUpdates out. Run with `python3 bridge.py`
(or `npm run serve`) and open http://localhost:8008/.
"""

import json
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from touchviz import Session
from touchviz.demo import CHART_NAMES, load_demo
from touchviz.engine import EngineConfig
from touchviz.trace import event_from_dict

app = FastAPI(title="touchviz bridge")
SESSIONS: dict[str, Session] = {}
FRONTEND_DIR = Path(__file__).parent


class CreateSessionRequest(BaseModel):
    chart: str
    configOverrides: dict[str, str] = {}


class EventBatch(BaseModel):
    events: list[dict]


@app.get("/api/charts")
def charts() -> dict:
    return {"charts": list(CHART_NAMES)}


@app.post("/api/session")
def create_session(req: CreateSessionRequest) -> dict:
    if req.chart not in CHART_NAMES:
        raise HTTPException(status_code=404, detail=f"unknown chart {req.chart!r}")
    spec, schema, data = load_demo(req.chart)
    config = EngineConfig.from_overrides(req.configOverrides) if req.configOverrides else None
    session = Session(spec, data, config)
    session_id = uuid.uuid4().hex
    SESSIONS[session_id] = session
    margins = spec.margins
    return {
        "sessionId": session_id,
        "chart": {
            "name": req.chart,
            "width": spec.width,
            "height": spec.height,
            "margins": {"top": margins.top, "right": margins.right,
                        "bottom": margins.bottom, "left": margins.left},
        },
        "fields": list(schema),
        "updates": [u.to_wire() for u in session.bootstrap_updates()],
    }


@app.post("/api/session/{session_id}/events")
def feed_events(session_id: str, batch: EventBatch) -> dict:
    session = SESSIONS.get(session_id)
    if session is None:
        raise HTTPException(status_code=404, detail="no such session")
    updates = []
    for record in batch.events:
        updates.extend(session.process_raw(event_from_dict(record)))
    return {"updates": [u.to_wire() for u in updates]}


@app.get("/api/session/{session_id}/snapshot")
def snapshot(session_id: str) -> dict:
    session = SESSIONS.get(session_id)
    if session is None:
        raise HTTPException(status_code=404, detail="no such session")
    return {"snapshot": json.loads(session.snapshot())}


app.mount("/", StaticFiles(directory=FRONTEND_DIR, html=True), name="static")


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=8008)
