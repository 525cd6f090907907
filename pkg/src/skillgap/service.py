"""HTTP API over the profile database and gap engine.

Reports returned over the wire are produced by the exact serializer the
offline CLI uses, so a POSTed assessment's response body is byte-identical to
`skillgap assess` on the same inputs. Assessments are private to whoever
holds the owner token presented at creation; a wrong token and an unknown id
are deliberately indistinguishable.
"""

from __future__ import annotations

import logging
from datetime import datetime, timezone

from fastapi import FastAPI, Header, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .artifacts import compact_json
from .gapengine import (
    Assessment,
    AssessmentError,
    Weights,
    compute_gap,
    parse_assessment,
)
from .profiledb import ProfileDatabase
from .storage import AssessmentStore, MemoryStore

log = logging.getLogger(__name__)

SOFT_SCALE = ("none", "basic", "intermediate", "advanced", "expert")


class AssessmentBody(BaseModel):
    assessment_id: str = Field(min_length=1)
    archetype_id: str = Field(min_length=1)
    selected_binary: list[str] = Field(default_factory=list)
    soft_levels: dict[str, int] = Field(default_factory=dict)
    created_at: str | None = None


def _json_bytes(payload) -> Response:
    return Response(content=compact_json(payload), media_type="application/json")


def _not_found() -> JSONResponse:
    # identical body for unknown id and wrong token: no existence leak
    return JSONResponse(status_code=404, content={"detail": "not found"})


def _unavailable() -> JSONResponse:
    return JSONResponse(status_code=503, content={"detail": "service unavailable"})


def _validation_error(field: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"detail": [{"loc": ["body", field], "msg": message}]},
    )


def create_app(
    db: ProfileDatabase | None,
    store: AssessmentStore | None = None,
    weights: Weights = Weights(),
    cors_origins: list[str] | None = None,
) -> FastAPI:
    app = FastAPI(title="skillgap service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["GET", "POST", "DELETE"],
        allow_headers=["*"],
    )
    store = store if store is not None else MemoryStore()

    @app.get("/api/health")
    def health():
        if db is None:
            return _unavailable()
        return _json_bytes(
            {
                "status": "ok",
                "database_version": db.version,
                "archetypes": len(db.archetypes),
            }
        )

    @app.get("/api/archetypes")
    def list_archetypes():
        if db is None:
            return _unavailable()
        rows = sorted(db.archetypes, key=lambda a: (a.title, a.archetype_id))
        return _json_bytes(
            [
                {
                    "archetype_id": a.archetype_id,
                    "title": a.title,
                    "description": a.description,
                    "macro_class": a.macro_class_topdown,
                }
                for a in rows
            ]
        )

    @app.get("/api/archetypes/{archetype_id}/checklist")
    def skill_checklist(archetype_id: str):
        if db is None:
            return _unavailable()
        if not db.has_archetype(archetype_id):
            return _not_found()
        archetype = db.archetype(archetype_id)
        checklist: dict[str, list[dict]] = {"hard": [], "digital": [], "soft": []}
        for skill in sorted(db.skills, key=lambda s: (s.label, s.skill_id)):
            item = {
                "skill_id": skill.skill_id,
                "label": skill.label,
                "green": skill.green,
            }
            if skill.category == "soft":
                item["scale"] = list(SOFT_SCALE)
                item["target"] = archetype.soft_targets.get(skill.skill_id)
            checklist[skill.category].append(item)
        return _json_bytes(checklist)

    @app.post("/api/assessments")
    def create_assessment(
        body: AssessmentBody, x_owner_token: str = Header(min_length=1)
    ):
        if db is None:
            return _unavailable()
        raw = body.model_dump()
        if not raw.get("created_at"):
            raw["created_at"] = datetime.now(timezone.utc).isoformat()
        try:
            assessment = parse_assessment(raw)
            report = compute_gap(assessment, db, weights)
        except AssessmentError as exc:
            return _validation_error(exc.field, str(exc))
        record = {
            "assessment_id": assessment.assessment_id,
            "owner_token": x_owner_token,
            "assessment": {
                "assessment_id": assessment.assessment_id,
                "archetype_id": assessment.archetype_id,
                "selected_binary": sorted(assessment.selected_binary),
                "soft_levels": dict(sorted(assessment.soft_levels.items())),
                "created_at": assessment.created_at,
            },
            "report": report.to_payload(),
            "db_version": db.version,
        }
        store.put(record)
        return _json_bytes(
            {"assessment_id": assessment.assessment_id, "report": record["report"]}
        )

    def _owned_record(assessment_id: str, token: str | None) -> dict | None:
        record = store.get(assessment_id)
        if record is None or not token or record["owner_token"] != token:
            return None
        return record

    @app.get("/api/assessments/{assessment_id}")
    def get_assessment(
        assessment_id: str, x_owner_token: str | None = Header(default=None)
    ):
        if db is None:
            return _unavailable()
        record = _owned_record(assessment_id, x_owner_token)
        if record is None:
            return _not_found()
        if record["db_version"] != db.version:
            assessment = parse_assessment(record["assessment"])
            record["report"] = compute_gap(assessment, db, weights).to_payload()
            record["db_version"] = db.version
            store.put(record)
        return _json_bytes(
            {"assessment_id": assessment_id, "report": record["report"]}
        )

    @app.delete("/api/assessments/{assessment_id}")
    def delete_assessment(
        assessment_id: str, x_owner_token: str | None = Header(default=None)
    ):
        if db is None:
            return _unavailable()
        record = _owned_record(assessment_id, x_owner_token)
        if record is None:
            return _not_found()
        store.delete(assessment_id)
        return _json_bytes({"assessment_id": assessment_id, "deleted": True})

    return app
