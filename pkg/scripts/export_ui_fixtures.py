#!/usr/bin/env python3
"""Capture real service responses as byte-exact fixtures for the web UI
tests. Requires the pipeline artifacts (run tests or the CLI first); builds
the database directly from the repo fixtures."""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from skillgap.profiledb import build_profile_db, cluster_archetypes, with_bottomup
from skillgap.service import create_app
from skillgap.skillmap import load_skills
from skillgap.storage import MemoryStore

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "tests" / "fixtures"

UI_TOKEN = "ui-fixture-token"

# the walkthrough selections the vitest suite drives through the wizard
WALKTHROUGH_BODY = {
    "assessment_id": "assess-ui-01",
    "archetype_id": "arch-t1",
    "selected_binary": sorted(["sk-006", "sk-009", "sk-011", "sk-026"]),
    "soft_levels": {
        "sk-046": 2, "sk-047": 1, "sk-048": 1, "sk-049": 0, "sk-050": 0,
        "sk-051": 2, "sk-052": 3, "sk-053": 1, "sk-054": 2, "sk-055": 1,
        "sk-056": 2, "sk-057": 2, "sk-058": 3, "sk-059": 0, "sk-060": 1,
    },
}


def main() -> None:
    skills = load_skills(ROOT / "fixtures" / "skills_taxonomy.csv")
    db = build_profile_db(ROOT / "fixtures" / "archetypes.json", skills)
    db = with_bottomup(db, cluster_archetypes(db, k=3))
    client = TestClient(create_app(db, MemoryStore()))

    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "archetypes.json").write_bytes(client.get("/api/archetypes").content)
    (OUT / "checklist_arch-t1.json").write_bytes(
        client.get("/api/archetypes/arch-t1/checklist").content
    )
    response = client.post(
        "/api/assessments", json=WALKTHROUGH_BODY, headers={"X-Owner-Token": UI_TOKEN}
    )
    assert response.status_code == 200, response.content
    (OUT / "create_response.json").write_bytes(response.content)
    (OUT / "create_request.json").write_text(
        json.dumps(WALKTHROUGH_BODY, indent=2, sort_keys=True) + "\n"
    )
    print("wrote", sorted(p.name for p in OUT.iterdir()))


if __name__ == "__main__":
    main()
