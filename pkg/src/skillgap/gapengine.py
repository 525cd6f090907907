"""Gap scoring between a worker's self-assessment and archetype skill sets.

The distance is a weighted sum of binary Jaccard distance over hard/digital
skills and a normalized L1 distance over soft levels (default weights
0.7/0.3). The gap report carries the exact missing-skill sets, soft
improve/maintain verdicts, and the three nearest other archetypes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .profiledb import (
    SOFT_LEVEL_MAX,
    JobArchetype,
    ProfileDatabase,
    jaccard,
)

DEFAULT_BINARY_WEIGHT = 0.7
DEFAULT_SOFT_WEIGHT = 0.3
NEAREST_K = 3


class AssessmentError(ValueError):
    """Assessment fields failed validation; carries the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(message)


@dataclass(frozen=True)
class Weights:
    binary: float = DEFAULT_BINARY_WEIGHT
    soft: float = DEFAULT_SOFT_WEIGHT

    def validate(self) -> None:
        if self.binary < 0 or self.soft < 0:
            raise ValueError("weights must be non-negative")
        if abs(self.binary + self.soft - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")


@dataclass(frozen=True)
class Assessment:
    assessment_id: str
    archetype_id: str
    selected_binary: frozenset[str]
    soft_levels: dict[str, int]
    created_at: str


def parse_assessment(raw: dict) -> Assessment:
    for field in ("assessment_id", "archetype_id"):
        value = raw.get(field)
        if not isinstance(value, str) or not value:
            raise AssessmentError(field, f"{field} must be a non-empty string")
    selected = raw.get("selected_binary", [])
    if not isinstance(selected, list) or not all(isinstance(s, str) for s in selected):
        raise AssessmentError("selected_binary", "selected_binary must be a list of strings")
    soft = raw.get("soft_levels", {})
    if not isinstance(soft, dict):
        raise AssessmentError("soft_levels", "soft_levels must be an object")
    created = raw.get("created_at", "")
    if not isinstance(created, str):
        raise AssessmentError("created_at", "created_at must be a string")
    return Assessment(
        assessment_id=raw["assessment_id"],
        archetype_id=raw["archetype_id"],
        selected_binary=frozenset(selected),
        soft_levels=dict(soft),
        created_at=created,
    )


def load_assessment(path: str | Path) -> Assessment:
    return parse_assessment(json.loads(Path(path).read_text(encoding="utf-8")))


def validate_assessment(assessment: Assessment, db: ProfileDatabase) -> None:
    if not db.has_archetype(assessment.archetype_id):
        raise AssessmentError(
            "archetype_id", f"unknown archetype '{assessment.archetype_id}'"
        )
    for sid in sorted(assessment.selected_binary):
        if not db.has_skill(sid):
            raise AssessmentError("selected_binary", f"unknown skill '{sid}'")
        if db.skill(sid).category == "soft":
            raise AssessmentError(
                "selected_binary", f"skill '{sid}' is soft-category, not selectable"
            )
    for sid, level in sorted(assessment.soft_levels.items()):
        if not db.has_skill(sid):
            raise AssessmentError("soft_levels", f"unknown skill '{sid}'")
        if db.skill(sid).category != "soft":
            raise AssessmentError("soft_levels", f"skill '{sid}' is not soft-category")
        if not isinstance(level, int) or isinstance(level, bool) or not 0 <= level <= SOFT_LEVEL_MAX:
            raise AssessmentError(
                "soft_levels", f"level for '{sid}' must be an integer in [0,{SOFT_LEVEL_MAX}]"
            )


# ------------------------------------------------------------------
# distance and ranking
# ------------------------------------------------------------------

def distance(
    user: Assessment, candidate: JobArchetype, weights: Weights = Weights()
) -> float:
    """w_b*(1 - Jaccard(selected, ideal)) + w_s*(sum|current-target|/(4*n));
    the soft term is 0 when the candidate has no soft targets."""
    weights.validate()
    binary_term = 1.0 - jaccard(user.selected_binary, candidate.binary_skills)
    if candidate.soft_targets:
        diff = sum(
            abs(user.soft_levels.get(sid, 0) - target)
            for sid, target in candidate.soft_targets.items()
        )
        soft_term = diff / (SOFT_LEVEL_MAX * len(candidate.soft_targets))
    else:
        soft_term = 0.0
    return weights.binary * binary_term + weights.soft * soft_term


def nearest_archetypes(
    user: Assessment,
    db: ProfileDatabase,
    k: int = NEAREST_K,
    weights: Weights = Weights(),
    include_own: bool = False,
) -> list[tuple[str, float]]:
    """All other archetypes ranked by ascending distance; ties prefer the
    larger ideal skill set, then the smaller archetype_id."""
    candidates = [
        a
        for a in db.archetypes
        if include_own or a.archetype_id != user.archetype_id
    ]
    if len(candidates) < k:
        raise AssessmentError(
            "archetype_id",
            f"need at least {k} other archetypes, have {len(candidates)}",
        )
    scored = [
        (distance(user, a, weights), -len(a.binary_skills), a.archetype_id)
        for a in candidates
    ]
    scored.sort()
    return [(aid, d) for d, _, aid in scored[:k]]


# ------------------------------------------------------------------
# gap report
# ------------------------------------------------------------------

@dataclass(frozen=True)
class SoftComparison:
    skill_id: str
    current: int
    target: int
    verdict: str  # improve | maintain


@dataclass(frozen=True)
class GapReport:
    missing_binary: dict[str, list[dict]]  # {"hard": [...], "digital": [...]}
    soft_comparisons: tuple[SoftComparison, ...]
    coverage: float
    nearest: tuple[tuple[str, float], ...]
    distance_to_own: float
    weights: Weights

    def to_payload(self) -> dict:
        return {
            "missing_binary": self.missing_binary,
            "soft_comparisons": [
                {
                    "skill_id": c.skill_id,
                    "current": c.current,
                    "target": c.target,
                    "verdict": c.verdict,
                }
                for c in self.soft_comparisons
            ],
            "coverage": self.coverage,
            "nearest": [
                {"archetype_id": aid, "distance": d} for aid, d in self.nearest
            ],
            "distance_to_own": self.distance_to_own,
            "weights": {"binary": self.weights.binary, "soft": self.weights.soft},
        }


def compute_gap(
    assessment: Assessment, db: ProfileDatabase, weights: Weights = Weights()
) -> GapReport:
    """Exact set-difference gap, soft verdicts (missing user levels count as
    0), coverage, and the nearest-archetype ranking."""
    validate_assessment(assessment, db)
    archetype = db.archetype(assessment.archetype_id)
    ideal = archetype.binary_skills
    missing = ideal - assessment.selected_binary
    missing_binary: dict[str, list[dict]] = {"hard": [], "digital": []}
    for sid in sorted(missing):
        skill = db.skill(sid)
        missing_binary[skill.category].append(
            {"skill_id": sid, "label": skill.label, "green": skill.green}
        )
    coverage = (
        len(assessment.selected_binary & ideal) / len(ideal) if ideal else 1.0
    )
    comparisons = []
    for sid, target in sorted(archetype.soft_targets.items()):
        current = assessment.soft_levels.get(sid, 0)
        comparisons.append(
            SoftComparison(
                skill_id=sid,
                current=current,
                target=target,
                verdict="improve" if current < target else "maintain",
            )
        )
    nearest = nearest_archetypes(assessment, db, weights=weights)
    return GapReport(
        missing_binary=missing_binary,
        soft_comparisons=tuple(comparisons),
        coverage=coverage,
        nearest=tuple(nearest),
        distance_to_own=distance(assessment, archetype, weights),
        weights=weights,
    )


def soft_comparison_series(assessment: Assessment, archetype: JobArchetype, db: ProfileDatabase) -> list[dict]:
    """Chart-ready rows ordered by skill label: {label, current, target,
    verdict}."""
    rows = []
    for sid, target in archetype.soft_targets.items():
        current = assessment.soft_levels.get(sid, 0)
        rows.append(
            {
                "label": db.skill(sid).label,
                "current": current,
                "target": target,
                "verdict": "improve" if current < target else "maintain",
            }
        )
    rows.sort(key=lambda r: r["label"])
    return rows
