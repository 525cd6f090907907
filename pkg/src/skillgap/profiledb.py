"""Job-archetype database assembly and macro-class validation.

Archetypes carry an ideal binary skill set (hard + digital) and leveled soft
targets. The top-down macro-class labels are validated bottom-up by
average-linkage agglomerative clustering on binary-skill Jaccard similarity,
with a fully deterministic merge order.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path

from .skillmap import SkillRecord

log = logging.getLogger(__name__)

MACRO_CLASSES = (
    "TechniciansOperators",
    "EngineeringProfessionals",
    "ManagersConsultants",
)

SOFT_LEVEL_MIN = 0
SOFT_LEVEL_MAX = 4


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class JobArchetype:
    archetype_id: str
    title: str
    description: str
    macro_class_topdown: str
    binary_skills: frozenset[str]
    soft_targets: dict[str, int]
    macro_class_bottomup: str | None = None


@dataclass(frozen=True)
class BuildReport:
    evidence_counts: dict[str, int]  # archetype_id -> binary skills with evidence
    orphan_skills: tuple[str, ...]
    digital_share_of_skills: float
    digital_share_of_links: float


@dataclass(frozen=True)
class ProfileDatabase:
    archetypes: tuple[JobArchetype, ...]
    skills: tuple[SkillRecord, ...]
    version: str
    provenance: dict
    report: BuildReport

    def archetype(self, archetype_id: str) -> JobArchetype:
        try:
            return self._by_id[archetype_id]
        except AttributeError:
            object.__setattr__(self, "_by_id", {a.archetype_id: a for a in self.archetypes})
            return self._by_id[archetype_id]

    def skill(self, skill_id: str) -> SkillRecord:
        try:
            return self._skills_by_id[skill_id]
        except AttributeError:
            object.__setattr__(
                self, "_skills_by_id", {s.skill_id: s for s in self.skills}
            )
            return self._skills_by_id[skill_id]

    def has_archetype(self, archetype_id: str) -> bool:
        return any(a.archetype_id == archetype_id for a in self.archetypes)

    def has_skill(self, skill_id: str) -> bool:
        return any(s.skill_id == skill_id for s in self.skills)


def jaccard(a: frozenset | set, b: frozenset | set) -> float:
    """Jaccard similarity; two empty sets count as identical (1.0)."""
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


# ------------------------------------------------------------------
# build
# ------------------------------------------------------------------

def _parse_archetype(raw: dict, n: int, skills_by_id: dict[str, SkillRecord]) -> JobArchetype:
    def need(field: str):
        if field not in raw:
            raise ProfileError(f"archetype #{n}: missing field '{field}'")
        return raw[field]

    archetype_id = need("archetype_id")
    title = need("title")
    macro = need("macro_class_topdown")
    if not isinstance(archetype_id, str) or not archetype_id:
        raise ProfileError(f"archetype #{n}: archetype_id must be a non-empty string")
    if not isinstance(title, str) or not title.strip():
        raise ProfileError(f"archetype '{archetype_id}': title must be non-empty")
    if macro not in MACRO_CLASSES:
        raise ProfileError(
            f"archetype '{archetype_id}': macro_class_topdown {macro!r} "
            f"not one of {MACRO_CLASSES}"
        )
    binary = need("binary_skills")
    soft = raw.get("soft_targets", {})
    if not isinstance(binary, list):
        raise ProfileError(f"archetype '{archetype_id}': binary_skills must be a list")
    if not isinstance(soft, dict):
        raise ProfileError(f"archetype '{archetype_id}': soft_targets must be an object")
    for sid in binary:
        skill = skills_by_id.get(sid)
        if skill is None:
            raise ProfileError(
                f"archetype '{archetype_id}' references unknown skill '{sid}'"
            )
        if skill.category == "soft":
            raise ProfileError(
                f"archetype '{archetype_id}': binary skill '{sid}' is soft-category"
            )
    for sid, level in soft.items():
        skill = skills_by_id.get(sid)
        if skill is None:
            raise ProfileError(
                f"archetype '{archetype_id}' references unknown skill '{sid}'"
            )
        if skill.category != "soft":
            raise ProfileError(
                f"archetype '{archetype_id}': soft target '{sid}' is not soft-category"
            )
        if not isinstance(level, int) or isinstance(level, bool) or not (
            SOFT_LEVEL_MIN <= level <= SOFT_LEVEL_MAX
        ):
            raise ProfileError(
                f"archetype '{archetype_id}': soft level for '{sid}' must be an "
                f"integer in [{SOFT_LEVEL_MIN},{SOFT_LEVEL_MAX}]"
            )
    overlap = set(binary) & set(soft)
    if overlap:
        raise ProfileError(
            f"archetype '{archetype_id}': skills in both binary and soft sets: "
            f"{sorted(overlap)}"
        )
    return JobArchetype(
        archetype_id=archetype_id,
        title=title.strip(),
        description=str(raw.get("description", "")).strip(),
        macro_class_topdown=macro,
        binary_skills=frozenset(binary),
        soft_targets=dict(sorted(soft.items())),
    )


def build_profile_db(
    archetype_file: str | Path,
    skills: list[SkillRecord],
    evidence: dict[str, int] | None = None,
    version: str | None = None,
    provenance: dict | None = None,
) -> ProfileDatabase:
    """Assemble and validate the database, annotating each archetype with how
    many of its binary skills carry mapper evidence and reporting orphan
    skills plus the digital share (of skills and of skill-profile links)."""
    raw = json.loads(Path(archetype_file).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise ProfileError("archetype file must be a JSON array")
    if not raw:
        raise ProfileError("no archetypes")
    skills_by_id = {s.skill_id: s for s in skills}
    archetypes: list[JobArchetype] = []
    seen: set[str] = set()
    for n, entry in enumerate(raw, start=1):
        arch = _parse_archetype(entry, n, skills_by_id)
        if arch.archetype_id in seen:
            raise ProfileError(f"duplicate archetype_id '{arch.archetype_id}'")
        seen.add(arch.archetype_id)
        archetypes.append(arch)

    evidence = evidence or {}
    evidence_counts = {
        a.archetype_id: sum(1 for s in a.binary_skills if evidence.get(s, 0) > 0)
        for a in archetypes
    }
    referenced: set[str] = set()
    link_total = 0
    link_digital = 0
    for a in archetypes:
        referenced |= a.binary_skills | set(a.soft_targets)
        for sid in a.binary_skills:
            link_total += 1
            if skills_by_id[sid].category == "digital":
                link_digital += 1
    orphans = tuple(sorted(s.skill_id for s in skills if s.skill_id not in referenced))
    if orphans:
        log.info("%d orphan skills not referenced by any archetype", len(orphans))
    digital_skills = sum(1 for s in skills if s.category == "digital")
    report = BuildReport(
        evidence_counts=evidence_counts,
        orphan_skills=orphans,
        digital_share_of_skills=digital_skills / len(skills) if skills else 0.0,
        digital_share_of_links=link_digital / link_total if link_total else 0.0,
    )
    if version is None:
        body = json.dumps(
            [
                [a.archetype_id, sorted(a.binary_skills), a.soft_targets]
                for a in archetypes
            ]
            + [[s.skill_id, s.category, s.green] for s in skills],
            sort_keys=True,
        )
        version = hashlib.sha256(body.encode("utf-8")).hexdigest()[:12]
    return ProfileDatabase(
        archetypes=tuple(archetypes),
        skills=tuple(skills),
        version=version,
        provenance=provenance or {},
        report=report,
    )


# ------------------------------------------------------------------
# bottom-up clustering
# ------------------------------------------------------------------

@dataclass(frozen=True)
class ArchetypeClustering:
    clusters: tuple[frozenset[str], ...]
    labels: tuple[str, ...]  # majority top-down class per cluster
    by_archetype: dict[str, str]  # archetype_id -> bottom-up class


def _pairwise_similarity(db: ProfileDatabase, ids: list[str], metric: str) -> dict:
    if metric == "jaccard":
        skills = {a.archetype_id: a.binary_skills for a in db.archetypes}
        return {
            (a, b): jaccard(skills[a], skills[b])
            for i, a in enumerate(ids)
            for b in ids[i + 1 :]
        }
    if metric == "description":
        from .skillmap import HashedBagEmbedder, cosine

        provider = HashedBagEmbedder()
        vectors = {
            a.archetype_id: provider.embed(a.description) for a in db.archetypes
        }

        def sim(a: str, b: str) -> float:
            u, v = vectors[a], vectors[b]
            if not u.comparable or not v.comparable:
                return 0.0
            return cosine(u, v)

        return {(a, b): sim(a, b) for i, a in enumerate(ids) for b in ids[i + 1 :]}
    raise ProfileError(f"unknown similarity metric {metric!r}")


def cluster_archetypes(
    db: ProfileDatabase, k: int = 3, metric: str = "jaccard"
) -> ArchetypeClustering:
    """Average-linkage agglomerative clustering cut at k clusters. The
    default similarity is binary-skill Jaccard; metric="description" swaps in
    cosine over description embeddings behind the same interface. Tie merges
    pick the lexicographically smallest pair of cluster member-id minima, so
    input order never matters."""
    ids = sorted(a.archetype_id for a in db.archetypes)
    if len(ids) < k:
        raise ProfileError(f"need at least k={k} archetypes, have {len(ids)}")
    sim = _pairwise_similarity(db, ids, metric)

    clusters: list[list[str]] = [[i] for i in ids]

    def linkage(ca: list[str], cb: list[str]) -> float:
        total = 0.0
        for a in ca:
            for b in cb:
                total += sim[(a, b)] if (a, b) in sim else sim[(b, a)]
        return total / (len(ca) * len(cb))

    while len(clusters) > k:
        best = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                s = linkage(clusters[i], clusters[j])
                key = tuple(sorted((min(clusters[i]), min(clusters[j]))))
                cand = (-s, key, i, j)
                if best is None or cand < best:
                    best = cand
        _, _, i, j = best
        merged = sorted(clusters[i] + clusters[j])
        clusters = [c for n, c in enumerate(clusters) if n not in (i, j)]
        clusters.append(merged)

    final = tuple(sorted((frozenset(c) for c in clusters), key=min))
    topdown = {a.archetype_id: a.macro_class_topdown for a in db.archetypes}
    labels = []
    for cluster in final:
        votes: dict[str, int] = {}
        for aid in cluster:
            votes[topdown[aid]] = votes.get(topdown[aid], 0) + 1
        labels.append(
            min(votes, key=lambda c: (-votes[c], MACRO_CLASSES.index(c)))
        )
    by_archetype = {}
    for cluster, label in zip(final, labels):
        for aid in cluster:
            by_archetype[aid] = label
    return ArchetypeClustering(
        clusters=final, labels=tuple(labels), by_archetype=by_archetype
    )


def with_bottomup(db: ProfileDatabase, clustering: ArchetypeClustering) -> ProfileDatabase:
    archetypes = tuple(
        replace(a, macro_class_bottomup=clustering.by_archetype[a.archetype_id])
        for a in db.archetypes
    )
    return replace(db, archetypes=archetypes)


# ------------------------------------------------------------------
# validation
# ------------------------------------------------------------------

@dataclass(frozen=True)
class AgreementReport:
    purity: float
    confusion: dict[str, dict[str, int]]  # bottom-up class -> top-down class -> count
    archetype_count: int


def validate_macroclasses(
    db: ProfileDatabase, clustering: ArchetypeClustering | None = None
) -> AgreementReport:
    """Purity of the bottom-up partition against top-down labels, plus the
    full confusion table. Reports only; callers judge. When no clustering is
    passed, the bottom-up label groups stand in for the clusters."""
    topdown = {a.archetype_id: a.macro_class_topdown for a in db.archetypes}
    if clustering is not None:
        groups = {f"cluster-{i}": sorted(c) for i, c in enumerate(clustering.clusters)}
    else:
        missing = [a.archetype_id for a in db.archetypes if a.macro_class_bottomup is None]
        if missing:
            raise ProfileError(f"archetypes missing bottom-up labels: {missing}")
        by_label: dict[str, list[str]] = {}
        for a in db.archetypes:
            by_label.setdefault(a.macro_class_bottomup, []).append(a.archetype_id)
        groups = {label: sorted(ids) for label, ids in by_label.items()}
    n = len(db.archetypes)
    confusion: dict[str, dict[str, int]] = {}
    dominant_total = 0
    for name in sorted(groups):
        row: dict[str, int] = {}
        for aid in groups[name]:
            row[topdown[aid]] = row.get(topdown[aid], 0) + 1
        confusion[name] = dict(sorted(row.items()))
        dominant_total += max(row.values())
    return AgreementReport(
        purity=dominant_total / n, confusion=confusion, archetype_count=n
    )
