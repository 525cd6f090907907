"""Stage artifacts: canonical JSON, input digests, and payload round-trips.

Every pipeline stage writes one artifact file embedding the tool version and
the sha256 of each input, so reruns with unchanged inputs can be skipped and
identical inputs always produce identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import __version__
from .corpus import Corpus, PatentDocument
from .patentset import PatentSet, PrecisionEstimate, RecallEstimate
from .profiledb import (
    AgreementReport,
    BuildReport,
    JobArchetype,
    ProfileDatabase,
)
from .skillmap import SkillMatch, SkillRecord
from .techner import KeyTermSet, TechnologyCluster, TechnologyMention


class ArtifactError(ValueError):
    def __init__(self, message: str, required_stage: str | None = None):
        self.required_stage = required_stage
        super().__init__(message)


def compact_json(payload) -> str:
    """Canonical one-line JSON: sorted keys, no whitespace. This is the wire
    format for reports, so service and CLI output compare byte-for-byte."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def artifact_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def file_digest(path: str | Path) -> str:
    h = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_artifact(path: str | Path, stage: str, inputs: dict[str, str], payload) -> None:
    doc = {
        "artifact": stage,
        "tool_version": __version__,
        "inputs": inputs,
        "payload": payload,
    }
    Path(path).write_text(artifact_json(doc), encoding="utf-8")


def read_artifact(path: str | Path, stage: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise ArtifactError(
            f"missing artifact {p.name}: requires {stage} output "
            f"(run `skillgap {stage}` first)",
            required_stage=stage,
        )
    doc = json.loads(p.read_text(encoding="utf-8"))
    if doc.get("artifact") != stage:
        raise ArtifactError(
            f"{p}: expected a {stage} artifact, found {doc.get('artifact')!r}",
            required_stage=stage,
        )
    return doc


def artifact_unchanged(path: str | Path, stage: str, inputs: dict[str, str]) -> bool:
    """True when an artifact already exists for exactly these input digests."""
    p = Path(path)
    if not p.exists():
        return False
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return False
    return (
        doc.get("artifact") == stage
        and doc.get("tool_version") == __version__
        and doc.get("inputs") == inputs
    )


# ------------------------------------------------------------------
# corpus payloads
# ------------------------------------------------------------------

def document_to_payload(doc: PatentDocument) -> dict:
    return {
        "doc_id": doc.doc_id,
        "family_id": doc.family_id,
        "filing_year": doc.filing_year,
        "title": doc.title,
        "abstract": doc.abstract,
        "claims": list(doc.claims),
        "description": doc.description,
        "cpc_codes": list(doc.cpc_codes),
        "ipc_codes": list(doc.ipc_codes),
        "status": doc.status,
    }


def corpus_to_payload(corpus: Corpus) -> dict:
    return {"documents": [document_to_payload(d) for d in corpus]}


def corpus_from_payload(payload: dict) -> Corpus:
    docs = []
    for raw in payload["documents"]:
        docs.append(
            PatentDocument(
                doc_id=raw["doc_id"],
                family_id=raw["family_id"],
                filing_year=raw["filing_year"],
                title=raw["title"],
                abstract=raw.get("abstract", ""),
                claims=tuple(raw.get("claims", [])),
                description=raw.get("description"),
                cpc_codes=tuple(raw.get("cpc_codes", [])),
                ipc_codes=tuple(raw.get("ipc_codes", [])),
                status=raw.get("status"),
            )
        )
    return Corpus(tuple(docs))


# ------------------------------------------------------------------
# patent set payloads
# ------------------------------------------------------------------

def patentset_to_payload(pset: PatentSet) -> dict:
    precision = None
    if pset.precision:
        precision = {
            "sample_size": pset.precision.sample_size,
            "relevant_count": pset.precision.relevant_count,
            "point": pset.precision.point,
            "ci95": list(pset.precision.ci95),
        }
    recall = None
    if pset.recall:
        recall = {
            "seed_list_size": pset.recall.seed_list_size,
            "seeds_retrieved": pset.recall.seeds_retrieved,
            "point": pset.recall.point,
        }
    return {
        "query_name": pset.query_name,
        "doc_ids": sorted(pset.doc_ids),
        "family_ids": sorted(pset.family_ids),
        "created_at": pset.created_at,
        "precision": precision,
        "recall": recall,
    }


def patentset_from_payload(payload: dict) -> PatentSet:
    precision = None
    if payload.get("precision"):
        p = payload["precision"]
        precision = PrecisionEstimate(
            sample_size=p["sample_size"],
            relevant_count=p["relevant_count"],
            point=p["point"],
            ci95=tuple(p["ci95"]),
        )
    recall = None
    if payload.get("recall"):
        r = payload["recall"]
        recall = RecallEstimate(
            seed_list_size=r["seed_list_size"],
            seeds_retrieved=r["seeds_retrieved"],
            point=r["point"],
        )
    return PatentSet(
        query_name=payload["query_name"],
        doc_ids=frozenset(payload["doc_ids"]),
        family_ids=frozenset(payload["family_ids"]),
        created_at=payload["created_at"],
        precision=precision,
        recall=recall,
    )


# ------------------------------------------------------------------
# technology payloads
# ------------------------------------------------------------------

def mention_to_payload(m: TechnologyMention) -> dict:
    return {
        "surface": m.surface,
        "lemma": m.lemma,
        "hypernym_lemma": m.hypernym_lemma,
        "pattern_id": m.pattern_id,
        "doc_id": m.doc_id,
        "section": m.section,
        "sentence_index": m.sentence_index,
        "span": list(m.span),
    }


def mention_from_payload(raw: dict) -> TechnologyMention:
    return TechnologyMention(
        surface=raw["surface"],
        lemma=raw["lemma"],
        hypernym_lemma=raw["hypernym_lemma"],
        pattern_id=raw["pattern_id"],
        doc_id=raw["doc_id"],
        section=raw["section"],
        sentence_index=raw["sentence_index"],
        span=tuple(raw["span"]),
    )


def cluster_to_payload(c: TechnologyCluster) -> dict:
    return {
        "cluster_id": c.cluster_id,
        "label": c.label,
        "member_lemmas": sorted(c.member_lemmas),
        "hypernym_lemma": c.hypernym_lemma,
        "mention_count": c.mention_count,
        "family_count": c.family_count,
        "curation": c.curation,
        "mentions": [mention_to_payload(m) for m in c.mentions],
    }


def cluster_from_payload(raw: dict) -> TechnologyCluster:
    return TechnologyCluster(
        cluster_id=raw["cluster_id"],
        label=raw["label"],
        member_lemmas=frozenset(raw["member_lemmas"]),
        hypernym_lemma=raw["hypernym_lemma"],
        mention_count=raw["mention_count"],
        family_count=raw["family_count"],
        curation=raw["curation"],
        mentions=tuple(mention_from_payload(m) for m in raw.get("mentions", [])),
    )


def key_terms_to_payload(kt: KeyTermSet) -> dict:
    return {
        "base_terms": sorted(kt.base_terms),
        "synonym_expansions": dict(sorted(kt.synonym_expansions.items())),
    }


# ------------------------------------------------------------------
# skill payloads
# ------------------------------------------------------------------

def skill_to_payload(s: SkillRecord) -> dict:
    return {
        "skill_id": s.skill_id,
        "label": s.label,
        "description": s.description,
        "category": s.category,
        "green": s.green,
    }


def skill_from_payload(raw: dict) -> SkillRecord:
    return SkillRecord(
        skill_id=raw["skill_id"],
        label=raw["label"],
        description=raw["description"],
        category=raw["category"],
        green=raw["green"],
    )


def match_to_payload(m: SkillMatch) -> dict:
    return {
        "sentence_ref": list(m.sentence_ref),
        "skill_id": m.skill_id,
        "score": m.score,
        "kept": m.kept,
        "review": m.review,
    }


# ------------------------------------------------------------------
# profile database payloads
# ------------------------------------------------------------------

def archetype_to_payload(a: JobArchetype) -> dict:
    return {
        "archetype_id": a.archetype_id,
        "title": a.title,
        "description": a.description,
        "macro_class_topdown": a.macro_class_topdown,
        "macro_class_bottomup": a.macro_class_bottomup,
        "binary_skills": sorted(a.binary_skills),
        "soft_targets": dict(sorted(a.soft_targets.items())),
    }


def db_to_payload(db: ProfileDatabase) -> dict:
    return {
        "version": db.version,
        "provenance": db.provenance,
        "skills": [skill_to_payload(s) for s in db.skills],
        "archetypes": [archetype_to_payload(a) for a in db.archetypes],
        "report": {
            "evidence_counts": dict(sorted(db.report.evidence_counts.items())),
            "orphan_skills": list(db.report.orphan_skills),
            "digital_share_of_skills": db.report.digital_share_of_skills,
            "digital_share_of_links": db.report.digital_share_of_links,
        },
    }


def db_from_payload(payload: dict) -> ProfileDatabase:
    skills = tuple(skill_from_payload(s) for s in payload["skills"])
    archetypes = tuple(
        JobArchetype(
            archetype_id=raw["archetype_id"],
            title=raw["title"],
            description=raw.get("description", ""),
            macro_class_topdown=raw["macro_class_topdown"],
            macro_class_bottomup=raw.get("macro_class_bottomup"),
            binary_skills=frozenset(raw["binary_skills"]),
            soft_targets={k: v for k, v in sorted(raw.get("soft_targets", {}).items())},
        )
        for raw in payload["archetypes"]
    )
    report_raw = payload.get("report", {})
    report = BuildReport(
        evidence_counts=report_raw.get("evidence_counts", {}),
        orphan_skills=tuple(report_raw.get("orphan_skills", [])),
        digital_share_of_skills=report_raw.get("digital_share_of_skills", 0.0),
        digital_share_of_links=report_raw.get("digital_share_of_links", 0.0),
    )
    return ProfileDatabase(
        archetypes=archetypes,
        skills=skills,
        version=payload["version"],
        provenance=payload.get("provenance", {}),
        report=report,
    )


def load_database(path: str | Path) -> ProfileDatabase:
    """Read a profile database from either a build-db artifact or a bare
    database JSON document."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if "artifact" in doc and "payload" in doc:
        doc = doc["payload"]["database"]
    return db_from_payload(doc)


def agreement_to_payload(report: AgreementReport) -> dict:
    return {
        "purity": report.purity,
        "confusion": report.confusion,
        "archetype_count": report.archetype_count,
    }
