"""Sentence-to-skill matching by embedding similarity.

Two providers sit behind one contract: a file-backed table of precomputed
vectors keyed by sha256(text), and a deterministic fallback that hashes the
bag of lemmas into a fixed 256-dimensional term-frequency vector. Matching
keeps at most the single best-scoring skill per sentence, gated by a strict
similarity threshold (default 0.7).
"""

from __future__ import annotations

import csv
import hashlib
import logging
import math
from dataclasses import dataclass
from pathlib import Path

from .corpus import Sentence, tokenize_and_tag

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.7
FALLBACK_DIM = 256
# pinned so golden score files stay stable across platforms
FALLBACK_HASH_SEED = 7393

CATEGORIES = ("hard", "digital", "soft")


class SkillError(ValueError):
    pass


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class SkillRecord:
    skill_id: str
    label: str
    description: str
    category: str
    green: bool


def load_skills(path: str | Path) -> list[SkillRecord]:
    """Read the `skill_id,label,description,category,green` taxonomy CSV."""
    records: list[SkillRecord] = []
    seen: set[str] = set()
    with Path(path).open(encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"skill_id", "label", "description", "category", "green"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise SkillError(f"{path}: header must contain {sorted(required)}")
        for line_no, row in enumerate(reader, start=2):
            sid = (row["skill_id"] or "").strip()
            label = (row["label"] or "").strip()
            category = (row["category"] or "").strip()
            green_raw = (row["green"] or "").strip().lower()
            if not sid:
                raise SkillError(f"{path}: line {line_no}: empty skill_id")
            if sid in seen:
                raise SkillError(f"{path}: line {line_no}: duplicate skill_id '{sid}'")
            if not label:
                raise SkillError(f"{path}: line {line_no}: empty label for '{sid}'")
            if category not in CATEGORIES:
                raise SkillError(
                    f"{path}: line {line_no}: category {category!r} not one of {CATEGORIES}"
                )
            if green_raw not in ("true", "false"):
                raise SkillError(f"{path}: line {line_no}: green must be true/false")
            seen.add(sid)
            records.append(
                SkillRecord(
                    skill_id=sid,
                    label=label,
                    description=(row["description"] or "").strip(),
                    category=category,
                    green=green_raw == "true",
                )
            )
    return records


# ------------------------------------------------------------------
# embedding providers
# ------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple[float, ...]
    norm: float

    @property
    def dim(self) -> int:
        return len(self.values)

    @property
    def comparable(self) -> bool:
        return self.norm > 0.0


def _normalized(values: list[float]) -> EmbeddingVector:
    norm = math.sqrt(sum(v * v for v in values))
    if norm == 0.0:
        return EmbeddingVector(values=tuple(values), norm=0.0)
    return EmbeddingVector(values=tuple(v / norm for v in values), norm=1.0)


class HashedBagEmbedder:
    """Reference fallback: hashed bag-of-lemmas with term-frequency weights,
    fixed dimension and hash seed, L2-normalized. Same text, same vector,
    on any platform (summation order is fixed)."""

    def __init__(self, dim: int = FALLBACK_DIM, seed: int = FALLBACK_HASH_SEED):
        self.dim = dim
        self.seed = seed

    def _index(self, lemma: str) -> int:
        digest = hashlib.sha256(f"{self.seed}\x1f{lemma}".encode("utf-8")).digest()
        return int.from_bytes(digest[:8], "big") % self.dim

    def embed(self, text: str) -> EmbeddingVector:
        values = [0.0] * self.dim
        for token in tokenize_and_tag(text):
            if token.surface.isalpha():
                values[self._index(token.lemma)] += 1.0
        return _normalized(values)


class FileBackedEmbedder:
    """Precomputed `sha256(text)<TAB>float...` table; a miss is an error."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.table: dict[str, tuple[float, ...]] = {}
        dim: int | None = None
        for line_no, line in enumerate(
            self.path.read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                raise EmbeddingError(f"{path}: line {line_no}: expected digest<TAB>floats")
            digest = parts[0].strip()
            try:
                values = tuple(float(v) for v in parts[1:])
            except ValueError as exc:
                raise EmbeddingError(f"{path}: line {line_no}: bad float: {exc}") from exc
            if dim is None:
                dim = len(values)
            elif len(values) != dim:
                raise EmbeddingError(
                    f"{path}: line {line_no}: dimension {len(values)} != {dim}"
                )
            self.table[digest] = values
        if dim is None:
            raise EmbeddingError(f"{path}: empty embedding table")
        self.dim = dim

    def embed(self, text: str) -> EmbeddingVector:
        if not text.strip():
            return EmbeddingVector(values=(0.0,) * self.dim, norm=0.0)
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        values = self.table.get(digest)
        if values is None:
            raise EmbeddingError(
                f"no precomputed vector for text digest {digest[:12]}… "
                f"({text[:40]!r})"
            )
        return _normalized(list(values))


def cosine(u: EmbeddingVector, v: EmbeddingVector) -> float:
    if u.dim != v.dim:
        raise EmbeddingError(f"dimension mismatch: {u.dim} != {v.dim}")
    if not u.comparable or not v.comparable:
        raise EmbeddingError("cosine undefined for zero vectors")
    dot = 0.0
    for a, b in zip(u.values, v.values):
        dot += a * b
    return max(-1.0, min(1.0, dot / (u.norm * v.norm)))


# ------------------------------------------------------------------
# matching
# ------------------------------------------------------------------

@dataclass(frozen=True)
class SkillMatch:
    sentence_ref: tuple[str, str, int]
    skill_id: str
    score: float
    kept: bool
    review: str = "auto"


def match_sentences_to_skills(
    sentences: list[Sentence],
    skills: list[SkillRecord],
    provider,
    threshold: float = DEFAULT_THRESHOLD,
) -> list[SkillMatch]:
    """Score each sentence against every hard/digital skill description and
    record the argmax skill; kept only when the best score strictly exceeds
    the threshold. Ties break to the lexicographically smaller skill_id."""
    candidates = sorted(
        (s for s in skills if s.category in ("hard", "digital")),
        key=lambda s: s.skill_id,
    )
    if not candidates:
        raise SkillError("no hard/digital skills to match against")
    skill_vectors = []
    for skill in candidates:
        vec = provider.embed(skill.description)
        if vec.comparable:
            skill_vectors.append((skill, vec))
        else:
            log.warning("skill %s has an empty description; skipped", skill.skill_id)
    matches: list[SkillMatch] = []
    for sentence in sentences:
        svec = provider.embed(sentence.text)
        if not svec.comparable:
            continue
        best_skill = None
        best_score = -math.inf
        for skill, vec in skill_vectors:
            score = cosine(svec, vec)
            if score > best_score:
                best_skill, best_score = skill, score
        if best_skill is None:
            continue
        matches.append(
            SkillMatch(
                sentence_ref=sentence.ref,
                skill_id=best_skill.skill_id,
                score=best_score,
                kept=best_score > threshold,
            )
        )
    return matches


@dataclass(frozen=True)
class DerivedSkill:
    skill_id: str
    evidence_count: int


def derive_skill_set(
    matches: list[SkillMatch],
    skills: list[SkillRecord],
    overrides: list[dict] | None = None,
) -> list[DerivedSkill]:
    """Group kept matches by skill, drop curation-rejected skills, and order
    by descending evidence (ties by skill_id)."""
    known = {s.skill_id for s in skills}
    rejected: set[str] = set()
    for n, d in enumerate(overrides or [], start=1):
        action = d.get("action")
        target = d.get("target")
        if action not in ("approve", "reject"):
            raise SkillError(f"override {n}: unknown action {action!r}")
        if target not in known:
            raise SkillError(f"override {n}: unknown skill_id {target!r}")
        if action == "reject":
            rejected.add(target)
    counts: dict[str, int] = {}
    for m in matches:
        if m.kept and m.skill_id not in rejected:
            counts[m.skill_id] = counts.get(m.skill_id, 0) + 1
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [DerivedSkill(skill_id=sid, evidence_count=c) for sid, c in ordered]
