"""Patent-style corpus loading, sentence segmentation, and token tagging.

Everything in this module is deterministic and dependency-free: the tagger is
a closed-class lexicon plus suffix heuristics, and the lemmatizer is a small
set of plural-stripping rules applied to a fixed point.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from datetime import date
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterator

log = logging.getLogger(__name__)

SECTIONS = ("title", "abstract", "claims", "description")
STATUSES = ("pending", "granted", "lapsed", "unknown")
ROLES = ("noun", "adjective", "verb", "determiner", "conjunction", "preposition", "other")

_DOC_FIELDS = {
    "doc_id", "family_id", "filing_year", "title", "abstract", "claims",
    "description", "cpc_codes", "ipc_codes", "status",
}


class IngestError(ValueError):
    """A corpus file violated the document schema."""


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    role: str


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    section: str
    index: int
    text: str
    tokens: tuple[Token, ...]

    @property
    def ref(self) -> tuple[str, str, int]:
        return (self.doc_id, self.section, self.index)

    def lemmas(self) -> tuple[str, ...]:
        return tuple(t.lemma for t in self.tokens)


@dataclass(frozen=True)
class PatentDocument:
    doc_id: str
    family_id: str
    filing_year: int
    title: str
    abstract: str = ""
    claims: tuple[str, ...] = ()
    description: str | None = None
    cpc_codes: tuple[str, ...] = ()
    ipc_codes: tuple[str, ...] = ()
    status: str | None = None

    def section_texts(self) -> list[tuple[str, str]]:
        """(section, text) pairs in canonical section order; claims joined below."""
        out = [("title", self.title), ("abstract", self.abstract)]
        out.append(("claims", "\n".join(self.claims)))
        out.append(("description", self.description or ""))
        return out


class Corpus:
    """Immutable, order-preserving collection of validated documents."""

    def __init__(self, documents: tuple[PatentDocument, ...]):
        self.documents = documents
        self._by_id = {d.doc_id: d for d in documents}
        self._sentence_cache: dict[str, tuple[Sentence, ...]] = {}
        fams: dict[str, list[PatentDocument]] = {}
        for d in documents:
            fams.setdefault(d.family_id, []).append(d)
        self._families = fams

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[PatentDocument]:
        return iter(self.documents)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._by_id

    def get(self, doc_id: str) -> PatentDocument:
        return self._by_id[doc_id]

    @property
    def family_ids(self) -> set[str]:
        return set(self._families)

    def family_of(self, doc_id: str) -> str:
        return self._by_id[doc_id].family_id

    def family_earliest_year(self, family_id: str) -> int:
        return min(d.filing_year for d in self._families[family_id])

    def sentences(self, doc_id: str) -> tuple[Sentence, ...]:
        cached = self._sentence_cache.get(doc_id)
        if cached is None:
            cached = tuple(segment_sentences(self._by_id[doc_id]))
            self._sentence_cache[doc_id] = cached
        return cached


# ------------------------------------------------------------------
# ingestion
# ------------------------------------------------------------------

def _string_list(value, field: str, line_no: int) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise IngestError(f"line {line_no}: field '{field}' must be a list of strings")
    return tuple(value)


def _parse_document(raw: dict, line_no: int) -> PatentDocument:
    unknown = set(raw) - _DOC_FIELDS
    for name in sorted(unknown):
        log.warning("line %d: ignoring unknown field %r", line_no, name)

    def need(field: str):
        if field not in raw:
            raise IngestError(f"line {line_no}: missing required field '{field}'")
        return raw[field]

    doc_id = need("doc_id")
    family_id = need("family_id")
    filing_year = need("filing_year")
    title = need("title")
    if not isinstance(doc_id, str) or not doc_id:
        raise IngestError(f"line {line_no}: doc_id must be a non-empty string")
    if not isinstance(family_id, str) or not family_id:
        raise IngestError(f"line {line_no}: family_id must be a non-empty string")
    if not isinstance(filing_year, int) or isinstance(filing_year, bool):
        raise IngestError(f"line {line_no}: filing_year must be an integer")
    if not 1900 <= filing_year <= date.today().year:
        raise IngestError(
            f"line {line_no}: filing_year {filing_year} out of range "
            f"(1900..{date.today().year})"
        )
    if not isinstance(title, str) or not title.strip():
        raise IngestError(f"line {line_no}: title must be non-empty")

    abstract = raw.get("abstract", "")
    if not isinstance(abstract, str):
        raise IngestError(f"line {line_no}: abstract must be a string")
    description = raw.get("description")
    if description is not None and not isinstance(description, str):
        raise IngestError(f"line {line_no}: description must be a string or null")
    status = raw.get("status")
    if status is not None and status not in STATUSES:
        raise IngestError(f"line {line_no}: status {status!r} not one of {STATUSES}")

    return PatentDocument(
        doc_id=doc_id,
        family_id=family_id,
        filing_year=filing_year,
        title=title,
        abstract=abstract,
        claims=_string_list(raw.get("claims", []), "claims", line_no),
        description=description,
        cpc_codes=_string_list(raw.get("cpc_codes", []), "cpc_codes", line_no),
        ipc_codes=_string_list(raw.get("ipc_codes", []), "ipc_codes", line_no),
        status=status,
    )


def ingest_corpus(source: str | Path, format: str = "jsonl") -> Corpus:
    """Load a JSONL corpus file, validating every line.

    Raises IngestError on parse failures (with line number), duplicate doc
    ids, or out-of-range fields.
    """
    if format != "jsonl":
        raise IngestError(f"unsupported corpus format: {format!r}")
    path = Path(source)
    docs: list[PatentDocument] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"line {line_no}: invalid JSON ({exc.msg})") from exc
            if not isinstance(raw, dict):
                raise IngestError(f"line {line_no}: expected a JSON object")
            doc = _parse_document(raw, line_no)
            if doc.doc_id in seen:
                raise IngestError(f"line {line_no}: duplicate doc_id '{doc.doc_id}'")
            seen.add(doc.doc_id)
            docs.append(doc)
    corpus = Corpus(tuple(docs))
    log.info(
        "ingested %d documents across %d families from %s",
        len(corpus), len(corpus.family_ids), path,
    )
    return corpus


# ------------------------------------------------------------------
# lexicons
# ------------------------------------------------------------------

def _load_wordlist(name: str) -> frozenset[str]:
    text = resources.files("skillgap.data").joinpath(name).read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


@lru_cache(maxsize=1)
def _lexicons() -> dict[str, frozenset[str]]:
    return {
        "determiner": _load_wordlist("determiners.txt"),
        "conjunction": _load_wordlist("conjunctions.txt"),
        "preposition": _load_wordlist("prepositions.txt"),
        "verb": _load_wordlist("verbs.txt"),
        "other": _load_wordlist("adverbs.txt"),
        "noun_exceptions": _load_wordlist("noun_exceptions.txt"),
    }


@lru_cache(maxsize=1)
def _abbreviations() -> frozenset[str]:
    return _load_wordlist("abbreviations.txt")


# ------------------------------------------------------------------
# tokenization and tagging
# ------------------------------------------------------------------

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+|[^\sA-Za-z0-9]")


def lemma_of(word: str) -> str:
    """Rule-based singularization, iterated to a fixed point (idempotent).

    Words ending -ss/-us/-is never lose the final s: they are almost never
    plurals (process, apparatus, status, axis), and "apparatus" must survive
    intact for the hypernym key-term gate."""
    w = word
    while True:
        if w.endswith("ies") and len(w) > 3:
            n = w[:-3] + "y"
        elif w.endswith("ses") and len(w) > 3:
            n = w[:-2]
        elif (
            w.endswith("s")
            and not w.endswith(("ss", "us", "is"))
            and len(w) > 3
        ):
            n = w[:-1]
        else:
            n = w
        if n == w:
            return w
        w = n


def _role_of(surface: str) -> str:
    lex = _lexicons()
    if not surface.isalpha():
        return "other"
    for role in ("determiner", "conjunction", "preposition", "verb", "other"):
        if surface in lex[role]:
            return role
    if surface in lex["noun_exceptions"]:
        return "noun"
    if (surface.endswith("ing") and len(surface) > 4) or (
        surface.endswith("ed") and len(surface) > 3
    ):
        return "verb"
    if surface.endswith(("al", "ive", "ous", "ic")) and len(surface) > 3:
        return "adjective"
    return "noun"


def tokenize_and_tag(text: str) -> tuple[Token, ...]:
    """Lowercase, split on whitespace/punctuation (punctuation kept as tokens),
    and assign a role by lexicon, then suffix heuristics, then default noun."""
    tokens: list[Token] = []
    for m in _TOKEN_RE.finditer(text):
        surface = m.group(0).lower()
        role = _role_of(surface)
        lemma = lemma_of(surface) if surface.isalpha() else surface
        tokens.append(Token(surface=surface, lemma=lemma, role=role))
    return tuple(tokens)


# ------------------------------------------------------------------
# sentence segmentation
# ------------------------------------------------------------------

_SPLIT_RE = re.compile(r"[.!?]+(?=\s+[A-Z\"'(\[]|\s*$)")
_CLAIM_ITEM_RE = re.compile(r"^\s*\d+\s*\.\s*", re.MULTILINE)
_GUARD_TOKEN_RE = re.compile(r"[\w.]+$")


def _split_text(text: str) -> list[str]:
    """Split on sentence-final punctuation followed by whitespace+capital or
    end of text, skipping splits after guarded abbreviations."""
    guards = _abbreviations()
    pieces: list[str] = []
    start = 0
    for m in _SPLIT_RE.finditer(text):
        token = _GUARD_TOKEN_RE.search(text[: m.end()])
        if token and token.group(0).lower() in guards:
            continue
        piece = text[start : m.end()].strip()
        if piece:
            pieces.append(piece)
        start = m.end()
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces


def _split_claims(claims: tuple[str, ...]) -> list[str]:
    pieces: list[str] = []
    for claim in claims:
        # claim numbering ("1.", "2." at line start) delimits items
        items = [p for p in _CLAIM_ITEM_RE.split(claim) if p.strip()]
        for item in items:
            pieces.extend(_split_text(item))
    return pieces


def segment_sentences(doc: PatentDocument) -> list[Sentence]:
    """Deterministically split every section into tokenized sentences."""
    out: list[Sentence] = []
    for section, text in doc.section_texts():
        if section == "claims":
            pieces = _split_claims(doc.claims)
        else:
            pieces = _split_text(text)
        for index, piece in enumerate(pieces):
            tokens = tokenize_and_tag(piece)
            if not tokens:
                continue
            out.append(
                Sentence(
                    doc_id=doc.doc_id,
                    section=section,
                    index=index,
                    text=piece,
                    tokens=tokens,
                )
            )
    return out
