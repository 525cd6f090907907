"""Rule-based technology mention extraction and clustering.

Noun phrases are chunked as maximal adjective/noun runs; five fixed
lexico-syntactic patterns over those chunks yield hypernym/hyponym pairs, and
a pair becomes a technology mention only when the hypernym's head noun is in
the key-term set. Mentions are then grouped by lemma and merged into clusters
when one lemma is a token-suffix of another under the same hypernym.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path

from .corpus import Sentence

log = logging.getLogger(__name__)

REQUIRED_BASE_TERMS = frozenset(
    {
        "technology",
        "machine",
        "device",
        "apparatus",
        "mechanism",
        "sensor",
        "network",
        "system",
        "unit",
    }
)

PATTERN_IDS = ("such_as", "such_np_as", "and_other", "including", "especially")


class KeyTermError(ValueError):
    """Malformed synonym lexicon or key-term set."""


class CurationError(ValueError):
    """Invalid curation directive."""


@dataclass(frozen=True)
class KeyTermSet:
    base_terms: frozenset[str]
    synonym_expansions: dict[str, str]

    def __post_init__(self):
        missing = REQUIRED_BASE_TERMS - self.base_terms
        if missing:
            raise KeyTermError(f"base terms missing required entries: {sorted(missing)}")
        overlap = set(self.synonym_expansions) & self.base_terms
        if overlap:
            raise KeyTermError(f"expansions overlap base terms: {sorted(overlap)}")

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.base_terms or lemma in self.synonym_expansions


def default_key_terms() -> KeyTermSet:
    return KeyTermSet(base_terms=REQUIRED_BASE_TERMS, synonym_expansions={})


def expand_key_terms(base: KeyTermSet, lexicon: str | Path) -> KeyTermSet:
    """Add `synonym<TAB>base_term` lines whose base term is already known;
    reject the rest with a warning."""
    expansions = dict(base.synonym_expansions)
    for line_no, line in enumerate(
        Path(lexicon).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise KeyTermError(
                f"{lexicon}: line {line_no}: expected 'synonym<TAB>base_term'"
            )
        synonym, base_term = parts[0].strip().lower(), parts[1].strip().lower()
        if base_term not in base.base_terms:
            log.warning(
                "%s: line %d: base term %r not in key-term set, skipping %r",
                lexicon, line_no, base_term, synonym,
            )
            continue
        if synonym in base.base_terms:
            log.warning(
                "%s: line %d: synonym %r already a base term, skipping",
                lexicon, line_no, synonym,
            )
            continue
        expansions[synonym] = base_term
    return KeyTermSet(base_terms=base.base_terms, synonym_expansions=expansions)


# ------------------------------------------------------------------
# mention extraction
# ------------------------------------------------------------------

@dataclass(frozen=True)
class TechnologyMention:
    surface: str
    lemma: str
    hypernym_lemma: str
    pattern_id: str
    doc_id: str
    section: str
    sentence_index: int
    span: tuple[int, int]

    @property
    def location(self) -> tuple[str, str, int, tuple[int, int]]:
        return (self.doc_id, self.section, self.sentence_index, self.span)


_CHUNK_ROLES = ("adjective", "noun")


def _elements(sentence: Sentence) -> list[tuple]:
    """Sentence as a sequence of ("np", start, end) chunks and ("tok", i)
    items; chunks are maximal adjective/noun runs."""
    elems: list[tuple] = []
    i = 0
    tokens = sentence.tokens
    while i < len(tokens):
        if tokens[i].role in _CHUNK_ROLES:
            j = i
            while j < len(tokens) and tokens[j].role in _CHUNK_ROLES:
                j += 1
            elems.append(("np", i, j))
            i = j
        else:
            elems.append(("tok", i))
            i += 1
    return elems


def _is_word(elems, i: int, sentence: Sentence, surface: str) -> bool:
    return (
        i < len(elems)
        and elems[i][0] == "tok"
        and sentence.tokens[elems[i][1]].surface == surface
    )


def _is_np(elems, i: int) -> bool:
    return i < len(elems) and elems[i][0] == "np"


def _parse_np_series(elems, i: int, sentence: Sentence):
    """NP (, NP)* — returns (np_elements, next_index) or None."""
    if not _is_np(elems, i):
        return None
    nps = [elems[i]]
    j = i + 1
    while _is_word(elems, j, sentence, ",") and _is_np(elems, j + 1):
        nps.append(elems[j + 1])
        j += 2
    return nps, j


def _parse_np_list(elems, i: int, sentence: Sentence):
    """NP (, NP)* ((,)? (and|or) NP)? — returns (np_elements, next_index)."""
    parsed = _parse_np_series(elems, i, sentence)
    if parsed is None:
        return None
    nps, j = parsed
    k = j
    if _is_word(elems, k, sentence, ","):
        k += 1
    if (_is_word(elems, k, sentence, "and") or _is_word(elems, k, sentence, "or")) and _is_np(
        elems, k + 1
    ):
        nps.append(elems[k + 1])
        j = k + 2
    return nps, j


def _head_noun_lemma(sentence: Sentence, np) -> str | None:
    _, start, end = np
    for t in range(end - 1, start - 1, -1):
        if sentence.tokens[t].role == "noun":
            return sentence.tokens[t].lemma
    return None


def _np_strings(sentence: Sentence, np) -> tuple[str, str, tuple[int, int]]:
    _, start, end = np
    toks = sentence.tokens[start:end]
    surface = " ".join(t.surface for t in toks)
    lemma = " ".join(t.lemma for t in toks)
    return surface, lemma, (start, end)


def _match_at(pattern_id: str, elems, i: int, sentence: Sentence):
    """Try one pattern at element index i; returns (hypernym_np, hyponym_nps,
    next_index) or None."""
    if pattern_id == "such_as":
        # NP_h such as NP (, NP)* ((,)? (and|or) NP)?
        if not _is_np(elems, i):
            return None
        if not (_is_word(elems, i + 1, sentence, "such") and _is_word(elems, i + 2, sentence, "as")):
            return None
        parsed = _parse_np_list(elems, i + 3, sentence)
        if parsed is None:
            return None
        return elems[i], parsed[0], parsed[1]
    if pattern_id == "such_np_as":
        # such NP_h as NP ...
        if not _is_word(elems, i, sentence, "such"):
            return None
        if not (_is_np(elems, i + 1) and _is_word(elems, i + 2, sentence, "as")):
            return None
        parsed = _parse_np_list(elems, i + 3, sentence)
        if parsed is None:
            return None
        return elems[i + 1], parsed[0], parsed[1]
    if pattern_id == "and_other":
        # NP (, NP)* (,)? and other NP_h
        parsed = _parse_np_series(elems, i, sentence)
        if parsed is None:
            return None
        nps, j = parsed
        if _is_word(elems, j, sentence, ","):
            j += 1
        if not (_is_word(elems, j, sentence, "and") and _is_word(elems, j + 1, sentence, "other")):
            return None
        if not _is_np(elems, j + 2):
            return None
        return elems[j + 2], nps, j + 3
    if pattern_id == "including":
        # NP_h including NP ...
        if not (_is_np(elems, i) and _is_word(elems, i + 1, sentence, "including")):
            return None
        parsed = _parse_np_list(elems, i + 2, sentence)
        if parsed is None:
            return None
        return elems[i], parsed[0], parsed[1]
    if pattern_id == "especially":
        # NP_h (,)? especially NP ...
        if not _is_np(elems, i):
            return None
        j = i + 1
        if _is_word(elems, j, sentence, ","):
            j += 1
        if not _is_word(elems, j, sentence, "especially"):
            return None
        parsed = _parse_np_list(elems, j + 1, sentence)
        if parsed is None:
            return None
        return elems[i], parsed[0], parsed[1]
    raise ValueError(f"unknown pattern {pattern_id!r}")


def extract_mentions(sentence: Sentence, key_terms: KeyTermSet) -> list[TechnologyMention]:
    """Apply the five patterns left to right (leftmost-longest per pattern);
    a match yields one mention per hyponym NP iff the hypernym's head noun
    lemma is a key term."""
    elems = _elements(sentence)
    mentions: list[TechnologyMention] = []
    for pattern_id in PATTERN_IDS:
        i = 0
        while i < len(elems):
            hit = _match_at(pattern_id, elems, i, sentence)
            if hit is None:
                i += 1
                continue
            hyper_np, hypo_nps, nxt = hit
            head = _head_noun_lemma(sentence, hyper_np)
            if head is None or head not in key_terms:
                i += 1
                continue
            for np in hypo_nps:
                surface, lemma, span = _np_strings(sentence, np)
                mentions.append(
                    TechnologyMention(
                        surface=surface,
                        lemma=lemma,
                        hypernym_lemma=head,
                        pattern_id=pattern_id,
                        doc_id=sentence.doc_id,
                        section=sentence.section,
                        sentence_index=sentence.index,
                        span=span,
                    )
                )
            i = nxt
    return mentions


# ------------------------------------------------------------------
# clustering
# ------------------------------------------------------------------

@dataclass(frozen=True)
class TechnologyCluster:
    cluster_id: str
    label: str
    member_lemmas: frozenset[str]
    hypernym_lemma: str
    mention_count: int
    family_count: int
    curation: str  # auto | approved | rejected | merged-into:<id>
    mentions: tuple[TechnologyMention, ...] = ()

    @property
    def active(self) -> bool:
        return self.curation in ("auto", "approved")


def _slug(text: str) -> str:
    return "-".join(text.lower().split())


def _is_token_suffix(short: str, long: str) -> bool:
    a, b = short.split(" "), long.split(" ")
    return len(a) < len(b) and b[-len(a):] == a


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the lexicographically smaller root for determinism
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def cluster_technologies(
    mentions: list[TechnologyMention],
    family_of: dict[str, str] | None = None,
) -> list[TechnologyCluster]:
    """Group mentions by lemma, then merge groups that share a hypernym when
    one lemma is a token-suffix of the other (shared full head phrase).
    family_of maps doc_id -> family_id; without it, documents count as
    families."""
    groups: dict[str, list[TechnologyMention]] = {}
    for m in mentions:
        groups.setdefault(m.lemma, []).append(m)

    def group_hypernym(lemma: str) -> str:
        counts: dict[str, int] = {}
        for m in groups[lemma]:
            counts[m.hypernym_lemma] = counts.get(m.hypernym_lemma, 0) + 1
        return min(counts, key=lambda h: (-counts[h], h))

    hypernyms = {lemma: group_hypernym(lemma) for lemma in groups}
    uf = _UnionFind(sorted(groups))
    lemmas = sorted(groups)
    for i, la in enumerate(lemmas):
        for lb in lemmas[i + 1 :]:
            if hypernyms[la] != hypernyms[lb]:
                continue
            if _is_token_suffix(la, lb) or _is_token_suffix(lb, la):
                uf.union(la, lb)

    components: dict[str, list[str]] = {}
    for lemma in lemmas:
        components.setdefault(uf.find(lemma), []).append(lemma)

    clusters: list[TechnologyCluster] = []
    for members in components.values():
        mems = sorted(members)
        all_mentions = tuple(
            m for lemma in mems for m in groups[lemma]
        )
        label = min(
            mems,
            key=lambda l: (-len(groups[l]), len(l), l),
        )
        hyper = hypernyms[mems[0]]
        if family_of:
            fams = {family_of[m.doc_id] for m in all_mentions if m.doc_id in family_of}
        else:
            fams = {m.doc_id for m in all_mentions}
        clusters.append(
            TechnologyCluster(
                cluster_id=f"{_slug(label)}--{_slug(hyper)}",
                label=label,
                member_lemmas=frozenset(mems),
                hypernym_lemma=hyper,
                mention_count=len(all_mentions),
                family_count=len(fams),
                curation="auto",
                mentions=all_mentions,
            )
        )
    clusters.sort(key=lambda c: (-c.mention_count, c.label, c.hypernym_lemma))
    return clusters


# ------------------------------------------------------------------
# curation
# ------------------------------------------------------------------

def load_curation(path: str | Path) -> list[dict]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise CurationError("curation file must be a JSON list of directives")
    return raw


def apply_curation(
    clusters: list[TechnologyCluster],
    overrides: list[dict],
    family_of: dict[str, str] | None = None,
) -> list[TechnologyCluster]:
    """Apply approve/reject/merge directives. Merges move members, mentions,
    and counts into the target; merge chains are followed and cycles rejected."""
    by_id = {c.cluster_id: c for c in clusters}
    merge_map: dict[str, str] = {}
    for n, d in enumerate(overrides, start=1):
        action = d.get("action")
        target = d.get("target")
        if action not in ("approve", "reject", "merge"):
            raise CurationError(f"directive {n}: unknown action {action!r}")
        if target not in by_id:
            raise CurationError(f"directive {n}: unknown cluster_id {target!r}")
        if action == "merge":
            into = d.get("into")
            if into not in by_id:
                raise CurationError(f"directive {n}: unknown merge target {into!r}")
            if into == target:
                raise CurationError(f"directive {n}: cannot merge {target!r} into itself")
            merge_map[target] = into

    # reject merge cycles before mutating anything
    for start in merge_map:
        seen = {start}
        cur = merge_map[start]
        while cur in merge_map:
            if cur in seen:
                raise CurationError(f"merge cycle involving {sorted(seen)}")
            seen.add(cur)
            cur = merge_map[cur]

    def final_target(cid: str) -> str:
        while cid in merge_map:
            cid = merge_map[cid]
        return cid

    result = dict(by_id)
    for d in overrides:
        action, target = d["action"], d["target"]
        if action == "approve":
            result[target] = replace(result[target], curation="approved")
        elif action == "reject":
            result[target] = replace(result[target], curation="rejected")
        else:
            dest_id = final_target(d["into"])
            src, dest = result[target], result[dest_id]
            merged = dest.mentions + src.mentions
            if family_of:
                fams = {family_of.get(m.doc_id, m.doc_id) for m in merged}
            else:
                fams = {m.doc_id for m in merged}
            result[dest_id] = replace(
                dest,
                member_lemmas=dest.member_lemmas | src.member_lemmas,
                mention_count=dest.mention_count + src.mention_count,
                mentions=merged,
                family_count=len(fams),
            )
            result[target] = replace(
                src, curation=f"merged-into:{dest_id}", member_lemmas=frozenset(),
                mentions=(), mention_count=0, family_count=0,
            )
    return [result[c.cluster_id] for c in clusters]
