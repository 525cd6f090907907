"""Boolean query ontologies over the corpus, and set-quality estimators.

A query is a boolean tree of AND/OR/NOT nodes over two leaf kinds: literal
phrases (matched as contiguous lemma sequences inside a sentence) and regular
expressions (matched against raw sentence text). Precision is estimated by
seeded sampling with a Wilson 95% interval; recall against a seed list of
known-relevant documents.
"""

from __future__ import annotations

import json
import logging
import math
import random
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .corpus import Corpus, SECTIONS, tokenize_and_tag

log = logging.getLogger(__name__)

# scipy.stats.norm.ppf(0.975), frozen so the core stays dependency-free
_Z95 = 1.959963984540054


class QueryError(ValueError):
    """Malformed or unsatisfiable query ontology."""


class EstimateError(ValueError):
    """Invalid input to a precision/recall estimator."""


# ------------------------------------------------------------------
# expression tree
# ------------------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    phrase: str
    lemmas: tuple[str, ...]


@dataclass(frozen=True)
class Rx:
    pattern: str


@dataclass(frozen=True)
class And:
    children: tuple["Node", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["Node", ...]


@dataclass(frozen=True)
class Not:
    child: "Node"


Node = Lit | Rx | And | Or | Not


@dataclass(frozen=True)
class QueryOntology:
    name: str
    expression: Node
    scope: frozenset[str]


@dataclass(frozen=True)
class PrecisionEstimate:
    sample_size: int
    relevant_count: int
    point: float
    ci95: tuple[float, float]


@dataclass(frozen=True)
class RecallEstimate:
    seed_list_size: int
    seeds_retrieved: int
    point: float


@dataclass(frozen=True)
class PatentSet:
    query_name: str
    doc_ids: frozenset[str]
    family_ids: frozenset[str]
    created_at: str
    precision: PrecisionEstimate | None = None
    recall: RecallEstimate | None = None

    def __len__(self) -> int:
        return len(self.doc_ids)


def _parse_node(raw, where: str) -> Node:
    if not isinstance(raw, dict) or len(raw) != 1:
        raise QueryError(f"{where}: expected an object with exactly one key")
    key, value = next(iter(raw.items()))
    if key == "lit":
        if not isinstance(value, str) or not value.strip():
            raise QueryError(f"{where}.lit: literal must be a non-empty string")
        lemmas = tuple(t.lemma for t in tokenize_and_tag(value))
        if not lemmas:
            raise QueryError(f"{where}.lit: literal has no tokens")
        return Lit(phrase=value, lemmas=lemmas)
    if key == "regex":
        if not isinstance(value, str):
            raise QueryError(f"{where}.regex: pattern must be a string")
        try:
            re.compile(value)
        except re.error as exc:
            raise QueryError(f"{where}.regex: invalid regex: {exc}") from exc
        return Rx(pattern=value)
    if key in ("AND", "OR"):
        if not isinstance(value, list) or not value:
            raise QueryError(f"{where}.{key}: expected a non-empty list")
        children = tuple(
            _parse_node(v, f"{where}.{key}[{i}]") for i, v in enumerate(value)
        )
        return And(children) if key == "AND" else Or(children)
    if key == "NOT":
        return Not(_parse_node(value, f"{where}.NOT"))
    raise QueryError(f"{where}: unknown node kind {key!r}")


def _normalize(node: Node) -> Node:
    """Remove double negation and flatten nested AND/OR."""
    if isinstance(node, Not):
        child = _normalize(node.child)
        if isinstance(child, Not):
            return child.child
        return Not(child)
    if isinstance(node, (And, Or)):
        kind = type(node)
        flat: list[Node] = []
        for c in node.children:
            c = _normalize(c)
            if isinstance(c, kind):
                flat.extend(c.children)
            else:
                flat.append(c)
        if len(flat) == 1:
            return flat[0]
        return kind(tuple(flat))
    return node


def _has_positive_leaf(node: Node, negated: bool = False) -> bool:
    if isinstance(node, (Lit, Rx)):
        return not negated
    if isinstance(node, Not):
        return _has_positive_leaf(node.child, not negated)
    return any(_has_positive_leaf(c, negated) for c in node.children)


def compile_query(spec: str | Path | dict) -> QueryOntology:
    """Compile an ontology file (or already-parsed dict) into a normalized
    query tree. The file is either {"name", "scope", "expression"} or a bare
    expression object."""
    if isinstance(spec, (str, Path)):
        path = Path(spec)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise QueryError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
        name = path.stem
    else:
        raw = spec
        name = "query"
    if not isinstance(raw, dict):
        raise QueryError("ontology must be a JSON object")
    if "expression" in raw:
        name = raw.get("name", name)
        scope = raw.get("scope", list(SECTIONS))
        expression = raw["expression"]
    else:
        scope = list(SECTIONS)
        expression = raw
    if not isinstance(scope, list) or not scope:
        raise QueryError("scope must be a non-empty list of sections")
    bad = [s for s in scope if s not in SECTIONS]
    if bad:
        raise QueryError(f"unknown sections in scope: {bad}")
    tree = _normalize(_parse_node(expression, "expression"))
    if not _has_positive_leaf(tree):
        raise QueryError("query has no positive leaf")
    return QueryOntology(name=name, expression=tree, scope=frozenset(scope))


# ------------------------------------------------------------------
# evaluation
# ------------------------------------------------------------------

def _contains_seq(haystack: tuple[str, ...], needle: tuple[str, ...]) -> bool:
    n = len(needle)
    if n == 0 or n > len(haystack):
        return False
    first = needle[0]
    for i in range(len(haystack) - n + 1):
        if haystack[i] == first and haystack[i : i + n] == needle:
            return True
    return False


def eval_node(node: Node, corpus: Corpus, doc_id: str, scope: frozenset[str]) -> bool:
    """Evaluate one expression node against one document."""
    if isinstance(node, Lit):
        return any(
            _contains_seq(s.lemmas(), node.lemmas)
            for s in corpus.sentences(doc_id)
            if s.section in scope
        )
    if isinstance(node, Rx):
        rx = re.compile(node.pattern)
        return any(
            rx.search(s.text)
            for s in corpus.sentences(doc_id)
            if s.section in scope
        )
    if isinstance(node, And):
        return all(eval_node(c, corpus, doc_id, scope) for c in node.children)
    if isinstance(node, Or):
        return any(eval_node(c, corpus, doc_id, scope) for c in node.children)
    if isinstance(node, Not):
        return not eval_node(node.child, corpus, doc_id, scope)
    raise TypeError(f"unknown node type: {type(node)!r}")


def execute_query(
    corpus: Corpus, query: QueryOntology, created_at: str | None = None
) -> PatentSet:
    """Evaluate the query against every document; membership is order-free."""
    member_ids = frozenset(
        d.doc_id
        for d in corpus
        if eval_node(query.expression, corpus, d.doc_id, query.scope)
    )
    families = frozenset(corpus.family_of(i) for i in member_ids)
    stamp = created_at or datetime.now(timezone.utc).isoformat()
    log.info(
        "query %s matched %d documents (%d families)",
        query.name, len(member_ids), len(families),
    )
    return PatentSet(
        query_name=query.name,
        doc_ids=member_ids,
        family_ids=families,
        created_at=stamp,
    )


# ------------------------------------------------------------------
# precision / recall
# ------------------------------------------------------------------

def wilson_interval(successes: int, n: int, z: float = _Z95) -> tuple[float, float]:
    p = successes / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def estimate_precision(
    pset: PatentSet, k: int, labels: dict[str, bool], rng_seed: int
) -> PrecisionEstimate:
    """Sample k member ids without replacement (seeded, over the sorted id
    list) and report the labeled-relevant fraction with its Wilson 95% CI."""
    if k < 1:
        raise EstimateError("sample size k must be >= 1")
    if k > len(pset.doc_ids):
        raise EstimateError(f"sample size k={k} exceeds set size {len(pset.doc_ids)}")
    sample = random.Random(rng_seed).sample(sorted(pset.doc_ids), k)
    missing = [i for i in sample if i not in labels]
    if missing:
        raise EstimateError(f"missing label for sampled doc ids: {sorted(missing)}")
    relevant = sum(1 for i in sample if labels[i])
    return PrecisionEstimate(
        sample_size=k,
        relevant_count=relevant,
        point=relevant / k,
        ci95=wilson_interval(relevant, k),
    )


def estimate_recall(pset: PatentSet, seed_ids: list[str], corpus: Corpus) -> RecallEstimate:
    """Fraction of the known-relevant seed list retrieved by the set."""
    seeds = sorted(set(seed_ids))
    if not seeds:
        raise EstimateError("seed list is empty")
    unknown = [i for i in seeds if i not in corpus]
    if unknown:
        raise EstimateError(f"unknown seed doc ids: {unknown}")
    retrieved = sum(1 for i in seeds if i in pset.doc_ids)
    return RecallEstimate(
        seed_list_size=len(seeds),
        seeds_retrieved=retrieved,
        point=retrieved / len(seeds),
    )


# ------------------------------------------------------------------
# refinement report
# ------------------------------------------------------------------

@dataclass(frozen=True)
class TermSuggestion:
    lemma: str
    log_odds: float
    false_positive_docs: int
    true_positive_docs: int


@dataclass(frozen=True)
class RefinementReport:
    not_candidates: tuple[TermSuggestion, ...]
    and_or_candidates: tuple[TermSuggestion, ...]
    false_positives: int
    true_positives: int


def _doc_lemmas(corpus: Corpus, doc_id: str) -> set[str]:
    out: set[str] = set()
    for s in corpus.sentences(doc_id):
        for t in s.tokens:
            if t.surface.isalpha():
                out.add(t.lemma)
    return out


def refinement_report(
    pset: PatentSet,
    labels: dict[str, bool],
    corpus: Corpus,
    top_n: int = 10,
) -> RefinementReport:
    """Rank lemmas by log-odds of appearing in false positives vs true
    positives (add-one smoothing). Positive scores suggest NOT candidates,
    negative ones AND/OR candidates; zero-scoring terms are dropped."""
    tp_docs = [i for i in sorted(pset.doc_ids) if labels.get(i) is True]
    fp_docs = [i for i in sorted(pset.doc_ids) if labels.get(i) is False]
    if not tp_docs or not fp_docs:
        raise EstimateError(
            "insufficient labels: need at least one relevant and one "
            "irrelevant labeled member"
        )
    fp_count: dict[str, int] = {}
    tp_count: dict[str, int] = {}
    for i in fp_docs:
        for lem in _doc_lemmas(corpus, i):
            fp_count[lem] = fp_count.get(lem, 0) + 1
    for i in tp_docs:
        for lem in _doc_lemmas(corpus, i):
            tp_count[lem] = tp_count.get(lem, 0) + 1

    def logit(p: float) -> float:
        return math.log(p / (1.0 - p))

    suggestions: list[TermSuggestion] = []
    for lem in sorted(set(fp_count) | set(tp_count)):
        a = fp_count.get(lem, 0)
        b = tp_count.get(lem, 0)
        p_fp = (a + 1) / (len(fp_docs) + 2)
        p_tp = (b + 1) / (len(tp_docs) + 2)
        score = logit(p_fp) - logit(p_tp)
        if score != 0.0:
            suggestions.append(TermSuggestion(lem, score, a, b))

    nots = sorted(
        (s for s in suggestions if s.log_odds > 0),
        key=lambda s: (-s.log_odds, s.lemma),
    )[:top_n]
    ands = sorted(
        (s for s in suggestions if s.log_odds < 0),
        key=lambda s: (s.log_odds, s.lemma),
    )[:top_n]
    return RefinementReport(
        not_candidates=tuple(nots),
        and_or_candidates=tuple(ands),
        false_positives=len(fp_docs),
        true_positives=len(tp_docs),
    )
