"""Per-cluster filing trends, maturity classification, and share tables.

Counting is family-deduplicated: a family contributes once, at its earliest
filing year, when any of its in-set documents mentions the cluster. The
`count_applications` flag flips to per-document counting at each document's
own filing year.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .corpus import Corpus
from .patentset import PatentSet
from .techner import TechnologyCluster

CLASSIFICATIONS = ("emerging", "growing", "mature", "obsolete", "low_support")


class TrendError(ValueError):
    pass


@dataclass(frozen=True)
class TrendParams:
    window: int = 5
    min_support: int = 20
    decline_ratio: float = 0.5


@dataclass(frozen=True)
class TrendSeries:
    cluster_id: str
    counts: dict[int, int]
    share: float
    classification: str | None = None

    def total(self) -> int:
        return sum(self.counts.values())


def compute_trend(
    cluster: TechnologyCluster,
    pset: PatentSet,
    corpus: Corpus,
    count_applications: bool = False,
) -> TrendSeries:
    """Yearly counts of set families (or documents) mentioning the cluster."""
    if not cluster.active:
        raise TrendError(
            f"cluster {cluster.cluster_id} is {cluster.curation}; trends only "
            "apply to auto/approved clusters"
        )
    counts: dict[int, int] = {}
    docs_in_set = {m.doc_id for m in cluster.mentions if m.doc_id in pset.doc_ids}
    if count_applications:
        for doc_id in docs_in_set:
            year = corpus.get(doc_id).filing_year
            counts[year] = counts.get(year, 0) + 1
        share_units = len(docs_in_set)
        denom = len(pset.doc_ids)
    else:
        families = {corpus.family_of(d) for d in docs_in_set}
        for fam in families:
            year = corpus.family_earliest_year(fam)
            counts[year] = counts.get(year, 0) + 1
        share_units = len(families)
        denom = len(pset.family_ids)
    share = share_units / denom if denom else 0.0
    return TrendSeries(cluster_id=cluster.cluster_id, counts=counts, share=share)


def _slope(points: list[tuple[int, int]]) -> float:
    if len(points) < 2:
        return 0.0
    n = len(points)
    mean_x = sum(p[0] for p in points) / n
    mean_y = sum(p[1] for p in points) / n
    num = sum((x - mean_x) * (y - mean_y) for x, y in points)
    den = sum((x - mean_x) ** 2 for x, _ in points)
    return num / den if den else 0.0


def classify_maturity(
    series: TrendSeries,
    reference_year: int,
    params: TrendParams = TrendParams(),
) -> str:
    """First matching rule wins: low support, emerging, growing, obsolete,
    mature. The slope is least squares over the last `window` years (missing
    years count zero) ending at the reference year."""
    counts = series.counts
    if not counts or series.total() < max(1, params.min_support):
        return "low_support"
    window_years = list(range(reference_year - params.window + 1, reference_year + 1))
    window_points = [(y, counts.get(y, 0)) for y in window_years]
    slope = _slope(window_points)
    first_nonzero = min(y for y, c in counts.items() if c > 0)
    if first_nonzero >= window_years[0] and slope > 0:
        return "emerging"
    if slope > 0:
        return "growing"
    peak_count = max(counts.values())
    peak_year = min(y for y, c in counts.items() if c == peak_count)
    window_mean = sum(c for _, c in window_points) / params.window
    if peak_year < window_years[0] and window_mean < params.decline_ratio * peak_count:
        return "obsolete"
    return "mature"


def reference_year(pset: PatentSet, corpus: Corpus) -> int:
    if not pset.doc_ids:
        raise TrendError("empty patent set")
    return max(corpus.get(d).filing_year for d in pset.doc_ids)


def compute_all_trends(
    clusters: list[TechnologyCluster],
    pset: PatentSet,
    corpus: Corpus,
    params: TrendParams = TrendParams(),
    count_applications: bool = False,
) -> list[TrendSeries]:
    """Trend series for every active cluster, classified against the set's
    latest filing year."""
    ref = reference_year(pset, corpus)
    out = []
    for cluster in clusters:
        if not cluster.active:
            continue
        series = compute_trend(cluster, pset, corpus, count_applications)
        out.append(
            replace(series, classification=classify_maturity(series, ref, params))
        )
    return out


@dataclass(frozen=True)
class ShareRow:
    rank: int
    cluster_id: str
    label: str
    share: float


def technology_shares(
    clusters: list[TechnologyCluster], pset: PatentSet, corpus: Corpus
) -> list[ShareRow]:
    """Per-cluster share of set families mentioning the cluster, sorted
    descending (ties by label). Shares need not sum to 1."""
    if not pset.doc_ids:
        raise TrendError("empty patent set")
    rows = []
    for cluster in clusters:
        if not cluster.active:
            continue
        docs_in_set = {m.doc_id for m in cluster.mentions if m.doc_id in pset.doc_ids}
        families = {corpus.family_of(d) for d in docs_in_set}
        rows.append((cluster, len(families) / len(pset.family_ids)))
    rows.sort(key=lambda r: (-r[1], r[0].label))
    return [
        ShareRow(rank=i, cluster_id=c.cluster_id, label=c.label, share=s)
        for i, (c, s) in enumerate(rows, start=1)
    ]
