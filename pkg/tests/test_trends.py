from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skillgap.corpus import Corpus, PatentDocument
from skillgap.patentset import PatentSet
from skillgap.techner import TechnologyCluster, TechnologyMention
from skillgap.trends import (
    CLASSIFICATIONS,
    TrendError,
    TrendParams,
    TrendSeries,
    classify_maturity,
    compute_trend,
    technology_shares,
)


def _corpus(years: dict[str, int], families: dict[str, str] | None = None) -> Corpus:
    families = families or {d: f"fam-{d}" for d in years}
    docs = tuple(
        PatentDocument(
            doc_id=d, family_id=families[d], filing_year=y, title="t", abstract="a",
        )
        for d, y in sorted(years.items())
    )
    return Corpus(docs)


def _cluster(lemma: str, doc_ids: list[str]) -> TechnologyCluster:
    mentions = tuple(
        TechnologyMention(
            surface=lemma, lemma=lemma, hypernym_lemma="device", pattern_id="such_as",
            doc_id=d, section="abstract", sentence_index=0, span=(0, 1),
        )
        for d in doc_ids
    )
    return TechnologyCluster(
        cluster_id=f"{lemma}--device", label=lemma, member_lemmas=frozenset({lemma}),
        hypernym_lemma="device", mention_count=len(mentions),
        family_count=len(set(doc_ids)), curation="auto", mentions=mentions,
    )


def _pset(corpus: Corpus, doc_ids: set[str]) -> PatentSet:
    return PatentSet(
        query_name="q", doc_ids=frozenset(doc_ids),
        family_ids=frozenset(corpus.family_of(d) for d in doc_ids),
        created_at="1970-01-01T00:00:00+00:00",
    )


class TestComputeTrend:
    def test_family_counting_at_earliest_year(self):
        corpus = _corpus({"D1": 2011, "D2": 2012, "D3": 2012})
        pset = _pset(corpus, {"D1", "D2", "D3"})
        series = compute_trend(_cluster("pump", ["D1", "D2", "D3"]), pset, corpus)
        assert series.counts == {2011: 1, 2012: 2}

    def test_family_dedup_uses_earliest_filing(self):
        corpus = _corpus({"D1": 2015, "D2": 2010}, families={"D1": "F1", "D2": "F1"})
        pset = _pset(corpus, {"D1"})
        series = compute_trend(_cluster("pump", ["D1"]), pset, corpus)
        # D2 is an earlier sibling outside the set; the family still counts once, at 2010
        assert series.counts == {2010: 1}

    def test_no_mentions_in_set(self):
        corpus = _corpus({"D1": 2011, "D2": 2012})
        pset = _pset(corpus, {"D1"})
        series = compute_trend(_cluster("pump", ["D2"]), pset, corpus)
        assert series.counts == {} and series.share == 0.0

    def test_rejected_cluster_is_an_error(self):
        corpus = _corpus({"D1": 2011})
        pset = _pset(corpus, {"D1"})
        cluster = _cluster("pump", ["D1"])
        rejected = type(cluster)(**{**cluster.__dict__, "curation": "rejected"})
        with pytest.raises(TrendError, match="rejected"):
            compute_trend(rejected, pset, corpus)

    def test_count_applications_flag(self):
        corpus = _corpus({"D1": 2015, "D2": 2016}, families={"D1": "F1", "D2": "F1"})
        pset = _pset(corpus, {"D1", "D2"})
        cluster = _cluster("pump", ["D1", "D2"])
        families = compute_trend(cluster, pset, corpus)
        docs = compute_trend(cluster, pset, corpus, count_applications=True)
        assert families.counts == {2015: 1}
        assert docs.counts == {2015: 1, 2016: 1}


def _series(counts: dict[int, int]) -> TrendSeries:
    return TrendSeries(cluster_id="c", counts=counts, share=0.1)


class TestClassify:
    def test_rising_is_growing(self):
        counts = {2015: 1, 2016: 2, 2017: 3, 2018: 5, 2019: 6, 2020: 7, 2021: 8, 2022: 9}
        assert classify_maturity(_series(counts), 2022) == "growing"

    def test_peak_then_plateau_is_mature(self):
        counts = {2009: 2, 2010: 5, 2011: 8, 2012: 10, 2013: 8, 2014: 7}
        counts.update({y: 6 for y in range(2015, 2023)})
        assert classify_maturity(_series(counts), 2022) == "mature"

    def test_flat_high_is_mature(self):
        counts = {y: 5 for y in range(2010, 2023)}
        assert classify_maturity(_series(counts), 2022) == "mature"

    def test_sparse_is_low_support(self):
        assert classify_maturity(_series({2018: 2, 2020: 3}), 2022) == "low_support"

    def test_recent_rise_is_emerging(self):
        counts = {2019: 4, 2020: 6, 2021: 7, 2022: 8}
        assert classify_maturity(_series(counts), 2022) == "emerging"

    def test_old_peak_with_collapse_is_obsolete(self):
        counts = {2008: 30, 2009: 10, 2010: 5}
        assert classify_maturity(_series(counts), 2022) == "obsolete"

    def test_empty_series_is_low_support(self):
        assert classify_maturity(_series({}), 2022) == "low_support"

    def test_leading_zero_years_do_not_change_class(self):
        counts = {2015: 1, 2016: 2, 2017: 3, 2018: 5, 2019: 6, 2020: 7, 2021: 8, 2022: 9}
        padded = {2005: 0, 2006: 0, **counts}
        assert classify_maturity(_series(counts), 2022) == classify_maturity(
            _series(padded), 2022
        )

    @given(
        st.dictionaries(
            st.integers(min_value=2000, max_value=2022),
            st.integers(min_value=0, max_value=30),
            max_size=15,
        )
    )
    @settings(max_examples=200)
    def test_exactly_one_classification(self, counts):
        label = classify_maturity(_series(counts), 2022)
        assert label in CLASSIFICATIONS

    def test_params_are_respected(self):
        counts = {2018: 2, 2020: 3}
        relaxed = TrendParams(window=5, min_support=5, decline_ratio=0.5)
        assert classify_maturity(_series(counts), 2022, relaxed) != "low_support"


class TestShares:
    def test_ratio(self):
        years = {f"D{i}": 2010 + i for i in range(10)}
        corpus = _corpus(years)
        pset = _pset(corpus, set(years))
        cluster = _cluster("pump", ["D0", "D1", "D2", "D3"])
        rows = technology_shares([cluster], pset, corpus)
        assert rows[0].share == pytest.approx(0.4)
        assert rows[0].rank == 1

    def test_full_coverage(self):
        years = {f"D{i}": 2010 for i in range(4)}
        corpus = _corpus(years)
        pset = _pset(corpus, set(years))
        cluster = _cluster("pump", list(years))
        assert technology_shares([cluster], pset, corpus)[0].share == 1.0

    def test_empty_set_is_error(self):
        corpus = _corpus({"D1": 2010})
        pset = _pset(corpus, set())
        with pytest.raises(TrendError, match="empty patent set"):
            technology_shares([_cluster("pump", [])], pset, corpus)

    def test_shares_are_scale_free(self):
        years = {f"D{i}": 2010 + (i % 3) for i in range(6)}
        corpus1 = _corpus(years)
        pset1 = _pset(corpus1, set(years))
        mentioning = ["D0", "D1"]
        rows1 = technology_shares([_cluster("pump", mentioning)], pset1, corpus1)

        # duplicate every family with fresh ids and the same mentions
        years2 = dict(years)
        years2.update({f"X{i}": 2010 + (i % 3) for i in range(6)})
        corpus2 = _corpus(years2)
        pset2 = _pset(corpus2, set(years2))
        rows2 = technology_shares(
            [_cluster("pump", mentioning + ["X0", "X1"])], pset2, corpus2
        )
        assert rows1[0].share == pytest.approx(rows2[0].share)

    def test_sorted_descending_ties_by_label(self):
        years = {f"D{i}": 2010 for i in range(4)}
        corpus = _corpus(years)
        pset = _pset(corpus, set(years))
        clusters = [
            _cluster("zeta", ["D0"]),
            _cluster("alpha", ["D1"]),
            _cluster("mid", ["D2", "D3"]),
        ]
        rows = technology_shares(clusters, pset, corpus)
        assert [r.label for r in rows] == ["mid", "alpha", "zeta"]
