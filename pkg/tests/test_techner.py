from __future__ import annotations

import pytest

from skillgap.corpus import Sentence, tokenize_and_tag
from skillgap.techner import (
    CurationError,
    KeyTermError,
    KeyTermSet,
    REQUIRED_BASE_TERMS,
    TechnologyMention,
    apply_curation,
    cluster_technologies,
    default_key_terms,
    expand_key_terms,
    extract_mentions,
)


def _sentence(text: str, doc_id: str = "D1", index: int = 0) -> Sentence:
    return Sentence(
        doc_id=doc_id, section="abstract", index=index, text=text,
        tokens=tokenize_and_tag(text),
    )


def _mention(lemma: str, hypernym: str, doc_id: str = "D1") -> TechnologyMention:
    return TechnologyMention(
        surface=lemma, lemma=lemma, hypernym_lemma=hypernym, pattern_id="such_as",
        doc_id=doc_id, section="abstract", sentence_index=0, span=(0, 1),
    )


class TestKeyTerms:
    def test_required_base_terms_enforced(self):
        with pytest.raises(KeyTermError, match="required"):
            KeyTermSet(base_terms=frozenset({"device"}), synonym_expansions={})

    def test_expansion_added(self, tmp_path):
        lex = tmp_path / "syn.tsv"
        lex.write_text("appliance\tdevice\n", encoding="utf-8")
        kt = expand_key_terms(default_key_terms(), lex)
        assert kt.synonym_expansions == {"appliance": "device"}
        assert "appliance" in kt

    def test_unknown_base_rejected_with_warning(self, tmp_path, caplog):
        lex = tmp_path / "syn.tsv"
        lex.write_text("gizmo\tcontraption\n", encoding="utf-8")
        with caplog.at_level("WARNING"):
            kt = expand_key_terms(default_key_terms(), lex)
        assert "gizmo" not in kt
        assert any("contraption" in r.message for r in caplog.records)

    def test_empty_lexicon_is_identity(self, tmp_path):
        lex = tmp_path / "syn.tsv"
        lex.write_text("", encoding="utf-8")
        kt = expand_key_terms(default_key_terms(), lex)
        assert kt == default_key_terms()

    def test_malformed_line_is_error(self, tmp_path):
        lex = tmp_path / "syn.tsv"
        lex.write_text("appliance device no tab\n", encoding="utf-8")
        with pytest.raises(KeyTermError, match="line 1"):
            expand_key_terms(default_key_terms(), lex)


class TestExtraction:
    def test_such_as_two_hyponyms(self):
        mentions = extract_mentions(
            _sentence("devices such as heat exchangers and power converters"),
            default_key_terms(),
        )
        assert [(m.lemma, m.hypernym_lemma, m.pattern_id) for m in mentions] == [
            ("heat exchanger", "device", "such_as"),
            ("power converter", "device", "such_as"),
        ]

    def test_gate_rejects_non_key_hypernym(self):
        assert extract_mentions(_sentence("fruits such as apples"), default_key_terms()) == []

    def test_and_other(self):
        mentions = extract_mentions(
            _sentence("boilers, furnaces, and other heating systems"), default_key_terms()
        )
        assert [(m.lemma, m.pattern_id) for m in mentions] == [
            ("boiler", "and_other"),
            ("furnace", "and_other"),
        ]

    def test_every_hypernym_is_a_key_term(self, corpus):
        kt = default_key_terms()
        for doc in corpus:
            for s in corpus.sentences(doc.doc_id):
                for m in extract_mentions(s, kt):
                    assert m.hypernym_lemma in kt

    def test_extraction_is_local_and_concatenable(self):
        s1 = _sentence("devices such as heat pumps", doc_id="A")
        s2 = _sentence("units such as smart meters", doc_id="B")
        both = extract_mentions(s1, default_key_terms()) + extract_mentions(
            s2, default_key_terms()
        )
        assert [m.lemma for m in both] == ["heat pump", "smart meter"]

    def test_span_within_sentence(self):
        s = _sentence("the plant uses devices such as heat pumps daily")
        for m in extract_mentions(s, default_key_terms()):
            start, end = m.span
            assert 0 <= start < end <= len(s.tokens)


class TestClustering:
    def test_suffix_merge_same_hypernym(self):
        mentions = (
            [_mention("heat exchanger", "device", f"D{i}") for i in range(3)]
            + [_mention("plate heat exchanger", "device", "D9")]
        )
        clusters = cluster_technologies(mentions)
        assert len(clusters) == 1
        (c,) = clusters
        assert c.label == "heat exchanger"
        assert c.mention_count == 4
        assert c.member_lemmas == {"heat exchanger", "plate heat exchanger"}

    def test_different_modifiers_stay_separate(self):
        mentions = [_mention("light sensor", "sensor"), _mention("pressure sensor", "sensor")]
        clusters = cluster_technologies(mentions)
        assert len(clusters) == 2

    def test_different_hypernyms_stay_separate(self):
        mentions = [_mention("thermostat", "device"), _mention("smart thermostat", "unit")]
        assert len(cluster_technologies(mentions)) == 2

    def test_empty_mentions(self):
        assert cluster_technologies([]) == []

    def test_counts_sum_invariant(self, corpus, energy_set):
        kt = default_key_terms()
        mentions = []
        for doc_id in sorted(energy_set.doc_ids):
            for s in corpus.sentences(doc_id):
                mentions.extend(extract_mentions(s, kt))
        clusters = cluster_technologies(mentions)
        assert sum(c.mention_count for c in clusters) == len(mentions)

    def test_clustering_idempotent_on_labels(self):
        mentions = (
            [_mention("heat exchanger", "device", f"D{i}") for i in range(3)]
            + [_mention("plate heat exchanger", "device", "D9")]
            + [_mention("light sensor", "sensor"), _mention("pressure sensor", "sensor")]
        )
        first = cluster_technologies(mentions)
        representatives = [_mention(c.label, c.hypernym_lemma) for c in first]
        second = cluster_technologies(representatives)
        assert {c.label for c in second} == {c.label for c in first}
        assert len(second) == len(first)

    def test_family_counts(self):
        mentions = [_mention("heat pump", "device", d) for d in ("D1", "D2", "D3")]
        clusters = cluster_technologies(mentions, family_of={"D1": "F1", "D2": "F1", "D3": "F2"})
        assert clusters[0].family_count == 2

    def test_order_independence(self):
        mentions = (
            [_mention("heat exchanger", "device", f"D{i}") for i in range(3)]
            + [_mention("plate heat exchanger", "device", "D9")]
            + [_mention("light sensor", "sensor")]
        )
        a = cluster_technologies(mentions)
        b = cluster_technologies(list(reversed(mentions)))
        assert [(c.cluster_id, c.member_lemmas, c.mention_count) for c in a] == [
            (c.cluster_id, c.member_lemmas, c.mention_count) for c in b
        ]


class TestCuration:
    def _clusters(self):
        mentions = [
            _mention("air conditioning", "system", "D1"),
            _mention("heat pump", "device", "D2"),
            _mention("smart thermostat", "unit", "D3"),
            _mention("thermostat", "device", "D4"),
        ]
        return cluster_technologies(mentions)

    def test_reject_excludes_cluster(self):
        clusters = self._clusters()
        curated = apply_curation(
            clusters, [{"action": "reject", "target": "air-conditioning--system"}]
        )
        by_id = {c.cluster_id: c for c in curated}
        assert by_id["air-conditioning--system"].curation == "rejected"
        assert not by_id["air-conditioning--system"].active

    def test_merge_moves_members_and_counts(self):
        clusters = self._clusters()
        curated = apply_curation(
            clusters,
            [{"action": "merge", "target": "smart-thermostat--unit", "into": "thermostat--device"}],
        )
        by_id = {c.cluster_id: c for c in curated}
        dest = by_id["thermostat--device"]
        src = by_id["smart-thermostat--unit"]
        assert dest.member_lemmas == {"thermostat", "smart thermostat"}
        assert dest.mention_count == 2
        assert src.curation == "merged-into:thermostat--device"
        assert src.member_lemmas == frozenset()

    def test_merge_cycle_is_error(self):
        clusters = self._clusters()
        with pytest.raises(CurationError, match="cycle"):
            apply_curation(
                clusters,
                [
                    {"action": "merge", "target": "thermostat--device", "into": "heat-pump--device"},
                    {"action": "merge", "target": "heat-pump--device", "into": "thermostat--device"},
                ],
            )

    def test_unknown_target_is_error(self):
        with pytest.raises(CurationError, match="unknown cluster_id"):
            apply_curation(self._clusters(), [{"action": "reject", "target": "nope"}])

    def test_approve_flags_cluster(self):
        curated = apply_curation(
            self._clusters(), [{"action": "approve", "target": "heat-pump--device"}]
        )
        by_id = {c.cluster_id: c for c in curated}
        assert by_id["heat-pump--device"].curation == "approved"

    def test_mention_counts_conserved_through_curation(self):
        clusters = self._clusters()
        total = sum(c.mention_count for c in clusters)
        curated = apply_curation(
            clusters,
            [
                {"action": "reject", "target": "air-conditioning--system"},
                {"action": "merge", "target": "smart-thermostat--unit", "into": "thermostat--device"},
            ],
        )
        rejected = sum(
            c.mention_count for c in curated if c.curation == "rejected"
        )
        active_sum = sum(c.mention_count for c in curated if c.active)
        assert active_sum == total - rejected
