from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skillgap.gapengine import (
    Assessment,
    AssessmentError,
    Weights,
    compute_gap,
    distance,
    load_assessment,
    nearest_archetypes,
    soft_comparison_series,
)
from skillgap.profiledb import JobArchetype


def _assessment(archetype_id="arch-e1", selected=(), soft=None, aid="a-1") -> Assessment:
    return Assessment(
        assessment_id=aid, archetype_id=archetype_id,
        selected_binary=frozenset(selected), soft_levels=dict(soft or {}),
        created_at="2024-07-01T00:00:00+00:00",
    )


def _archetype(aid, binary, soft=None, macro="TechniciansOperators") -> JobArchetype:
    return JobArchetype(
        archetype_id=aid, title=aid, description="", macro_class_topdown=macro,
        binary_skills=frozenset(binary), soft_targets=dict(soft or {}),
    )


class TestDistance:
    def test_identity_is_zero(self):
        cand = _archetype("x", ["a", "b"], {"s1": 3})
        user = _assessment(selected=["a", "b"], soft={"s1": 3})
        assert distance(user, cand) == 0.0

    def test_maximal_disagreement_is_one(self):
        cand = _archetype("x", ["a", "b"], {"s1": 4, "s2": 4})
        user = _assessment(selected=["c", "d"], soft={"s1": 0, "s2": 0})
        assert distance(user, cand) == pytest.approx(1.0)

    def test_binary_only_arithmetic(self):
        # selected {a,b} vs ideal {a,b,c,d}: 0.7 * (1 - 2/4) = 0.35
        cand = _archetype("x", ["a", "b", "c", "d"])
        user = _assessment(selected=["a", "b"])
        assert distance(user, cand) == pytest.approx(0.35)

    def test_missing_soft_level_counts_as_zero(self):
        cand = _archetype("x", ["a"], {"s1": 4})
        user = _assessment(selected=["a"], soft={})
        assert distance(user, cand) == pytest.approx(0.3 * (4 / 4))

    def test_invalid_weights_rejected(self):
        cand = _archetype("x", ["a"])
        user = _assessment(selected=["a"])
        with pytest.raises(ValueError, match="sum to 1"):
            distance(user, cand, Weights(binary=0.8, soft=0.4))
        with pytest.raises(ValueError, match="non-negative"):
            distance(user, cand, Weights(binary=1.2, soft=-0.2))

    @given(
        st.frozensets(st.sampled_from("abcdefgh"), max_size=6),
        st.frozensets(st.sampled_from("abcdefgh"), max_size=6),
        st.dictionaries(st.sampled_from(["x", "y"]), st.integers(0, 4), max_size=2),
        st.dictionaries(st.sampled_from(["x", "y"]), st.integers(0, 4), max_size=2),
    )
    @settings(max_examples=200)
    def test_distance_in_unit_interval(self, selected, ideal, user_soft, targets):
        cand = _archetype("x", ideal, targets)
        user = _assessment(selected=selected, soft=user_soft)
        d = distance(user, cand)
        assert 0.0 <= d <= 1.0

    @given(st.frozensets(st.sampled_from("abcdef"), max_size=5))
    def test_foreign_skill_never_decreases_binary_distance(self, selected):
        ideal = frozenset({"a", "b"})
        cand = _archetype("x", ideal)
        user = _assessment(selected=selected)
        more = _assessment(selected=selected | {"zz"})  # zz outside the ideal set
        assert distance(more, cand) >= distance(user, cand) - 1e-12


class TestComputeGap:
    def test_identity_assessment(self, profile_db):
        arch = profile_db.archetype("arch-e1")
        user = _assessment(
            selected=arch.binary_skills, soft=arch.soft_targets, archetype_id="arch-e1"
        )
        report = compute_gap(user, profile_db)
        assert report.missing_binary == {"hard": [], "digital": []}
        assert report.coverage == 1.0
        assert report.distance_to_own == 0.0
        assert all(c.verdict == "maintain" for c in report.soft_comparisons)

    def test_set_arithmetic(self, profile_db):
        arch = profile_db.archetype("arch-t1")
        ideal = sorted(arch.binary_skills)
        selected = ideal[: len(ideal) // 2]
        user = _assessment(selected=selected, archetype_id="arch-t1")
        report = compute_gap(user, profile_db)
        missing = {
            item["skill_id"]
            for bucket in report.missing_binary.values()
            for item in bucket
        }
        assert missing == set(ideal) - set(selected)
        assert report.coverage == pytest.approx(len(selected) / len(ideal))

    def test_soft_verdicts(self, profile_db):
        user = _assessment(
            archetype_id="arch-t1",
            soft={"sk-048": 1, "sk-054": 2, "sk-058": 3, "sk-059": 2},
        )
        report = compute_gap(user, profile_db)
        verdicts = {c.skill_id: c.verdict for c in report.soft_comparisons}
        # targets: sk-048:3, sk-054:2, sk-058:3, sk-059:2
        assert verdicts == {
            "sk-048": "improve",
            "sk-054": "maintain",
            "sk-058": "maintain",
            "sk-059": "maintain",
        }

    def test_green_flags_carried(self, profile_db):
        user = _assessment(archetype_id="arch-m2", selected=[])
        report = compute_gap(user, profile_db)
        greens = {
            item["skill_id"]: item["green"]
            for bucket in report.missing_binary.values()
            for item in bucket
        }
        assert greens["sk-002"] is True
        assert greens["sk-042"] is False

    def test_unknown_archetype(self, profile_db):
        with pytest.raises(AssessmentError) as err:
            compute_gap(_assessment(archetype_id="nope"), profile_db)
        assert err.value.field == "archetype_id"

    def test_unknown_skill(self, profile_db):
        with pytest.raises(AssessmentError) as err:
            compute_gap(_assessment(selected=["zz"]), profile_db)
        assert err.value.field == "selected_binary"

    def test_soft_skill_not_selectable_as_binary(self, profile_db):
        with pytest.raises(AssessmentError) as err:
            compute_gap(_assessment(selected=["sk-046"]), profile_db)
        assert err.value.field == "selected_binary"

    def test_bad_level_rejected(self, profile_db):
        with pytest.raises(AssessmentError) as err:
            compute_gap(_assessment(soft={"sk-046": 7}), profile_db)
        assert err.value.field == "soft_levels"

    @given(
        st.frozensets(st.sampled_from([f"s{i}" for i in range(8)]), max_size=8),
        st.frozensets(st.sampled_from([f"s{i}" for i in range(8)]), max_size=8),
    )
    @settings(max_examples=200)
    def test_gap_exactness(self, ideal, selected):
        missing = ideal - selected
        overlap = selected & ideal
        assert missing | overlap == ideal
        assert not (missing & overlap)


class TestNearest:
    def _db(self, profile_db):
        return profile_db

    def test_identical_candidate_ranks_first(self, profile_db):
        arch = profile_db.archetype("arch-t2")
        user = _assessment(
            archetype_id="arch-t1",
            selected=arch.binary_skills,
            soft=arch.soft_targets,
        )
        ranked = nearest_archetypes(user, profile_db)
        assert ranked[0] == ("arch-t2", 0.0)

    def test_own_archetype_excluded(self, profile_db):
        arch = profile_db.archetype("arch-e1")
        user = _assessment(
            archetype_id="arch-e1", selected=arch.binary_skills, soft=arch.soft_targets
        )
        ranked = nearest_archetypes(user, profile_db)
        assert "arch-e1" not in [a for a, _ in ranked]
        assert len(ranked) == 3

    def test_include_own_flag(self, profile_db):
        arch = profile_db.archetype("arch-e1")
        user = _assessment(
            archetype_id="arch-e1", selected=arch.binary_skills, soft=arch.soft_targets
        )
        ranked = nearest_archetypes(user, profile_db, include_own=True)
        assert ranked[0] == ("arch-e1", 0.0)

    def test_tie_prefers_larger_skill_set(self):
        from skillgap.profiledb import BuildReport, ProfileDatabase
        from skillgap.skillmap import SkillRecord

        skills = tuple(
            SkillRecord(f"s{i}", f"s{i}", "", "hard", False) for i in range(12)
        )
        archetypes = (
            _archetype("own", ["s0"]),
            # both disjoint from the user: binary distance 1.0 for each
            _archetype("big", [f"s{i}" for i in range(2, 8)]),
            _archetype("small", ["s8", "s9"]),
            _archetype("third", ["s10"]),
        )
        db = ProfileDatabase(
            archetypes=archetypes, skills=skills, version="v", provenance={},
            report=BuildReport({}, (), 0.0, 0.0),
        )
        user = _assessment(archetype_id="own", selected=["s1"])
        ranked = nearest_archetypes(user, db)
        assert ranked[0][0] == "big"

    def test_too_few_archetypes(self):
        from skillgap.profiledb import BuildReport, ProfileDatabase

        db = ProfileDatabase(
            archetypes=(_archetype("a", ["s1"]), _archetype("b", ["s2"])),
            skills=(), version="v", provenance={}, report=BuildReport({}, (), 0.0, 0.0),
        )
        user = _assessment(archetype_id="a", selected=[])
        with pytest.raises(AssessmentError, match="at least 3"):
            nearest_archetypes(user, db)

    def test_weight_scaling_leaves_ranking_unchanged(self, profile_db, fixtures_dir):
        user = load_assessment(fixtures_dir / "assessments" / "assess-02.json")
        base = nearest_archetypes(user, profile_db, weights=Weights(0.7, 0.3))
        scaled = nearest_archetypes(
            user, profile_db, weights=Weights(1.4 / 2.0, 0.6 / 2.0)
        )
        assert [a for a, _ in base] == [a for a, _ in scaled]


class TestSoftSeries:
    def test_empty_targets(self, profile_db):
        arch = _archetype("x", ["sk-001"])
        user = _assessment()
        assert soft_comparison_series(user, arch, profile_db) == []

    def test_single_row(self, profile_db):
        arch = profile_db.archetype("arch-t1")
        user = _assessment(archetype_id="arch-t1", soft={"sk-048": 2})
        rows = soft_comparison_series(user, arch, profile_db)
        by_label = {r["label"]: r for r in rows}
        row = by_label["solve problems under pressure"]
        assert row["current"] == 2 and row["target"] == 3 and row["verdict"] == "improve"

    def test_ordered_by_label(self, profile_db):
        arch = profile_db.archetype("arch-m1")
        user = _assessment(archetype_id="arch-m1")
        rows = soft_comparison_series(user, arch, profile_db)
        assert [r["label"] for r in rows] == sorted(r["label"] for r in rows)


class TestReportPayload:
    def test_payload_field_names(self, profile_db, fixtures_dir):
        user = load_assessment(fixtures_dir / "assessments" / "assess-02.json")
        payload = compute_gap(user, profile_db).to_payload()
        assert set(payload) == {
            "missing_binary",
            "soft_comparisons",
            "coverage",
            "nearest",
            "distance_to_own",
            "weights",
        }
        assert set(payload["missing_binary"]) == {"hard", "digital"}
        assert [set(n) for n in payload["nearest"]] == [
            {"archetype_id", "distance"} for _ in range(3)
        ]

    def test_payload_is_json_stable(self, profile_db, fixtures_dir):
        user = load_assessment(fixtures_dir / "assessments" / "assess-03.json")
        a = json.dumps(compute_gap(user, profile_db).to_payload(), sort_keys=True)
        b = json.dumps(compute_gap(user, profile_db).to_payload(), sort_keys=True)
        assert a == b
