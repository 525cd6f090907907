from __future__ import annotations

import json

from skillgap.cli import main

def run_pipeline(fixtures_dir, outdir, force=False) -> None:
    common = ["--output-dir", str(outdir)] + (["--force"] if force else [])
    steps = [
        ["ingest", "--corpus", str(fixtures_dir / "corpus_50.jsonl")],
        [
            "query",
            "--ontology", str(fixtures_dir / "ontology_energy_mgmt.json"),
            "--labels", str(fixtures_dir / "labels_energy_mgmt.csv"),
            "--seeds", str(fixtures_dir / "seeds_energy_mgmt.txt"),
        ],
        [
            "extract",
            "--synonyms", str(fixtures_dir / "synonyms.tsv"),
            "--curation", str(fixtures_dir / "curation_clusters.json"),
        ],
        ["trends", "--csv"],
        ["map-skills", "--skills", str(fixtures_dir / "skills_taxonomy.csv")],
        [
            "build-db",
            "--archetypes", str(fixtures_dir / "archetypes.json"),
            "--skills", str(fixtures_dir / "skills_taxonomy.csv"),
        ],
    ]
    for step in steps:
        assert main(common + step) == 0, step


ARTIFACTS = [
    "corpus.json",
    "patentset.json",
    "technologies.json",
    "trends.json",
    "skills.json",
    "profiledb.json",
    "shares.csv",
    "trends.csv",
]


class TestPipeline:
    def test_full_pipeline_produces_artifacts(self, fixtures_dir, tmp_path):
        out = tmp_path / "out"
        run_pipeline(fixtures_dir, out)
        for name in ARTIFACTS:
            assert (out / name).exists(), name
        corpus_doc = json.loads((out / "corpus.json").read_text())
        assert corpus_doc["payload"]["document_count"] == 50
        assert corpus_doc["payload"]["family_count"] == 42
        pset = json.loads((out / "patentset.json").read_text())["payload"]
        assert len(pset["doc_ids"]) == 20
        assert pset["precision"]["relevant_count"] == 18
        assert pset["recall"]["point"] == 0.9

    def test_rerun_is_noop_and_byte_stable(self, fixtures_dir, tmp_path):
        out = tmp_path / "out"
        run_pipeline(fixtures_dir, out)
        before = {name: (out / name).read_bytes() for name in ARTIFACTS}
        run_pipeline(fixtures_dir, out)  # unchanged inputs: stages skip
        for name in ARTIFACTS:
            assert (out / name).read_bytes() == before[name]

    def test_curation_applied_in_artifact(self, fixtures_dir, tmp_path):
        out = tmp_path / "out"
        run_pipeline(fixtures_dir, out)
        clusters = json.loads((out / "technologies.json").read_text())["payload"]["clusters"]
        by_id = {c["cluster_id"]: c for c in clusters}
        assert by_id["user-interface--device"]["curation"] == "rejected"
        assert by_id["smart-thermostat--unit"]["curation"] == "merged-into:thermostat--device"
        assert by_id["heat-pump--device"]["curation"] == "approved"
        assert "smart thermostat" in by_id["thermostat--device"]["member_lemmas"]

    def test_rejected_cluster_absent_from_trends(self, fixtures_dir, tmp_path):
        out = tmp_path / "out"
        run_pipeline(fixtures_dir, out)
        trends_doc = json.loads((out / "trends.json").read_text())["payload"]
        ids = {s["cluster_id"] for s in trends_doc["series"]}
        assert "user-interface--device" not in ids
        assert "smart-thermostat--unit" not in ids
        assert "heat-pump--device" in ids

    def test_missing_predecessor_names_stage(self, fixtures_dir, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["--output-dir", str(out), "ingest", "--corpus",
                     str(fixtures_dir / "corpus_50.jsonl")]) == 0
        assert main(["--output-dir", str(out), "query", "--ontology",
                     str(fixtures_dir / "ontology_energy_mgmt.json")]) == 0
        code = main(["--output-dir", str(out), "trends"])
        captured = capsys.readouterr()
        assert code == 1
        error = json.loads(captured.err.strip().splitlines()[-1])
        assert error["required_stage"] == "extract"
        assert "skillgap extract" in error["error"]

    def test_bad_weights_flag(self, fixtures_dir, tmp_path, capsys):
        out = tmp_path / "out"
        run_pipeline(fixtures_dir, out)
        code = main([
            "--output-dir", str(out), "--weights", "0.9",
            "assess",
            "--input", str(fixtures_dir / "assessments" / "assess-01.json"),
            "--db", str(out / "profiledb.json"),
        ])
        assert code == 1
        assert "weights" in capsys.readouterr().err


class TestAssessAndExport:
    def test_assess_writes_canonical_report(self, fixtures_dir, tmp_path):
        out = tmp_path / "out"
        run_pipeline(fixtures_dir, out)
        report_path = tmp_path / "report.json"
        code = main([
            "--output-dir", str(out), "assess",
            "--input", str(fixtures_dir / "assessments" / "assess-01.json"),
            "--db", str(out / "profiledb.json"),
            "--out", str(report_path),
        ])
        assert code == 0
        body = json.loads(report_path.read_text())
        assert body["assessment_id"] == "assess-01"
        assert body["report"]["coverage"] == 1.0

    def test_export_writes_bare_database(self, fixtures_dir, tmp_path):
        out = tmp_path / "out"
        run_pipeline(fixtures_dir, out)
        assert main(["--output-dir", str(out), "export"]) == 0
        exported = json.loads((out / "export" / "profile_db.json").read_text())
        assert len(exported["archetypes"]) == 12
        assert len(exported["skills"]) == 60
        assert all(a["macro_class_bottomup"] for a in exported["archetypes"])

    def test_profiledb_validation_recorded(self, fixtures_dir, tmp_path):
        out = tmp_path / "out"
        run_pipeline(fixtures_dir, out)
        doc = json.loads((out / "profiledb.json").read_text())["payload"]
        assert doc["validation"]["purity"] == 1.0
        assert len(doc["clusters"]) == 3

    def test_refinement_report_flag(self, fixtures_dir, tmp_path):
        out = tmp_path / "out"
        assert main(["--output-dir", str(out), "ingest", "--corpus",
                     str(fixtures_dir / "corpus_50.jsonl")]) == 0
        assert main([
            "--output-dir", str(out), "query",
            "--ontology", str(fixtures_dir / "ontology_energy_mgmt.json"),
            "--labels", str(fixtures_dir / "labels_energy_mgmt.csv"),
            "--refine-report",
        ]) == 0
        report = json.loads((out / "refinement.json").read_text())
        assert report["true_positives"] == 18
        assert report["false_positives"] == 2
        not_lemmas = [s["lemma"] for s in report["not_candidates"]]
        # the irrelevant members are toy/game patents; their vocabulary
        # should surface as NOT candidates
        assert any(l in not_lemmas for l in ("game", "toy", "card", "player"))
