"""Command-line pipeline: ingest | query | extract | trends | map-skills |
build-db | assess | serve | export.

Each stage reads its predecessors' artifacts from the output directory and
writes one versioned artifact of its own. Artifacts embed input digests, so
rerunning a stage on unchanged inputs is a no-op unless --force; on the same
inputs every artifact is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__, artifacts, gapengine, profiledb, skillmap, techner, trends
from .artifacts import ArtifactError
from .corpus import ingest_corpus
from .patentset import (
    compile_query,
    estimate_precision,
    estimate_recall,
    execute_query,
    refinement_report,
)

log = logging.getLogger(__name__)

# pipeline artifacts are byte-reproducible, so the set creation stamp is
# pinned instead of wall clock
PINNED_CREATED_AT = "1970-01-01T00:00:00+00:00"

ARTIFACT_NAMES = {
    "ingest": "corpus.json",
    "query": "patentset.json",
    "extract": "technologies.json",
    "trends": "trends.json",
    "map-skills": "skills.json",
    "build-db": "profiledb.json",
}


class CliError(Exception):
    pass


def _read_labels(path: Path) -> dict[str, bool]:
    labels: dict[str, bool] = {}
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"doc_id", "relevant"}.issubset(reader.fieldnames):
            raise CliError(f"{path}: labels CSV needs doc_id,relevant columns")
        for row in reader:
            value = (row["relevant"] or "").strip().lower()
            if value not in ("true", "false", "1", "0"):
                raise CliError(f"{path}: bad boolean {row['relevant']!r} for {row['doc_id']}")
            labels[row["doc_id"].strip()] = value in ("true", "1")
    return labels


def _outdir(args) -> Path:
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _artifact_path(args, stage: str) -> Path:
    return _outdir(args) / ARTIFACT_NAMES[stage]


def _load_corpus(args):
    doc = artifacts.read_artifact(_artifact_path(args, "ingest"), "ingest")
    return artifacts.corpus_from_payload(doc["payload"])


def _load_patentset(args):
    doc = artifacts.read_artifact(_artifact_path(args, "query"), "query")
    return artifacts.patentset_from_payload(doc["payload"])


def _load_clusters(args):
    doc = artifacts.read_artifact(_artifact_path(args, "extract"), "extract")
    return [artifacts.cluster_from_payload(c) for c in doc["payload"]["clusters"]]


def _maybe_skip(args, stage: str, inputs: dict[str, str]) -> bool:
    path = _artifact_path(args, stage)
    if not args.force and artifacts.artifact_unchanged(path, stage, inputs):
        log.info("%s: inputs unchanged, keeping %s (use --force to rerun)", stage, path)
        return True
    return False


# ------------------------------------------------------------------
# stages
# ------------------------------------------------------------------

def cmd_ingest(args) -> int:
    inputs = {"corpus": artifacts.file_digest(args.corpus)}
    if _maybe_skip(args, "ingest", inputs):
        return 0
    corpus = ingest_corpus(args.corpus)
    payload = artifacts.corpus_to_payload(corpus)
    payload["document_count"] = len(corpus)
    payload["family_count"] = len(corpus.family_ids)
    artifacts.write_artifact(_artifact_path(args, "ingest"), "ingest", inputs, payload)
    print(f"ingested {len(corpus)} documents, {len(corpus.family_ids)} families")
    return 0


def cmd_query(args) -> int:
    inputs = {
        "corpus_artifact": artifacts.file_digest(_require(args, "ingest")),
        "ontology": artifacts.file_digest(args.ontology),
    }
    if args.labels:
        inputs["labels"] = artifacts.file_digest(args.labels)
    if args.seeds:
        inputs["seeds"] = artifacts.file_digest(args.seeds)
    if args.refine_report:
        inputs["refine_report"] = "1"
    if _maybe_skip(args, "query", inputs):
        return 0
    corpus = _load_corpus(args)
    query = compile_query(args.ontology)
    pset = execute_query(corpus, query, created_at=PINNED_CREATED_AT)
    labels: dict[str, bool] = {}
    if args.labels:
        labels = _read_labels(Path(args.labels))
        k = args.estimate_k or len(pset.doc_ids)
        precision = estimate_precision(pset, k, labels, rng_seed=args.seed)
        pset = replace(pset, precision=precision)
    if args.seeds:
        seed_ids = [
            line.strip()
            for line in Path(args.seeds).read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        recall = estimate_recall(pset, seed_ids, corpus)
        pset = replace(pset, recall=recall)
    artifacts.write_artifact(
        _artifact_path(args, "query"), "query", inputs, artifacts.patentset_to_payload(pset)
    )
    if args.refine_report:
        if not args.labels:
            raise CliError("--refine-report requires --labels")
        report = refinement_report(pset, labels, corpus)
        payload = {
            "query_name": pset.query_name,
            "true_positives": report.true_positives,
            "false_positives": report.false_positives,
            "not_candidates": [s.__dict__ for s in report.not_candidates],
            "and_or_candidates": [s.__dict__ for s in report.and_or_candidates],
        }
        (_outdir(args) / "refinement.json").write_text(
            artifacts.artifact_json(payload), encoding="utf-8"
        )
    print(f"query '{query.name}': {len(pset.doc_ids)} documents, {len(pset.family_ids)} families")
    return 0


def cmd_extract(args) -> int:
    inputs = {
        "corpus_artifact": artifacts.file_digest(_require(args, "ingest")),
        "patentset_artifact": artifacts.file_digest(_require(args, "query")),
    }
    if args.synonyms:
        inputs["synonyms"] = artifacts.file_digest(args.synonyms)
    if args.curation:
        inputs["curation"] = artifacts.file_digest(args.curation)
    if _maybe_skip(args, "extract", inputs):
        return 0
    corpus = _load_corpus(args)
    pset = _load_patentset(args)
    key_terms = techner.default_key_terms()
    if args.synonyms:
        key_terms = techner.expand_key_terms(key_terms, args.synonyms)
    mentions = []
    for doc_id in sorted(pset.doc_ids):
        for sentence in corpus.sentences(doc_id):
            mentions.extend(techner.extract_mentions(sentence, key_terms))
    family_of = {d.doc_id: d.family_id for d in corpus}
    clusters = techner.cluster_technologies(mentions, family_of)
    if args.curation:
        overrides = techner.load_curation(args.curation)
        clusters = techner.apply_curation(clusters, overrides, family_of)
    payload = {
        "key_terms": artifacts.key_terms_to_payload(key_terms),
        "mention_count": len(mentions),
        "clusters": [artifacts.cluster_to_payload(c) for c in clusters],
    }
    artifacts.write_artifact(_artifact_path(args, "extract"), "extract", inputs, payload)
    active = sum(1 for c in clusters if c.active)
    print(f"extracted {len(mentions)} mentions into {active} active clusters")
    return 0


def cmd_trends(args) -> int:
    inputs = {
        "corpus_artifact": artifacts.file_digest(_require(args, "ingest")),
        "patentset_artifact": artifacts.file_digest(_require(args, "query")),
        "technologies_artifact": artifacts.file_digest(_require(args, "extract")),
    }
    if _maybe_skip(args, "trends", inputs):
        return 0
    corpus = _load_corpus(args)
    pset = _load_patentset(args)
    clusters = _load_clusters(args)
    params = trends.TrendParams(
        window=args.trend_window,
        min_support=args.min_support,
        decline_ratio=args.decline_ratio,
    )
    series = trends.compute_all_trends(
        clusters, pset, corpus, params, count_applications=args.count_applications
    )
    shares = trends.technology_shares(clusters, pset, corpus)
    payload = {
        "reference_year": trends.reference_year(pset, corpus),
        "params": {
            "window": params.window,
            "min_support": params.min_support,
            "decline_ratio": params.decline_ratio,
            "count_applications": args.count_applications,
        },
        "series": [
            {
                "cluster_id": s.cluster_id,
                "counts": {str(y): c for y, c in sorted(s.counts.items())},
                "share": s.share,
                "classification": s.classification,
            }
            for s in series
        ],
        "shares": [
            {"rank": r.rank, "cluster_id": r.cluster_id, "label": r.label, "share": r.share}
            for r in shares
        ],
    }
    artifacts.write_artifact(_artifact_path(args, "trends"), "trends", inputs, payload)
    out = _outdir(args)
    with (out / "shares.csv").open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["rank", "label", "share"])
        for r in shares:
            writer.writerow([r.rank, r.label, f"{r.share:.6f}"])
    if args.csv:
        with (out / "trends.csv").open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["cluster", "year", "count"])
            for s in series:
                for year, count in sorted(s.counts.items()):
                    writer.writerow([s.cluster_id, year, count])
    print(f"computed {len(series)} trend series")
    return 0


def cmd_map_skills(args) -> int:
    inputs = {
        "corpus_artifact": artifacts.file_digest(_require(args, "ingest")),
        "patentset_artifact": artifacts.file_digest(_require(args, "query")),
        "skills": artifacts.file_digest(args.skills),
        "threshold": str(args.threshold),
    }
    if args.embeddings:
        inputs["embeddings"] = artifacts.file_digest(args.embeddings)
    if args.skill_curation:
        inputs["skill_curation"] = artifacts.file_digest(args.skill_curation)
    if _maybe_skip(args, "map-skills", inputs):
        return 0
    corpus = _load_corpus(args)
    pset = _load_patentset(args)
    skills = skillmap.load_skills(args.skills)
    if args.embeddings:
        provider = skillmap.FileBackedEmbedder(args.embeddings)
        provider_name = "file"
    else:
        provider = skillmap.HashedBagEmbedder()
        provider_name = "fallback"
    sentences = []
    for doc_id in sorted(pset.doc_ids):
        sentences.extend(corpus.sentences(doc_id))
    matches = skillmap.match_sentences_to_skills(
        sentences, skills, provider, threshold=args.threshold
    )
    overrides = None
    if args.skill_curation:
        overrides = json.loads(Path(args.skill_curation).read_text(encoding="utf-8"))
    derived = skillmap.derive_skill_set(matches, skills, overrides)
    payload = {
        "provider": provider_name,
        "threshold": args.threshold,
        "matches": [artifacts.match_to_payload(m) for m in matches],
        "derived": [
            {"skill_id": d.skill_id, "evidence_count": d.evidence_count} for d in derived
        ],
    }
    artifacts.write_artifact(
        _artifact_path(args, "map-skills"), "map-skills", inputs, payload
    )
    with (_outdir(args) / "matches.jsonl").open("w", encoding="utf-8") as fh:
        for m in matches:
            fh.write(artifacts.compact_json(artifacts.match_to_payload(m)) + "\n")
    kept = sum(1 for m in matches if m.kept)
    print(f"matched {len(matches)} sentences, kept {kept}, derived {len(derived)} skills")
    return 0


def cmd_build_db(args) -> int:
    inputs = {
        "archetypes": artifacts.file_digest(args.archetypes),
        "skills": artifacts.file_digest(args.skills),
        "skills_artifact": artifacts.file_digest(_require(args, "map-skills")),
    }
    if _maybe_skip(args, "build-db", inputs):
        return 0
    skills = skillmap.load_skills(args.skills)
    evidence_doc = artifacts.read_artifact(_artifact_path(args, "map-skills"), "map-skills")
    evidence = {
        d["skill_id"]: d["evidence_count"] for d in evidence_doc["payload"]["derived"]
    }
    db = profiledb.build_profile_db(
        args.archetypes,
        skills,
        evidence=evidence,
        provenance={"tool_version": __version__, "inputs": inputs},
    )
    clustering = profiledb.cluster_archetypes(db, k=args.k, metric=args.cluster_metric)
    db = profiledb.with_bottomup(db, clustering)
    agreement = profiledb.validate_macroclasses(db, clustering)
    payload = {
        "database": artifacts.db_to_payload(db),
        "clusters": [sorted(c) for c in clustering.clusters],
        "validation": artifacts.agreement_to_payload(agreement),
    }
    artifacts.write_artifact(_artifact_path(args, "build-db"), "build-db", inputs, payload)
    print(
        f"built database v{db.version}: {len(db.archetypes)} archetypes, "
        f"{len(db.skills)} skills, purity {agreement.purity:.3f}"
    )
    return 0


def cmd_assess(args) -> int:
    db = artifacts.load_database(args.db)
    assessment = gapengine.load_assessment(args.input)
    weights = _weights(args)
    report = gapengine.compute_gap(assessment, db, weights)
    body = artifacts.compact_json(
        {"assessment_id": assessment.assessment_id, "report": report.to_payload()}
    )
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)
        sys.stdout.flush()
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    from .storage import AppendLogStore

    db = artifacts.load_database(args.db) if args.db else None
    store = AppendLogStore(args.storage) if args.storage else None
    app = create_app(
        db,
        store,
        weights=_weights(args),
        cors_origins=args.cors_origin or None,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def cmd_export(args) -> int:
    db = artifacts.load_database(args.db or _artifact_path(args, "build-db"))
    out = Path(args.out) if args.out else _outdir(args) / "export" / "profile_db.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(artifacts.artifact_json(artifacts.db_to_payload(db)), encoding="utf-8")
    print(f"exported database v{db.version} to {out}")
    return 0


def _require(args, stage: str) -> Path:
    path = _artifact_path(args, stage)
    if not path.exists():
        raise ArtifactError(
            f"missing artifact {path.name}: requires {stage} output "
            f"(run `skillgap {stage}` first)",
            required_stage=stage,
        )
    return path


def _weights(args) -> gapengine.Weights:
    try:
        parts = [float(p) for p in args.weights.split(",")]
        if len(parts) != 2:
            raise ValueError
    except ValueError:
        raise CliError(f"--weights must be 'w_binary,w_soft', got {args.weights!r}")
    weights = gapengine.Weights(binary=parts[0], soft=parts[1])
    weights.validate()
    return weights


# ------------------------------------------------------------------
# parser
# ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skillgap",
        description="patent corpus -> technologies -> skills -> archetype "
        "database -> gap assessment",
    )
    parser.add_argument("--version", action="version", version=f"skillgap {__version__}")
    parser.add_argument("--output-dir", default="out", help="artifact directory")
    parser.add_argument("--seed", type=int, default=17, help="sampling RNG seed")
    parser.add_argument("--threshold", type=float, default=skillmap.DEFAULT_THRESHOLD,
                        help="similarity threshold for kept skill matches")
    parser.add_argument("--weights", default="0.7,0.3",
                        help="distance weights 'w_binary,w_soft'")
    parser.add_argument("--trend-window", type=int, default=5)
    parser.add_argument("--min-support", type=int, default=20)
    parser.add_argument("--decline-ratio", type=float, default=0.5)
    parser.add_argument("--count-applications", action="store_true",
                        help="count documents instead of deduplicated families")
    parser.add_argument("--force", action="store_true",
                        help="rerun stages even when inputs are unchanged")
    parser.add_argument("--verbose", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and load the corpus")
    p.add_argument("--corpus", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("query", help="compile and execute a query ontology")
    p.add_argument("--ontology", required=True)
    p.add_argument("--labels", help="doc_id,relevant CSV for precision estimation")
    p.add_argument("--estimate-k", type=int, help="precision sample size (default: whole set)")
    p.add_argument("--seeds", help="known-relevant doc id list for recall")
    p.add_argument("--refine-report", action="store_true",
                   help="also write refinement.json term suggestions (needs --labels)")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("extract", help="extract and cluster technology mentions")
    p.add_argument("--synonyms", help="synonym<TAB>base lexicon file")
    p.add_argument("--curation", help="cluster curation directives JSON")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("trends", help="filing trends, maturity, share table")
    p.add_argument("--csv", action="store_true", help="also write trends.csv")
    p.set_defaults(func=cmd_trends)

    p = sub.add_parser("map-skills", help="match set sentences to taxonomy skills")
    p.add_argument("--skills", required=True, help="taxonomy CSV")
    p.add_argument("--embeddings", help="precomputed sha256<TAB>floats vector table")
    p.add_argument("--skill-curation", help="skill curation directives JSON")
    p.set_defaults(func=cmd_map_skills)

    p = sub.add_parser("build-db", help="assemble and validate the profile database")
    p.add_argument("--archetypes", required=True)
    p.add_argument("--skills", required=True)
    p.add_argument("--k", type=int, default=3, help="bottom-up cluster count")
    p.add_argument("--cluster-metric", choices=["jaccard", "description"],
                   default="jaccard", help="archetype similarity for validation")
    p.set_defaults(func=cmd_build_db)

    p = sub.add_parser("assess", help="run the gap engine offline")
    p.add_argument("--input", required=True, help="assessment JSON")
    p.add_argument("--db", required=True, help="profile database (artifact or bare)")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("serve", help="start the HTTP service")
    env = os.environ
    p.add_argument("--db", default=env.get("SKILLGAP_DB"),
                   required="SKILLGAP_DB" not in env,
                   help="database file (env SKILLGAP_DB)")
    p.add_argument("--storage", default=env.get("SKILLGAP_STORAGE"),
                   help="append-log path, default in-memory (env SKILLGAP_STORAGE)")
    p.add_argument("--host", default=env.get("SKILLGAP_HOST", "127.0.0.1"),
                   help="listen address (env SKILLGAP_HOST)")
    p.add_argument("--port", type=int, default=int(env.get("SKILLGAP_PORT", "8080")),
                   help="listen port (env SKILLGAP_PORT)")
    p.add_argument("--cors-origin", action="append",
                   help="allowed UI origin (repeatable; default *)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="bundle the profile database for the UI")
    p.add_argument("--db", help="database file (default: build-db artifact)")
    p.add_argument("--out", help="destination (default: <output-dir>/export/profile_db.json)")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except ArtifactError as exc:
        error = {"error": str(exc), "stage": args.command}
        if exc.required_stage:
            error["required_stage"] = exc.required_stage
        sys.stderr.write(json.dumps(error, sort_keys=True) + "\n")
        return 1
    except (ValueError, OSError, CliError) as exc:
        sys.stderr.write(
            json.dumps({"error": str(exc), "stage": args.command}, sort_keys=True) + "\n"
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
