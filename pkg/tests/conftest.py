from __future__ import annotations

from pathlib import Path

import pytest

from skillgap.corpus import ingest_corpus
from skillgap.patentset import compile_query, execute_query
from skillgap.profiledb import build_profile_db
from skillgap.skillmap import load_skills

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

_acceptance_results: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.keywords:
        _acceptance_results.append((report.nodeid, report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for nodeid, outcome in sorted(_acceptance_results):
        word = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{word}  {nodeid.split('::')[-1]}")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def corpus():
    return ingest_corpus(FIXTURES / "corpus_50.jsonl")


@pytest.fixture(scope="session")
def energy_query():
    return compile_query(FIXTURES / "ontology_energy_mgmt.json")


@pytest.fixture(scope="session")
def energy_set(corpus, energy_query):
    return execute_query(corpus, energy_query, created_at="1970-01-01T00:00:00+00:00")


@pytest.fixture(scope="session")
def skills():
    return load_skills(FIXTURES / "skills_taxonomy.csv")


@pytest.fixture(scope="session")
def profile_db(skills):
    return build_profile_db(FIXTURES / "archetypes.json", skills)
