from __future__ import annotations

from skillgap.storage import AppendLogStore, MemoryStore


def _record(aid: str, token: str = "tok") -> dict:
    return {"assessment_id": aid, "owner_token": token, "report": {"coverage": 1.0}}


class TestMemoryStore:
    def test_round_trip(self):
        store = MemoryStore()
        store.put(_record("a1"))
        assert store.get("a1")["assessment_id"] == "a1"
        assert store.delete("a1") is True
        assert store.get("a1") is None
        assert store.delete("a1") is False


class TestAppendLogStore:
    def test_round_trip(self, tmp_path):
        store = AppendLogStore(tmp_path / "log.jsonl")
        store.put(_record("a1"))
        store.put(_record("a2"))
        assert store.ids() == ["a1", "a2"]
        assert store.delete("a1") is True
        assert store.get("a1") is None

    def test_replay_after_reopen(self, tmp_path):
        path = tmp_path / "log.jsonl"
        store = AppendLogStore(path)
        store.put(_record("a1"))
        store.put(_record("a2"))
        store.delete("a1")
        store.put({**_record("a2"), "report": {"coverage": 0.5}})

        reopened = AppendLogStore(path)
        assert reopened.get("a1") is None
        assert reopened.get("a2")["report"] == {"coverage": 0.5}
        assert reopened.ids() == ["a2"]

    def test_compaction_drops_dead_entries(self, tmp_path):
        path = tmp_path / "log.jsonl"
        store = AppendLogStore(path)
        for i in range(10):
            store.put(_record(f"a{i}"))
        for i in range(9):
            store.delete(f"a{i}")
        before = path.read_text().count("\n")
        store.compact()
        after = path.read_text().count("\n")
        assert after == 1 < before
        assert AppendLogStore(path).ids() == ["a9"]

    def test_auto_compaction_kicks_in(self, tmp_path):
        path = tmp_path / "log.jsonl"
        store = AppendLogStore(path)
        for i in range(80):
            store.put(_record(f"a{i % 4}"))  # heavy overwriting, 4 live records
        lines = path.read_text().count("\n")
        assert lines < 80
        assert AppendLogStore(path).ids() == ["a0", "a1", "a2", "a3"]

    def test_updates_replace(self, tmp_path):
        store = AppendLogStore(tmp_path / "log.jsonl")
        store.put(_record("a1", token="t1"))
        store.put(_record("a1", token="t2"))
        assert store.get("a1")["owner_token"] == "t2"
        assert store.ids() == ["a1"]
