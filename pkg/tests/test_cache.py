from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from hlab import cache


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    return tmp_path


def test_round_trip_and_checksum(cache_dir):
    payload = {"b": ["123456789012345678901234567890"], "a": [1, 2]}
    path = cache.store("chars", "d3", payload)
    assert cache.load("chars", "d3") == payload
    entry = json.loads(path.read_text())
    assert entry["schema_version"] == cache.SCHEMA_VERSION
    assert entry["checksum"] == cache.checksum(payload)
    assert not [p for p in cache_dir.iterdir() if p.name.endswith(".tmp")]


def test_stale_or_corrupt_entries_recompute(cache_dir):
    path = cache.store("chars", "d2", {"x": 1})
    entry = json.loads(path.read_text())
    entry["schema_version"] = cache.SCHEMA_VERSION + 1
    path.write_text(json.dumps(entry))
    assert cache.load("chars", "d2") is None
    calls = []
    assert cache.cached("chars", "d2", lambda: calls.append(1) or {"x": 2}) == {"x": 2}
    assert calls == [1]
    entry = json.loads(path.read_text())
    entry["payload"] = {"x": 3}
    path.write_text(json.dumps(entry))
    assert cache.load("chars", "d2") is None
    path.write_text("{not json")
    assert cache.load("chars", "d2") is None


def test_unknown_kind():
    with pytest.raises(ValueError):
        cache.store("other", "k", {})


@settings(max_examples=30, deadline=None)
@given(st.recursive(st.integers() | st.text(max_size=5) | st.booleans(), lambda c: st.lists(c, max_size=3) | st.dictionaries(st.text(max_size=3), c, max_size=3), max_leaves=10))
def test_cached_is_lossless(obj):
    (cache.cache_dir() / "hurwitz-disc-prop.json").unlink(missing_ok=True)
    first = cache.cached("hurwitz-disc", "prop", lambda: {"v": obj})
    second = cache.cached("hurwitz-disc", "prop", lambda: None)
    assert first == second == {"v": obj}
