import json
import os

import pytest

from torsion_obstruct import cache as cache_mod
from torsion_obstruct.cache import Cache, cached_character_table, fingerprint
from torsion_obstruct.catalog import small_group
from torsion_obstruct.characters import character_table
from torsion_obstruct.groups import FiniteGroup, make_cyclic, make_dihedral


def test_fingerprint_is_stable_and_discriminating():
    assert fingerprint(make_dihedral(5)) == fingerprint(make_dihedral(5))
    assert fingerprint(make_dihedral(5)) != fingerprint(make_cyclic(10))
    assert len(fingerprint(make_cyclic(3))) == 32


def test_round_trip_is_byte_identical(tmp_path):
    c = Cache(tmp_path)
    g = small_group(96, 66)
    payload = character_table(g).to_json()
    c.put(g, "character-table", payload)
    assert c.get(g, "character-table") == payload
    first = sorted(tmp_path.glob("*.json"))
    data = first[0].read_bytes()
    c.put(g, "character-table", payload)
    assert first[0].read_bytes() == data


def test_cached_table_is_reused(tmp_path):
    c = Cache(tmp_path)
    g = make_dihedral(7)
    tab = cached_character_table(g, c)
    fresh = make_dihedral(7)
    again = cached_character_table(fresh, c)
    assert again.rows == tab.rows


def test_table_hash_mismatch_is_a_miss(tmp_path):
    c = Cache(tmp_path)
    g = make_dihedral(4)
    c.put(g, "x", {"a": 1})
    path = next(tmp_path.glob("*-x.json"))
    entry = json.loads(path.read_text())
    entry["table_hash"] = "0" * 64
    path.write_text(json.dumps(entry))
    assert c.get(g, "x") is None


def test_version_bump_invalidates(tmp_path, monkeypatch):
    c = Cache(tmp_path)
    g = make_cyclic(6)
    c.put(g, "x", {"a": 1})
    monkeypatch.setattr(cache_mod, "CACHE_VERSION", cache_mod.CACHE_VERSION + 1)
    assert c.get(g, "x") is None


def test_corrupt_entry_is_recomputed(tmp_path):
    c = Cache(tmp_path)
    g = make_dihedral(3)
    cached_character_table(g, c)
    path = next(tmp_path.glob("*-character-table.json"))
    path.write_text("{not json")
    assert c.get(g, "character-table") is None
    fresh = make_dihedral(3)
    assert sorted(cached_character_table(fresh, c).degrees) == [1, 1, 2]
    json.loads(path.read_text())


def test_inconsistent_cached_table_is_discarded(tmp_path):
    c = Cache(tmp_path)
    g = make_dihedral(3)
    payload = character_table(g).to_json()
    payload["rows"] = payload["rows"][:2]
    c.put(g, "character-table", payload)
    fresh = make_dihedral(3)
    assert len(cached_character_table(fresh, c).rows) == 3


def test_disabled_cache():
    c = Cache(None)
    assert not c.enabled
    c.put(make_cyclic(2), "x", {})
    assert c.get(make_cyclic(2), "x") is None


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory permissions")
def test_unwritable_directory_disables_cache(tmp_path, caplog):
    d = tmp_path / "ro"
    d.mkdir()
    d.chmod(0o500)
    try:
        c = Cache(d)
        assert not c.enabled
        assert "not writable" in caplog.text
    finally:
        d.chmod(0o700)


def test_directory_that_is_a_file_disables_cache(tmp_path, caplog):
    f = tmp_path / "file"
    f.write_text("")
    c = Cache(f)
    assert not c.enabled
    assert "not writable" in caplog.text


def test_entries_are_keyed_by_kind(tmp_path):
    c = Cache(tmp_path)
    g = FiniteGroup([[0, 1], [1, 0]])
    c.put(g, "a", {"v": 1})
    c.put(g, "b", {"v": 2})
    assert c.get(g, "a") == {"v": 1} and c.get(g, "b") == {"v": 2}
