from __future__ import annotations

import json

import pytest

from ybforge.cli import main
from ybforge.serialize import load, write_json


@pytest.fixture(scope="module")
def fixtures_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fx")
    assert main(["fixtures", "--out-dir", str(d)]) == 0
    return d


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fixtures_are_deterministic(tmp_path, fixtures_dir):
    assert main(["fixtures", "--out-dir", str(tmp_path)]) == 0
    names = json.loads((fixtures_dir / "manifest.json").read_text())["files"]
    assert len(names) == 23
    for name in names:
        assert (tmp_path / name).read_bytes() == (fixtures_dir / name).read_bytes()
        load(fixtures_dir / name)


def test_verify_map_ok(capsys, fixtures_dir):
    code, out, _ = run(capsys, "verify-map", fixtures_dir / "identity-3.json")
    assert code == 0 and out.startswith("OK")


def test_verify_failure_exit_one(capsys, tmp_path):
    write_json(tmp_path / "bad.json", {"lambda": [[1, 0], [0, 1]]})
    code, out, _ = run(capsys, "verify-map", tmp_path / "bad.json")
    assert code == 1 and out.startswith("FAILED")
    code, out, _ = run(capsys, "verify-map", tmp_path / "bad.json", "--json")
    obj = json.loads(out)
    assert code == 1 and obj["ok"] is False
    assert set(obj["violation"]) >= {"kind", "where", "lhs", "rhs"}


def test_usage_and_format_errors(capsys, tmp_path):
    assert run(capsys, "no-such-verb")[0] == 2
    (tmp_path / "x.json").write_text("{not json")
    assert run(capsys, "verify-map", tmp_path / "x.json")[0] == 2
    assert run(capsys, "verify-map", tmp_path / "missing.json")[0] == 2


def test_json_status_schema(capsys, fixtures_dir):
    code, out, _ = run(capsys, "verify-cocycle", fixtures_dir / "q8c3-cocycle.json", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["ok"] is True and "message" in obj


def test_enumerate_counts(capsys):
    for n, count in ((1, 1), (2, 2), (3, 5)):
        code, out, _ = run(capsys, "enumerate", n, "--count-only")
        assert code == 0 and out.strip() == str(count)


def test_conversions(capsys, tmp_path, fixtures_dir):
    sol = tmp_path / "s.json"
    assert run(capsys, "from-map", fixtures_dir / "map-3-2.json", "-o", sol)[0] == 0
    assert load(sol)[0] == "solution"
    back = tmp_path / "m.json"
    assert run(capsys, "from-solution", sol, "-o", back)[0] == 0
    assert back.read_bytes() == (fixtures_dir / "map-3-2.json").read_bytes()
    coc = tmp_path / "c.json"
    assert run(capsys, "star", fixtures_dir / "q8c3.json", "-o", coc)[0] == 0
    assert run(capsys, "to-morphism", coc, "-o", tmp_path / "mm.json", "--check-action")[0] == 0
    assert load(tmp_path / "mm.json")[0] == "morphism"


def test_lift_search_c35(capsys, fixtures_dir):
    code, out, err = run(capsys, "lift-search", fixtures_dir / "c35.json", "--gens", "d,e")
    assert code == 0
    assert out.strip() == "0 liftings (exhaustive)"
    code, out, _ = run(capsys, "lift-search", fixtures_dir / "c35.json", "--gens", "d,e", "--json")
    obj = json.loads(out)
    assert obj["liftings"] == 0 and obj["exhaustive"] and obj["space_size"] == 19683


def test_build_and_constructions(capsys, tmp_path, fixtures_dir):
    assert run(capsys, "build", "q8c3", "-o", tmp_path / "q.json")[0] == 0
    assert (tmp_path / "q.json").read_bytes() == (fixtures_dir / "q8c3.json").read_bytes()
    assert run(capsys, "hall", fixtures_dir / "q8c3-cocycle.json", "--primes", "2",
               "-o", tmp_path / "h.json")[0] == 0
    assert load(tmp_path / "h.json")[1].group.order == 8
    assert run(capsys, "product", fixtures_dir / "c2-perm.json", fixtures_dir / "c2-perm.json",
               "-o", tmp_path / "p.json")[0] == 0
    assert load(tmp_path / "p.json")[1].group.order == 4


def test_amplify_writes_stages(capsys, tmp_path, fixtures_dir):
    code, _, _ = run(capsys, "amplify", fixtures_dir / "map-2-1.json", "--iterations", 2,
                     "--out-dir", tmp_path / "amp")
    assert code == 0
    manifest = json.loads((tmp_path / "amp" / "manifest.json").read_text())
    assert manifest
    assert load(tmp_path / "amp" / "stage-2.json")[1].size == 16


def test_catalog_roundtrip(capsys, tmp_path, fixtures_dir, monkeypatch):
    monkeypatch.setenv("YBFORGE_CATALOG", str(tmp_path / "cat"))
    files = [fixtures_dir / f"map-3-{i}.json" for i in range(5)] + [fixtures_dir / "identity-3.json"]
    assert run(capsys, "catalog", "add", *files)[0] == 0
    code, out, _ = run(capsys, "catalog", "list", "--json")
    assert code == 0 and len(json.loads(out)["entries"]) == 5  # identity-3 is map-3-0
    code, out, _ = run(capsys, "catalog", "dedup")
    assert out.splitlines()[0] == "5 classes"
    assert run(capsys, "catalog", "verify")[0] == 0
    assert (tmp_path / "cat" / "index.json").exists()
