import json

import pytest

from fermat_torsion import cli
from fermat_torsion.catalogs import PointCatalog


def run(*argv):
    return cli.main(list(argv))


def test_catalog_json_and_warm_cache(tmp_path, capsys):
    assert run("catalog", "type9", "--out", str(tmp_path)) == 0
    path = tmp_path / "catalog_type9.json"
    first = path.read_bytes()
    cat = PointCatalog.from_json(json.loads(first))
    assert len(cat) == 72
    assert (tmp_path / "catalog_type9.json.sha256").exists()
    assert run("catalog", "type9", "--out", str(tmp_path)) == 0
    assert "cached" in capsys.readouterr().out
    assert path.read_bytes() == first
    assert run("catalog", "type9", "--out", str(tmp_path), "--no-cache") == 0
    assert path.read_bytes() == first


def test_catalog_flex_csv(tmp_path):
    assert run("catalog", "flex", "--out", str(tmp_path), "--format", "csv") == 0
    lines = (tmp_path / "catalog_flex.csv").read_text().splitlines()
    assert lines[0] == "index,x,y,z" and len(lines) == 10
    assert all(len(c.split(";")) == 6 for c in lines[1].split(",")[1:])


def test_corrupted_cache_fails(tmp_path):
    assert run("catalog", "sextactic", "--out", str(tmp_path)) == 0
    path = tmp_path / "catalog_sextactic.json"
    path.write_text(path.read_text().replace('"1"', '"2"', 1))
    assert run("catalog", "sextactic", "--out", str(tmp_path)) == 1
    check = cli.cached_catalog_check(tmp_path)
    assert check is not None and not check.passed


def test_fake_catalog_with_valid_checksum_fails(tmp_path):
    # a correctly checksummed file whose points are off the curve
    cat = {"kind": "flex", "field": "Q", "points": [
        {"coords": [{"tower": "Q", "coeffs": [["1", "1"]]}] * 3}
    ], "provenance": {}}
    cli.write_cached(tmp_path / "catalog_flex.json", json.dumps(cat))
    with pytest.raises(cli.CacheError):
        cli.load_cached_catalog(tmp_path / "catalog_flex.json")
    assert run("catalog", "flex", "--out", str(tmp_path)) == 1


def test_tangents_and_conics_outputs(tmp_path):
    assert run("tangents", "type9", "--out", str(tmp_path)) == 0
    js = json.loads((tmp_path / "tangents_type9.json").read_text())
    assert len(js["entries"]) == 72 and len(js["orbits"]) == 24
    assert run("conics", "sextactic", "--out", str(tmp_path), "--format", "text") == 0
    text = (tmp_path / "conics_sextactic.text").read_text()
    assert text.startswith("108 sextactic conics")


def test_census_json(tmp_path):
    assert run("census", "sextactic", "--out", str(tmp_path)) == 0
    js = json.loads((tmp_path / "census_sextactic.json").read_text())
    assert js["total"] == 540 and js["strata"] == {"2": 486, "6": 36, "9": 18}
    assert js["top_line_split"] == [6, 6, 6]


def test_census_csv(tmp_path):
    assert run("census", "sextactic", "--out", str(tmp_path), "--format", "csv") == 0
    rows = (tmp_path / "census_sextactic.csv").read_text().splitlines()
    assert len(rows) == 541


def test_env_default_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("FTL_OUT", str(tmp_path / "env"))
    assert run("catalog", "flex") == 0
    assert (tmp_path / "env" / "catalog_flex.json").exists()


def test_usage_errors():
    assert run() == 2
    assert run("catalog", "type12") == 2
    assert run("census", "flex") == 2
    assert run("tangents", "type9", "--threads", "0") == 2
    assert run("verify") == 2


def test_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run("catalog", "flex", "--out", str(blocker / "sub")) == 3


def test_json_outputs_are_thread_independent(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("tangents", "sextactic", "--out", str(a), "--threads", "1") == 0
    assert run("tangents", "sextactic", "--out", str(b), "--threads", "2") == 0
    assert (a / "tangents_sextactic.json").read_bytes() == (b / "tangents_sextactic.json").read_bytes()


def test_verify_all(tmp_path, capsys):
    assert run("catalog", "type9", "--out", str(tmp_path)) == 0
    code = run("verify", "--all", "--out", str(tmp_path))
    out = capsys.readouterr().out
    assert code == 0, out
    assert "PASS  gamma_identity" in out and "all checks passed" in out
    report = json.loads((tmp_path / "verify.json").read_text())
    names = [c["name"] for c in report["checks"]]
    assert names[:9] == [
        "gamma_identity", "division_polynomial", "catalogs", "q_form", "tangents",
        "conics", "local_intersections", "census", "properties",
    ]
    assert "cached_catalogs" in names


def test_verify_all_fails_on_corrupted_cache(tmp_path, capsys):
    assert run("catalog", "flex", "--out", str(tmp_path)) == 0
    path = tmp_path / "catalog_flex.json"
    path.write_text(path.read_text() + " ")
    assert run("verify", "--all", "--out", str(tmp_path)) == 1
    assert "cached_catalogs" in capsys.readouterr().err
