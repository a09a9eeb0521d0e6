import json
import pathlib

import pytest
from click.testing import CliRunner

from modcurve.cli import main
from modcurve.newforms import bundled_fixture_bytes

GOLDENS = pathlib.Path(__file__).parent / "goldens"


@pytest.fixture()
def runner(monkeypatch):
    # The CLI must be fully green offline.
    monkeypatch.setenv("MODCURVE_OFFLINE", "1")
    return CliRunner()


def invoke(runner, *args, expect=0):
    result = runner.invoke(main, list(args), catch_exceptions=False)
    assert result.exit_code == expect, result.output
    return result


# --- index -------------------------------------------------------------------


def test_index_x0_105(runner):
    result = invoke(runner, "index", "b3,b5,b7")
    assert "192" in result.output
    assert "975/512" in result.output
    assert "1.9043" in result.output


def test_index_alias_and_json(runner):
    doc = json.loads(
        invoke(runner, "--format", "json", "index", "X0(105)").output
    )
    assert doc["index"] == 192
    assert doc["gonality_bounds"]["kim-sarnak"]["exact"] == "975/512"
    assert doc["gonality_bounds"]["kim-sarnak"]["integer_bound"] == 2
    assert doc["gonality_bounds"]["selberg"]["exact"] == "2"
    assert doc["gonality_bounds"]["lrs"]["exact"] == "42/25"


def test_index_e7_curve(runner):
    doc = json.loads(
        invoke(runner, "--format", "json", "index", "s3,b5,e7").output
    )
    assert doc["index"] == 1512
    assert doc["gonality_bounds"]["kim-sarnak"]["integer_bound"] == 15


def test_index_single_tag(runner):
    doc = json.loads(invoke(runner, "--format", "json", "index", "b3").output)
    assert doc["index"] == 4


def test_index_parse_error_positions(runner):
    result = runner.invoke(main, ["index", "b3,q5"])
    assert result.exit_code == 2
    assert "position" in result.output


# --- genus ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "spec,expected",
    [
        ("X0(105)", 13),
        ("X0(105)/w35", 3),
        ("X0(315)", 41),
        ("X0(315)/w9", 21),
        ("X0(315)/<w9,w35>", 7),
        ("b3,b5,b7", 13),
        ("s3,b5,b7", 21),
        ("s3,b5,b7/w35", 7),
        ("ns7", 37),
        ("b3,b5,ns7", 37),
        ("ns7/w3", 19),
        ("ns7/w5", 16),
        ("ns7/<w3,w5>", 6),
    ],
)
def test_genus_specs(runner, spec, expected):
    doc = json.loads(invoke(runner, "--format", "json", "genus", spec).output)
    assert doc["genus"] == expected
    assert doc["provenance"] == "computed"


def test_genus_e7_is_curated(runner):
    doc = json.loads(invoke(runner, "--format", "json", "genus", "b3,b5,e7").output)
    assert doc == {"curve": "X(b3,b5,e7)", "genus": 73, "provenance": "curated"}
    result = invoke(runner, "genus", "s3,b5,e7")
    assert "153" in result.output and "curated" in result.output


def test_genus_rejects_partial_prime_part(runner):
    result = runner.invoke(main, ["genus", "X0(315)/w3"])
    assert result.exit_code == 2
    assert "full prime parts" in result.output


# --- rank ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "spec,expected",
    [("X0(105)", 0), ("s3,b5,b7", 2), ("ns7", 11), ("ns7/w3", 8), ("ns7/<w3,w5>", 6)],
)
def test_rank_specs(runner, spec, expected):
    doc = json.loads(invoke(runner, "--format", "json", "rank", spec).output)
    assert doc["mordell_weil_rank"] == expected


def test_rank_breakdown_contains_contributions(runner):
    doc = json.loads(invoke(runner, "--format", "json", "rank", "ns7").output)
    by_label = {f["label"]: f for f in doc["factors"]}
    assert by_label["735.2.a.b"]["rank_contribution"] == 1
    assert by_label["147.2.a.d"]["rank_contribution"] == 4
    assert sum(f["rank_contribution"] for f in doc["factors"]) == 11


# --- verdict / verify ------------------------------------------------------------


def test_verdict_default(runner):
    doc = json.loads(invoke(runner, "--format", "json", "verdict").output)
    rules = [(v["tag"], v["rule"], v["result"]) for v in doc["verdicts"]]
    assert rules == [
        ("X0(105)", "T1", "finite"),
        ("X(s3,b5,b7)", "T2", "finite"),
        ("ns7/w3", "T2", "finite"),
        ("X(s3,b5,e7)", "AF", "finite"),
        ("ns7", "CoverImplication", "finite"),
        ("X(b3,b5,e7)", "CoverImplication", "finite"),
    ]
    assert doc["summary"]["finite"] == 6


def test_verdict_selberg_identical(runner):
    a = json.loads(invoke(runner, "--format", "json", "verdict").output)
    b = json.loads(
        invoke(runner, "--format", "json", "verdict", "--lambda", "selberg").output
    )
    assert [(v["tag"], v["result"]) for v in a["verdicts"]] == [
        (v["tag"], v["result"]) for v in b["verdicts"]
    ]


def test_verdict_degree_six_refused(runner):
    result = runner.invoke(main, ["verdict", "--degree", "6"])
    assert result.exit_code == 2
    assert "degree 6" in result.output


def test_verdict_json_roundtrips_through_verify(runner, tmp_path):
    doc = invoke(runner, "--format", "json", "verdict").output
    path = tmp_path / "report.json"
    path.write_text(doc)
    result = invoke(runner, "verify", str(path))
    assert "6 certificates OK" in result.output


def test_verify_rejects_tampered_report(runner, tmp_path):
    doc = json.loads(invoke(runner, "--format", "json", "verdict").output)
    doc["verdicts"][1]["certificate"]["genus"] = 9
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    result = runner.invoke(main, ["verify", str(path)])
    assert result.exit_code == 3
    assert "certificate failure" in result.output


def test_verify_rejects_bad_json(runner, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{")
    result = runner.invoke(main, ["verify", str(path)])
    assert result.exit_code == 2


# --- tables (golden, byte-stable) -------------------------------------------------


@pytest.mark.parametrize(
    "args,golden",
    [
        (("tables", "a3"), "tables_a3.md"),
        (("tables", "a4"), "tables_a4.md"),
        (("tables", "a5"), "tables_a5.md"),
        (("tables", "s51"), "tables_s51.md"),
        (("--format", "tsv", "tables", "a5"), "tables_a5.tsv"),
        (("--format", "json", "tables", "s51"), "tables_s51.json"),
    ],
)
def test_tables_byte_stable(runner, args, golden):
    result = invoke(runner, *args)
    assert result.output == (GOLDENS / golden).read_text()


def test_a5_table_has_18_rows(runner):
    doc = json.loads(invoke(runner, "--format", "json", "tables", "a5").output)
    assert len(doc["rows"]) == 18


def test_s51_marks_curated_genera(runner):
    doc = json.loads(invoke(runner, "--format", "json", "tables", "s51").output)
    provenance = {r["curve"]: r["genus_provenance"] for r in doc["rows"]}
    assert provenance == {
        "X0(105)": "computed",
        "X(s3,b5,b7)": "computed",
        "X(b3,b5,ns7)": "computed",
        "X(b3,b5,e7)": "curated",
        "X(s3,b5,e7)": "curated",
    }


# --- fixtures flag and exit codes ---------------------------------------------------


def test_fixtures_flag_replaces_bundled(runner, tmp_path):
    path = tmp_path / "forms.json"
    path.write_bytes(bundled_fixture_bytes())
    doc = json.loads(
        invoke(
            runner, "--fixtures", str(path), "--format", "json", "genus", "X0(105)"
        ).output
    )
    assert doc["genus"] == 13


def test_truncated_fixtures_fail_with_data_error(runner, tmp_path):
    rows = json.loads(bundled_fixture_bytes())
    truncated = [r for r in rows if r["level"] != 735]
    path = tmp_path / "short.json"
    path.write_text(json.dumps(truncated))
    result = runner.invoke(main, ["--fixtures", str(path), "genus", "ns7"])
    assert result.exit_code == 2


def test_fetch_network_error_exit_code(runner, monkeypatch, tmp_path):
    monkeypatch.delenv("MODCURVE_OFFLINE", raising=False)
    monkeypatch.setenv("MODCURVE_LMFDB_URL", "http://127.0.0.1:1")
    monkeypatch.setenv("MODCURVE_CACHE_DIR", str(tmp_path))
    result = runner.invoke(main, ["fetch", "--level-divides", "105"])
    assert result.exit_code == 4
    assert "network error" in result.output


def test_fetch_offline_uses_bundled(runner, monkeypatch, tmp_path):
    monkeypatch.setenv("MODCURVE_CACHE_DIR", str(tmp_path))
    result = invoke(runner, "--format", "json", "fetch", "--level-divides", "105")
    assert json.loads(result.output)["count"] == 6
