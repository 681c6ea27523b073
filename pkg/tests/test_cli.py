from __future__ import annotations

import json
from pathlib import Path

import pytest

from cartograph.cli import EXIT_DATA, EXIT_IO, main
from cartograph.context import read_cxt
from cartograph.mapdoc import import_map

from conftest import FIXTURES_DIR

J1 = str(FIXTURES_DIR / "j1.csv")
J2 = str(FIXTURES_DIR / "j2.csv")


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_j1_level_1(capsys):
    code, out, _ = run(capsys, "analyze", J1, "--level", "1")
    assert code == 0
    assert out.strip() == "|G|=12, |M|=4, |I|=36, density 0.75, concepts 5"


def test_analyze_j2_level_3_truncates_density(capsys):
    code, out, _ = run(capsys, "analyze", J2, "--level", "3")
    assert code == 0
    assert "density 0.66" in out
    assert "|I|=260" in out


def test_base_j1_level_1(capsys):
    code, out, _ = run(capsys, "base", J1, "--level", "1")
    assert code == 0
    assert out.splitlines() == [
        "-> Industry",
        "State, Industry -> Market",
        "Market, Green, Industry -> State",
    ]


def test_compare_intents(capsys):
    code, out, _ = run(capsys, "compare", J1, J2, "--level", "1", "--what", "intents")
    assert code == 0
    assert out.splitlines()[0] == "3 shared intents"


def test_factors_report(capsys):
    code, out, _ = run(capsys, "factors", J1, "--level", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "F1: Industry > Market > State > Green"
    assert lines[1] == "support: 34/36 (94.44%)"


def test_factors_respects_cap(capsys):
    code, out, _ = run(capsys, "factors", J1, "--level", "1", "--max-factors", "1")
    assert code == 0
    assert sum(1 for line in out.splitlines() if line.startswith("F")) == 1


def test_ingest_summary(capsys):
    code, out, _ = run(capsys, "ingest", J1)
    assert code == 0
    assert "12 articles" in out


def test_scale_summary(capsys):
    code, out, _ = run(capsys, "scale", J1, "--level", "2")
    assert code == 0
    assert "|M|=12" in out and "density 0.55" in out


def test_export_cxt_round_trips(capsys, tmp_path):
    out_file = tmp_path / "j1.cxt"
    code, _, _ = run(capsys, "export-cxt", J1, "--level", "1", "--out", str(out_file))
    assert code == 0
    context = read_cxt(out_file.read_text(encoding="utf-8"))
    assert len(context.objects) == 12
    assert context.attributes == ("Market", "Green", "State", "Industry")


def test_map_writes_document(capsys, tmp_path):
    out_file = tmp_path / "map.json"
    code, _, _ = run(capsys, "map", J1, "--level", "1", "--out", str(out_file))
    assert code == 0
    layouted = import_map(out_file.read_text(encoding="utf-8"))
    assert len(layouted.nodes) == 5


def test_map_document_byte_stable_across_runs(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "map", J1, "--level", "3", "--out", str(a))
    run(capsys, "map", J1, "--level", "3", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_missing_input_is_io_error(capsys):
    code, _, err = run(capsys, "analyze", "no-such.csv", "--level", "1")
    assert code == EXIT_IO
    assert err.startswith("error:")
    assert "\n" not in err.strip()


def test_bad_csv_is_data_error(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("article_id,journal_id,convention,reference\nA1,J1,purple,R\n")
    code, _, err = run(capsys, "analyze", str(bad), "--level", "1")
    assert code == EXIT_DATA
    assert "purple" in err


def test_unknown_convention_flag_is_usage_error(capsys):
    code, _, _ = run(capsys, "analyze", J1, "--level", "1", "--conventions", "m,q")
    assert code == 2


def test_cartograph_data_env_resolves_inputs(capsys, monkeypatch):
    monkeypatch.setenv("CARTOGRAPH_DATA", str(FIXTURES_DIR))
    code, out, _ = run(capsys, "analyze", "j1.csv", "--level", "1")
    assert code == 0
    assert "concepts 5" in out


def test_conventions_subset(capsys):
    code, out, _ = run(capsys, "analyze", J1, "--level", "1", "--conventions", "industry")
    assert code == 0
    assert "|M|=1" in out and "density 1.00" in out


def test_fixtures_regeneration_matches_committed(capsys, tmp_path):
    code, _, _ = run(capsys, "fixtures", "--out", str(tmp_path))
    assert code == 0
    for name in ("j1.csv", "j2.csv"):
        fresh = (tmp_path / name).read_text(encoding="utf-8")
        committed = (FIXTURES_DIR / name).read_text(encoding="utf-8")
        assert fresh == committed


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--help"])
    assert excinfo.value.code == 0
    out = capsys.readouterr().out
    assert "exit codes" in out
    assert "CARTOGRAPH_DATA" in out
