import json
import subprocess
import sys

import jsonschema
import pytest

from modcheck import cli, corpus_path
from modcheck.frontend import bind_pattern, parse_mod
from modcheck.model import Kind, Polarity
from modcheck.semantics import embeds, is_member
from modcheck.solver import parse_dimacs

from conftest import MS1, MS2, MS3, load_cd, load_mod

REPORT_SCHEMA = {
    "type": "object",
    "required": ["cd", "scope", "verdicts", "overall"],
    "additionalProperties": False,
    "properties": {
        "cd": {"type": "string"},
        "scope": {"type": ["integer", "null"]},
        "overall": {"type": "boolean"},
        "verdicts": {"type": "array", "items": {
            "type": "object",
            "required": ["mod", "modality", "result", "stats"],
            "additionalProperties": False,
            "properties": {
                "mod": {"type": "string"},
                "modality": {"enum": ["PE", "NE", "PI", "NI", "PPE"]},
                "result": {"enum": ["PASS", "FAIL", "ERROR"]},
                "instance": {"type": "integer"},
                "message": {"type": "string"},
                "stats": {"type": "object", "required": ["variables", "clauses", "millis"],
                          "properties": {"variables": {"type": "integer"}, "clauses": {"type": "integer"},
                                         "millis": {"type": "number"}}},
                "counterexample": {"type": "object", "required": ["objects", "links"]},
            },
        }},
    },
}


def mods(folder, names):
    return [str(corpus_path(folder, f"{n}.od")) for n in names]


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_cd1_ms1_passes(capsys):
    code, out, _ = run(capsys, "--cd", corpus_path("cd1.cd"), "--mods", *mods("ms1", MS1))
    assert code == 0
    assert sum(line.startswith("mod") and " PASS " in line for line in out.splitlines()) == 5
    assert "overall: PASS (5/5 passed)" in out


def test_counterexample_files_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "--cd", corpus_path("cd2.cd"), "--mods", *mods("ms2", MS2),
                       "--scope", 8, "--cex", tmp_path)
    assert code == 1
    assert [p.name for p in tmp_path.iterdir()] == ["mod2_1.od"]
    text = (tmp_path / "mod2_1.od").read_text()
    assert text.startswith("// counterexample for PI mod2_1")
    (cex,) = parse_mod(text)
    assert (cex.polarity, cex.kind) == (Polarity.POSITIVE, Kind.EXAMPLE)
    cd2 = load_cd("cd2")
    om = bind_pattern(cex, cd2)
    assert is_member(om, cd2)
    assert embeds(bind_pattern(load_mod("ms2", "mod2.1"), cd2), om) is None
    # and the emitted example passes when checked as a positive example
    code, _, _ = run(capsys, "--cd", corpus_path("cd2.cd"), "--mods", tmp_path / "mod2_1.od")
    assert code == 0


def test_missing_input_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "--cd", tmp_path / "missing.cd", "--mods", tmp_path / "x.od")
    assert code == 2 and "missing.cd" in err


def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.od"
    bad.write_text("objectdiagram m { d : Driver }")
    code, _, err = run(capsys, "--cd", corpus_path("cd1.cd"), "--mods", bad)
    assert code == 2 and f"{bad}:1:" in err


def test_context_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "ctx.od"
    bad.write_text("objectdiagram m { d : Pilot; }")
    code, _, err = run(capsys, "--cd", corpus_path("cd1.cd"), "--mods", bad)
    assert code == 2 and str(bad) in err and "Pilot" in err


def test_duplicate_mod_names_exit_2(capsys):
    path = mods("ms1", ["mod1.1"])[0]
    code, _, _ = run(capsys, "--cd", corpus_path("cd1.cd"), "--mods", path, path)
    assert code == 2


def test_warnings_do_not_fail(capsys, tmp_path):
    od = tmp_path / "w.od"
    od.write_text("<<negative, example>> objectdiagram w { v : Vehicle; }")
    code, _, err = run(capsys, "--cd", corpus_path("cd1.cd"), "--mods", od)
    assert code == 0 and "warning" in err


def test_internal_error_exit_3(capsys, monkeypatch):
    def boom(*a, **kw):
        raise AssertionError("encoding bug")
    monkeypatch.setattr(cli, "verify_spec", boom)
    code, _, err = run(capsys, "--cd", corpus_path("cd1.cd"), "--mods", *mods("ms1", MS1))
    assert code == 3 and "encoding bug" in err


def test_error_verdict_exit_3(capsys, tmp_path):
    od = tmp_path / "p.od"
    od.write_text("<<positive, invariant>> objectdiagram p { a : Driver; b : Driver; c : Driver; }")
    code, out, _ = run(capsys, "--cd", corpus_path("cd2.cd"), "--mods", od, "--scope", 100)
    assert code == 3 and "ERROR" in out


@pytest.mark.parametrize("cd, folder, names, scope", [
    ("cd1", "ms1", MS1, 6), ("cd2", "ms1", MS1, 6), ("cd2", "ms2", MS2, 8), ("cd3", "ms3", MS3, 6),
    ("cda", "msa", ["ni"], 10)])
def test_json_reports_are_schema_valid(capsys, cd, folder, names, scope):
    code, out, _ = run(capsys, "--cd", corpus_path(f"{cd}.cd"), "--mods", *mods(folder, names),
                       "--scope", scope, "--format", "json")
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert code == (0 if report["overall"] else 1)
    assert report["cd"] == cd and report["scope"] == scope


def test_json_is_stable(capsys):
    args = ["--cd", corpus_path("cd2.cd"), "--mods", *mods("ms2", MS2), "--scope", 4, "--format", "json"]
    first = json.loads(run(capsys, *args)[1])
    second = json.loads(run(capsys, *args)[1])
    strip = lambda r: [{k: v for k, v in row.items() if k != "stats"} for r_ in [r] for row in r_["verdicts"]]  # noqa: E731
    assert strip(first) == strip(second)
    assert [r["mod"] for r in first["verdicts"]] == ["mod2_1", "mod2_2", "mod2_3", "mod2_4"]


def test_parametrized_rows(capsys):
    code, out, _ = run(capsys, "--cd", corpus_path("cd3.cd"), "--mods", *mods("ms3", MS3), "--format", "json")
    rows = json.loads(out)["verdicts"]
    assert len(rows) == 15 + 3 + 4
    assert rows[0]["instance"] == 0 and rows[14]["instance"] == 14
    assert code == 1


def test_dimacs_dump(capsys, tmp_path):
    code, _, _ = run(capsys, "--cd", corpus_path("cd2.cd"), "--mods", *mods("ms2", MS2), "--scope", 3,
                     "--dimacs", tmp_path)
    assert sorted(p.name for p in tmp_path.iterdir()) == [f"mod2_{i}.cnf" for i in range(1, 5)]
    n, clauses, comments = parse_dimacs((tmp_path / "mod2_2.cnf").read_text())
    assert n > 0 and clauses and comments


def test_int_range_and_enum_backend(capsys, tmp_path):
    od = tmp_path / "old.od"
    od.write_text("<<positive, example>> objectdiagram old { d : Driver { age = 90; }; c : Car; link drives d -> c; }")
    base = ["--cd", corpus_path("cd3.cd"), "--mods", od]
    assert run(capsys, *base)[0] == 0
    assert run(capsys, *base, "--int-range", "0..50")[0] == 1
    assert run(capsys, *base, "--int-range", "0..100", "--backend", "enum")[0] == 0


def test_minimize_flag(capsys, tmp_path):
    code, out, _ = run(capsys, "--cd", corpus_path("cd2.cd"), "--mods", *mods("ms2", ["mod2.1"]),
                       "--scope", 6, "--minimize", "--format", "json")
    (row,) = json.loads(out)["verdicts"]
    assert code == 1 and len(row["counterexample"]["objects"]) == 1


def test_jobs_flag(capsys):
    code, out, _ = run(capsys, "--cd", corpus_path("cd2.cd"), "--mods", *mods("ms1", MS1), "--jobs", 2)
    assert code == 1 and out.count("FAIL") >= 2


@pytest.mark.parametrize("argv", [["--cd", "x.cd"], ["--cd", "x.cd", "--mods", "y.od", "--scope", "-1"],
                                  ["--cd", "x.cd", "--mods", "y.od", "--int-range", "5..1"],
                                  ["--cd", "x.cd", "--mods", "y.od", "--backend", "bdd"]])
def test_bad_flags_exit_2(argv):
    with pytest.raises(SystemExit) as e:
        cli.main(argv)
    assert e.value.code == 2


def test_console_script():
    run_ = subprocess.run([sys.executable, "-m", "modcheck.cli", "--cd", str(corpus_path("cd1.cd")),
                           "--mods", *mods("ms1", MS1)], capture_output=True, text=True)
    assert run_.returncode == 0, run_.stderr
