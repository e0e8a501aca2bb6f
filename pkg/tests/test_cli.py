import io
import json
import subprocess
import sys

import pytest

from homleib import catalog, document
from homleib.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def export(tmp_path):
    def _export(id_, *params, variant="listed"):
        code, text = run("export", id_, "--variant", variant, *(["--params", *params] if params else []))
        assert code == 0
        path = tmp_path / f"{id_.replace('^', '_')}.json"
        path.write_text(text)
        return str(path)

    return _export


# -- check ---------------------------------------------------------------------------


def test_check_symmetric_algebra_all(export):
    code, text = run("check", export("L_2^1"), "--identity", "all")
    assert code == 0
    assert "right Hom-Leibniz: holds" in text


def test_check_right_fails_with_witness(export):
    code, text = run("check", export("L_1^1"), "--identity", "right")
    assert code == 1
    assert "fails at ('e" in text


def test_check_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("check", str(bad))[0] == 2
    assert "line 1 column" in capsys.readouterr().err


def test_check_missing_file():
    assert run("check", "/nonexistent/file.json")[0] == 2


def test_unknown_subcommand_or_flag():
    assert run("frobnicate")[0] == 2
    assert run("check", "x.json", "--identity", "nonsense")[0] == 2


# -- solve ---------------------------------------------------------------------------


def test_solve_centroid_L11(export):
    code, text = run("solve", export("L_1^1"), "--kind", "centroid", "--r", "0")
    assert code == 0
    data = json.loads(text)
    assert data["dim"] == 2
    assert sorted(data["basis"]) == sorted([[["0", "1"], ["0", "0"]], [["1", "0"], ["0", "1"]]])


def test_solve_L15_derivations_computed_value(export):
    code, text = run("solve", export("L_1^5", "b=2", variant="header"), "--kind", "der", "--r", "1")
    assert code == 0
    assert json.loads(text)["basis"] == [[["1", "0"], ["0", "1/4"]]]


def test_solve_gen_on_zero_bracket_gives_commutant(tmp_path):
    data = {"field": "Q", "dim": 2, "alpha": [["1", "1"], ["0", "1"]]}
    path = tmp_path / "z.json"
    path.write_text(json.dumps(data))
    code, text = run("solve", str(path), "--kind", "gen", "--lambda", "1", "--mu", "0", "--gamma", "0")
    assert code == 0
    assert json.loads(text)["dim"] == 2


def test_solve_gen_needs_weights(export):
    assert run("solve", export("L_2^1"), "--kind", "gen", "--lambda", "1")[0] == 2


def test_solve_zder_and_two_sided(export):
    path = export("L_2^1")
    assert json.loads(run("solve", path, "--kind", "zder")[1])["dim"] == 1
    assert json.loads(run("solve", path, "--kind", "centroid", "--two-sided")[1])["dim"] == 2


def test_solve_parity_on_ungraded_is_usage_error(export):
    assert run("solve", export("L_2^1"), "--kind", "der", "--parity", "1")[0] == 2


# -- tables -----------------------------------------------------------------------------


def test_tables_L41_shows_cn_no(capsys):
    code, text = run("tables", "--id", "L_4^1", "--rmax", "1")
    assert code == 0
    assert "| No |" in text
    assert "2 verified, 0 failed" in capsys.readouterr().err


def test_tables_unknown_id():
    assert run("tables", "--id", "L_9^9")[0] == 2


def test_tables_needs_selection():
    assert run("tables")[0] == 2


def test_tables_json_report(tmp_path):
    path = tmp_path / "rep.json"
    code, text = run("tables", "--id", "L_4^1", "--rmax", "0", "--format", "json", "--json", str(path))
    assert code == 0
    assert json.loads(text) == json.loads(path.read_text())
    assert json.loads(text)[0]["status"] == "ok"


def test_tables_reports_failures_with_exit_1():
    code, text = run("tables", "--id", "L_1^4", "--rmax", "0")
    assert code == 1
    assert "FAIL derivations" in text


# -- twist / tensor ------------------------------------------------------------------------


def test_twist_identity_keeps_document(export):
    path = export("L_2^1")
    code, text = run("twist", path, "--beta", "[[1,0],[0,1]]")
    assert code == 0
    assert document.loads(text).algebra == catalog.instantiate("L_2^1")


def test_twist_output_is_symmetric(export, tmp_path):
    code, text = run("twist", export("L_2^1"), "--beta", "[[4,0],[0,2]]")
    assert code == 0
    out = tmp_path / "tw.json"
    out.write_text(text)
    assert run("check", str(out), "--identity", "symmetric")[0] == 0


def test_twist_non_endomorphism(export, capsys):
    assert run("twist", export("L_2^1"), "--beta", "[[1,0],[0,2]]")[0] == 1
    assert "witness" in capsys.readouterr().err


def test_twist_bad_beta(export):
    assert run("twist", export("L_2^1"), "--beta", "[[1,0]]")[0] == 2


def test_tensor_then_check(export, tmp_path):
    path = export("L_4^1")
    code, text = run("tensor", path)
    assert code == 0
    out = tmp_path / "t.json"
    out.write_text(text)
    assert json.loads(text)["dim"] == 4
    assert run("check", str(out), "--identity", "right")[0] == 0


def test_tensor_of_non_lie(export):
    assert run("tensor", export("L_2^1"))[0] == 1


# -- enumerate -----------------------------------------------------------------------------


def test_enumerate_count():
    code, text = run("enumerate", "--p", "3", "--sidedness", "left")
    assert code == 0
    assert json.loads(text)["count"] == 7137


def test_enumerate_char_two():
    assert run("enumerate", "--p", "2")[0] == 2


def test_enumerate_classify_partition():
    code, text = run("enumerate", "--p", "3", "--classify")
    data = json.loads(text)
    assert code == 0
    assert data["orbit_total"] == data["count"] == sum(c["orbit_size"] for c in data["classes"])


def test_enumerate_budget(monkeypatch):
    monkeypatch.setenv("HOMLEIB_BUDGET", "10")
    assert run("enumerate", "--p", "3")[0] == 2


# -- console script -----------------------------------------------------------------------


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "homleib.cli", "export", "L_2^1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    path = tmp_path / "a.json"
    path.write_text(proc.stdout)
    proc = subprocess.run(
        [sys.executable, "-m", "homleib.cli", "check", "-"], input=proc.stdout, capture_output=True, text=True
    )
    assert proc.returncode == 0
