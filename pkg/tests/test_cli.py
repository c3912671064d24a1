import csv
import io
import json
import subprocess
import sys

import pytest

from zetalab.cli import main
from zetalab.spectra import save_spectrum, synth_spectrum


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_graph_zeta_c3(capsys, c3_file):
    code, out, _ = run(capsys, "graph", "zeta", "--graph", str(c3_file))
    assert code == 0
    assert out.strip() == "[1,0,0,-2,0,0,1]"


def test_graph_both_oracles_and_divisor(capsys, c3_file):
    code, out, err = run(capsys, "graph", "zeta", "--graph", str(c3_file), "--oracle", "both",
                         "--max-len", "12", "--divisor")
    assert code == 0 and "PASS" in err
    first, table = out.split("\n", 1)
    assert json.loads(first) == [1, 0, 0, -2, 0, 0, 1]
    roots = rows(table)
    assert [int(r["multiplicity"]) for r in roots] == [2, 2, 2]


def test_missing_file_exit_3(capsys, tmp_path):
    missing = tmp_path / "nowhere.txt"
    code, _, err = run(capsys, "graph", "zeta", "--graph", str(missing))
    assert code == 3
    assert str(missing) in err


def test_invalid_graph_exit_3(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("p 3 2\n0 1\n1 2\n")
    assert run(capsys, "graph", "zeta", "--graph", str(path))[0] == 3


def test_usage_error_exit_2(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "selberg")[0] == 2
    assert run(capsys, "regdet", "--shifted", "1", "--tol", "-1")[0] == 2


def test_regdet(capsys, tmp_path):
    code, out, _ = run(capsys, "regdet", "--shifted", "1", "--lambda", "0,0.5")
    assert code == 0
    dets = [float(r["det"]) for r in rows(out)]
    assert dets[0] == pytest.approx(2.5066282746310002, abs=1e-9)
    assert dets[1] == pytest.approx(2.8284271247461903, abs=1e-9)
    ev = tmp_path / "ev.txt"
    ev.write_text("1\n2\n3\n")
    code, out, _ = run(capsys, "regdet", "--file", str(ev), "--lambda", "0,-2")
    assert [float(r["det"]) for r in rows(out)] == [6.0, 0.0]
    assert rows(out)[1]["flag"] == "zero"
    code, out, _ = run(capsys, "regdet", "--poly", "0,0,1", "--offset", "1", "--format", "json")
    assert json.loads(out)[0]["det"] == pytest.approx(6.283185307179586, abs=1e-9)


@pytest.fixture
def spectrum_file(tmp_path):
    path = tmp_path / "spec.json"
    save_spectrum(synth_spectrum("random", seed=7, d1=2, d2=1), path)
    return path


def test_selberg_grid(capsys, spectrum_file):
    code, out, _ = run(capsys, "selberg", "--spectrum", str(spectrum_file), "--q", "1", "--p", "0",
                       "--s", "2,1", "--grid", "2:3:3", "--tol", "1e-10")
    assert code == 0
    table = rows(out)
    assert list(table[0]) == ["s_re", "s_im", "logZ_re", "logZ_im", "tail_bound"]
    assert [float(r["s_re"]) for r in table] == [2.0, 2.5, 3.0]
    assert all(float(r["s_im"]) == 1.0 and float(r["tail_bound"]) <= 1e-10 for r in table)


def test_ruelle_below_abscissa(capsys, spectrum_file):
    code, _, err = run(capsys, "ruelle", "--spectrum", str(spectrum_file), "--s", "0.01,0")
    assert code == 3 and "abscissa" in err


def test_bad_spectrum_exit_3(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"alpha_norm": 1, "d1": 0, "d2": 0, "classes": [], "x": 1}')
    assert run(capsys, "selberg", "--spectrum", str(path), "--s", "2,0")[0] == 3


def test_tf_verify(capsys):
    code, out, _ = run(capsys, "tf", "verify", "--group", "s4", "--subgroup", "perm:(1 2 3 4)",
                       "--omega", "sign", "--trials", "4", "--seed", "1")
    assert code == 0
    table = rows(out)
    assert len(table) == 4 and all(r["status"] == "PASS" for r in table)


def test_tf_unavailable_omega(capsys):
    code, _, err = run(capsys, "tf", "verify", "--group", "s4", "--subgroup", "perm:(1 2 3)", "--omega", "sign")
    assert code == 3 and "sign" in err


def test_tf_table_file_and_omega_file(capsys, tmp_path):
    from zetalab.groups import cyclic_group

    table = tmp_path / "c4.txt"
    table.write_text("\n".join(" ".join(map(str, row)) for row in cyclic_group(4).mul))
    omega = tmp_path / "omega.json"
    omega.write_text(json.dumps({"matrices": {"0": [[[1, 0]]], "2": [[[-1, 0]]]}}))
    code, out, _ = run(capsys, "tf", "verify", "--group", str(table), "--subgroup", "gen:2",
                       "--omega", str(omega), "--trials", "3")
    assert code == 0 and len(rows(out)) == 3


def test_verify_decomposition(capsys, spectrum_file):
    code, out, _ = run(capsys, "verify", "decomposition", "--spectrum", str(spectrum_file), "--samples", "3")
    assert code == 0
    assert [r["status"] for r in rows(out)] == ["PASS"] * 3


def test_verify_all(capsys):
    code, out, err = run(capsys, "verify", "all", "--seed", "0")
    assert code == 0
    table = rows(out)
    assert {r["suite"] for r in table} == {"regprod", "selberg", "graph", "tf"}
    assert all(r["status"] == "PASS" for r in table)
    for suite in ("regprod", "selberg", "graph", "tf"):
        assert suite in err


def test_output_file_and_determinism(capsys, tmp_path, spectrum_file):
    outs = []
    for k in range(2):
        path = tmp_path / f"out{k}.csv"
        code, stdout, _ = run(capsys, "--out", str(path), "selberg", "--spectrum", str(spectrum_file),
                              "--s", "2,1", "--grid", "2:4:5")
        assert code == 0 and stdout == ""
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point(c3_file):
    proc = subprocess.run([sys.executable, "-m", "zetalab", "graph", "zeta", "--graph", str(c3_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "[1,0,0,-2,0,0,1]"


def test_verify_single_failure_exits_1(capsys, monkeypatch):
    from zetalab import verify

    monkeypatch.setitem(verify.SUITES, "broken", lambda seed=0: [verify.Check("broken", "always", False, "")])
    code, out, err = run(capsys, "verify", "all")
    assert code == 1
    assert "broken   FAIL" in err and "tf       PASS" in err
