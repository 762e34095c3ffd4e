import json
import subprocess
import sys

import pytest

from fusionkit.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


@pytest.fixture(autouse=True)
def in_groups_dir(groups_dir, monkeypatch):
    monkeypatch.chdir(groups_dir)


def test_verify_plfg_s4(capsys):
    code, rep = call(capsys, "verify-plfg", "--group", "s4.grp", "--prime", "2")
    assert code == 0 and rep["schema"] == 1
    assert rep["saturated"] and all(rep["axioms"].values())


def test_saturate_normal_v4_fails(capsys):
    code, rep = call(capsys, "saturate", "--group", "s4.grp", "--prime", "2",
                     "--subgroup", "V4normal")
    assert code == 1 and not rep["saturated"]
    (f,) = rep["axiom_I_failures"]
    assert (f["aut_S"], f["aut_F"]) == (1, 6)


def test_classify_v4(capsys):
    # GL(2,2) = Sym3 has one subgroup of order 3, so W = 1 or W = Z/3
    code, rep = call(capsys, "classify-abelian", "--group", "v4.grp", "--prime", "2")
    assert code == 0 and rep["count"] == 2


@pytest.mark.parametrize("argv,expected", [
    (["fusion", "--group", "s3.grp", "--prime", "3"], 0),
    (["centrics", "--group", "s4.grp", "--prime", "2", "--subgroup", "D8"], 0),
    (["linking", "--group", "a4.grp", "--prime", "2"], 0),
    (["idempotent", "--group", "s3.grp", "--prime", "3"], 0),
    (["frobenius-check", "--group", "a4.grp", "--prime", "2"], 0),
    (["invariants", "--W", "c3_on_f2sq.mat", "--max-degree", "6"], 0),
    (["coh-check", "--W", "c2_on_f3.mat", "--max-degree", "6"], 0),
    (["cohomology", "--module", "z2_trivial.mod"], 0),
    (["saturate", "--group", "s4.grp", "--prime", "2", "--subgroup", "(1 2)(3 4); (1 3)(2 4)"], 1),
    (["saturate", "--group", "s4.grp", "--prime", "2", "--subgroup", "(1 2 3 4)"], 1),
    (["saturate", "--group", "missing.grp", "--prime", "2"], 2),
    (["saturate", "--group", "s4.grp", "--prime", "6"], 2),
    (["saturate", "--group", "s4.grp"], 2),
    (["saturate", "--group", "s4.grp", "--prime", "2", "--subgroup", "(1 2 3)"], 2),
    (["saturate", "--group", "s4.grp", "--prime", "2", "--subgroup", "(1 9)"], 2),
    (["saturate", "--group", "s4.grp", "--prime", "2", "--order-bound", "10"], 2),
    (["idempotent", "--group", "s3.grp", "--prime", "3", "--precision", "0"], 2),
    (["idempotent", "--group", "s4.grp", "--prime", "2", "--subgroup", "V4normal"], 2),
    (["invariants", "--W", "c3_on_f2sq.mat", "--prime", "3"], 2),
    (["invariants", "--W", "c3_on_f2sq.mat", "--max-degree", "-1"], 2),
    (["classify-abelian", "--group", "s3.grp", "--prime", "3"], 2),
    (["no-such-command"], 2),
])
def test_exit_codes(capsys, argv, expected):
    assert run(argv) == expected
    out, err = capsys.readouterr()
    if expected == 2:
        assert out == ""
    else:
        assert json.loads(out)["command"] == argv[0]


def test_malformed_group_file(tmp_path, capsys):
    bad = tmp_path / "bad.grp"
    bad.write_text("degree: 3\n(1 2\n")
    assert run(["fusion", "--group", str(bad), "--prime", "2"]) == 2
    assert "error" in capsys.readouterr().err


def test_config_file_and_override(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("group = s4.grp\nprime = 2\nsubgroup = V4normal\n")
    assert run(["saturate", "--config", str(conf)]) == 1
    capsys.readouterr()
    assert run(["saturate", "--config", str(conf), "--subgroup", "sylow"]) == 0
    conf.write_text("colour = blue\n")
    assert run(["saturate", "--config", str(conf)]) == 2


def test_out_file_and_byte_identical_reports(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["idempotent", "--group", "a4.grp", "--prime", "2", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert a.read_bytes() == b.read_bytes()
    terms = json.loads(a.read_text())["element"]["terms"]
    assert {(t["numerator"], t["denominator"]) for t in terms} == {(1, 3)}


def test_truncated_idempotent_report(capsys):
    code, rep = call(capsys, "idempotent", "--group", "a4.grp", "--prime", "2", "--precision", "1")
    assert code == 0 and not rep["exact"]
    assert all("residue" in t for t in rep["element"]["terms"])


def test_console_script_entry_point(groups_dir):
    r = subprocess.run([sys.executable, "-m", "fusionkit.cli", "verify-plfg", "--group",
                        "s3.grp", "--prime", "3"], capture_output=True, text=True, cwd=groups_dir)
    assert r.returncode == 0 and json.loads(r.stdout)["p_local_finite_group"]
