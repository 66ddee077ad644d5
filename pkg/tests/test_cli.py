import json
import subprocess
import sys

import pytest

from ioconf.cli import main

from conftest import fixture_path

EX2 = str(fixture_path("ex2.lts"))
EX6 = str(fixture_path("ex6.lts"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_iocos_exit_codes(capsys):
    assert run(capsys, "iocos", EX2, "i", "s")[0] == 0
    code, data = run_json(capsys, "iocos", EX2, "s", "i")
    assert code == 1
    assert data == {"holds": False, "rank": 1, "witness": "<<a?>>ff"}


def test_witness_is_checked_by_mc(capsys):
    _, data = run_json(capsys, "iocos", EX6, "i", "s")
    phi = data["witness"]
    assert run(capsys, "mc", EX6, "i", phi)[0] == 0
    assert run(capsys, "mc", EX6, "s", phi)[0] == 1


def test_equivalence_mode(capsys):
    assert run(capsys, "iocos", EX2, "i", "s", "--equiv")[0] == 1


def test_dual_fragment_witness(capsys):
    code, data = run_json(capsys, "iocos", EX6, "i", "s", "--fragment", "Lt_iocos")
    assert code == 1
    assert data["witness"] == "[[a?]]([a!]ff | [b!]ff)"
    assert run(capsys, "mc", EX6, "s", data["witness"])[0] == 0
    assert run(capsys, "mc", EX6, "i", data["witness"])[0] == 1


def test_ioco(capsys):
    assert run(capsys, "ioco", EX6, "i", "s")[0] == 0
    code, out, _ = run(capsys, "ioco", EX2, "s", "i", "--depth", "3")
    assert code == 0 and "holds" in out


def test_bridge(capsys):
    code, data = run_json(capsys, "bridge", EX6, "i", "s")
    assert code == 1
    assert data["ioco"] is True and data["iocos"] is False


def test_distinguish(capsys):
    code, out, _ = run(capsys, "distinguish", EX6, "i", "s")
    assert code == 1 and out.strip() == "<<a?>>(<a!>tt & <b!>tt)"
    assert run(capsys, "distinguish", EX2, "i", "s")[0] == 0


def test_charform_round_trips_through_mc(capsys):
    _, out, _ = run(capsys, "charform", EX2, "s")
    assert out.strip() == "max X_s = [delta!]X_s;"
    assert run(capsys, "mc", EX2, "i", out.strip())[0] == 0


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", EX2)[0] == 0
    bad = tmp_path / "bad.lts"
    bad.write_text("outputs b\nstate p q\ntrans p b! q\n")
    code, data = run_json(capsys, "validate", str(bad))
    assert code == 1 and not data["coherent"]
    assert run(capsys, "iocos", str(bad), "p", "p")[0] == 2
    assert run(capsys, "iocos", str(bad), "p", "p", "--close-quiescence")[0] == 0


def test_gsos_check(capsys):
    assert run(capsys, "gsos-check", str(fixture_path("merge.gsos")))[0] == 0
    assert run(capsys, "gsos-check", str(fixture_path("merge.gsos")), "--quiescence")[0] == 1
    code, data = run_json(capsys, "gsos-check", str(fixture_path("ce3_clause2a.gsos")))
    assert code == 1
    assert {v["clause"] for v in data["iocos_format"]["violations"]} == {"2(a)"}


def test_gsos_lts(capsys):
    code, out, _ = run(capsys, "gsos-lts", str(fixture_path("merge.gsos")),
                       str(fixture_path("decomp_bases.lts")), "and2(@p0,@p1)")
    assert code == 0
    assert "and2(@p0,@p1)" in out


def test_decompose(capsys):
    gsos = str(fixture_path("decomp_worked.gsos"))
    code, data = run_json(capsys, "decompose", gsos, "f(x)", "<<a?>><b!>tt")
    assert code == 0
    assert data["decomposition"] == [{"x": "<<a?>>ff"}, {"x": "<b!>tt"}, {"x": "tt"}]
    code, data = run_json(capsys, "decompose", gsos, "f(x)", "<<a?>><b!>tt",
                          "--base", str(fixture_path("decomp_bases.lts")), "--subst", "x=p0")
    assert code == 0 and data["direct"] is data["decomposed"] is True


def test_decompose_reports_mismatch(capsys, tmp_path):
    base = tmp_path / "q.lts"
    base.write_text("state s\ntrans s delta! s\n")
    code, data = run_json(capsys, "decompose", str(fixture_path("decomp_nonformat.gsos")), "f(x)",
                          "<<a?>><<a?>>ff", "--base", str(base), "--subst", "x=s")
    assert code == 1
    assert (data["direct"], data["decomposed"]) == (False, True)


@pytest.mark.parametrize("argv", [
    ["iocos", "missing.lts", "i", "s"],
    ["iocos", EX2, "i", "nowhere"],
    ["mc", EX2, "i", "<a?"],
    ["decompose", str(fixture_path("merge.gsos")), "and2(x,y)", "[a!]ff"],
    ["bogus"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_deterministic_output(capsys):
    outs = {run(capsys, "charform", EX6, "s", "--format", "json")[1] for _ in range(3)}
    assert len(outs) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ioconf", "iocos", EX2, "s", "i"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "witness" in proc.stdout
