"""Command-line driver: exit codes, stdout payloads, JSON artifacts."""

import json

import pytest

from tauforge.cli import main
from tauforge.modrep import rank_vector, rep_from_json
from tauforge.zoo import build_named


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_delta_by_name(capsys):
    code, out, err = run(capsys, "delta", "--datum", "B3")
    assert code == 0
    assert out == "1,1,1,1\n"
    assert err.startswith("#")


def test_delta_from_file(capsys, tmp_path):
    code, out, _ = run(capsys, "zoo", "--build", "Bn.Z", "--n", "3",
                       "--json", str(tmp_path / "z.json"))
    assert code == 0
    blob = json.loads((tmp_path / "z.json").read_text())
    datum_file = tmp_path / "b3.json"
    datum_file.write_text(json.dumps(blob["datum"]))
    code, out, _ = run(capsys, "delta", "--datum", str(datum_file))
    assert code == 0
    assert out == "1,1,1,1\n"


def test_roots_negative_height_is_usage_error(capsys):
    code, _, err = run(capsys, "roots", "--datum", "B3", "--height", "-3")
    assert code == 2
    assert "error:" in err


def test_roots_classify_lines(capsys):
    code, out, _ = run(capsys, "roots", "--datum", "A11", "--height", "4",
                       "--classify")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines
    assert all("height=" in ln and "kind=" in ln for ln in lines)
    assert any("2,1" in ln and "kind=regular" in ln for ln in lines)


def test_coxeter_payload(capsys):
    code, out, _ = run(capsys, "coxeter", "--datum", "B3")
    assert code == 0
    assert "sequence=4,3,2,1" in out
    assert "N=3" in out
    assert "nu=2,0,0,-2" in out
    assert "beta[4]=1,1,1,2" in out
    assert "gamma[1]=2,1,1,1" in out


def test_coxeter_apply_vector(capsys):
    code, out, _ = run(capsys, "coxeter", "--datum", "G21",
                       "--apply", "1", "--vector", "1,2,1")
    assert code == 0
    assert out.strip().splitlines()[-1] == "1,2,1"   # delta is fixed


def test_unknown_datum_name(capsys):
    code, _, err = run(capsys, "delta", "--datum", "Q9")
    assert code == 2
    assert "error:" in err


def test_mod_tau_round_trip(capsys, tmp_path):
    mod_file = tmp_path / "z.json"
    code, _, _ = run(capsys, "zoo", "--build", "G21.Z", "--json", str(mod_file))
    assert code == 0
    out_file = tmp_path / "tz.json"
    code, out, _ = run(capsys, "mod", "tau", str(mod_file),
                       "--json", str(out_file))
    assert code == 0
    translated = rep_from_json(json.loads(out_file.read_text()))
    assert rank_vector(translated) == (1, 2, 1)


def test_mod_tau_orbit_reports_period(capsys, tmp_path):
    mod_file = tmp_path / "z.json"
    run(capsys, "zoo", "--build", "G21.Z", "--json", str(mod_file))
    code, out, _ = run(capsys, "mod", "tau", str(mod_file), "--orbit", "4")
    assert code == 0
    assert "period=2" in out


def test_mod_classify_not_root_exit(capsys, tmp_path):
    mod_file = tmp_path / "y.json"
    run(capsys, "zoo", "--build", "G21.Y", "--json", str(mod_file))
    code, out, err = run(capsys, "mod", "tau", str(mod_file), "--classify")
    assert code == 1
    assert "not_root" in out + err


def test_mod_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "mod", "tau", str(tmp_path / "absent.json"))
    assert code == 2
    assert "error:" in err


def test_mod_corrupt_module_is_math_failure(capsys, tmp_path):
    mod_file = tmp_path / "z.json"
    run(capsys, "zoo", "--build", "G21.Z", "--json", str(mod_file))
    blob = json.loads(mod_file.read_text())
    size = blob["dims"]["3"]
    blob["maps"]["eps[3]"] = [[1 if r == c else 0 for c in range(size)]
                              for r in range(size)]   # not nilpotent
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(blob))
    code, _, err = run(capsys, "mod", "tau", str(bad))
    assert code == 1
    assert "fail:" in err


def test_reflect_non_sink_is_usage_error(capsys, tmp_path):
    mod_file = tmp_path / "z.json"
    run(capsys, "zoo", "--build", "Bn.Z", "--n", "3", "--json", str(mod_file))
    code, _, err = run(capsys, "reflect", str(mod_file),
                       "--vertex", "1", "--dir", "+")
    assert code == 2
    assert "error:" in err


def test_reflect_round_trip(capsys, tmp_path):
    mod_file = tmp_path / "z.json"
    run(capsys, "zoo", "--build", "Bn.Z", "--n", "3", "--json", str(mod_file))
    once = tmp_path / "r.json"
    code, out, _ = run(capsys, "reflect", str(mod_file),
                       "--vertex", "4", "--dir", "+", "--json", str(once))
    assert code == 0
    back = tmp_path / "rr.json"
    code, out, _ = run(capsys, "reflect", str(once),
                       "--vertex", "4", "--dir", "-", "--json", str(back))
    assert code == 0
    restored = rep_from_json(json.loads(back.read_text()))
    _, Z = build_named("Bn.Z", n=3)
    assert rank_vector(restored) == rank_vector(Z)


def test_zoo_list_contains_catalogue(capsys):
    code, out, _ = run(capsys, "zoo", "--list")
    assert code == 0
    assert "G21.Z" in out and "Bn.MlamB" in out


def test_zoo_build_unknown_id(capsys):
    code, _, err = run(capsys, "zoo", "--build", "Bn.nope", "--n", "3")
    assert code == 2
    assert "error:" in err


def test_zoo_spotcheck(capsys):
    code, out, _ = run(capsys, "zoo", "--spotcheck", "G21", "--height", "6")
    assert code == 0
    assert "thmA.G21" in out and "pass" in out


def test_verify_single_check(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "paper",
                       "--filter", "typeG1")
    assert code == 0
    assert "typeG1" in out and "pass" in out


def test_verify_unmatched_filter(capsys):
    code, _, err = run(capsys, "verify", "--suite", "paper",
                       "--filter", "nosuch")
    assert code == 2
    assert "error:" in err


def test_verify_json_artifact_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code, _, _ = run(capsys, "verify", "--suite", "paper",
                     "--filter", "lem0", "--n", "3", "--json", str(a))
    assert code == 0
    code, _, _ = run(capsys, "verify", "--suite", "paper",
                     "--filter", "lem0", "--n", "3", "--json", str(b))
    assert code == 0
    assert a.read_bytes() == b.read_bytes()
    payload = json.loads(a.read_text())
    assert payload[0]["checkId"] == "lem0"
    assert payload[0]["status"] == "pass"


def test_bad_field_spec(capsys):
    code, _, err = run(capsys, "verify", "--suite", "paper",
                       "--filter", "typeG1", "--field", "gf4")
    assert code == 2
    assert "error:" in err
