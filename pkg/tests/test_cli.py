import json
import subprocess
import sys

import pytest

from torsionbound.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group(capsys):
    code, out, _ = run(capsys, "group", "CARTAN", "41", "--json", "--no-timestamp")
    data = json.loads(out)
    assert code == 0 and data["order"] == 3360 and data["contains_scalars"] is True


def test_group_unknown_kind(capsys):
    code, _, err = run(capsys, "group", "SPLIT", "5")
    assert code == 2 and "SPLIT" in err


def test_group_cap(capsys):
    code, _, _ = run(capsys, "group", "FULL", "13", "--cap", "100")
    assert code == 2


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "CARTAN", "41", "--subgroups", "--json", "--no-timestamp")
    data = json.loads(out)
    assert code == 0 and data["orbit_sizes"] == {"42": 1}


def test_orbit_text(capsys):
    code, out, _ = run(capsys, "orbit", "FULL", "5")
    assert code == 0 and "24" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "CARTAN_DEG", "--json", "--no-timestamp")
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_unknown_suite(capsys):
    code, _, _ = run(capsys, "verify", "NOPE")
    assert code == 2


def test_bound_emit_and_audit(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, "bound", "--epsilon", "0.1", "--emit", str(cert))
    assert code == 0 and json.loads(cert.read_text())["Z"] == str(24**11 + 1)

    data = tmp_path / "d.csv"
    data.write_text("id,field_degree,j_degree,isogeny_degree,torsion_d,torsion_N\n"
                    "good,840,1,1,1,41\nbad,2,1,1,1,41\n")
    code, out, _ = run(capsys, "audit", str(data), "--cert", str(cert), "--json", "--no-timestamp")
    rep = json.loads(out)
    assert code == 1 and rep["summary"] == {"PASS": 1, "FAIL": 1, "INCONCLUSIVE": 0}

    data.write_text("id,field_degree,j_degree,isogeny_degree,torsion_d,torsion_N\ngood,840,1,1,1,41\n")
    code, _, _ = run(capsys, "audit", str(data), "--cert", str(cert))
    assert code == 0


def test_audit_rejects_tampered_certificate(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    run(capsys, "bound", "--epsilon", "0.25", "--emit", str(cert))
    blob = json.loads(cert.read_text())
    blob["trace"][3]["output"] = "1/1"
    cert.write_text(json.dumps(blob))
    data = tmp_path / "d.csv"
    data.write_text("id,field_degree,j_degree,isogeny_degree,torsion_d,torsion_N\n")
    code, _, err = run(capsys, "audit", str(data), "--cert", str(cert))
    assert code == 3 and "does not verify" in err


def test_audit_schema_error(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    run(capsys, "bound", "--epsilon", "0.4", "--emit", str(cert))
    data = tmp_path / "d.csv"
    data.write_text("id,field_degree,j_degree,isogeny_degree,torsion_d,torsion_N\nx,1,1,1,2,3\n")
    code, _, _ = run(capsys, "audit", str(data), "--cert", str(cert))
    assert code == 3
    code, _, _ = run(capsys, "audit", str(tmp_path / "missing.csv"), "--cert", str(cert))
    assert code == 3


def test_bound_z_only(capsys):
    code, out, _ = run(capsys, "bound", "--epsilon", "1", "--json", "--no-timestamp")
    data = json.loads(out)
    assert code == 0 and data["certificate"]["Z"] == "577"


def test_bound_bad_epsilon(capsys):
    code, _, _ = run(capsys, "bound", "--epsilon", "-1")
    assert code == 2


def test_admissible(capsys):
    code, out, _ = run(capsys, "admissible", "--degree", "840", "--json", "--no-timestamp")
    assert code == 0 and [a["ell"] for a in json.loads(out)["admissible"]] == [41]
    code, out, _ = run(capsys, "admissible", "--degree", "839")
    assert code == 0 and "no point" in out


def test_synth_and_audit_toy(capsys, tmp_path):
    out, cert, truth = tmp_path / "s.csv", tmp_path / "toy.json", tmp_path / "truth.json"
    code, _, _ = run(capsys, "synth-dataset", "--out", str(out), "--count", "200", "--toy",
                     "--emit-cert", str(cert), "--truth", str(truth))
    assert code == 0
    code, text, _ = run(capsys, "audit", str(out), "--cert", str(cert), "--json", "--no-timestamp")
    assert code == 1
    expected = json.loads(truth.read_text())
    for rep in json.loads(text)["reports"]:
        want = expected[rep["id"]]["expected"]
        for c in rep["checks"]:
            if c["verdict"] in ("PASS", "FAIL"):
                assert c["verdict"] == want[c["rule"]]


def test_deterministic_output(capsys):
    argv = ("bound", "--epsilon", "0.25", "--json", "--no-timestamp")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_timestamp_present_by_default(capsys):
    _, out, _ = run(capsys, "admissible", "--degree", "5", "--json")
    assert "generated_at" in json.loads(out)


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as info:
        main(["bound"])
    assert info.value.code == 2


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "torsionbound.cli", "admissible", "--degree", "924"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "ell=43" in proc.stdout
