"""Command-line behaviour: exit codes, reports, byte-stable JSON output."""

from __future__ import annotations

import json
import subprocess
import sys

from twistcert.cli import main


def run_cli(*argv):
    """Run in-process, capturing stdout via subprocess for byte fidelity."""
    proc = subprocess.run(
        [sys.executable, "-m", "twistcert.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc


def test_lemma_count_passes():
    assert main(["lemma", "count", "--genus-min", "1", "--genus-max", "500"]) == 0


def test_lemma_goodchains_small():
    assert main(["lemma", "goodchains", "--genus-min", "2", "--genus-max", "3"]) == 0


def test_lemma_fit():
    assert main(["lemma", "fit", "--genus-min", "1", "--genus-max", "8"]) == 0


def test_certify_then_check_round_trip(tmp_path):
    out = tmp_path / "cert.json"
    assert main(["certify", "--genus", "3", "--dim", "2", "--theorem", "technical",
                 "--out", str(out)]) == 0
    assert out.exists()
    assert main(["check", str(out)]) == 0


def test_certify_failure_exit_code(capsys):
    code = main(["certify", "--genus", "3", "--dim", "3", "--theorem", "main"])
    assert code == 1
    assert "DIM_TOO_LARGE" in capsys.readouterr().out


def test_check_rejects_tampered_file(tmp_path, capsys):
    out = tmp_path / "cert.json"
    main(["certify", "--genus", "3", "--dim", "2", "--out", str(out)])
    doc = json.loads(out.read_text())
    node = next(n for n in doc["nodes"] if n["rule"] == "connected_bootstrap")
    node["params"]["n"] += 1
    out.write_text(json.dumps(doc))
    code = main(["check", str(out)])
    assert code == 1
    assert "violation" in capsys.readouterr().out


def test_check_missing_file_is_usage_error():
    assert main(["check", "/nonexistent/cert.json"]) == 2


def test_classify_set(capsys):
    assert main(["classify", "--genus", "3", "--set", "a2,b2,g1,g2"]) == 0
    assert "genus <= 1" in capsys.readouterr().out


def test_classify_all_json(capsys):
    assert main(["classify", "--genus", "2", "--all", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["checked"] == 15
    assert doc["pass"] is True


def test_classify_rejects_disconnected():
    assert main(["classify", "--genus", "3", "--set", "a1,a2"]) == 2


def test_usage_error_exit_code():
    proc = run_cli("lemma", "nosuchlemma")
    assert proc.returncode == 2


def test_json_outputs_byte_stable():
    a = run_cli("lemma", "goodchains", "--genus-min", "2", "--genus-max", "3", "--json")
    b = run_cli("lemma", "goodchains", "--genus-min", "2", "--genus-max", "3", "--json")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    doc = json.loads(a.stdout)
    assert doc["pass"] is True and "wall" not in a.stdout


def test_json_certify_byte_stable():
    a = run_cli("certify", "--genus", "4", "--dim", "3", "--theorem", "kg", "--json")
    b = run_cli("certify", "--genus", "4", "--dim", "3", "--theorem", "kg", "--json")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_certificate_files_byte_stable(tmp_path):
    f1, f2 = tmp_path / "c1.json", tmp_path / "c2.json"
    run_cli("certify", "--genus", "4", "--dim", "3", "--out", str(f1))
    run_cli("certify", "--genus", "4", "--dim", "3", "--out", str(f2))
    assert f1.read_bytes() == f2.read_bytes()


def test_nerve_demos():
    assert main(["nerve", "--demo", "helly1d"]) == 0
    assert main(["nerve", "--demo", "sphere-joins"]) == 0


def test_genus_two_certificate_round_trip(tmp_path):
    out = tmp_path / "g2.json"
    assert main(["certify", "--genus", "2", "--dim", "1", "--theorem", "kg",
                 "--out", str(out)]) == 0
    assert main(["check", str(out)]) == 0
    assert main(["certify", "--genus", "2", "--dim", "2"]) == 1


def test_exhaustive_cap_warning(tmp_path, capsys):
    out = tmp_path / "cert.json"
    main(["certify", "--genus", "3", "--dim", "2", "--out", str(out)])
    assert main(["check", str(out), "--exhaustive-max-genus", "12"]) == 0
    assert "capped" in capsys.readouterr().err
