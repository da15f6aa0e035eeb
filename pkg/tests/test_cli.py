from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from distver import LinearCode
from distver.cli import EXIT_BOUND, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main
from distver.formats import read_alist, write_alist
from instances import STEANE, hamming_matrix


@pytest.fixture
def hamming(tmp_path):
    path = tmp_path / "hamming.alist"
    write_alist(path, LinearCode.from_dense(hamming_matrix(3)))
    return path


@pytest.fixture
def steane(tmp_path):
    path = tmp_path / "steane.pauli"
    path.write_text("# Steane code\n" + "\n".join(STEANE) + "\n")
    return path


def _json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def _rows(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def test_distance_cs_hamming(hamming, capsys):
    assert main(["distance", str(hamming), "--algo", "cs"]) == EXIT_OK
    out = _json(capsys)
    assert out["distance"] == 3 and out["truncated"] is False
    assert {"witness", "trials", "manifest"} <= set(out)
    assert out["manifest"]["command"] == "distance"


def test_distance_ic_steane(steane, capsys):
    assert main(["distance", str(steane), "--algo", "ic", "--quantum"]) == EXIT_OK
    assert _json(capsys)["distance"] == 3


def test_distance_bound_only(hamming, capsys):
    assert main(["distance", str(hamming), "--algo", "ic", "--max-weight", "2"]) == EXIT_BOUND
    out = _json(capsys)
    assert out["truncated"] is True
    assert "d > 2" in json.dumps(out)


def test_distance_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.alist"
    bad.write_text("7 3\n3 4\n1 1\n")
    assert main(["distance", str(bad)]) == EXIT_INPUT
    assert str(bad) in capsys.readouterr().err


def test_distance_infeasible_brute(tmp_path, capsys):
    out = tmp_path / "big.alist"
    assert main(["sample", "--ensemble", "random", "--n", "40", "--k", "30", "--seed", "1", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["distance", str(out), "--algo", "brute"]) == EXIT_INFEASIBLE


def test_distance_syndrome(hamming, tmp_path, capsys):
    syn = tmp_path / "s.txt"
    syn.write_text("1 1 0\n")
    assert main(["distance", str(hamming), "--algo", "mb", "--syndrome", str(syn)]) == EXIT_OK
    assert _json(capsys)["distance"] == 1
    assert main(["distance", str(hamming), "--algo", "ic", "--syndrome", str(syn)]) == EXIT_INPUT


def test_sample_b(tmp_path, capsys):
    out = tmp_path / "b.alist"
    assert main(["sample", "--ensemble", "B", "--n", "12", "--l", "3", "--m", "6", "--seed", "4",
                 "--out", str(out)]) == EXIT_OK
    H = read_alist(out).H.dense()
    assert (H.sum(axis=0) == 3).all() and (H.sum(axis=1) == 6).all()
    meta = json.loads((tmp_path / "b.alist.json").read_text())
    assert meta["seed"] == 4
    assert (tmp_path / "b.alist.manifest.json").exists()


def test_sample_infeasible(tmp_path, capsys):
    assert main(["sample", "--ensemble", "A", "--n", "13", "--l", "3", "--m", "6", "--out",
                 str(tmp_path / "x.alist")]) == EXIT_INPUT


def test_sample_is_deterministic(tmp_path, capsys):
    files = []
    for name in ("one", "two"):
        out = tmp_path / f"{name}.alist"
        main(["sample", "--ensemble", "A", "--n", "24", "--l", "3", "--m", "6", "--seed", "9", "--out", str(out)])
        files.append((out.read_bytes(), (tmp_path / f"{name}.alist.json").read_bytes()))
    assert files[0] == files[1]


def test_sample_stabilizer(tmp_path, capsys):
    out = tmp_path / "s.pauli"
    assert main(["sample", "--ensemble", "stabilizer", "--n", "6", "--k", "1", "--seed", "2", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["distance", str(out), "--algo", "brute"]) == EXIT_OK


def test_table_nv(capsys):
    assert main(["exponents", "--table", "nv"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert any(r["q"] == "8" and r["v"] == "3" and r["N_v"] == "24" for r in rows)


def test_table_gamma(capsys):
    assert main(["exponents", "--table", "gamma"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert any(r["q"] == "3" and r["m"] == "3" and r["gamma"] == "1.20711" for r in rows)


def test_table_fig1(capsys):
    assert main(["exponents", "--table", "fig1", "--grid", "11"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "\r\n" in text
    rows = _rows(text)
    assert len(rows) == 11
    first = rows[0]
    assert float(first["R"]) == 0.0 and abs(float(first["F_CS"]) - 0.22) < 0.01


def test_table_params_and_fig2(tmp_path, capsys):
    out = tmp_path / "params.csv"
    assert main(["exponents", "--table", "params", "--lm", "3,6", "--out", str(out)]) == EXIT_OK
    row = _rows(out.read_text())[0]
    assert abs(float(row["theta_star"]) - 0.483) < 1e-3
    assert (tmp_path / "params.csv.manifest.json").exists()
    assert main(["exponents", "--table", "fig2", "--lm", "3,6", "--grid", "5"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert [r["series"] for r in rows] == ["gv"] * 5 + ["ldpc"]
    ldpc = rows[-1]
    assert (ldpc["l"], ldpc["m"], ldpc["R"]) == ("3", "6", "0.5")
    assert abs(float(ldpc["delta"]) - float(row["delta_star"])) < 1e-6


def test_unknown_table(capsys):
    assert main(["exponents", "--table", "bogus"]) == EXIT_INPUT


def test_replay(hamming, tmp_path, capsys):
    man = tmp_path / "run.json"
    assert main(["distance", str(hamming), "--algo", "sw", "--jobs", "1", "--manifest", str(man)]) == EXIT_OK
    capsys.readouterr()
    assert main(["replay", str(man), "--jobs", "4"]) == EXIT_OK
    assert _json(capsys)["identical"] is True
    hamming.write_text(hamming.read_text().replace("1 3 5 7", "1 3 5 7 "))
    assert main(["replay", str(man)]) == EXIT_INPUT


def test_replay_detects_changed_payload(hamming, tmp_path, capsys):
    man = tmp_path / "run.json"
    main(["distance", str(hamming), "--manifest", str(man)])
    data = json.loads(man.read_text())
    data["payload_sha256"] = "0" * 64
    man.write_text(json.dumps(data))
    capsys.readouterr()
    assert main(["replay", str(man)]) == EXIT_MISMATCH


def test_module_entry_point(hamming):
    out = subprocess.run([sys.executable, "-m", "distver", "distance", str(hamming), "--algo", "mb"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["distance"] == 3
