import json
import subprocess
import sys

import pytest

from apg.cli import main

S3 = {"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_theta_dihedral_20(capsys):
    code, out = _run(capsys, "theta", "--family", "dihedral:20")
    doc = json.loads(out.out)
    assert code == 0 and doc["value"] == 6 and doc["certificate"]["kind"] == "CentralizerMinimal"


def test_theta_psl2_7(capsys):
    code, out = _run(capsys, "theta", "--family", "psl2:7")
    assert code == 0 and json.loads(out.out)["value"] == 57


def test_theta_s3_exact_is_nap(tmp_path, capsys):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(S3))
    code, out = _run(capsys, "theta", "--perm", str(path), "--mode", "exact")
    doc = json.loads(out.out)
    assert code == 1 and doc["value"] == 0 and doc["certificate"]["kind"] == "NapExhaustive"


def test_theta_budget_exit(capsys):
    code, out = _run(capsys, "theta", "--family", "psl2:7", "--mode", "exact", "--budget", "10")
    assert code == 3


def test_usage_errors(capsys):
    assert _run(capsys, "theta", "--family", "nosuch:3")[0] == 2
    assert _run(capsys, "theta")[0] == 2
    assert _run(capsys, "theta", "dihedral:8", "--family", "dihedral:8")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


@pytest.mark.parametrize("family", ["dihedral:20", "quaternion:12", "alternating:5", "psl2:8", "frobenius:7:3",
                                    "dihedral:8 x dihedral:8", "symmetric:4", "heisenberg:3"])
def test_round_trip_through_verify(family, tmp_path, capsys):
    path = tmp_path / "part.json"
    code, _ = _run(capsys, "theta", "--family", family, "--out-partition", str(path))
    assert code == 0
    code, out = _run(capsys, "verify", str(path))
    doc = json.loads(out.out)
    assert code == 0 and doc["valid"] and doc["certificate_verified"]


def test_verify_rejects_bad_partition(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"group": {"family": "symmetric:3"}, "blocks": [[0, 1, 2, 3, 4, 5]]}))
    code, out = _run(capsys, "verify", str(path))
    assert code == 1 and not json.loads(out.out)["valid"]


def test_verify_rejects_bad_certificate(tmp_path, capsys):
    path = tmp_path / "p.json"
    _run(capsys, "theta", "--family", "dihedral:12", "--out-partition", str(path))
    doc = json.loads(path.read_text())
    doc["certificate"]["anchors"] = [0] * len(doc["blocks"])
    path.write_text(json.dumps(doc))
    code, out = _run(capsys, "verify", str(path))
    assert code == 1 and json.loads(out.out)["certificate_verified"] is False


def test_output_is_byte_identical(capsys):
    _, a = _run(capsys, "theta", "--family", "symmetric:4")
    _, b = _run(capsys, "theta", "--family", "symmetric:4", "--threads", "4")
    assert a.out == b.out


def test_group_stats(tmp_path, capsys):
    dimacs = tmp_path / "g.dimacs"
    code, out = _run(capsys, "group", "psl2:7", "--dimacs", str(dimacs))
    doc = json.loads(out.out)
    assert code == 0 and doc["order"] == 168 and doc["class_number"] == 6 and doc["center_order"] == 1
    assert doc["maximal_orders"] == [3, 4, 7]
    assert dimacs.read_text().startswith("p edge 168 ")


def test_nap_commands(capsys):
    assert _run(capsys, "nap", "symmetric:3")[0] == 0
    assert _run(capsys, "nap", "dihedral:8")[0] == 1
    code, out = _run(capsys, "nap", "--dihedral-product", "3", "3")
    assert code == 0 and json.loads(out.out)["nap_established"]
    code, out = _run(capsys, "nap", "--wreath", "5", "3")
    doc = json.loads(out.out)
    assert doc["counts"]["Di_nc"] == 120 and doc["counts"]["Dm_nc"] == 91
    assert code == 1
    assert _run(capsys, "nap", "--wreath", "3", "3")[0] == 2


def test_embed_commands(capsys):
    code, out = _run(capsys, "embed", "--ap", "symmetric:3")
    assert code == 0 and json.loads(out.out)["partition_blocks"] == 6
    code, out = _run(capsys, "embed", "--nap", "cyclic:1")
    assert code == 0 and json.loads(out.out)["order"] == 6
    code, out = _run(capsys, "embed", "--nap", "cyclic:2")
    doc = json.loads(out.out)
    assert doc["order"] == 200 and doc["nap"] is False and code == 1


def test_report_nap_rows_and_csv(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    code, out = _run(capsys, "report", "--only", "nap", "--csv", str(a))
    _run(capsys, "report", "--only", "nap", "--csv", str(b))
    assert code == 0
    assert a.read_bytes() == b.read_bytes()
    ids = [line.split(",")[0] for line in a.read_text().splitlines()[1:]]
    assert ids == ["7", "8", "9", "10", "14"]


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "apg.cli", "theta", "--family", "dihedral:8"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["value"] == 3
