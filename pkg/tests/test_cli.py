import json
import subprocess
import sys

import pytest

from unitring.cli import main

RUN = [sys.executable, "-m", "unitring.cli"]


def run_cli(args, **kw):
    return subprocess.run(RUN + args, capture_output=True, text=True, **kw)


def test_density_report_deterministic(tmp_path):
    args = [
        "density", "--field", "q_sqrt5", "--eta", "0,1",
        "--boxes", "100,400", "--truncation", "300",
    ]
    out1 = tmp_path / "r1.tsv"
    out2 = tmp_path / "r2.tsv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    text = out1.read_text()
    assert "x\tN\tN_over_x\tD_lo\tD_hi\trel_err" in text
    rows = [l for l in text.splitlines() if not l.startswith("#")]
    assert rows[1].startswith("100\t34\t0.340000000000")
    assert rows[2].startswith("400\t")


def test_density_threads_byte_identical(tmp_path):
    base = [
        "density", "--field", "q_sqrt5", "--eta", "0,1",
        "--boxes", "200", "--truncation", "200",
    ]
    single = tmp_path / "t1.tsv"
    multi = tmp_path / "t4.tsv"
    assert main(base + ["--threads", "1", "--out", str(single)]) == 0
    assert main(base + ["--threads", "4", "--out", str(multi)]) == 0
    assert single.read_bytes() == multi.read_bytes()


def test_density_order_variant(tmp_path):
    out = tmp_path / "o.tsv"
    code = main([
        "density", "--field", "q_sqrt5", "--order", "Z[sqrt5]", "--eta", "1,2",
        "--exclude", "2", "--boxes", "100", "--truncation", "200",
        "--out", str(out),
    ])
    assert code == 0
    assert "# conductor_sum=1/2" in out.read_text()


def test_count_subcommand(tmp_path):
    out = tmp_path / "c.tsv"
    assert main([
        "count", "--field", "q_sqrt5", "--eta", "0,1",
        "--boxes", "100", "--out", str(out),
    ]) == 0
    body = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert body == ["x\tN\tN_over_x", "100\t34\t0.340000000000"]


def test_tower_roundtrip_and_verify(tmp_path):
    tower_path = tmp_path / "tower.json"
    assert main([
        "tower", "--field", "q_sqrt5", "--order", "Z[sqrt5]", "--eta", "1,2",
        "--out", str(tower_path),
    ]) == 0
    doc = json.loads(tower_path.read_text())
    assert doc["final_index"] == 1
    assert [s["omega"] for s in doc["steps"]] == [[0, 1]]
    assert all(doc["verification"].values())
    verify_out = tmp_path / "verify.tsv"
    assert main(["verify", "--tower", str(tower_path), "--out", str(verify_out)]) == 0
    assert "reaches_maximal\tTrue" in verify_out.read_text()


def test_exit_code_hypothesis():
    proc = run_cli(["tower", "--field", "q_sqrt2", "--eta", "1,1"])
    assert proc.returncode == 2
    diag = json.loads(proc.stderr.splitlines()[-1])
    assert diag["error"] == "hypothesis"
    assert "sqrt(5)" in diag["message"]


def test_exit_code_exhaustion():
    proc = run_cli([
        "tower", "--field", "q_sqrt5", "--order", "Z[sqrt5]", "--eta", "1,2",
        "--search-bound", "0",
    ])
    assert proc.returncode == 3
    assert json.loads(proc.stderr.splitlines()[-1])["error"] == "exhausted"


def test_exit_code_config():
    proc = run_cli(["belcher", "-d", "12"])
    assert proc.returncode == 4
    proc2 = run_cli(["density", "--field", "q_sqrt5", "--eta", "0,1",
                     "--boxes", "100,50"])
    assert proc2.returncode == 4
    proc3 = run_cli(["density", "--field", "q_sqrt5", "--eta", "0,1,2",
                     "--boxes", "100"])
    assert proc3.returncode == 4
    proc4 = run_cli(["density", "--field", "nope_field", "--eta", "0,1"])
    assert proc4.returncode == 4


def test_exit_code_success():
    proc = run_cli(["belcher", "-d", "5"])
    assert proc.returncode == 0
    assert "5\tTrue" in proc.stdout


def test_belcher_table_fixture(tmp_path):
    out1 = tmp_path / "b1.tsv"
    out2 = tmp_path / "b2.tsv"
    assert main(["belcher", "--table", "100", "--out", str(out1)]) == 0
    assert main(["belcher", "--table", "100", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    table = dict(l.split("\t") for l in lines[1:])
    assert table["-1"] == "True" and table["-3"] == "True"
    assert table["2"] == "True" and table["5"] == "True"
    assert table["79"] == "False"
    assert "0" not in table and "1" not in table and "12" not in table


def test_verify_rejects_tamper(tmp_path):
    tower_path = tmp_path / "tower.json"
    assert main([
        "tower", "--field", "q_sqrt5", "--order", "Z[sqrt5]", "--eta", "1,2",
        "--out", str(tower_path),
    ]) == 0
    doc = json.loads(tower_path.read_text())
    doc["steps"][0]["omega"] = [0, 2]  # 2*theta: even discriminant value
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(doc))
    proc = run_cli(["verify", "--tower", str(bad_path)])
    assert proc.returncode != 0
