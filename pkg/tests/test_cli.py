import csv
import io
import json
import subprocess
import sys

import pytest

from conductorlab.cli import EXIT_CONTRACT, EXIT_USAGE, execute
from conductorlab.config import ConfigError, RunConfig, load_config, parse_config
from conductorlab.plancherel import DEFAULT_SCALE


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    status = execute(argv, out, err)
    return status, out.getvalue(), err.getvalue()


def csv_table(text):
    params = dict(line[2:].split("=", 1) for line in text.splitlines() if line.startswith("# "))
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return params, list(csv.reader(body))


def test_sum_example():
    status, out, _ = run(["sum", "--fn", "phi2", "--field", "Q", "--X", "10"])
    assert status == 0
    params, rows = csv_table(out)
    assert rows == [["X", "sum"], ["10", "82"]]
    assert params["fn"] == "phi2" and params["field"] == "Q" and params["command"] == "sum"


def test_measure_local_example():
    status, out, _ = run(["measure", "local", "--q", "2", "--s", "2", "--json"])
    assert status == 0
    doc = json.loads(out)
    assert doc["rows"][0]["value"] == 1.40625
    assert doc["params"]["q"] == 2 and doc["params"]["rmax"] == 60
    assert doc["columns"] == ["value", "series", "tail_bound"]


def test_count_example():
    status, out, _ = run(["count", "--Q", "55"])
    assert status == 0
    assert csv_table(out)[1] == [["Q", "count"], ["55", "1"]]


def test_dims_and_conductor():
    status, out, _ = run(["dims", "--N", "10", "--k", "4", "--new"])
    assert status == 0 and csv_table(out)[1][1] == ["10", "4", "1"]
    status, out, _ = run(["conductor", "--shape", "p:11^1,ds:2"])
    assert status == 0 and csv_table(out)[1][-1] == ["global", "product", "55"]


def test_measure_global_and_constant():
    status, out, _ = run(["measure", "global", "--field", "Q", "--pmax", "100000", "--s", "2", "--json"])
    assert status == 0
    doc = json.loads(out)
    row = doc["rows"][0]
    assert abs(row["value"] - 0.5616871955797) <= row["truncation_error"]
    assert doc["params"]["P_max"] == 100000 and doc["params"]["pmax"] == 100000
    status, out, _ = run(["constant", "--volume", "2", "--pmax", "1000", "--json"])
    assert status == 0
    r = json.loads(out)["rows"][0]
    assert r["constant"] == r["mass"]


def test_measure_arch_zero_scales():
    status, out, _ = run(["measure", "arch", "--c-even", "0", "--c-odd", "0", "--c-ds", "0", "--json"])
    assert status == 0 and json.loads(out)["rows"][0]["value"] == 0


def test_sato_tate_output():
    status, out, _ = run(["sato-tate", "--primes", "2..50", "--tests", "x2,x4", "--csv"])
    assert status == 0
    params, rows = csv_table(out)
    assert rows[0] == ["q", "test", "value_q", "value_st", "error"]
    assert [r[0] for r in rows[1:3]] == ["2", "2"] and len(rows) == 1 + 2 * 15
    assert "decay_x2" in params and params["qtol"] == "1e-08"


def test_fit_from_file(tmp_path):
    data = tmp_path / "counts.csv"
    data.write_text("# generated\nQ,count\n" + "".join(f"{Q},{3 * Q * Q}\n" for Q in (10, 20, 40, 80, 160)))
    status, out, _ = run(["fit", "--input", str(data), "--json"])
    assert status == 0
    r = json.loads(out)["rows"][0]
    assert abs(r["exponent"] - 2) < 1e-12 and abs(r["constant"] - 3) < 1e-9


def test_out_file(tmp_path):
    target = tmp_path / "sum.json"
    status, out, _ = run(["sum", "--fn", "mu", "--X", "100", "--json", "--out", str(target)])
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["rows"] == [{"X": 100, "sum": 1}]


@pytest.mark.parametrize("argv", [
    ["sum", "--fn", "phi2", "--X", "1e5", "--field", "Q(sqrt,-1)"],
    ["count", "--Q", "1e3,1e4,1e5"],
    ["measure", "global", "--pmax", "100000", "--arch", "split", "--json"],
    ["sato-tate", "--primes", "2..2000", "--tests", "x2,x4,x6"],
    ["fit", "--Qmin", "1e3", "--Qmax", "1e5", "--points", "7"],
])
def test_output_independent_of_threads(argv):
    outputs = {run(argv + ["--threads", str(t)])[1] for t in (1, 4, 8)}
    assert len(outputs) == 1
    assert run(argv)[1] in outputs


def test_usage_errors():
    for argv in (["nosuch"], ["sum", "--X", "10"], ["sum", "--fn", "sigma", "--X", "10"],
                 ["count", "--Q", "100", "--convention", "analytic"], ["measure", "local"],
                 ["dims", "--N", "10", "--k", "4", "--qtol", "-1"],
                 ["sum", "--fn", "mu", "--X", "10", "--field", "Q(sqrt,4)"],
                 ["measure", "global", "--field", "Q(sqrt,-1)"],
                 ["sato-tate", "--primes", "8..10"]):
        status, out, err = run(argv)
        assert status == EXIT_USAGE, argv
        assert out == "" and err.startswith("usage error")
    status, _, err = run(["dims", "--N", "10", "--k", "4", "--qtol", "-1"])
    assert "qtol" in err and "positive" in err


def test_contract_failures():
    # s <= 1 violates the precondition, so it is a usage error rather than a contract failure
    status, _, err = run(["measure", "local", "--q", "2", "--s", "0.9"])
    assert status == EXIT_USAGE and "s <= 1" in err
    status, out, err = run(["measure", "local", "--q", "3", "--s", "1.2", "--rmax", "2"])
    assert status == EXIT_CONTRACT and "tail bound" in err


def test_config_file(tmp_path):
    assert parse_config("") == RunConfig()
    cfg = parse_config("# comment\nfield = Q(sqrt,-1)\npmax=2000  # trailing\nformat=json\n")
    assert (cfg.field, cfg.pmax, cfg.format) == ("Q(sqrt,-1)", 2000, "json")
    assert cfg.c_even == DEFAULT_SCALE
    with pytest.raises(ConfigError, match=r":3: .*qtol.*positive"):
        parse_config("field=Q\n\nqtol=-1\n")
    with pytest.raises(ConfigError, match=r":2: unknown key 'colour'"):
        parse_config("field=Q\ncolour=blue\n")
    with pytest.raises(ConfigError, match=r":1: expected key=value"):
        parse_config("pmax 100\n")
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "missing.cfg")

    path = tmp_path / "run.cfg"
    path.write_text("field=Q(sqrt,-1)\nformat=json\n")
    status, out, _ = run(["sum", "--fn", "one", "--X", "5", "--config", str(path)])
    assert status == 0 and json.loads(out)["rows"] == [{"X": 5, "sum": 5}]
    # flags override the file
    status, out, _ = run(["sum", "--fn", "one", "--X", "5", "--config", str(path), "--field", "Q", "--csv"])
    assert status == 0 and csv_table(out)[1][1] == ["5", "5"] and "# field=Q\n" in out
    bad = tmp_path / "bad.cfg"
    bad.write_text("field=Q\nthreads=0\n")
    status, _, err = run(["count", "--Q", "10", "--config", str(bad)])
    assert status == EXIT_USAGE and "bad.cfg:2" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conductorlab", "count", "--Q", "55"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip().endswith("55,1")
    proc = subprocess.run([sys.executable, "-m", "conductorlab", "count"], capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE
    proc = subprocess.run([sys.executable, "-m", "conductorlab", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "sato-tate" in proc.stdout
