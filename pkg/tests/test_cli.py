import json
import subprocess
import sys

import pytest

from nihocodes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_binary3(capsys):
    code, out, _ = run(capsys, "verify", "--family", "binary3", "-p", "2", "-m", "2", "--s2", "1")
    assert code == 0
    assert "15,6,6" in out
    assert "result: PASS" in out


def test_verify_invalid_params(capsys):
    code, _, err = run(capsys, "verify", "--family", "pary4", "-p", "3", "-m", "2", "--t", "10")
    assert code == 2
    assert "0 mod" in err


def test_verify_binary4_example(capsys):
    code, out, _ = run(capsys, "verify", "--family", "binary4", "-p", "2", "-m", "3",
                       "--k", "1", "--t", "5", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert list(rep) == ["field", "family", "closed", "enumerated", "moments", "counts", "pass", "timings"]
    assert rep["closed"]["weight_dist"] == [[36, 1176], [32, 1827], [28, 504], [24, 588], [0, 1]]
    assert rep["enumerated"]["weight_dist"]["direct_words"] == rep["closed"]["weight_dist"]
    assert rep["field"]["modulus"] == [1, 0, 0, 0, 0, 1, 1]
    assert rep["pass"] is True


def test_json_round_trip(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--family", "pary4", "-p", "3", "-m", "2", "--t", "2",
                 "--format", "json", "--out", str(out)]) == 0
    text = out.read_text()
    assert json.dumps(json.loads(text), indent=2) + "\n" == text


def test_text_and_csv_stable(capsys):
    args = ["verify", "--family", "binary3", "-p", "2", "-m", "3", "--s2", "2"]
    for fmt in ("text", "csv"):
        first = run(capsys, *args, "--format", fmt)
        second = run(capsys, *args, "--format", fmt)
        assert first == second


def test_csv_header(capsys):
    code, out, _ = run(capsys, "verify", "--family", "binary3", "-p", "2", "-m", "2", "--s2", "1",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "kind,value_or_weight,frequency,source"
    assert "weight,6,30,direct_words" in lines


def test_method_choice(capsys):
    code, out, _ = run(capsys, "verify", "--family", "binary3", "-p", "2", "-m", "2", "--s2", "1",
                       "--method", "niho", "--format", "json")
    assert code == 0
    assert list(json.loads(out)["enumerated"]["value_dist"]) == ["niho"]


def test_custom_modulus(capsys):
    code, out, _ = run(capsys, "verify", "--family", "binary3", "-p", "2", "-m", "2", "--s2", "1",
                       "--modulus", "1,1,0,0,1")
    assert code == 0
    assert "x^4 + x^3 + 1" in out
    code, _, _ = run(capsys, "verify", "--family", "binary3", "-p", "2", "-m", "2", "--s2", "1",
                     "--modulus", "1,1,1,1,1")
    assert code == 2
    code, _, _ = run(capsys, "verify", "--family", "binary3", "-p", "2", "-m", "2", "--s2", "1",
                     "--modulus", "1,x")
    assert code == 2


def test_sweep_binary3_m2(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "binary3", "-p", "2", "-m", "2", "--format", "json")
    assert code == 0
    res = json.loads(out)
    assert res["parameters"] == 2
    assert res["distribution_classes"] == 1
    assert res["pass"] is True


def test_sweep_binary3_m3(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "binary3", "-p", "2", "-m", "3", "--format", "json")
    assert code == 0
    res = json.loads(out)
    by_s2 = {}
    for row in res["classes"]:
        for mem in row["members"]:
            by_s2[mem["s2"]] = row["enumerator"]
    assert set(by_s2) == {1, 2, 3, 4}
    assert by_s2[1] == by_s2[3] == by_s2[4] == "1 + 252x^28 + 63x^32 + 196x^36"
    assert by_s2[2] != by_s2[1]


def test_sweep_binary4_m3(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "binary4", "-p", "2", "-m", "3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "params,l,n,k,d,enumerator,pass"
    params = {line.split(",")[0] for line in lines[1:]}
    assert params == {"k=1;t=1", "k=1;t=5", "k=1;t=7"}


def test_sweep_no_params(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "binary4", "-p", "2", "-m", "1")
    assert code == 0
    assert "no valid parameters" in out


def test_dump_field_tables(capsys):
    code, out, _ = run(capsys, "dump", "field-tables", "-p", "2", "-m", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,exp,log"
    assert len(lines) == 17
    assert lines[1] == "0,1,15"  # theta^0 = 1; the zero vector has log q-1


def test_dump_codewords(tmp_path):
    out = tmp_path / "words.txt"
    assert main(["dump", "codewords", "--family", "binary3", "-p", "2", "-m", "2", "--s2", "1",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 64
    assert len(set(line.split()[-1] for line in lines)) == 64
    assert lines[0].startswith("a=") and len(lines[0].split()[-1]) == 15


def test_dump_histogram(capsys):
    code, out, _ = run(capsys, "dump", "value-histogram", "--family", "pary4", "-p", "5", "-m", "2",
                       "--t", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "value,frequency"
    assert len(lines) == 1 + 5


def test_dump_needs_family(capsys):
    code, _, _ = run(capsys, "dump", "codewords", "-p", "2", "-m", "2")
    assert code == 2


def test_io_error(tmp_path, capsys):
    code, _, err = run(capsys, "dump", "field-tables", "-p", "2", "-m", "2",
                       "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 3
    assert "i/o error" in err


def test_size_cap_env(monkeypatch, capsys):
    monkeypatch.setenv("NIHO_MAX_Q", "16")
    code, _, err = run(capsys, "dump", "field-tables", "-p", "2", "-m", "3")
    assert code == 2
    monkeypatch.setenv("NIHO_MAX_Q", "64")
    code, _, _ = run(capsys, "dump", "field-tables", "-p", "2", "-m", "3")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nihocodes", "verify", "--family", "binary3", "-p", "2", "-m", "2", "--s2", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "15,6,6" in proc.stdout


@pytest.mark.parametrize("argv", [[], ["verify", "-p", "2", "-m", "2"]])
def test_argparse_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
