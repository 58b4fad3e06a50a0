import json
import subprocess
import sys

import pytest

from subadd.cli import main
from subadd.suites import ConfigError, ExperimentConfig


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_verify_adloc_exit_zero(capsys):
    code, out = run(["verify", "adloc", "--p", "2", "--r", "2", "--seed", "0"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["pass"]


def test_verify_bcr_reports_triggered(capsys):
    code, out = run(["verify", "bcr", "--window=-6,8", "--rgap", "4"], capsys)
    rep = json.loads(out)
    gap = next(a for a in rep["assertions"] if a["name"] == "tate_gap_vanishing")
    assert code == 0 and gap["triggered"] > 0


def test_config_error_exit_two(capsys):
    assert main(["verify", "adloc", "--r", "0"]) == 2
    assert main(["verify", "adloc", "--p", "4"]) == 2
    assert main(["verify", "adloc", "--window", "1,5"]) == 2


@pytest.mark.parametrize("n,count", [(1, 3), (2, 5)])
def test_reconstruct_counts(capsys, n, count):
    code, out = run(["reconstruct", "--ext", str(n), "--corpus-size", "20"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["runs"][0]["classes"] == count


def test_reconstruct_rank_three(capsys):
    code, out = run(["reconstruct", "--r", "3", "--corpus-size", "20"], capsys)
    assert code == 0 and json.loads(out)["runs"][0]["classes"] == 7


def test_dump_is_byte_stable(capsys):
    _, a = run(["dump", "corpus", "--corpus-size", "12"], capsys)
    _, b = run(["dump", "corpus", "--corpus-size", "12"], capsys)
    assert a == b


def test_dump_module_and_pipoint(capsys):
    _, out = run(["dump", "module", "--name", "k"], capsys)
    M = json.loads(out)
    assert M["dim"] == 1 and all(a["entries"] == [0] for a in M["actions"])
    _, out = run(["dump", "pipoint", "--lambda", "1,0"], capsys)
    assert json.loads(out)["point"] == [1, 0]
    assert main(["dump", "pipoint", "--lambda", "0,0"]) == 2


def test_config_file_and_env(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "run.conf"
    cfg.write_text("p = 2\nr = 2\ncorpus_size = 12\n# comment\nformat = tsv\n")
    monkeypatch.setenv("SUBADD_CONFIG", str(cfg))
    code, out = run(["verify", "sums"], capsys)
    assert code == 0 and out.startswith("name\tpass")
    js = tmp_path / "run.json"
    js.write_text(json.dumps({"r": 0}))
    assert main(["verify", "sums", "--config", str(js)]) == 2


def test_report_reproducible_except_timing(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert main(["verify", "pipoint", "--ext", "1,2", "--corpus-size", "14", "--out", str(path)]) == 0
        rep = json.loads(path.read_text())
        rep.pop("timing")
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1]


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"bogus": 1})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"ext": [2], "base_degree": 3})
    assert ExperimentConfig.from_dict({"ext": 2}).ext == [2]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "subadd", "dump", "module", "--name", "omega:1"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["dim"] == 3
