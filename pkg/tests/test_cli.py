import json
import subprocess
import sys

import pytest

from rankswap.cli import main, run_command


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_jacobi_command(capsys):
    code, out, _ = run(["verify", "jacobi", "--points", "5", "--alpha", "1", "--beta", "0"], capsys)
    assert code == 0
    assert out.strip().endswith("PASS: 1540/1540 items")


def test_main_theorem_command(capsys):
    argv = ["verify", "main-theorem", "--rank", "2", "--points", "4", "--subset", "1,2", "--alpha", "1", "--beta", "0", "--seed", "7"]
    rep = run_command(argv)
    assert rep.passed and len(rep.items) == 6
    code, out, _ = run(argv + ["--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["pass"] is True
    assert data["parameters"] == {
        "n": 2, "r": 4, "I": [1, 2], "alpha": 1, "beta": 0,
        "prime": (1 << 61) - 1, "trials": 20, "seed": 7,
    }
    assert {it["verdict"] for it in data["items"]} == {"ProbablyZero"}


def test_reduce_command(capsys):
    code, out, _ = run(["reduce", "--rank", "2", "--points", "4", "--expr", "det([a1,a2,a3];[a2,a3,a4])"], capsys)
    assert code == 0 and out == "0\n"


def test_bracket_command(capsys):
    code, out, _ = run(["bracket", "--points", "4", "--expr", "a1.a3", "--expr", "a2.a4"], capsys)
    assert out == "1 * a1.a4 * a2.a3\n"
    code, out, _ = run(["bracket", "--points", "4", "--beta", "1/2", "--alpha", "0", "--expr", "a1.a3", "--expr", "a2.a4"], capsys)
    assert out == "1/2 * a1.a3 * a2.a4\n"


def test_iszero_command(capsys):
    assert run(["iszero", "--rank", "2", "--points", "4", "--expr", "det([a1,a2,a3];[a1,a2,a4])"], capsys)[0] == 0
    code, out, _ = run(["iszero", "--rank", "2", "--points", "4", "--expr", "a1.a2"], capsys)
    assert code == 4 and "NonZero" in out


def test_json_is_byte_identical(capsys):
    argv = ["verify", "lemma01", "--rank", "2", "--points", "5", "--seed", "3", "--format", "json"]
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second
    assert json.loads(first)["items"][0]["elapsed"] is None


def test_timings_flag(capsys):
    out = run(["verify", "lemma01", "--rank", "2", "--points", "4", "--format", "json", "--timings"], capsys)[1]
    assert isinstance(json.loads(out)["items"][0]["elapsed"], float)


def test_exit_codes(capsys):
    code, _, err = run(["reduce", "--rank", "2", "--expr", "a1.a2 +"], capsys)
    assert code == 2 and "position 7" in err
    code, _, err = run(["reduce", "--rank", "2", "--expr", "a1.a9"], capsys)
    assert code == 2
    code, _, err = run(["iszero", "--rank", "2", "--points", "4", "--expr", "E([a2]; a3, a2)"], capsys)
    assert code == 3
    code, out, _ = run(["verify", "network", "--fixture", "gr24"], capsys)
    assert code == 4 and "formula_params_matching_network" in out


def test_invalid_flags_exit_nonzero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "main-theorem", "--subset", "2,1"])
    assert exc.value.code == 2


def test_environment_and_config_defaults(tmp_path, monkeypatch):
    cfg = tmp_path / "rs.ini"
    cfg.write_text("[rankswap]\ntrials = 5\nseed = 11\n")
    rep = run_command(["verify", "lemma01", "--rank", "2", "--points", "4", "--config", str(cfg)])
    assert rep.parameters["trials"] == 5 and rep.parameters["seed"] == 11
    monkeypatch.setenv("RANKSWAP_TRIALS", "6")
    rep = run_command(["verify", "lemma01", "--rank", "2", "--points", "4", "--config", str(cfg)])
    assert rep.parameters["trials"] == 6
    rep = run_command(["verify", "lemma01", "--rank", "2", "--points", "4", "--trials", "7"])
    assert rep.parameters["trials"] == 7 and rep.items[0].trials == 7


def test_network_file(tmp_path, capsys):
    from rankswap.networks import GR12_TEXT

    path = tmp_path / "gr12.net"
    path.write_text(GR12_TEXT)
    code, out, _ = run(["verify", "network", "--network", str(path)], capsys)
    assert code == 0
    code, _, _ = run(["verify", "network", "--network", str(tmp_path / "missing.net")], capsys)
    assert code == 2


def test_other_sweeps():
    assert run_command(["verify", "poisson-ideal", "--rank", "2", "--points", "4"]).passed
    assert run_command(["verify", "boundary-lemma", "--rank", "2", "--points", "4"]).passed
    assert not run_command(["verify", "boundary-lemma", "--rank", "2", "--points", "4", "--ranges", "open"]).passed
    assert run_command(["verify", "det-ratio-independence", "--rank", "2", "--points", "5", "--samples", "5"]).passed
    rep = run_command(["verify", "main-theorem", "--rank", "2", "--points", "4", "--all-pairs", "--method", "symbolic"])
    assert rep.passed and len(rep.items) == 16


def test_console_script_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "rankswap.cli", "reduce", "--rank", "2", "--points", "4", "--expr", "a1.a2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "1 * a1.a2\n"
