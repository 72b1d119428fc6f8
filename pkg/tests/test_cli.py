import json

import pytest

from advicelab.cli import main, render


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simulate_coin_and_dup(capsys):
    code, out, _ = run(capsys, "simulate", "builtin:coin", "")
    assert code == 0 and json.loads(out)["probability"] == "1/2"
    code, out, _ = run(capsys, "simulate", "builtin:dup-cequal", "0101")
    assert json.loads(out)["probability"] == "1/2"


def test_simulate_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "pfa",\n "states": [}')
    code, _, err = run(capsys, "simulate", str(bad), "0")
    assert code == 2 and "line 2" in err


def test_verify_pass_and_fail(capsys):
    code, out, _ = run(capsys, "verify", "--machine", "builtin:dup-cequal", "--language", "dup",
                       "--lengths", "2..10")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "verify", "--machine", "builtin:palhash-rn-amplified",
                       "--language", "pal_hash", "--lengths", "1..7", "--mode", "bounded",
                       "--epsilon", "1/4")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--machine", "builtin:dup-cequal", "--language", "co_dup",
                       "--lengths", "2")
    rep = json.loads(out)
    assert code == 1 and rep["lengths"][0]["violations"]


def test_refute_commands(capsys):
    code, out, _ = run(capsys, "refute", "co_dup", "--machine", "builtin:dup-cequal-uniform")
    rep = json.loads(out)
    assert code == 0 and rep["confirmed"] and rep["trace"]
    code, out, _ = run(capsys, "refute", "ip_star", "--machine", "builtin:coin")
    assert code == 0 and json.loads(out)["confirmed"]


def test_game_and_worst_case(capsys):
    code, out, _ = run(capsys, "game", "--machine", "builtin:palhash-rn", "--language", "pal_hash",
                       "--n", "2", "--worst-case")
    rep = json.loads(out)
    assert code == 0 and rep["duality_equal"] and not rep["heuristic_subsample"]
    code, out, _ = run(capsys, "game", "--machine", "builtin:dup-rn", "--language", "dup",
                       "--n", "3", "--max-columns", "5")
    rep = json.loads(out)
    assert rep["heuristic_subsample"] and rep["columns"] == 5


def test_density_table(capsys):
    code, out, _ = run(capsys, "--format", "tsv", "density", "ip_star", "empty", "--lengths", "2")
    assert code == 0 and "density.2\t1/4" in out
    code, out, _ = run(capsys, "density", "dup", "dup", "--lengths", "1..6")
    assert set(json.loads(out)["density"].values()) == {"1/2"}


def test_build_then_simulate(capsys, tmp_path):
    target = tmp_path / "dup.json"
    code, out, _ = run(capsys, "build", "dup-cequal-uniform", "-o", str(target), "--lengths", "0..6")
    assert code == 0
    advice = json.loads(out)["written"][1]
    code, out, _ = run(capsys, "simulate", str(target), "011011", "--advice", advice)
    assert json.loads(out)["probability"] == "1/2"


def test_reports_are_deterministic(capsys):
    outs = [run(capsys, "game", "--machine", "builtin:dup-rn", "--language", "dup", "--n", "2")[1]
            for _ in range(2)]
    assert outs[0] == outs[1]


def test_tsv_and_json_carry_same_data():
    rep = {"a": "1/2", "b": [1, {"c": True}], "d": []}
    tsv = render(rep, "tsv")
    assert tsv == 'a\t1/2\nb.0\t1\nb.1.c\ttrue\nd\t[]\n'
    assert json.loads(render(rep, "json")) == rep


def test_timing_goes_to_stderr(capsys):
    code, out, err = run(capsys, "--timing", "simulate", "builtin:coin", "0")
    assert "elapsed" in err and "elapsed" not in out


def test_unknown_builtin(capsys):
    with pytest.raises(SystemExit):
        main(["simulate", "builtin:nope", "0"])


def test_bad_epsilon_is_a_usage_error(capsys):
    code = main(["verify", "--machine", "builtin:coin", "--language", "dup",
                 "--lengths", "1..2", "--mode", "bounded", "--epsilon", "1/2"])
    assert code == 2
    assert "epsilon" in capsys.readouterr().err
