import io
import json
import subprocess
import sys

import pytest

from bisemi import cli
from bisemi.ellipmod import build_phi, dumps
from bisemi.placelat import PlaceSpec
from cli_cases import CASES, argv, golden_path


def invoke(args):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(args), out, err)
    return code, out.getvalue(), err.getvalue()


def test_cases_cover_registered_verbs():
    assert set(CASES) == set(cli.VERBS)
    assert len(cli.VERBS) == 24


@pytest.mark.parametrize("verb", sorted(CASES))
def test_golden(verb, request):
    code, out, err = invoke(argv(verb))
    assert code == 0, err
    path = golden_path(verb)
    if request.config.getoption("--update-golden"):
        path.parent.mkdir(exist_ok=True)
        path.write_text(out)
    assert out == path.read_text()


@pytest.mark.parametrize("verb", ["zeta zero", "lseries euler", "hecke eig"])
def test_byte_determinism(verb):
    assert invoke(argv(verb))[1] == invoke(argv(verb))[1]


def test_examples():
    code, out, _ = invoke(["hecke", "eig", "--q", "2", "--b", "1", "--N", "1"])
    rec = json.loads(out)
    assert (rec["trace"], rec["det"], rec["lambda_plus"]) == (6, 4, "3+sqrt(5)")
    _, out, _ = invoke(["curve", "count", "--a", "1", "--b", "1", "--p", "5"])
    assert out.splitlines()[1] == "5,true,9,-3"
    _, out, _ = invoke(["zeta", "zero", "--k", "1"])
    assert abs(json.loads(out)["value_re"] - 14.134725) < 1e-6


def test_coverage_each_operation_has_one_verb():
    seen = {}
    for op, (verb, selector) in cli.OPERATIONS.items():
        assert verb in cli.VERBS
        key = (verb, selector)
        assert key not in seen, f"{op} and {seen.get(key)} share {key}"
        seen[key] = op
    # every verb is used by at least one operation
    assert {verb for verb, _ in cli.OPERATIONS.values()} == set(cli.VERBS)


def test_coverage_operations_exist():
    import importlib

    for op in cli.OPERATIONS:
        mod, name = op.split(".")
        assert callable(getattr(importlib.import_module(f"bisemi.{mod}"), name))


def test_selector_verbs_reach_every_op():
    for op, (verb, selector) in cli.OPERATIONS.items():
        if selector is None:
            continue
        choice = selector.split()[1]
        parser = cli.build_parser()
        # the selector must parse for that verb
        ns = parser.parse_args(verb.split() + ["--op", choice])
        assert ns.op == choice


def test_domain_error_exit_1():
    code, out, err = invoke(["curve", "count", "--a", "1", "--b", "1", "--p", "31"])
    assert code == 1 and out == ""
    assert "BadReduction" in err
    assert invoke(["zeta", "value", "--s", "1"])[0] == 1


def test_usage_error_exit_2_names_key():
    code, _, err = invoke(["hecke", "eig", "--qq", "2"])
    assert code == 2 and "--qq" in err
    code, _, err = invoke(["hecke", "eig"])
    assert code == 2 and "--q" in err
    code, _, err = invoke(["nope", "verb"])
    assert code == 2
    code, _, err = invoke(["--precision", "30", "hecke", "eig", "--q", "2"])
    assert code == 2 and "precision" in err


def test_precision_flag_and_env(monkeypatch):
    base = ["zeta", "zero", "--k", "1"]
    six = json.loads(invoke(["--precision", "6"] + base)[1])["value_re"]
    assert six == 14.1347
    monkeypatch.setenv("BISEMI_PRECISION", "8")
    assert json.loads(invoke(base)[1])["value_re"] == 14.134725
    # the flag wins over the environment
    assert json.loads(invoke(["--precision", "6"] + base)[1])["value_re"] == 14.1347
    monkeypatch.setenv("BISEMI_PRECISION", "many")
    assert invoke(base)[0] == 2


def test_format_override():
    code, out, _ = invoke(["--format", "csv", "hecke", "eig", "--q", "2", "--b", "1"])
    assert code == 0
    header, row = out.splitlines()
    assert header.startswith("q,b,N,")
    code, out, _ = invoke(["--format", "json", "curve", "count", "--a", "1", "--b", "1", "--p", "7"])
    assert json.loads(out)["count"] == 5


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# hecke defaults\nq = 2\nb = 1\n")
    code, out, _ = invoke(["--config", str(cfg), "hecke", "eig"])
    assert code == 0 and json.loads(out)["trace"] == 6
    # explicit flags override the file
    code, out, _ = invoke(["--config", str(cfg), "hecke", "eig", "--b", "0"])
    assert json.loads(out)["trace"] == 5
    assert invoke(["--config", str(tmp_path / "missing.cfg"), "hecke", "eig"])[0] == 2


def test_series_file(tmp_path):
    phi = build_phi(PlaceSpec("real", 4, 1, (1, 2, 1, 1)), "hecke", "minus")
    path = tmp_path / "phi.txt"
    path.write_text(dumps(phi))
    code, out, err = invoke(["semimodule", "eval", "--series", str(path), "--x", "0"])
    assert code == 0, err
    from bisemi.ellipmod import evaluate

    assert json.loads(out)["value_re"] == pytest.approx(evaluate(phi, 0.0).real, rel=1e-11)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bisemi", "curve", "count", "--a", "1", "--b", "1", "--p", "5"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "p,good,count,a_p\n5,true,9,-3\n"
