from __future__ import annotations

import json
import subprocess
import sys

import pytest

from chevkit import __version__
from chevkit.cli import SuiteConfig, list_suites, main, run_suite


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_catalog(capsys):
    cat = list_suites()
    assert cat["zrels"] == "Lemma Zrels"
    assert cat["glue-t"] == "Lemma glue_t"
    assert cat["ap-relations"] == "Eqs. AP1-AP3"
    code, out = _run(capsys, "list")
    assert code == 0 and set(out["suites"]) == set(cat)


def test_rank_two_lemmas_skip(capsys):
    code, rep = _run(capsys, "verify", "lemmas", "--system", "A2")
    assert code == 0
    by_id = {c["id"]: c for c in rep["checks"]}
    assert by_id["rpLemma"]["status"] == "skipped" and by_id["rpLemma"]["reason"]
    assert rep["summary"]["skipped"] == rep["summary"]["total"]


def test_report_schema(capsys):
    code, rep = _run(capsys, "verify", "eta", "--system", "A3")
    assert code == 0
    assert rep["schema_version"] == 1 and rep["library_version"] == __version__
    assert rep["config"]["system"] == "A3" and rep["suite"] == "eta"
    for c in rep["checks"]:
        assert {"id", "paper_ref", "status", "cases", "ms"} <= set(c)


def test_budget_makes_lemmas_inconclusive(capsys):
    code, rep = _run(capsys, "verify", "lemmas", "--system", "D4", "--budget", "5")
    assert code == 3
    assert rep["summary"]["status"] == "inconclusive"


@pytest.mark.parametrize("argv", [
    ["verify", "steinberg", "--system", "B3"],
    ["verify", "zrels", "--ring", "zmod:x"],
    ["verify", "zrels", "--ring", "zmod:4", "--ideal", "y"],
    ["verify", "steinberg", "--jobs", "0"],
    ["verify", "no-such-suite"],
    ["roots", "--system", "Q1"],
])
def test_configuration_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def _strip_ms(rep):
    for c in rep["checks"]:
        c.pop("ms")
    return rep


def test_seed_determinism_and_env_override(monkeypatch):
    cfg = lambda seed: SuiteConfig("ap-relations", rings=["zmod:4"], seed=seed, samples=10)  # noqa: E731
    a, b, c = (_strip_ms(run_suite(cfg(s))[1]) for s in (7, 7, 8))
    assert a == b
    assert a != c
    monkeypatch.setenv("CHEVKIT_SEED", "7")
    assert main(["verify", "ap-relations", "--ring", "zmod:4", "--samples", "10", "--seed", "99"]) == 0


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["verify", "colimit", "--ring", "int", "--samples", "5", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    rep = json.loads(path.read_text())
    assert rep["summary"]["verified"] == 1


def test_query_commands(capsys):
    code, out = _run(capsys, "roots", "--system", "E7")
    assert code == 0 and out["roots"] == 126 and out["phi_prime"] == "D6"
    code, out = _run(capsys, "subsystems", "--system", "D5", "--n", "3")
    assert out["agree"] and out["chain_count"] == 50
    code, out = _run(capsys, "orbits", "--system", "D5")
    assert sorted(out["orbit_sizes"]) == [10, 40]


def test_refutation_exit_code(monkeypatch, capsys):
    from chevkit import cli
    from chevkit.report import CheckReport

    def bad(cfg):
        r = CheckReport("fake", "none")
        r.refute({"x": 1})
        return [r]

    monkeypatch.setitem(cli.SUITES, "eta", cli.Suite("eta", "x", "x", "A3", (), bad))
    code, rep = _run(capsys, "verify", "eta")
    assert code == 1 and rep["checks"][0]["counterexample"] == {"x": 1}


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "chevkit", "roots", "--system", "A3"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["roots"] == 12
