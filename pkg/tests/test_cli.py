import io as stdio
import json
import subprocess
import sys

import pytest

from cplogic import fixtures, io
from cplogic.cli import main
from cplogic.model import find_isomorphism


def run(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def ex(tmp_path_factory):
    d = tmp_path_factory.mktemp("examples")
    code, out, _ = run("examples", "--out", str(d))
    assert code == 0
    return d


def test_examples_are_written(ex):
    names = {p.name for p in ex.iterdir()}
    assert {"byz.json", "pa.json", "line.json", "square.json", "share_a.json"} <= names
    assert io.load_structure(ex / "square.json") == fixtures.square_model()


def test_check_true_and_false(ex):
    code, out, _ = run("check", "--model", str(ex / "byz.json"), "--world", "w1", "--formula", "[byz;Rab] K{b} p_a")
    assert (code, out) == (0, "true\n")
    code, out, _ = run("check", "--model", str(ex / "byz.json"), "--world", "w1", "--formula", "K{b} p_a")
    assert (code, out) == (1, "false\n")


def test_check_without_point_reports_truth_set(ex):
    code, out, _ = run(
        "check", "--model", str(ex / "anne_bill.json"), "--formula", "K{a} p_a", "--format", "json"
    )
    data = json.loads(out)
    assert code == 1
    assert data["valid"] is False
    assert data["holds_at"] == ["u", "v"]


def test_check_on_a_complex_by_facet_name(ex):
    code, out, _ = run("check", "--model", str(ex / "triangle_cycle.json"), "--facet", "X1", "--formula", "D{a,b} p_c")
    assert (code, out) == (0, "true\n")


def test_check_with_pattern_file(ex):
    code, _, _ = run(
        "check",
        "--model", str(ex / "anne_bill.json"),
        "--world", "s",
        "--pattern", f"pub={ex / 'pattern_public_announcement_ab.json'}",
        "--formula", "[pub;U] K{a} ~p_b",
    )
    assert code == 0


def test_update_matches_library(ex, tmp_path):
    target = tmp_path / "updated.json"
    code, _, _ = run(
        "update", "--model", str(ex / "byzantine.json"), "--pattern", str(ex / "pattern_byzantine_ab.json"),
        "--out", str(target),
    )
    assert code == 0
    assert find_isomorphism(io.load_structure(target), fixtures.byzantine_updated_expected()) is not None


def test_convert_carries_the_point(ex):
    code, out, _ = run("convert", "--model", str(ex / "share_a_kripke.json"), "--to", "simplicial", "--world", "X")
    data = json.loads(out)
    assert code == 0
    assert data["meta"]["point"] == data["meta"]["point_map"]["X"]
    assert len(data["facets"]) == 2
    code, out, _ = run("convert", "--model", str(ex / "share_a.json"), "--to", "kripke", "--facet", "X")
    assert json.loads(out)["meta"]["point"] == "{v,w,y}"


def test_convert_wrong_direction(ex):
    code, _, err = run("convert", "--model", str(ex / "share_a.json"), "--to", "simplicial", "--error-json")
    assert code == 3
    assert json.loads(err)["error"] == "ValidationError"


def test_bisim_verdicts(ex):
    left, right = f"{ex / 'line.json'}:w", f"{ex / 'square.json'}:w1"
    code, out, _ = run("bisim", "--left", left, "--right", right, "--collective")
    assert code == 1
    assert out.splitlines() == ["not-related", "~D{a,b} p_c"]
    code, out, _ = run("bisim", "--left", left, "--right", right, "--standard")
    assert code == 0
    assert out.startswith("related\n")


def test_bisim_across_kinds(ex):
    code, _, _ = run("bisim", "--left", f"{ex / 'share_a_kripke.json'}:X", "--right", f"{ex / 'share_a.json'}:X")
    assert code == 0


def test_reduce(ex):
    code, out, _ = run("reduce", "--model", str(ex / "byz.json"), "--formula", "[byz;Rab] D{b} p_a")
    assert (code, out) == (0, "D{a,b} p_a\n")
    code, out, _ = run("reduce", "--agents", "a,b", "--formula", "[{U};U] (p_a & ~p_b)")
    assert out == "p_a & ~p_b\n"


def test_gen_pattern():
    code, out, _ = run("gen-pattern", "immediate_snapshot", "--agents", "a,b,c")
    assert code == 0
    assert len(json.loads(out)["graphs"]) == 13
    code, out, _ = run("gen-pattern", "group_announcement", "--agents", "a,b,c", "--param", "group=a,b")
    assert len(json.loads(out)["graphs"]) == 1
    code, _, err = run("gen-pattern", "gossip", "--agents", "a", "--error-json")
    assert code == 3
    assert json.loads(err)["error"] == "BadParams"


def test_falsify():
    code, out, _ = run("falsify", "--formula", "K{a} p_a | K{a} ~p_a", "--trials", "50")
    assert (code, out) == (0, "none found\n")
    code, out, _ = run("falsify", "--formula", "K{a} p_b | K{a} ~p_b", "--format", "json")
    assert code == 1
    assert json.loads(out)["counterexample"]["exhaustive_stage"] is True


def test_falsify_is_deterministic():
    argv = ["falsify", "--formula", "D{a,b} p_c -> K{c} p_a", "--max-agents", "3", "--max-worlds", "4",
            "--trials", "300", "--seed", "9"]
    assert run(*argv) == run(*argv)


def test_syntax_error_reports_position(ex):
    code, _, err = run(
        "check", "--model", str(ex / "byz.json"), "--world", "w1", "--formula", "p_a & & p_a", "--error-json"
    )
    payload = json.loads(err)
    assert code == 2
    assert payload["position"] == 6
    assert payload["error"] == "FormulaSyntaxError"


def test_usage_and_validation_errors(ex, tmp_path):
    assert run("nonsense")[0] == 2
    assert run("check", "--model", str(ex / "byz.json"))[0] == 2
    assert run("check", "--model", str(tmp_path / "none.json"), "--formula", "p_a")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"agents": ["a"], "atoms": {"a": ["p"]}, "worlds": ["x", "y"],
                               "relations": {"a": [["x", "y"]]}, "valuation": {"x": ["p_a"]}}))
    code, _, err = run("check", "--model", str(bad), "--formula", "p_a", "--error-json")
    assert code == 3
    assert json.loads(err)["error"] == "LocalityError"
    code, _, err = run("check", "--model", str(ex / "byz.json"), "--world", "w9", "--formula", "p_a")
    assert code == 3
    assert err.startswith("error: ")


def test_format_from_environment(ex, monkeypatch):
    monkeypatch.setenv("CPLOGIC_FORMAT", "json")
    code, out, _ = run("check", "--model", str(ex / "byz.json"), "--world", "w1", "--formula", "p_a")
    assert json.loads(out)["holds"] is True


def test_axioms_command():
    code, out, _ = run("axioms", "--trials", "10", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_module_entry_point(ex):
    proc = subprocess.run(
        [sys.executable, "-m", "cplogic.cli", "check", "--model", str(ex / "byz.json"), "--world", "w2",
         "--formula", "p_a"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert proc.stdout == "false\n"
