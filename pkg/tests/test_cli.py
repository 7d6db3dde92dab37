import json

import pytest

from leavitt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_load_line(capsys):
    code, out, _ = run(capsys, "load", "family", "line(d=3)", "--char", "0")
    assert code == 0
    assert "vertices: 3" in out and "edges: 2" in out and "sinks: 1 (v3)" in out
    assert "acyclicity: acyclic" in out


def test_load_rose(capsys):
    code, out, _ = run(capsys, "load", "family", "rose(n=2)", "--char", "5")
    assert code == 0
    assert "vertices: 1" in out and "loops: 2" in out and "acyclicity: cyclic" in out


def test_non_prime_characteristic(capsys):
    code, _, err = run(capsys, "load", "family", "line(d=3)", "--char", "4")
    assert code == 3 and "NON_PRIME_CHAR" in err


def test_load_file(capsys, tmp_path):
    f = tmp_path / "g.lpa"
    f.write_text("graph g {\n vertex a b\n edge*2 e: a -> b\n}\n")
    code, out, _ = run(capsys, "load", str(f))
    assert code == 0 and "edges: 2" in out
    code, out, _ = run(capsys, "member", "e1.e2^", "--graph", str(f), "--json")
    assert code == 0 and json.loads(out)["decision"] == "YES"


def test_parse_error_in_file_reports_line(capsys, tmp_path):
    f = tmp_path / "bad.lpa"
    f.write_text("graph g {\n vertex a\n edge e: a -> z\n}\n")
    code, _, err = run(capsys, "load", "--graph", str(f))
    assert code == 3 and "line 3" in err and "UNKNOWN_VERTEX" in err


@pytest.mark.parametrize("expr,expected", [("e1*e1^", "v1"), ("v1*v2", "0")])
def test_eval_line2(capsys, expr, expected):
    code, out, _ = run(capsys, "eval", expr, "--family", "line(d=2)")
    assert code == 0 and out.strip() == expected


def test_eval_ghost_path(capsys):
    code, out, _ = run(capsys, "normalize", "(e1.e2)^", "--family", "line(d=3)")
    assert out.strip() == "e2^.e1^"


def test_member_loop_is_no(capsys):
    code, out, _ = run(capsys, "member", "x", "--family", "loop")
    assert code == 1 and "decision: NO" in out and "failed conditions: 2" in out


def test_member_certify_rose(capsys):
    code, out, _ = run(capsys, "member", "v", "--certify", "--family", "rose(n=2)")
    assert code == 0 and "decision: YES" in out and "certificate verified: yes" in out
    code, out, _ = run(capsys, "member", "v", "--certify", "--family", "rose(n=2)", "--json")
    data = json.loads(out)
    assert data["certificate"] == [["-1", "e1", "e1^"], ["-1", "e2", "e2^"]] and data["certificate_verified"]


def test_member_grid_over_f2(capsys):
    code, out, _ = run(capsys, "member", "v1_1", "--family", "grid_En(n=1,p=2)", "--char", "2")
    assert code == 0 and "decision: YES" in out


def test_member_unknown_on_lazy_graph(capsys):
    code, out, _ = run(capsys, "member", "v1_1", "--family", "grid_En(n=1,p=2)", "--mmax", "2")
    assert code == 2 and "decision: UNKNOWN" in out


def test_certify_non_member_is_an_error(capsys):
    code, _, err = run(capsys, "member", "v1", "--certify", "--family", "line(d=2)")
    assert code == 3 and "NOT_A_MEMBER" in err


def test_perfect(capsys):
    code, out, _ = run(capsys, "perfect", "--family", "p_line(p=2)", "--char", "2")
    assert code == 0 and "verdict: YES" in out and "v1: 0" in out
    code, out, _ = run(capsys, "perfect", "--family", "p_line(p=2)", "--json")
    assert code == 1 and json.loads(out)["failing_condition"] == 3


def test_ideals_line(capsys):
    code, out, _ = run(capsys, "ideals", "--family", "line(d=3)")
    assert code == 0 and "hereditary saturated subsets: 2" in out and "chain: yes" in out


def test_ideals_needs_finite_graph(capsys):
    code, _, err = run(capsys, "ideals", "--family", "p_line(p=2)")
    assert code == 3 and "finite" in err


def test_ideals_limit(capsys):
    code, _, err = run(capsys, "ideals", "--family", "line(d=5)", "--limit-vertices", "3")
    assert code == 3 and "TOO_LARGE" in err


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "v1", "--family", "line(d=2)")
    assert code == 1 and "member: no" in out and "block traces: v2: 1" in out
    code, out, _ = run(capsys, "oracle", "e1", "--family", "line(d=2)", "--json")
    data = json.loads(out)
    assert code == 0 and data["member"] and data["blocks"]["v2"]["labels"] == ["v2", "e1"]


def test_oracle_needs_acyclic(capsys):
    code, _, err = run(capsys, "oracle", "x", "--family", "loop")
    assert code == 3 and "NOT_ACYCLIC" in err


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "3")
    assert code == 0 and "FAIL" not in out and out.count("PASS") == 8


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["member"])
    assert exc.value.code == 3
    code, _, err = run(capsys, "eval", "v1")
    assert code == 3 and "graph source" in err
    code, _, err = run(capsys, "eval", "v1 +", "--family", "line(d=2)")
    assert code == 3 and "SYNTAX" in err


def test_json_error_output(capsys):
    code, out, _ = run(capsys, "eval", "w", "--family", "line(d=2)", "--json")
    assert code == 3 and json.loads(out)["error"]["code"] == "UNKNOWN_SYMBOL"


@pytest.mark.parametrize("argv", [
    ["member", "v", "--certify", "--family", "rose(n=3)", "--char", "3"],
    ["perfect", "--family", "stair(p=2)", "--char", "2", "--json"],
    ["oracle", "v1 + 2*e1", "--family", "line(d=3)"],
    ["selftest", "--seed", "7", "--json"],
])
def test_output_is_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "member", "v1 + e1", "--family", "line(d=2)")
    _, js, _ = run(capsys, "member", "v1 + e1", "--family", "line(d=2)", "--json")
    data = json.loads(js)
    assert f"decision: {data['decision']}" in text
    assert "vertex trace: v1: 1" in text and data["trace_vector"] == {"v1": "1"}


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "leavitt", "eval", "e1*e1^", "--family", "line(d=2)"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "v1"
