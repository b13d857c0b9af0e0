import json
import subprocess
import sys

import pytest

from avoidstat.cli import UsageError, parse_range, run


def call(capsys, *argv):
    code = run(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_parse_range():
    assert parse_range("3..7") == (3, 7)
    assert parse_range("5") == (5, 5)
    for bad in ("7..3", "a..b", "-1..2", ""):
        with pytest.raises(UsageError):
            parse_range(bad)


def test_catalan_csv(capsys):
    code, out, _ = call(capsys, "catalan", "--n", "0..5", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,catalan", "0,1", "1,1", "2,2", "3,5", "4,14", "5,42"]


def test_enumerate(capsys):
    code, out, _ = call(capsys, "enumerate", "--n", "3")
    assert code == 0
    assert out.split() == ["123", "213", "231", "312", "321"]
    code, out, _ = call(capsys, "enumerate", "--n", "4", "--limit", "2", "--format", "json")
    assert json.loads(out) == ["1234", "2134"]


def test_count_list(capsys):
    code, out, _ = call(capsys, "count", "--p", "2413", "--q", "12", "--list", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == "3"
    assert len(data["occurrences"]) == 3


def test_total_json_integers_are_strings(capsys):
    code, out, _ = call(capsys, "total", "--q", "213", "--n", "3..5", "--format", "json")
    assert code == 0
    assert json.loads(out) == [{"n": "3", "total": "1"}, {"n": "4", "total": "11"},
                               {"n": "5", "total": "81"}]


def test_signature(capsys):
    code, out, _ = call(capsys, "signature", "--q", "12", "--n", "2..4", "--format", "json")
    assert json.loads(out)["values"] == ["1", "7", "37"]


def test_verify_triple(capsys):
    code, out, _ = call(capsys, "verify-triple", "--n-max", "8", "--format", "csv")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "n,S(231),S(312),S(213),equal"
    assert rows[3] == "3,1,1,1,yes"


def test_verify_general_nine_letter_pair(capsys):
    code, out, _ = call(capsys, "verify-general", "--q", "3124", "--t", "213", "--u", "2",
                        "--n", "9..10", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,S(645721389),S(645789213),equal", "9,1,1,yes", "10,31,31,yes"]


def test_verify_general_corollary(capsys):
    code, out, _ = call(capsys, "verify-general", "--q", "1", "--t", "1", "--u", "2",
                        "--n", "4..7", "--corollary", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,S(2134),S(2341),S(2314),equal"


def test_closed_a(capsys):
    code, out, _ = call(capsys, "closed-a", "--n", "4", "--format", "csv")
    assert code == 0 and out.splitlines() == ["n,a_n", "4,11"]
    code, _, err = call(capsys, "closed-a", "--n", "2")
    assert code == 2 and "n >= 3" in err


def test_series_csv(capsys):
    code, out, _ = call(capsys, "series", "--which", "A", "--order", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,value", "0,0", "1,0", "2,0", "3,1", "4,11", "5,81"]


def test_bijection_tree(capsys):
    code, out, _ = call(capsys, "bijection", "--tree", "(((..)(..)).);1,3,4;1,1,1",
                        "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["input_side"] == "A" and data["output_side"] == "B"
    assert data["input_pattern"] == "213" and data["output_pattern"] == "231"
    code, out2, _ = call(capsys, "bijection", "--tree", data["output"], "--format", "json")
    assert json.loads(out2)["output"] == data["input"]


def test_bijection_exhaustive(capsys):
    code, out, _ = call(capsys, "bijection", "--n", "3..6", "--format", "json")
    assert code == 0
    assert all(r["ok"] for r in json.loads(out))


def test_search_and_explain(capsys):
    code, out, _ = call(capsys, "search", "--h", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["classes"]) == 4
    code, out, _ = call(capsys, "explain", "--q", "213", "--q2", "312")
    assert code == 0 and "theorem-general" in out


def test_explain_not_equivalent(capsys):
    code, _, err = call(capsys, "explain", "--q", "123", "--q2", "321")
    assert code == 1 and "counterexample" in err


@pytest.mark.parametrize("argv", [
    ["total", "--q", "2,2", "--n", "3"],
    ["total", "--q", "12", "--n", "5..3"],
    ["total", "--q", "12", "--n", "15"],
    ["verify-general", "--q", "21", "--t", "1", "--u", "1", "--n", "4"],
    ["verify-general", "--q", "1", "--t", "1", "--u", "0", "--n", "4"],
    ["bijection", "--tree", "((..);1;1,1,1"],
    ["bijection"],
    ["search", "--h", "7"],
    ["explain", "--q", "12", "--q2", "12"],
    ["series", "--which", "A", "--order", "-1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["total"])
    assert exc.value.code == 2


def test_output_is_deterministic_across_threads(capsys):
    outs = [call(capsys, "total", "--q", "231", "--n", "5..9", "--threads", t)[1] for t in ("1", "3")]
    assert outs[0] == outs[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "avoidstat", "catalan", "--n", "4"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.split()[-1] == "14"
