"""End-to-end runs of the command-line front-end.

Exit codes: 0 success, 1 computation or verification failure, 2 usage
error.  Errors are JSON on stderr; results are JSON (CSV for dims) on
stdout; identical invocations must produce identical bytes.
"""

import contextlib
import io
import json

from treelie.cli import main


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def test_version_flag():
    code, out, err = run(["--version"])
    assert code == 0
    assert out.strip()


def test_dims_csv_kernel_column():
    code, out, err = run(["dims", "--rank", "2", "--max-degree", "5", "--format", "csv"])
    assert code == 0 and not err
    lines = out.strip().splitlines()
    assert lines[0] == "degree,lie_dim,kernel_rank,tree_dim,predicted_rank"
    kernel = [int(line.split(",")[2]) for line in lines[1:]]
    assert kernel == [3, 0, 1, 0, 3]
    # tree dims stop after degree 3
    assert lines[4].split(",")[3] == ""


def test_dims_json_tree_columns():
    code, out, _ = run(["dims", "--rank", "4", "--max-degree", "3"])
    rows = json.loads(out)["rows"]
    assert code == 0
    assert rows[0]["tree_dim"] == 4
    assert rows[1]["kernel_rank"] == 4
    code, out, _ = run(["dims", "--rank", "2", "--max-degree", "2"])
    assert code == 0
    assert json.loads(out)["rows"][0]["tree_dim"] == 0


def test_dims_bounds_rejected():
    for argv in (
        ["dims", "--rank", "7"],
        ["dims", "--rank", "2", "--max-degree", "9"],
        ["dims"],
    ):
        code, out, err = run(argv)
        assert code == 2 and not out
        assert json.loads(err)["error"]["code"] == "bounds" or "error" in err


def test_dims_cache_round_trip(tmp_path):
    cache = str(tmp_path / "cache")
    argv = ["dims", "--rank", "3", "--max-degree", "4", "--cache", cache]
    code1, out1, _ = run(argv)
    files = list((tmp_path / "cache").iterdir())
    assert code1 == 0 and len(files) == 1
    code2, out2, _ = run(argv)
    assert code2 == 0 and out2 == out1


def test_reruns_are_byte_identical():
    for argv in (
        ["magnus", "--word", "[x1, y1]", "--genus", "1", "--cap", "4"],
        ["star", "-g", "2", "--lhs", "Y(x1,x2,y2)", "--rhs", "Y(y1,x2,y2)"],
        ["verify", "psi-tripod", "--seed", "3"],
    ):
        a = run(argv)
        b = run(argv)
        assert a == b and a[0] == 0


def test_magnus_weight_and_rank_inference():
    code, out, _ = run(["magnus", "--word", "[x1, y1]"])
    data = json.loads(out)
    assert code == 0
    assert data["rank"] == 2 and data["weight"] == 2
    code, out, _ = run(["magnus", "--word", "g1 g1^-1", "--rank", "2"])
    assert json.loads(out)["weight"] == "infinite"


def test_word_syntax_error_is_usage():
    code, out, err = run(["lie", "--word", "[x1, y1", "--genus", "1"])
    assert code == 2 and not out
    assert json.loads(err)["error"]["code"] == "word-syntax"


def test_psi_tripod_lands_in_kernel():
    code, out, _ = run(["psi", "--tree", "Y(x1,x2,y2)"])
    data = json.loads(out)
    assert code == 0
    assert data["rank"] == 4 and data["in_kernel"] is True
    assert data["tensor"]["parts"]


def test_tree_syntax_errors():
    bad = [
        "Y(x1,x2)",          # top vertex needs three arms
        "Y(x1,x2,y2",        # unbalanced
        "Y(x1,x2,z3)",       # unknown letter
        "Y(x1,x2,y9)",       # color out of range for the inferred rank
        "Y(x1,x2,y2)x1",     # trailing input
        "x1",                # no vertex at all
    ]
    for text in bad:
        code, out, err = run(["psi", "--tree", text, "--genus", "2"])
        assert code == 2 and not out, text
        assert json.loads(err)["error"]["code"] == "tree-syntax", text


def test_star_product_of_adjacent_handles():
    code, out, _ = run(
        ["star", "-g", "2", "--lhs", "Y(x1,x2,y2)", "--rhs", "Y(y1,x2,y2)"]
    )
    data = json.loads(out)
    assert code == 0
    terms = data["result"]["terms"]
    assert len(terms) == 4
    degrees = sorted(t["diagram"]["verts"] for t in terms)
    assert degrees == [2, 2, 2, 2]


def test_star_rejects_odd_rank():
    code, out, err = run(["star", "--rank", "3", "--lhs", "Y(g1,g2,g3)", "--rhs", "Y(g1,g2,g3)"])
    assert code == 2
    assert json.loads(err)["error"]["code"] == "bounds"


def test_bracket_of_disjoint_handles_vanishes():
    code, out, _ = run(
        [
            "bracket",
            "-g",
            "4",
            "--lhs",
            "Y(x1,x2,y2)",
            "--rhs",
            "Y(x3,x4,y4)",
            "--form",
            "identity",
        ]
    )
    data = json.loads(out)
    assert code == 0
    assert data["result"]["terms"] == []


def test_unknown_form_rejected():
    code, _, err = run(
        ["star", "-g", "1", "--lhs", "Y(x1,x1,y1)", "--rhs", "Y(x1,x1,y1)", "--form", "magic"]
    )
    assert code == 2
    assert json.loads(err)["error"]["code"] == "form"


def test_realize_then_johnson_via_endo_file(tmp_path):
    code, out, _ = run(["realize", "--rank", "4", "--degree", "2", "--basis-index", "0"])
    data = json.loads(out)
    assert code == 0
    assert data["round_trip"] is True
    assert data["basis_size"] == 4
    endo_file = tmp_path / "endo.json"
    endo_file.write_text(json.dumps(data["endo"]))
    code, out, _ = run(["johnson", "--endo", "@" + str(endo_file), "--degree", "2"])
    back = json.loads(out)
    assert code == 0
    assert back["in_kernel"] is True
    assert back["tensor"]["parts"]


def test_realize_index_out_of_range():
    code, _, err = run(["realize", "--rank", "2", "--degree", "2", "--basis-index", "99"])
    assert code == 2
    assert json.loads(err)["error"]["code"] == "bounds"


def test_bad_endo_inputs():
    cases = [
        ("not json", "endo-json"),
        ('{"images": 3}', "endo-json"),
        ("@/nonexistent/endo.json", "endo-io"),
    ]
    for text, expected in cases:
        code, out, err = run(["johnson", "--endo", text, "--degree", "2"])
        assert code == 2 and not out, text
        assert json.loads(err)["error"]["code"] == expected, text


def test_massey_pairing_and_reconstruction():
    code, out, _ = run(["massey", "-I", "1,2", "--word", "[x1, y1]"])
    data = json.loads(out)
    assert code == 0 and data["value"] == 1
    code, out, _ = run(["massey", "-I", "2,1", "--word", "[x1, y1]"])
    assert json.loads(out)["value"] == -1
    code, out, _ = run(["massey", "--word", "[x1, y1]"])
    data = json.loads(out)
    assert code == 0 and data["matches_leading"] is True


def test_massey_weight_mismatch_is_computation_failure():
    code, out, err = run(["massey", "-I", "1", "--word", "[x1, y1]"])
    assert code == 1 and not out
    assert json.loads(err)["error"]["code"] == "domain"


def test_verify_list_and_unknown_suite():
    code, out, _ = run(["verify", "--list"])
    suites = json.loads(out)["suites"]
    assert code == 0
    assert "jacobi" in suites and "all" in suites
    code, _, err = run(["verify", "no-such-suite"])
    assert code == 2
    assert json.loads(err)["error"]["code"] == "suite"
    code, _, err = run(["verify"])
    assert code == 2


def test_verify_quick_suite_passes():
    code, out, _ = run(["verify", "jacobi", "--level", "quick"])
    data = json.loads(out)
    assert code == 0
    assert data["passed"] is True
    assert all(c["passed"] for c in data["checks"])
    assert "seconds" not in json.dumps(data)


def test_verify_timings_flag_adds_seconds():
    code, out, _ = run(["verify", "psi-tripod", "--timings"])
    data = json.loads(out)
    assert code == 0
    assert all("seconds" in c for c in data["checks"])


def test_csv_rejected_outside_dims():
    code, _, err = run(["magnus", "--word", "x1", "--genus", "1", "--format", "csv"])
    assert code == 2
    assert json.loads(err)["error"]["code"] == "format"


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(
        ["lie", "--word", "[g1, g2]", "--rank", "3", "--out", str(target)]
    )
    assert code == 0 and not out
    data = json.loads(target.read_text())
    assert data["weight"] == 2
