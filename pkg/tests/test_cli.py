import json

from rbforest.cli import dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_antipode_command(capsys):
    code, out, _ = run(capsys, "antipode", "[o x o]", "--alphabet", "x")
    assert code == 0
    assert out.strip() == "- [o x o] + o x [o]"


def test_mul_command(capsys):
    code, out, _ = run(capsys, "mul", "[o]", "[o]", "--alphabet", "")
    assert code == 0
    assert out.strip() == "(L)*[o] + 2*[[o]]"


def test_bplus_command(capsys):
    code, out, _ = run(capsys, "bplus", "2*o + (L)*[o]", "--alphabet", "")
    assert code == 0
    assert out.strip() == "2*[o] + (L)*[[o]]"


def test_coproduct_command(capsys):
    code, out, _ = run(capsys, "coproduct", "[o x o]", "--alphabet", "x")
    assert code == 0
    assert out.strip() == "o (x) [o x o] + o x o (x) [o] + [o x o] (x) o"


def test_counit_command(capsys):
    code, out, _ = run(capsys, "counit", "3*o + (L)*[o x o]", "--alphabet", "x")
    assert code == 0
    assert out.strip() == "3"


def test_subforests_table(capsys):
    code, out, _ = run(
        capsys, "subforests", "[o x1 o] x2 o", "--alphabet", "x1,x2"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 7  # header plus six markings
    assert lines[0].split() == ["#", "subforest", "closure", "quotient", "reduced"]
    assert "o ⊔ o x2 o" in out
    assert "[o ⊔ o] x2 o" in out


def test_subforests_counts_for_nested_shapes(capsys):
    code, out, _ = run(capsys, "subforests", "[o x o]", "--alphabet", "x")
    assert code == 0 and len(out.strip().splitlines()) == 4
    code, out, _ = run(
        capsys, "subforests", "[[o x1 o] x2 o]", "--alphabet", "x1,x2"
    )
    assert code == 0 and len(out.strip().splitlines()) == 8


def test_enumerate_command(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-degree", "2", "--alphabet", "a")
    assert code == 0
    assert out.splitlines() == ["o", "[o]", "o a o"]


def test_eval_scalar(capsys):
    code, out, _ = run(
        capsys,
        "eval",
        "[o]",
        "--model",
        "scalar",
        "--weight",
        "3/2",
        "--alphabet",
        "",
    )
    assert code == 0
    assert out.strip() == "-3/2"


def test_eval_laurent(capsys):
    code, out, _ = run(
        capsys,
        "eval",
        "[o x o]",
        "--model",
        "laurent",
        "--assign",
        "x=1*t^-1",
        "--alphabet",
        "x",
    )
    assert code == 0
    assert out.strip() == "1*t^-1"


def test_eval_weight_mismatch(capsys):
    code, _, err = run(
        capsys,
        "eval",
        "[o]",
        "--model",
        "laurent",
        "--weight",
        "2",
        "--alphabet",
        "",
    )
    assert code == 2
    assert "weight mismatch" in err


def test_eval_rejects_unassigned_letter(capsys):
    code, _, err = run(
        capsys,
        "eval",
        "o x o",
        "--model",
        "scalar",
        "--weight",
        "1",
        "--alphabet",
        "x",
    )
    assert code == 2
    assert "no assigned value" in err


def test_parse_error_has_position(capsys):
    code, _, err = run(capsys, "mul", "[o x", "o", "--alphabet", "x")
    assert code == 2
    assert "line 1, column 5" in err


def test_unknown_letter_is_exit_2(capsys):
    code, _, err = run(capsys, "antipode", "[o q o]", "--alphabet", "x")
    assert code == 2
    assert "unknown letter" in err


def test_missing_alphabet(capsys, monkeypatch):
    monkeypatch.delenv("RBFOREST_ALPHABET", raising=False)
    code, _, err = run(capsys, "antipode", "[o x o]")
    assert code == 2
    assert "no alphabet declared" in err


def test_alphabet_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("RBFOREST_ALPHABET", "x")
    code, out, _ = run(capsys, "antipode", "[o x o]")
    assert code == 0
    assert out.strip() == "- [o x o] + o x [o]"


def test_usage_error_exit_code(capsys):
    assert dispatch(["mul"]) == 2
    capsys.readouterr()


def test_check_command_and_reports(capsys, tmp_path):
    json_path = tmp_path / "report.json"
    csv_path = tmp_path / "report.csv"
    figures = tmp_path / "figures"
    code, out, err = run(
        capsys,
        "check",
        "--max-degree",
        "2",
        "--alphabet",
        "a",
        "--json",
        str(json_path),
        "--csv",
        str(csv_path),
        "--figures",
        str(figures),
    )
    assert code == 0
    assert "result: all laws hold" in out
    report = json.loads(json_path.read_text())
    assert report["all_passed"] is True
    assert {law["law"] for law in report["laws"]} >= {
        "rota-baxter-identity",
        "antipode-convolution",
    }
    header = csv_path.read_text().splitlines()[0]
    assert header == "law,instances,passed,failed,advisory,seconds"
    assert (figures / "law_results.png").exists()
    assert (figures / "corpus_by_degree.png").exists()


def test_check_random_mode(capsys):
    code, out, _ = run(
        capsys,
        "check",
        "--max-degree",
        "3",
        "--alphabet",
        "a,b",
        "--samples",
        "10",
        "--seed",
        "5",
    )
    assert code == 0
    assert "10 seeded samples (seed 5)" in out


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "coproduct", "[[o x1 o] x2 o]", "--alphabet", "x1,x2")
    _, second, _ = run(capsys, "coproduct", "[[o x1 o] x2 o]", "--alphabet", "x1,x2")
    assert first == second
