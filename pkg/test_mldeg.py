import json
import os

import pytest

from config import Budget
from errors import InputError
from map_analysis import frobenius_map
from mldeg import JobSpec, main, run

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture(name):
    return os.path.join(FIXTURES, name)


def invoke(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_frobenius(tmp_path, n, d):
    map_input = frobenius_map(n, d)
    path = tmp_path / f"frobenius_{n}_{d}.json"
    path.write_text(json.dumps({
        "n": n,
        "polynomials": [{"terms": f.to_terms_json()} for f in map_input.forms],
    }))
    return str(path)


def test_verify_frobenius_plane(capsys):
    code, out, err = invoke(capsys, "verify", "--input", fixture("frobenius_n2_d2.json"), "--seed", "0")
    report = json.loads(out)
    assert code == 0
    assert report["ml_degree"] == 0
    assert report["verdict"] == "match"
    assert [(o["name"], o["count"]) for o in report["oracles"]] == [("euler", 0), ("critical", 0)]
    assert report["profile"]["d_f"] == 2
    assert "verdict match" in err


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("d", [2, 3])
def test_verify_frobenius_family(tmp_path, capsys, n, d):
    code, out, _ = invoke(capsys, "verify", "--input", write_frobenius(tmp_path, n, d))
    report = json.loads(out)
    assert code == 0
    assert report["verdict"] == "match"
    assert report["ml_degree"] == 0
    names = [o["name"] for o in report["oracles"]]
    assert "euler" in names
    if n <= 2:
        assert "critical" in names
    else:
        assert report["skipped"][0]["name"] == "critical"


def test_verify_is_byte_identical(capsys):
    _, first, _ = invoke(capsys, "verify", "--input", fixture("binary_forms.json"), "--seed", "7")
    _, second, _ = invoke(capsys, "verify", "--input", fixture("binary_forms.json"), "--seed", "7")
    assert first == second


def test_verify_binary_forms_skips_euler(capsys):
    code, out, _ = invoke(capsys, "verify", "--input", fixture("binary_forms.json"))
    report = json.loads(out)
    assert code == 0
    assert report["ml_degree"] == 3
    assert report["profile"]["reduced_degrees"] == [3, 2]
    assert report["skipped"][0]["name"] == "euler"
    assert report["oracles"][0]["count"] == 3
    assert report["verdict"] == "match"


@pytest.mark.parametrize("name,error_type", [
    ("not_dominant.json", "NotDominantError"),
    ("common_factor.json", "CommonFactorError"),
    ("mixed_degrees.json", "DegreeMismatchError"),
])
def test_theorem_preconditions(capsys, name, error_type):
    code, out, _ = invoke(capsys, "theorem", "--input", fixture(name))
    assert code == 3
    assert json.loads(out)["error"]["type"] == error_type


def test_theorem_reports_profile(capsys):
    code, out, _ = invoke(capsys, "theorem", "--input", fixture("binary_forms.json"))
    report = json.loads(out)
    assert code == 0
    assert report["ml_degree"] == 3
    assert report["method"] == "chern_class"


def test_oracle_euler_generic_lines(capsys):
    code, out, _ = invoke(capsys, "oracle", "euler", "--input", fixture("generic_lines.json"))
    assert code == 0
    assert json.loads(out)["ml_degree"] == 1


def test_oracle_euler_rejects_nonlinear_input(capsys):
    code, out, _ = invoke(capsys, "oracle", "euler", "--input", fixture("frobenius_n2_d2.json"))
    assert code == 3
    assert json.loads(out)["error"]["type"] == "NonLinearInputError"


def test_oracle_critical_budget(capsys):
    code, out, err = invoke(capsys, "oracle", "critical", "--input", fixture("binary_forms.json"),
                            "--budget-basis", "1")
    report = json.loads(out)
    assert code == 5
    assert report["error"]["type"] == "BudgetExceededError"
    assert "hint" in err


def test_oracle_critical_counts(capsys):
    code, out, _ = invoke(capsys, "oracle", "critical", "--input", fixture("frobenius_n1_d3.json"),
                          "--seed", "3", "--trials", "3")
    report = json.loads(out)
    assert code == 0
    assert report["ml_degree"] == 0
    assert report["trials"] == 3
    assert len(report["oracles"][0]["trials"]) == 3


def test_schema_errors_exit_two(tmp_path, capsys):
    code, out, _ = invoke(capsys, "theorem", "--input", str(tmp_path / "missing.json"))
    assert code == 2
    assert json.loads(out)["error"]["type"] == "SchemaError"
    code, _, _ = invoke(capsys, "verify", "--input", fixture("binary_forms.json"), "--trials", "1")
    assert code == 2


def test_table_mode(capsys):
    code, out, _ = invoke(capsys, "table", "--n", "2", "--max-degree", "2")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "reduced_degrees,theorem,exact_sequence,difference"
    assert "2 2 2,9,-15,24" in lines


def test_run_returns_report_context():
    report, code = run(JobSpec("theorem", fixture("frobenius_n1_d3.json")))
    assert code == 0
    assert report.ml_degree == 0


def test_job_spec_validation():
    with pytest.raises(InputError):
        JobSpec("plot", "x.json")
    with pytest.raises(InputError):
        JobSpec("verify", "x.json", budget=Budget(max_basis=0, max_degree=10))
