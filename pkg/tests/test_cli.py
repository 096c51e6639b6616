"""CLI behaviour: outputs, exit codes, JSON stability, schema."""

import json

import pytest

from commcalc.cli import main, parse_scalar, validate_report
from commcalc.obstruction import QSqrt3
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_magnus_command(capsys):
    code, out, _ = run(capsys, "magnus", "[m1,m2]", "--vars", "m1,m2")
    assert code == 0
    assert out.splitlines()[0] == "1 + x1x2 - x2x1"


def test_magnus_json(capsys):
    code, report, _ = run_json(capsys, "magnus", "[m1,m2]", "--vars", "m1,m2", "--json")
    assert code == 0
    assert validate_report(report) == []
    assert report["payload"]["expansion"] == "1 + x1x2 - x2x1"
    assert report["payload"]["lcs_degree"] == 2


def test_reduce_command(capsys):
    code, out, _ = run(capsys, "reduce", "[m2,m2]")
    assert code == 0
    assert out.splitlines()[0] == "1"
    code, out, _ = run(capsys, "reduce", "x*y*y^-1")
    assert out.splitlines()[0] == "x"


def test_lie_to_basis_command(capsys):
    code, out, _ = run(capsys, "lie", "to-basis", "[m2,[[m3,m4],[m5,m6]]]")
    assert code == 0
    assert out.splitlines()[0] == "[m2,[m3,[m4,[m5,m6]]]] - [m2,[m4,[m3,[m5,m6]]]]"


def test_verify_lemma41_json(capsys):
    code, report, _ = run_json(capsys, "verify", "lemma41", "--json")
    assert code == 0
    assert validate_report(report) == []
    payload = report["payload"]
    assert payload["rank"] == 14
    assert payload["kernel_dim"] == 1
    assert payload["kernel"] == "all-ones"
    assert payload["basis_rank"] == 24
    assert payload["small_degree_ranks"] == {"2": 1, "3": 2, "4": 6}


def test_verify_appendix(capsys):
    code, report, _ = run_json(capsys, "verify", "appendix", "--json")
    assert code == 0
    assert report["payload"]["all_verified"]
    assert report["payload"]["transcription_flags"] == [12, 13, 14, 15]


def test_verify_hopf(capsys):
    code, report, _ = run_json(capsys, "verify", "hopf", "--json")
    assert code == 0
    assert report["payload"]["substituted_trivial"]
    assert [1, 1, -1] in report["payload"]["substitutions_bound1"]


def test_verify_families(capsys):
    code, report, _ = run_json(capsys, "verify", "families", "--json")
    assert code == 0
    payload = report["payload"]
    assert payload["sample_point_residuals_zero"]
    assert all(payload["families"][k]["all_residuals_zero"] for k in ("1", "2", "3"))


def test_json_reports_are_stable(capsys):
    _, first, _ = run_json(capsys, "verify", "lemma41", "--json")
    _, second, _ = run_json(capsys, "verify", "lemma41", "--json")
    first.pop("timing_ms")
    second.pop("timing_ms")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_system_search(capsys):
    code, report, _ = run_json(
        capsys, "system", "search", "--bound", "2", "--subsystem", "2,3", "--json"
    )
    assert code == 0
    assert report["payload"]["count"] == 16
    assert report["payload"]["variables"] == ["b5", "b6", "c3", "c4"]
    assert [0, 1, 1, 1] in report["payload"]["solutions"]


def test_system_search_partitions_stable(capsys):
    _, base, _ = run_json(
        capsys, "system", "search", "--bound", "2", "--subsystem", "2,3", "--json"
    )
    _, split, _ = run_json(
        capsys, "system", "search", "--bound", "2", "--subsystem", "2,3",
        "--partitions", "3", "--json",
    )
    assert base["payload"] == split["payload"]


SAMPLE_FILE = """\
# the sample solution of the first family at unit parameters
a3 = -1
a4 = -1
a5 = -2
a6 = -2
b1 = 1
b2 = 2
b5 = 1
b6 = -3
c1 = 0
c2 = -1/2
c3 = -1/4
c4 = -1/4
"""


def test_system_eval_sample(tmp_path, capsys):
    path = tmp_path / "assign.txt"
    path.write_text(SAMPLE_FILE)
    code, report, _ = run_json(capsys, "system", "eval", "--assign", str(path), "--json")
    assert code == 0
    assert report["payload"]["satisfied"]
    assert set(report["payload"]["residuals"].values()) == {"0"}


def test_system_eval_failing_point(tmp_path, capsys):
    path = tmp_path / "assign.txt"
    path.write_text(SAMPLE_FILE.replace("c3 = -1/4", "c3 = 1/4"))
    code, report, _ = run_json(capsys, "system", "eval", "--assign", str(path), "--json")
    assert code == 1
    assert not report["payload"]["satisfied"]


def test_system_eval_bracket_naming(tmp_path, capsys):
    path = tmp_path / "assign.txt"
    path.write_text(SAMPLE_FILE.replace("a3 =", "a[3] ="))
    code, report, _ = run_json(capsys, "system", "eval", "--assign", str(path), "--json")
    assert code == 0 and report["payload"]["satisfied"]


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "system", "search")[0] == 2  # missing --bound
    assert run(capsys, "magnus", "[m1,m9]", "--vars", "m1,m2")[0] == 2  # unknown gen
    code, _, err = run(capsys, "reduce", "[x,y")
    assert code == 2 and "offset" in err


def test_small_grid_rejected(capsys):
    code, _, err = run(capsys, "verify", "families", "--grid", "5")
    assert code == 2
    assert "13" in err


def test_verify_all(capsys):
    code, report, _ = run_json(capsys, "verify", "all", "--json", "--bound", "2")
    assert code == 0
    payload = report["payload"]
    assert set(payload) == {
        "lemma41", "appendix", "hopf", "families", "transcription", "integer_search",
    }
    assert payload["integer_search"]["solutions"] == []
    assert payload["transcription"]["flagged_rows"] == [9]


def test_parse_scalar():
    assert parse_scalar("-1/4") == QSqrt3(Fraction(-1, 4))
    assert parse_scalar("0") == QSqrt3(0)
    assert parse_scalar("1/3 + 2/3 sqrt3") == QSqrt3(Fraction(1, 3), Fraction(2, 3))
    assert parse_scalar("-sqrt3") == QSqrt3(0, -1)
    assert parse_scalar("2 - sqrt3") == QSqrt3(2, -1)
    with pytest.raises(ValueError):
        parse_scalar("elephant")
    with pytest.raises(ValueError):
        parse_scalar("1 2 sqrt3")


def test_shipped_schema_matches_validator():
    import importlib.resources

    schema = json.loads(
        importlib.resources.files("commcalc").joinpath("data/report_schema.json").read_text()
    )
    assert sorted(schema["required"]) == sorted(
        ["command", "version", "passed", "payload", "timing_ms"]
    )
    assert schema["additionalProperties"] is False
    assert set(schema["properties"]) == set(schema["required"])


def test_validate_report_catches_defects():
    good = {"command": "x", "version": "1", "passed": True, "payload": {}, "timing_ms": 1.0}
    assert validate_report(good) == []
    assert validate_report({}) != []
    assert validate_report(dict(good, passed="yes")) != []
    assert validate_report(dict(good, extra=1)) != []
    assert validate_report([1, 2]) != []


def test_version_and_help(capsys):
    assert run(capsys, "--version")[0] == 0
    assert run(capsys, "--help")[0] == 0
