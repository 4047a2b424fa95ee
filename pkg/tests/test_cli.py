"""Command line behaviour: exit codes, formats, determinism."""

import json

import pytest

from oligoprofile.cli import main
from oligoprofile.growth import fibonacci


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_catalogue_list_plain(capsys):
    code, out, err = run_cli(capsys, "catalogue-list")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "pure_set"
    assert "dlo" in lines and "tree_c" in lines


def test_catalogue_list_json(capsys):
    code, out, _ = run_cli(capsys, "catalogue-list", "--format", "json")
    assert code == 0
    entries = json.loads(out)["entries"]
    assert "local_order" in entries


def test_profile_csv_layout(capsys):
    code, out, _ = run_cli(capsys, "profile", "dlo", "--n-max", "3")
    assert code == 0
    assert out == "n,f_n,saturated_at\n1,1,5\n2,1,7\n3,1,9\n"


def test_profile_json_payload(capsys):
    code, out, _ = run_cli(capsys, "profile", "fibered_order:2", "--n-max", "6", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["entry"] == "fibered_order:2"
    assert data["values"] == [fibonacci(n + 1) for n in range(1, 7)]


def test_profile_runs_are_byte_identical(capsys):
    _, first, _ = run_cli(capsys, "profile", "tree_c", "--n-max", "5", "--format", "json")
    _, second, _ = run_cli(capsys, "profile", "tree_c", "--n-max", "5", "--format", "json")
    assert first == second


def test_profile_jobs_do_not_change_output(capsys):
    _, serial, _ = run_cli(capsys, "profile", "dlo", "--n-max", "4")
    _, parallel, _ = run_cli(capsys, "profile", "dlo", "--n-max", "4", "--jobs", "2")
    assert serial == parallel


def test_jobs_env_variable_is_honoured(capsys, monkeypatch):
    monkeypatch.setenv("OLIGO_JOBS", "2")
    _, out, _ = run_cli(capsys, "profile", "dlo", "--n-max", "3")
    assert out == "n,f_n,saturated_at\n1,1,5\n2,1,7\n3,1,9\n"


def test_out_file_replaces_stdout(capsys, tmp_path):
    target = tmp_path / "profile.csv"
    code, out, _ = run_cli(capsys, "profile", "dlo", "--n-max", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == "n,f_n,saturated_at\n1,1,5\n2,1,7\n"


def test_unknown_entry_exits_one(capsys):
    code, out, err = run_cli(capsys, "profile", "nope", "--n-max", "2")
    assert code == 1 and out == ""
    assert err.startswith("error:")


def test_usage_error_exits_two(capsys):
    assert run_cli(capsys, "profile", "dlo")[0] == 2
    assert run_cli(capsys, "nonsense")[0] == 2


def test_growth_requires_entry_or_file(capsys, tmp_path):
    assert run_cli(capsys, "growth")[0] == 2
    payload = tmp_path / "values.json"
    payload.write_text(json.dumps({"values": [1, 2, 4, 8]}))
    assert run_cli(capsys, "growth", "dlo", "--file", str(payload))[0] == 2


def test_growth_from_file(capsys, tmp_path):
    payload = tmp_path / "values.json"
    payload.write_text(json.dumps({"values": [1, 2, 4, 8, 16]}))
    code, out, _ = run_cli(capsys, "growth", "--file", str(payload), "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["limit_estimate"] == pytest.approx(2.0)
    assert report["monotone"] is True


def test_growth_table_output(capsys):
    code, out, _ = run_cli(capsys, "growth", "fibered_order:2", "--n-max", "20")
    assert code == 0
    assert "limit estimate" in out
    assert "1.618" in out


def test_growth_csv_header(capsys):
    code, out, _ = run_cli(capsys, "growth", "tree_c", "--n-max", "10", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,value,nth_root,ratio"


def test_growth_missing_file_exits_one(capsys):
    code, _, err = run_cli(capsys, "growth", "--file", "/no/such/file.json")
    assert code == 1 and err.startswith("error:")


def test_growth_bad_json_exits_one(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "growth", "--file", str(bad))
    assert code == 1 and err.startswith("error:")


def test_witness_json_payload(capsys):
    code, out, _ = run_cli(capsys, "witness", "binary_pattern", "--n", "4")
    assert code == 0
    data = json.loads(out)
    assert data["family"]["construction"] == "binary_pattern"
    assert len(data["family"]["members"]) == 16
    assert data["report"]["collisions"] == []


def test_witness_max_part_limits_composition(capsys):
    code, out, _ = run_cli(capsys, "witness", "composition", "--n", "5", "--max-part", "2")
    assert code == 0
    assert len(json.loads(out)["family"]["members"]) == fibonacci(6)


def test_linearize_from_file(capsys, tmp_path):
    poset = tmp_path / "poset.json"
    poset.write_text(json.dumps({"size": 4, "leq": [[0, 2], [1, 2], [1, 3]]}))
    code, out, _ = run_cli(capsys, "linearize", "--in", str(poset))
    assert code == 0
    data = json.loads(out)
    assert data["classes"] == [[1], [0], [2, 3]]


def test_glue_from_file(capsys, tmp_path):
    frags = tmp_path / "fragments.json"
    frags.write_text(
        json.dumps(
            {
                "fragments": [
                    {"id": "a", "elements": [1, 2, 3]},
                    {"id": "b", "elements": [3, 4, 5]},
                    {"id": "c", "elements": [5, 6, 1]},
                ]
            }
        )
    )
    code, out, _ = run_cli(capsys, "glue", "--in", str(frags))
    assert code == 0
    components = json.loads(out)["components"]
    assert components == [
        {"kind": "circular", "arrangement": [1, 2, 3, 4, 5, 6], "members": ["a", "b", "c"]}
    ]


def test_glue_conflict_exits_one(capsys, tmp_path):
    frags = tmp_path / "fragments.json"
    frags.write_text(
        json.dumps(
            {
                "fragments": [
                    {"id": "a", "elements": [1, 2, 3]},
                    {"id": "b", "elements": [3, 4, 5]},
                    {"id": "c", "elements": [5, 6, 3]},
                ]
            }
        )
    )
    code, _, err = run_cli(capsys, "glue", "--in", str(frags))
    assert code == 1 and "error:" in err


def test_constants_formats(capsys):
    code, table, _ = run_cli(capsys, "constants")
    assert code == 0
    assert "1.1487" in table and "2.483" in table
    code, as_json, _ = run_cli(capsys, "constants", "--format", "json")
    assert code == 0
    keys = {row["key"] for row in json.loads(as_json)}
    assert "golden_ratio" in keys and "tree_growth" in keys


def test_budget_failure_exits_one(capsys):
    code, _, err = run_cli(capsys, "profile", "dlo", "--n-max", "3", "--budget", "5")
    assert code == 1 and err.startswith("error:")
