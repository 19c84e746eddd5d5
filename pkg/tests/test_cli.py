import json

import pytest

from forest_census.graph.models import PartSizes, RootedForest, build_complete_multipartite, is_rooted_spanning_forest
from forest_census.main import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, run
from forest_census.services import closed_form


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("FOREST_CENSUS_MAX_EDGES", "FOREST_CENSUS_MAX_VERTICES", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line]


def test_count_trees_json(capsys):
    assert run(["count", "trees", "1", "1", "2", "--format", "json"]) == EXIT_OK
    (record,) = json_lines(capsys.readouterr().out)
    assert record == {
        "quantity": "trees",
        "m": 1,
        "n": 1,
        "p": 2,
        "r": None,
        "value": "8",
        "oracle_value": None,
        "match": None,
    }


def test_count_plain(capsys):
    assert run(["count", "total-forests", "1", "1", "1"]) == EXIT_OK
    assert capsys.readouterr().out == "total-forests m=1 n=1 p=1: 16\n"


def test_count_with_oracle(capsys):
    assert run(["count", "forests-r", "2", "2", "2", "--r", "2", "--oracle", "--format", "json"]) == EXIT_OK
    (record,) = json_lines(capsys.readouterr().out)
    assert record["value"] == record["oracle_value"] == "192"
    assert record["match"] is True
    assert record["r"] == 2


def test_count_rejects_bad_arguments(capsys):
    assert run(["count", "forests-r", "1", "1", "2", "--r", "3"]) == EXIT_INVALID
    assert run(["count", "forests-r", "1", "1", "2"]) == EXIT_INVALID
    assert run(["count", "trees", "0", "0", "0"]) == EXIT_INVALID
    assert run(["count", "trees", "1", "-1", "2"]) == EXIT_INVALID
    assert run(["count", "cycles", "1", "1", "1"]) == EXIT_INVALID
    assert capsys.readouterr().out == ""


def test_count_handles_large_values(capsys):
    assert run(["count", "trees", "40", "40", "40", "--format", "json"]) == EXIT_OK
    (record,) = json_lines(capsys.readouterr().out)
    assert int(record["value"]) == 80**39 * 80**39 * 80**39 * 120


def test_verify_passes_quietly(capsys):
    assert run(["verify", "4", "4", "4"]) == EXIT_OK
    assert capsys.readouterr().out == ""


def test_verify_show_all(capsys):
    assert run(["verify", "1", "1", "1", "--show-all", "--format", "json"]) == EXIT_OK
    records = json_lines(capsys.readouterr().out)
    assert {record["quantity"] for record in records} == {
        "trees/sum",
        "total-forests/sum",
        "forests-r/sum",
        "trees/kirchhoff",
        "forests-r/minors",
        "total-forests/detLI",
    }
    assert all(record["match"] for record in records)


def test_verify_brute_force_oracles(capsys):
    assert run(["verify", "2", "2", "2", "--oracles", "census"]) == EXIT_OK
    assert run(["verify", "2", "1", "2", "--oracles", "construction,kirchhoff"]) == EXIT_OK
    assert capsys.readouterr().out == ""


def test_verify_skips_over_limit(capsys):
    assert run(["verify", "1", "1", "2", "--oracles", "census", "--max-edges", "2", "--show-all"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "census" not in out
    assert "trees/sum" in out


def test_verify_reports_mismatch(monkeypatch, capsys):
    monkeypatch.setattr(closed_form, "total_via_sum", lambda parts: 1)
    assert run(["verify", "1", "1", "1"]) == EXIT_MISMATCH
    out = capsys.readouterr().out
    assert len(out.splitlines()) == 1
    assert "total-forests/sum" in out
    assert "MISMATCH" in out


def test_verify_rejects_bad_arguments():
    assert run(["verify", "0", "1", "1"]) == EXIT_INVALID
    assert run(["verify", "1", "1", "1", "--oracles", "kirchhoff,guess"]) == EXIT_INVALID


def test_census_csv(capsys):
    assert run(["census", "1", "1", "1", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "kind,l,k,r,count"
    assert lines[1] == "profile,0,0,1,3"
    assert len(lines) == 9
    assert lines[-1] == "total,,,,16"


def test_census_bipartite(capsys):
    assert run(["census", "1", "1", "0", "--format", "json"]) == EXIT_OK
    rows = json_lines(capsys.readouterr().out)
    assert [(row["l"], row["k"], row["count"]) for row in rows if row["kind"] == "profile"] == [
        (0, 1, "1"),
        (1, 0, "1"),
        (1, 1, "1"),
    ]
    assert rows[-1] == {"kind": "total", "l": None, "k": None, "r": None, "count": "3"}


def test_census_reports_total_mismatch(monkeypatch, capsys):
    monkeypatch.setattr("forest_census.commands.census.total_rooted_forest_count", lambda parts: 0)
    assert run(["census", "1", "1", "1", "--format", "csv"]) == EXIT_MISMATCH
    assert capsys.readouterr().out.splitlines()[-1] == "total,,,,16"


def test_census_limits(monkeypatch):
    assert run(["census", "3", "3", "3"]) == EXIT_INVALID
    assert run(["census", "1", "1", "2", "--max-edges", "4"]) == EXIT_INVALID
    monkeypatch.setenv("FOREST_CENSUS_MAX_EDGES", "4")
    assert run(["census", "1", "1", "2"]) == EXIT_INVALID
    monkeypatch.setenv("FOREST_CENSUS_MAX_EDGES", "lots")
    assert run(["census", "1", "1", "1"]) == EXIT_INVALID


def test_sample_trees_are_valid_and_repeatable(capsys):
    argv = ["sample", "2", "1", "2", "--count", "5", "--seed", "17", "--format", "json"]
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == first

    graph = build_complete_multipartite(PartSizes(2, 1, 2))
    rows = json_lines(first)
    assert [row["index"] for row in rows] == [0, 1, 2, 3, 4]
    for row in rows:
        tree = RootedForest(graph=graph, parent=tuple(row["parent"]))
        assert is_rooted_spanning_forest(graph, tree, {0})


def test_sample_edge_cases(capsys):
    assert run(["sample", "1", "0", "0", "--format", "json"]) == EXIT_OK
    assert json_lines(capsys.readouterr().out) == [{"index": 0, "parent": [None]}]
    assert run(["sample", "2", "0", "0"]) == EXIT_INVALID
    assert run(["sample", "1", "1", "1", "--count", "0"]) == EXIT_INVALID
    assert run(["sample", "1", "1", "1", "--seed", "-4"]) == EXIT_INVALID


def test_bench(capsys):
    assert run(["bench", "2", "1"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "size,method,nanoseconds"
    assert [line.split(",")[:2] for line in lines[1:]] == [
        ["1", "closed-form"],
        ["1", "determinant"],
        ["2", "closed-form"],
        ["2", "determinant"],
    ]
    assert run(["bench", "1", "0"]) == EXIT_INVALID
