import json

import pytest

from bifree_sop.cli_runner import EXIT_CONFIG, EXIT_DOMAIN, EXIT_FAIL, EXIT_OK, SUITES, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


PAIR = {"orders": [2, 2], "kappa_a": [1, "1/2"], "kappa_b": [2, -1],
        "kappa_ab": [["3/4", 0], [0, {"num": "1", "den": "5"}]]}


def test_verify_default_run(capsys):
    code, out, _ = run(capsys, "verify", "--orders", "3,3", "--seed", "1", "--trials", "5")
    report = json.loads(out)
    assert code == EXIT_OK and report["all_hold"]
    assert {r["suite"] for r in report["results"]} == set(SUITES)
    assert {r["trial"] for r in report["results"]} == set(range(1, 6))


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_verify_is_byte_identical(capsys, fmt):
    args = ("verify", "--orders", "2,3", "--seed", "42", "--trials", "3", "--format", fmt)
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second


def test_output_file_matches_stdout(capsys, tmp_path):
    target = str(tmp_path / "report.json")
    _, out, _ = run(capsys, "verify", "--orders", "2,2", "--suite", "moments")
    assert run(capsys, "verify", "--orders", "2,2", "--suite", "moments", "--output", target)[1] == ""
    assert open(target).read() == out


def test_suite_filter(capsys):
    code, out, _ = run(capsys, "verify", "--orders", "3,3", "--suite", "sop", "--trials", "2")
    names = {r["name"] for r in json.loads(out)["results"]}
    assert code == EXIT_OK and names == {"sop_multiplicativity"}


def test_timings_are_opt_in(capsys):
    _, out, _ = run(capsys, "verify", "--orders", "2,2", "--suite", "kexpr")
    assert "elapsed_s" not in out
    _, out, _ = run(capsys, "verify", "--orders", "2,2", "--suite", "kexpr", "--timings")
    assert "elapsed_s" in json.loads(out)["results"][0]


def test_csv_cells_are_exact(capsys, tmp_path):
    path = write(tmp_path, "p.json", json.dumps(PAIR))
    code, out, _ = run(capsys, "transform", "--input", path, "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "series,i,j,value"
    assert all("/" in line.rsplit(",", 1)[1] and "." not in line for line in lines[1:])


@pytest.mark.parametrize("argv", [
    ["verify", "--orders", "8,8", "--suite", "lemmas"],
    ["verify", "--orders", "8,7"],
    ["verify", "--orders", "3,3", "--suite", "nope"],
    ["verify", "--orders", "3,3", "--trials", "0"],
    ["verify", "--orders", "x,3"],
    ["verify", "--orders", "0,3"],
    ["verify", "--cap", "0"],
    ["partitions", "--orders", "15"],
    ["partitions", "--orders", "4", "--query", "[[1,3],[2,4]]"],
    ["partitions", "--orders", "4", "--query", "[[1,3"],
    ["partitions", "--orders", "2,2", "--query", "[[{\"side\":\"l\",\"index\":1}]]"],
    ["bogus"],
    [],
])
def test_config_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_CONFIG


def test_lemmas_cap_boundary(capsys):
    # (3,3) needs 11 nodes; a cap of 10 rejects it, 11 accepts
    assert run(capsys, "verify", "--orders", "3,3", "--suite", "lemmas", "--cap", "10")[0] == EXIT_CONFIG
    assert run(capsys, "verify", "--orders", "3,3", "--suite", "lemmas", "--cap", "11")[0] == EXIT_OK


def test_transform_outputs(capsys, tmp_path):
    indep = {"orders": [3, 2], "kappa_a": [2, 1, 0], "kappa_b": [1, 3],
             "kappa_ab": [[0, 0], [0, 0], [0, 0]]}
    code, out, _ = run(capsys, "transform", "--input", write(tmp_path, "p.json", json.dumps(indep)))
    series = json.loads(out)["series"]
    assert code == EXIT_OK
    assert set(series) == {"S_a", "S_b", "S_ab", "S_op", "K", "H", "C"}
    sop = series["S_op"]["coeffs"]
    assert sop[0] == {"num": "1", "den": "1"} and all(c["num"] == "0" for c in sop[1:])


@pytest.mark.parametrize("text", [
    "{not json",
    json.dumps({"orders": [2, 2]}),
    json.dumps({**PAIR, "kappa_a": [1]}),
    json.dumps({**PAIR, "kappa_b": [1, "1/0"]}),
    json.dumps([1, 2]),
])
def test_transform_bad_input_exit_2(capsys, tmp_path, text):
    assert run(capsys, "transform", "--input", write(tmp_path, "bad.json", text))[0] == EXIT_CONFIG


def test_transform_missing_file_exit_2(capsys, tmp_path):
    assert run(capsys, "transform", "--input", str(tmp_path / "absent.json"))[0] == EXIT_CONFIG


def test_transform_zero_mean_exit_3(capsys, tmp_path):
    spec = {**PAIR, "kappa_a": [0, 1]}
    code, _, err = run(capsys, "transform", "--input", write(tmp_path, "z.json", json.dumps(spec)))
    assert code == EXIT_DOMAIN and "first cumulant" in err


def test_identity_failure_exit_1(capsys, monkeypatch):
    from bifree_sop import cli_runner
    from bifree_sop.checks import Check
    monkeypatch.setitem(cli_runner.SUITES, "sop", lambda t: [Check("broken", (1, 1), False, None)])
    code, out, _ = run(capsys, "verify", "--orders", "2,2", "--suite", "sop")
    assert code == EXIT_FAIL and json.loads(out)["all_hold"] is False


def test_partitions_query_golden(capsys):
    code, out, _ = run(capsys, "partitions", "--orders", "7", "--query", "[[1,4],[2,3],[5],[6,7]]")
    assert code == EXIT_OK
    assert json.loads(out)["kreweras"] == [[1, 3], [2], [4, 5, 7], [6]]


def test_partitions_listing_counts(capsys):
    for orders, expect in (("5", 42), ("2,3", 42), ("0,4", 14)):
        report = json.loads(run(capsys, "partitions", "--orders", orders)[1])
        assert report["count"] == report["catalan"] == expect == len(report["rows"])


def test_partitions_two_by_one_classes(capsys):
    report = json.loads(run(capsys, "partitions", "--orders", "1,1")[1])
    assert sorted(r["class"] for r in report["rows"]) == ["L", "R"]
    code, out, _ = run(capsys, "partitions", "--orders", "1,1", "--format", "csv")
    assert code == EXIT_OK and len(out.splitlines()) == 3


def test_partitions_bnc_query(capsys):
    q = json.dumps([[{"side": "l", "index": 1}, {"side": "r", "index": 1}]])
    report = json.loads(run(capsys, "partitions", "--orders", "1,1", "--query", q)[1])
    assert report["class"] == "L"
    assert report["kreweras"] == [[{"side": "l", "index": 1}], [{"side": "r", "index": 1}]]
