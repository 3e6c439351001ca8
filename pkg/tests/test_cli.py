import json

import pytest

from satcontainers.cli import main
from instances import DEMO_DIMACS, DEMO_MODELS


@pytest.fixture
def demo_file(tmp_path):
    path = tmp_path / "demo_formula.cnf"
    path.write_text(DEMO_DIMACS)
    return str(path)


@pytest.fixture
def contradiction_file(tmp_path):
    path = tmp_path / "contra.cnf"
    path.write_text("p cnf 1 2\n1 0\n-1 0\n")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_satisfiable_exit_zero(capsys, demo_file):
    code, out, err = run_cli(capsys, "solve", demo_file,
                             "--p", "1/100", "--delta", "1/5", "--k", "3")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "sat"
    assert tuple(data["assignment"]) in set(DEMO_MODELS)
    assert "sat" in err


def test_solve_unsat_exit_twenty(capsys, contradiction_file):
    code, out, _ = run_cli(capsys, "solve", contradiction_file,
                           "--p", "1/100", "--delta", "1/5", "--k", "2")
    assert code == 20
    assert json.loads(out)["status"] == "unsat"


def test_analyze_reports_structure_conditions(capsys, demo_file):
    code, out, _ = run_cli(capsys, "analyze", demo_file,
                           "--p", "1/2", "--lambda", "2", "--k", "3")
    assert code == 0
    report = json.loads(out)["structure_report"]
    assert report["cond1"] is False
    assert report["w_p"] == "5/8" and report["avg"] == "5/48"


def test_analyze_with_delta_adds_bounds(capsys, demo_file):
    code, out, _ = run_cli(capsys, "analyze", demo_file,
                           "--p", "1/100", "--lambda", "2", "--k", "3",
                           "--delta", "1/5")
    data = json.loads(out)
    assert code == 0
    assert data["bounds_report"]["fingerprint_bound"] == "27/5"


def test_maxsat_exit_codes(capsys, demo_file, contradiction_file):
    code, out, _ = run_cli(capsys, "maxsat", demo_file, "--p", "1/100",
                           "--delta", "1/5", "--k", "3", "--greedy-polish")
    assert code == 0
    assert json.loads(out)["falsified_weight"] == "0/1"
    code, out, _ = run_cli(capsys, "maxsat", contradiction_file, "--p", "1/100",
                           "--delta", "1/5", "--k", "2")
    assert code == 20
    assert json.loads(out)["status"] == "no_assignment"


def test_containers_plain_and_traced(capsys, demo_file):
    code, out, _ = run_cli(capsys, "containers", demo_file,
                           "--p", "1/100", "--delta", "1/5", "--k", "3")
    assert code == 0
    family = json.loads(out)
    assert family["containers"] == [[1, -1, 2, -2, 3, -3]]
    code, out, _ = run_cli(capsys, "containers", demo_file,
                           "--p", "1/100", "--delta", "1/5", "--k", "3", "--trace")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    kinds = [line["type"] for line in lines]
    assert kinds.count("family") == 1 and kinds[-1] == "family"
    assert kinds.count("output") == lines[-1]["stats"]["runs_executed"]


def test_dense_subcommands(capsys, tmp_path):
    import sys
    sys.path.insert(0, "tests")
    from instances import matching_complement

    from fractions import Fraction
    from satcontainers import family_weight, to_hypergraph

    n = 10
    f = matching_complement(n, tuple([0] * n))
    d = family_weight(to_hypergraph(f), Fraction(1, 2 * n))
    path = tmp_path / "dense.cnf"
    path.write_text(f.to_dimacs())
    code, out, _ = run_cli(capsys, "dense-solve", str(path), "--d", f"{d.numerator}/{d.denominator}")
    assert code == 0
    assert json.loads(out)["status"] == "sat"
    code, out, _ = run_cli(capsys, "dense-maxsat", str(path), "--delta", "6/25",
                           "--d", f"{d.numerator}/{d.denominator}", "--cap", "1",
                           "--greedy-polish")
    assert code == 0
    assert json.loads(out)["falsified_weight"] == "0/1"


def test_convert_dce(capsys):
    code, out, _ = run_cli(capsys, "convert-dce", "--D", "16", "--c", "2",
                           "--epsilon", "1/2", "--k", "2")
    assert code == 0
    data = json.loads(out)["conversion"]
    assert data == {"exact": True, "lambda": "2/1", "p": "1/2", "tolerance": None}


def test_verify_file_and_fuzz(capsys, demo_file):
    code, out, _ = run_cli(capsys, "verify", demo_file,
                           "--p", "1/100", "--delta", "1/5", "--k", "3")
    assert code == 0
    assert json.loads(out)["all_passed"] is True
    code, out, _ = run_cli(capsys, "verify", "--fuzz", "4", "--seed", "3",
                           "--vars", "5", "--k", "3", "--clauses", "12")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert [l["type"] for l in lines].count("instance") == 4
    summary = lines[-1]
    assert summary["type"] == "summary"
    assert summary["count"] == 4 and summary["failures"] == 0


def test_rejection_exit_codes(capsys, demo_file, tmp_path):
    # p >= delta/k
    code, _, err = run_cli(capsys, "solve", demo_file,
                           "--p", "1/10", "--delta", "1/5", "--k", "3")
    assert code == 2 and "rejected" in err
    # malformed CNF
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 1\n0\n")
    code, _, err = run_cli(capsys, "solve", str(bad),
                           "--p", "1/100", "--delta", "1/5", "--k", "2")
    assert code == 2 and "parse error" in err
    # missing file
    code, _, _ = run_cli(capsys, "solve", str(tmp_path / "nope.cnf"),
                         "--p", "1/100", "--delta", "1/5", "--k", "2")
    assert code == 2
    # bad fraction syntax is a usage error from argparse
    with pytest.raises(SystemExit) as exc:
        main(["solve", demo_file, "--p", "nope", "--delta", "1/5", "--k", "3"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_repeated_invocations_byte_identical(capsys, demo_file):
    outputs = []
    for _ in range(2):
        code, out, _ = run_cli(capsys, "solve", demo_file,
                               "--p", "1/100", "--delta", "1/5", "--k", "3")
        assert code == 0
        outputs.append(out.encode())
    assert outputs[0] == outputs[1]
    outputs = []
    for _ in range(2):
        _, out, _ = run_cli(capsys, "analyze", demo_file, "--p", "1/100",
                            "--lambda", "7/2", "--k", "3", "--delta", "1/5")
        outputs.append(out.encode())
    assert outputs[0] == outputs[1]
