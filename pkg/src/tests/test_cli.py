"""
Command-line tests: subcommands against the bundled data files, report
formats and exit codes.
"""
import json
import pytest
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from src.cli.main import main

DATA_DIR = project_root / "data"


def data(name):
    return str(DATA_DIR / name)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    assert code == 0
    return json.loads(out)


class TestReports:
    """Each subcommand emits its report as JSON."""

    def test_dims_hexagon(self, capsys):
        report = run_json(capsys, ["dims", data("hexagon.json")])
        assert (report["natarajan"], report["ds"], report["exponential"]) == (1, 2, 2)
        assert report["vc"] is None

    def test_orient_hexagon(self, capsys):
        report = run_json(capsys, ["orient", data("hexagon.json")])
        assert report["optimal_max_outdeg"] == 1
        assert report["max_outdeg"] == 1
        assert len(report["edges"]) == 6

    def test_orient_greedy_stuck(self, capsys):
        report = run_json(capsys, ["orient", data("hexagon.json"), "--method", "greedy", "--bound", "1"])
        assert report == {"bound": 1, "found": False}

    def test_shift_example_32(self, capsys):
        report = run_json(capsys, ["shift", data("example32.json")])
        assert report["downward_closed"]
        assert len(report["final"]["hypotheses"]) == 5

    def test_single_shift(self, capsys):
        report = run_json(capsys, ["shift", data("example33.json"), "--direction", "0"])
        assert report["hypotheses"] == [[0, 0], [0, 1], [0, 2], [1, 0]]

    def test_coset_s3(self, capsys):
        report = run_json(capsys, ["coset", data("s3_pair.json")])
        assert report["complex"]["empty_squares"] == 0
        assert report["condition_intersections"]
        assert report["natarajan"] == 1

    def test_complex_check(self, capsys):
        report = run_json(capsys, ["complex", "check", data("six_cycle_complex.json")])
        assert report["good"]
        assert report["dimension"] == 1

    def test_from_bipartite_leaf(self, capsys):
        report = run_json(capsys, ["complex", "from-bipartite", data("path_bipartite.json")])
        assert not report["pseudo_cube"]
        assert report["leaf"] == ["left", 0]

    def test_gen_tree(self, capsys):
        report = run_json(capsys, ["gen", "tree", "--k", "3", "--m", "2"])
        assert report["domain_size"] == 3
        assert len(report["hypotheses"]) == 13


class TestLearnCommand:
    def test_prediction(self, capsys):
        report = run_json(capsys, ["learn", data("hexagon.json"), "--sample", data("hexagon_sample.json"),
                                   "--x", "0", "--seed", "0"])
        assert report == {"label": 3, "predictor": "one-inclusion", "x": 0}

    def test_leave_one_out(self, capsys):
        report = run_json(capsys, ["learn", data("hexagon.json"), "--sample", data("hexagon_sample.json"),
                                   "--loo", "--seed", "0"])
        assert report["n"] == 20
        assert report["bad"] == 0

    def test_curve_csv(self, capsys):
        code = main(["learn", data("hexagon.json"), "--distribution", data("hexagon_distribution.json"),
                     "--ns", "1,2", "--seed", "0", "--format", "csv"])
        lines = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert lines[0] == "n,error,bound,bound_name"
        assert [line.split(",")[0] for line in lines[1:]] == ["1", "2"]

    def test_curve_json(self, capsys):
        report = run_json(capsys, ["learn", data("hexagon.json"), "--distribution",
                                   data("hexagon_distribution.json"), "--ns", "2", "--seed", "0"])
        assert report["realizable"]
        assert report["curve"][0]["error"] <= report["curve"][0]["bound"]

    def test_seed_is_required(self):
        with pytest.raises(SystemExit) as info:
            main(["learn", data("hexagon.json"), "--sample", data("hexagon_sample.json"), "--loo"])
        assert info.value.code == 2


class TestCompressCommand:
    def test_list_stage(self, capsys):
        report = run_json(capsys, ["compress", data("hexagon.json"), "--sample", data("hexagon_sample.json"),
                                   "--stage", "list", "--t", "1", "--seed", "0"])
        assert report["stage"] == "list"
        assert report["verified"]

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out" / "menu.json"
        code = main(["compress", data("hexagon.json"), "--sample", data("hexagon_sample.json"), "--stage",
                     "menu", "--menu", data("hexagon_menu.json"), "--d-n", "1", "--seed", "0",
                     "--output", str(target)])
        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["stage"] == "menu"


class TestExitCodes:
    """Errors map to exit codes with an error document on stderr."""

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2

    def test_missing_file(self, capsys, tmp_path):
        code = main(["dims", str(tmp_path / "absent.json")])
        error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert code == 2
        assert error["error_code"] == "PARSE_ERROR"

    def test_precondition(self, capsys):
        """The list learner needs exactly d + t examples unless told to truncate."""
        code = main(["list-learn", data("hexagon.json"), "--sample", data("hexagon_sample.json"), "--t", "1"])
        error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert code == 4
        assert error["error_code"] == "PRECONDITION_FAILED"

    def test_truncate(self, capsys):
        report = run_json(capsys, ["list-learn", data("hexagon.json"), "--sample", data("hexagon_sample.json"),
                                   "--t", "1", "--truncate"])
        assert report["p"] == 3
        assert report["entries"]["1"] == [4]
        assert 3 in report["entries"]["0"]

    def test_not_realizable(self, capsys, tmp_path):
        sample = tmp_path / "bad_sample.json"
        sample.write_text(json.dumps([[0, 1], [1, 4]]), encoding="utf-8")
        code = main(["learn", data("hexagon.json"), "--sample", str(sample), "--x", "0", "--seed", "0"])
        error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert code == 4
        assert error["error_code"] == "NOT_REALIZABLE"

    def test_budget_exceeded(self, capsys):
        code = main(["dims", data("boolean_cube_3.json"), "--budget", "5"])
        assert code == 3

    @pytest.mark.slow
    def test_selftest(self, capsys):
        assert main(["selftest"]) == 0
        assert "Overall:" in capsys.readouterr().out


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
