"""
Claims tested:
  - generate writes poset files readable by compute and report;
  - compute emits the expected cd-index and st for known posets;
  - input errors exit with code 2, failed identities with code 1;
  - an unwritable --output path is an input error;
  - verify runs a suite end to end and honors the hard cap, and the Eulerian
    sweep stays within the requested rank.
"""
import json

import pytest

from eval.verify import Verification, _eulerian_sweep
from main import launch, parse_arguments
from utils.params import EXIT_INPUT_ERROR, EXIT_OK


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


class TestArguments:
    def test_compute_defaults(self):
        config = parse_arguments(["compute", "--family", "cube", "--param", "3"])
        assert config["command"] == "compute"
        assert config["invariants"] == []
        assert config["format"] == "json"

    def test_verb_required(self):
        with pytest.raises(SystemExit):
            parse_arguments([])


class TestGenerate:
    @pytest.mark.parametrize("family,param,size", [("boolean", 4, 16), ("cube", 3, 28), ("polygon", 5, 12)])
    def test_sizes(self, capsys, family, param, size):
        assert launch(["generate", family, str(param)]) == EXIT_OK
        assert len(_json_out(capsys)["elements"]) == size

    def test_dual_of_file(self, tmp_path, capsys):
        path = str(tmp_path / "cube.json")
        assert launch(["generate", "cube", "3", "--output", path]) == EXIT_OK
        assert launch(["generate", f"dual-of:{path}"]) == EXIT_OK
        assert len(_json_out(capsys)["elements"]) == 28

    def test_unknown_family(self):
        assert launch(["generate", "torus", "3"]) == EXIT_INPUT_ERROR

    def test_missing_param(self):
        assert launch(["generate", "cube"]) == EXIT_INPUT_ERROR

    def test_table_format(self, capsys):
        assert launch(["generate", "boolean", "2", "--format", "table"]) == EXIT_OK
        assert "rank" in capsys.readouterr().out


class TestCompute:
    def test_cube_st(self, capsys):
        assert launch(["compute", "st", "--family", "cube", "--param", "3"]) == EXIT_OK
        assert _json_out(capsys)["invariants"]["st"] == [[3, 1, 1], [1, 5, 1]]

    def test_boolean_cd_index(self, capsys):
        assert launch(["compute", "cd-index", "--family", "boolean", "--param", "3"]) == EXIT_OK
        assert _json_out(capsys)["invariants"]["cd-index"] == {"cc": 1, "d": 1}

    def test_toric_h_from_file(self, tmp_path, capsys):
        path = str(tmp_path / "cube.json")
        launch(["generate", "cube", "3", "--output", path])
        capsys.readouterr()
        assert launch(["compute", "toric-h", "toric-g", "--input", path]) == EXIT_OK
        report = _json_out(capsys)
        assert report["invariants"]["toric-h"] == [1, 5, 5, 1]
        assert report["invariants"]["toric-g"] == [[1, 4, 1], [0, 1, 1]]
        assert set(report["routes"]) == {"toric-h", "toric-g"}

    def test_flag_f_keys(self, capsys):
        assert launch(["compute", "flag-f", "--family", "boolean", "--param", "2"]) == EXIT_OK
        assert _json_out(capsys)["invariants"]["flag-f"] == {"": 1, "1": 2}

    def test_not_eulerian(self, tmp_path):
        path = str(tmp_path / "chain.json")
        launch(["generate", "chain", "3", "--output", path])
        assert launch(["compute", "cd-index", "--input", path]) == EXIT_INPUT_ERROR

    def test_unknown_invariant(self):
        assert launch(["compute", "volume", "--family", "cube", "--param", "2"]) == EXIT_INPUT_ERROR

    def test_no_target(self):
        assert launch(["compute", "st"]) == EXIT_INPUT_ERROR

    def test_output_file(self, tmp_path):
        path = tmp_path / "out.json"
        assert launch(["compute", "st", "--family", "polygon", "--param", "5", "--output", str(path)]) == EXIT_OK
        assert json.loads(path.read_text(encoding="utf-8"))["source"] == "polygon5"

    def test_unwritable_output(self, tmp_path):
        path = tmp_path / "missing" / "out.json"
        assert launch(["generate", "boolean", "2", "--output", str(path)]) == EXIT_INPUT_ERROR
        assert not path.exists()


class TestReport:
    def test_cube_flags(self, capsys):
        assert launch(["report", "--family", "cube", "--param", "3"]) == EXIT_OK
        report = _json_out(capsys)
        assert report["elements"] == 28
        assert report["rank_histogram"] == [1, 8, 12, 6, 1]
        assert report["flags"]["eulerian"] is True
        assert report["flags"]["dual_simplicial"] is True
        assert report["flags"]["simplicial"] is False

    def test_table_format(self, capsys):
        assert launch(["report", "--family", "boolean", "--param", "3", "--format", "table"]) == EXIT_OK
        assert "flags" in capsys.readouterr().out


class TestVerify:
    def test_table_suite(self, capsys):
        assert launch(["verify", "--suite", "table1"]) == EXIT_OK
        report = _json_out(capsys)
        assert report["ok"] is True
        assert report["suites"][0]["failed"] == 0

    def test_hard_cap(self):
        assert launch(["verify", "--suite", "table1", "--max-rank", "99"]) == EXIT_INPUT_ERROR

    def test_bases_suite_directly(self):
        report = Verification({"quiet": True, "max_rank": 6}).run("bases")
        assert report.ok
        assert report.suites[0].failed == 0
        assert report.suites[0].max_n == 6

    @pytest.mark.slow
    def test_gessel_suite(self, tmp_path):
        log = tmp_path / "errors.log"
        report = Verification({"quiet": True, "error_log": str(log)}).run("gessel")
        assert report.ok
        assert log.read_text(encoding="utf-8") == ""


class TestEulerianSweep:
    @pytest.mark.parametrize("max_rank", [2, 3, 4, 6])
    def test_rank_bound(self, max_rank):
        for subject in _eulerian_sweep(max_rank, max_rank, 5, 5):
            assert subject.P.max_rank <= max_rank, subject.label

    def test_cube_stops_one_below_rank(self):
        labels = {s.label for s in _eulerian_sweep(4, 4, 5, 5)}
        assert {"cube3", "crosspolytope3", "boolean4"} <= labels
        assert "cube4" not in labels
        assert "crosspolytope4" not in labels
