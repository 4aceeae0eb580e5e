"""Integration tests for the command-line entry point."""
import json

import pytest

from app.cli import build_parser, run_command


@pytest.mark.integration
@pytest.mark.cli
class TestCommandLine:
    """Integration tests for python -m app.cli."""

    def test_normalize_text(self, capsys):
        """Test the text rendering of a normal form."""
        code = run_command(["normalize", "{2,3} + {3,2}"])

        assert code == 0
        assert capsys.readouterr().out.strip() == "milnor: 0"

    def test_normalize_json(self, capsys):
        """Test --json prints the report."""
        code = run_command(["normalize", "eta*[-1] + 2", "--json"])

        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data["target"] == "mwk"
        assert data["result"]["rank"] == 2

    def test_normalize_bindings(self, capsys):
        """Test --let binds names used in unit position."""
        code = run_command(["normalize", "[[1,a]]", "--field", "Fp:5", "--let", "a=3"])

        assert code == 0
        assert capsys.readouterr().out.strip() == "stilde: [[1,3]]"

    def test_bad_binding_is_usage_error(self):
        """Test a malformed --let exits with status 2."""
        with pytest.raises(SystemExit) as exc:
            run_command(["normalize", "[[1,a]]", "--let", "a"])
        assert exc.value.code == 2

    def test_witt(self, capsys):
        """Test the witt command on <1,1,-2>."""
        code = run_command(["witt", "<1,1,-2>", "--json"])

        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data["invariants"]["rank"] == 3
        assert data["invariants"]["hasse"] == {"inf": 1, "2": 1}

    def test_verify_passes(self, capsys):
        """Test a passing suite exits with 0."""
        code = run_command(["verify", "--suite", "lemma-2.3", "--trials", "3"])

        assert code == 0
        assert "lemma-2.3 over Q" in capsys.readouterr().out

    def test_verify_json_is_deterministic(self, capsys):
        """Test two runs with the same seed print identical JSON."""
        argv = ["verify", "--suite", "matsumoto-moore", "--trials", "3", "--seed", "11", "--json"]
        run_command(argv)
        first = capsys.readouterr().out
        run_command(argv)
        second = capsys.readouterr().out

        assert first == second
        assert json.loads(first)["seed"] == 11

    def test_unknown_suite(self, capsys):
        """Test an unknown suite exits with 2."""
        code = run_command(["verify", "--suite", "no-such-suite"])

        assert code == 2
        assert "Unknown suite" in capsys.readouterr().err

    def test_input_error(self):
        """Test malformed input exits with 4."""
        assert run_command(["normalize", "[2 + 3]"]) == 4
        assert run_command(["witt", "<1,0>"]) == 4

    def test_budget_error(self):
        """Test an oversized model exits with 3."""
        assert run_command(["stilde", "--p", "17", "--n", "1"]) == 3

    def test_sampling_error(self):
        """Test too few units exits with 5."""
        assert run_command(["verify", "--suite", "lemma-3.9", "--field", "Fp:3", "--trials", "1"]) == 5

    def test_stilde_compare(self, capsys):
        """Test the degree-one comparison passes."""
        code = run_command(["stilde", "--p", "5", "--n", "1", "--compare"])

        assert code == 0
        assert "agree=True" in capsys.readouterr().out

    def test_out_bare_name(self, report_dir):
        """Test --out with a bare file name writes into REPORT_DIR."""
        code = run_command(["stilde", "--p", "3", "--n", "1", "--out", "stilde.json"])

        assert code == 0
        data = json.loads((report_dir / "stilde.json").read_text())
        assert data["p"] == 3
        assert data["invariant_factors"]["free_rank"] == 1

    def test_out_path(self, tmp_path):
        """Test --out with a path writes there."""
        target = tmp_path / "nested" / "witt.json"

        assert run_command(["witt", "<1,1>", "--field", "Fp:3", "--out", str(target)]) == 0
        assert json.loads(target.read_text())["field"] == "Fp:3"

    def test_missing_command(self):
        """Test a missing subcommand is a usage error."""
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args([])
        assert exc.value.code == 2
