import subprocess
import sys

import pytest

from strucres.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def prog(programs_dir, name):
    return str(programs_dir / name)


class TestSolveCommand:
    def test_single_answer(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys, "solve", "-p", prog(programs_dir, "nat.pl"), "-q", "?- nat(s(X))."
        )
        assert code == 0
        assert out == "X = 0\n"

    def test_ground_success_prints_true(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys, "solve", "-p", prog(programs_dir, "conn.pl"), "-q", "?- conn(a, c)."
        )
        assert code == 0
        assert out == "true\n"

    def test_exhausted_limits(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys,
            "solve",
            "-p",
            prog(programs_dir, "bad.pl"),
            "-q",
            "?- bad(X).",
            "--max-steps",
            "50",
        )
        assert code == 2
        assert out == "unknown (limits exhausted)\n"

    def test_finite_failure(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys, "solve", "-p", prog(programs_dir, "nat.pl"), "-q", "?- nat(a)."
        )
        assert code == 1
        assert out == "no\n"

    def test_all_answers(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys,
            "solve",
            "-p",
            prog(programs_dir, "nat.pl"),
            "-q",
            "?- nat(X).",
            "--all-answers",
            "--max-depth",
            "4",
        )
        assert code == 0
        assert out.splitlines()[:3] == ["X = 0", "X = s(0)", "X = s(s(0))"]

    def test_sld_engine(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys,
            "solve",
            "-p",
            prog(programs_dir, "nat.pl"),
            "-q",
            "?- nat(s(X)).",
            "--engine",
            "sld",
        )
        assert code == 0
        assert out == "X = 0\n"

    @pytest.mark.parametrize("strategy", ["dfs", "bfs", "iddfs"])
    def test_strategies_agree_here(self, capsys, programs_dir, strategy):
        code, out, _ = run_cli(
            capsys,
            "solve",
            "-p",
            prog(programs_dir, "nat.pl"),
            "-q",
            "?- nat(s(X)).",
            "--strategy",
            strategy,
        )
        assert code == 0
        assert out == "X = 0\n"


class TestRenderCommand:
    def test_dot_output(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys, "render", "-p", prog(programs_dir, "nat.pl"), "-q", "?- nat(s(X))."
        )
        assert code == 0
        assert out.startswith("digraph")
        assert out.count("[shape=") == 7

    def test_ascii_output(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys,
            "render",
            "-p",
            prog(programs_dir, "nat.pl"),
            "-q",
            "?- nat(s(X)).",
            "--render",
            "ascii",
        )
        assert code == 0
        assert "[var] X_2" in out

    def test_output_is_byte_deterministic(self, capsys, programs_dir):
        args = ("render", "-p", prog(programs_dir, "conn.pl"), "-q", "?- conn(a, c).")
        _, first_out, _ = run_cli(capsys, *args)
        _, second_out, _ = run_cli(capsys, *args)
        assert first_out == second_out


class TestProductivityCommand:
    def test_finite_within_bound(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys,
            "productivity",
            "-p",
            prog(programs_dir, "from.pl"),
            "-q",
            "?- from(0, X).",
            "--fuel",
            "16",
        )
        assert code == 0
        assert out == "FiniteWithinBound (fuel=16)\n"

    def test_exceeds_bound(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys,
            "productivity",
            "-p",
            prog(programs_dir, "bad.pl"),
            "-q",
            "?- bad(X).",
            "--fuel",
            "16",
        )
        assert code == 3
        assert out == "ExceedsBound (fuel=16)\n"

    def test_fact_at_tiny_fuel(self, capsys, programs_dir):
        code, out, _ = run_cli(
            capsys,
            "productivity",
            "-p",
            prog(programs_dir, "nat.pl"),
            "-q",
            "?- nat(0).",
            "--fuel",
            "2",
        )
        assert code == 0
        assert out.startswith("FiniteWithinBound")


class TestErrors:
    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "solve", "-p", "no_such.pl", "-q", "?- x.")
        assert code == 64
        assert "cannot read" in err

    def test_parse_error(self, capsys, tmp_path):
        bad = tmp_path / "broken.pl"
        bad.write_text("nat(0")
        code, _, err = run_cli(capsys, "solve", "-p", str(bad), "-q", "?- nat(0).")
        assert code == 64
        assert "line" in err

    def test_arity_conflict_in_query(self, capsys, programs_dir):
        code, _, err = run_cli(
            capsys, "solve", "-p", prog(programs_dir, "nat.pl"), "-q", "?- nat(s(X), 0)."
        )
        assert code == 64
        assert "arity" in err

    def test_usage_error(self, capsys, programs_dir):
        code, _, err = run_cli(capsys, "solve", "-p", prog(programs_dir, "nat.pl"))
        assert code == 64
        assert err


def test_module_entry_point(programs_dir):
    result = subprocess.run(
        [
            sys.executable,
            "-m",
            "strucres.cli",
            "solve",
            "-p",
            str(programs_dir / "nat.pl"),
            "-q",
            "?- nat(s(X)).",
        ],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout == "X = 0\n"
