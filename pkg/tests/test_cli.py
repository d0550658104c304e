"""
Copyright (c) 2025 cluster-ideals contributors
SPDX-License-Identifier: MIT
"""

"""
Tests for the command-line interface.
"""

import json
import logging

import pytest

from cluster_ideals.cli import (
    EXIT_BUDGET,
    EXIT_INVALID,
    EXIT_MISMATCH,
    EXIT_OK,
    _apply_log_level,
    build_parser,
    main,
)

LONG_DIAGONAL = "path p=v2 q=v5 cross=1,2"


class TestCompute:
    """Test the compute command."""

    def test_pentagon(self, clean_env, capsys):
        """Test g, F and x for the long pentagon diagonal."""
        code = main(["compute", "--surface", "pentagon", "--path", LONG_DIAGONAL])
        out = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert out == [
            "g = 1/x1",
            "F = y1*y2 + y1 + 1",
            "x = (x1*y1*y2 + x2 + y1)/(x1*x2)",
        ]

    def test_coefficient_free(self, clean_env, capsys):
        """Test the coefficient-free output."""
        code = main(["compute", "--surface", "pentagon", "--path", LONG_DIAGONAL, "--coefficient-free"])
        out = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert out[-1] == "x = (x1 + x2 + 1)/(x1*x2)"
        assert out[1] == "F = (x1 + x2 + 1)/x2"

    def test_json_summary(self, clean_env, capsys):
        """Test the JSON summary."""
        code = main(["compute", "--surface", "square", "--path", "path p=v2 q=v4 cross=1", "--json-summary"])
        payload = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert payload["surface"] == "square"
        assert payload["x"] == "(y1 + 1)/x1"
        assert payload["poset_size"] == 1
        assert payload["arc"] is None

    def test_surface_file(self, clean_env, capsys, tmp_path):
        """Test that --surface accepts a file path."""
        path = tmp_path / "sq.surf"
        path.write_text("surface sq\ntri 1 b1 b2 a1\ntri 2 a1 b3 b4\npoint v1 1.0\npoint v2 1.1\npoint v4 2.2\n")
        code = main(["compute", "--surface", str(path), "--path", "path p=v2 q=v4 cross=1"])
        assert code == EXIT_OK
        assert "x = (y1 + 1)/x1" in capsys.readouterr().out


class TestHasse:
    """Test the hasse command."""

    def test_dot(self, clean_env, capsys):
        """Test the DOT rendering of a two-element chain."""
        code = main(["hasse", "--surface", "pentagon", "--path", LONG_DIAGONAL])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert out.startswith("digraph P {")
        assert '"c0" -> "c1";' in out

    def test_dot_is_the_only_text_format(self, clean_env):
        """Test that there is no switch for the always-on DOT output."""
        with pytest.raises(SystemExit) as exc_info:
            main(["hasse", "--surface", "pentagon", "--path", LONG_DIAGONAL, "--dot"])
        assert exc_info.value.code == 2

    def test_json(self, clean_env, capsys):
        """Test the JSON description."""
        main(["hasse", "--surface", "pentagon", "--path", LONG_DIAGONAL, "--json-summary"])
        payload = json.loads(capsys.readouterr().out)
        assert payload["covers"] == [["c0", "c1"]]
        assert [e["weight"] for e in payload["elements"]] == ["1", "2"]


class TestVerify:
    """Test the verify command and its exit codes."""

    def test_pass(self, clean_env, capsys):
        """Test a passing verification."""
        code = main(["verify", "--surface", "pentagon"])
        out = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert out[0] == "surface pentagon"
        assert out[-1] == "PASS"

    def test_explicit_path(self, clean_env, capsys):
        """Test verification of a single steered path."""
        code = main(["verify", "--surface", "pentagon", "--path", LONG_DIAGONAL, "--json-summary"])
        payload = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert payload["checks"]["variable"] == 1

    def test_budget(self, clean_env, capsys):
        """Test that an exhausted budget exits with its own code."""
        code = main(["verify", "--surface", "hexagon", "--budget", "1"])
        assert code == EXIT_BUDGET
        assert "search budget exhausted" in capsys.readouterr().out

    def test_mismatch(self, clean_env, monkeypatch, capsys):
        """Test that a mirrored build fails verification."""
        monkeypatch.setenv("CLUSTER_IDEALS_MIRROR_ORIENTATION", "true")
        code = main(["verify", "--surface", "pentagon"])
        assert code == EXIT_MISMATCH
        assert capsys.readouterr().out.splitlines()[-1] == "FAIL"


class TestPaths:
    """Test the paths command."""

    def test_square(self, clean_env, capsys):
        """Test that both diagonals of the square are listed."""
        code = main(["paths", "--surface", "square", "--max-crossings", "1"])
        out = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert len(out) == 2
        assert all(line.startswith("path p=") for line in out)


class TestInvalidInput:
    """Test exit code 2 for invalid input."""

    def test_unknown_sample(self, clean_env, capsys):
        """Test an unknown sample name."""
        code = main(["compute", "--surface", "nosuchsurface", "--path", LONG_DIAGONAL])
        assert code == EXIT_INVALID
        assert capsys.readouterr().err.startswith("error:")

    def test_missing_file(self, clean_env, tmp_path):
        """Test a missing surface file."""
        code = main(["paths", "--surface", str(tmp_path / "none.surf")])
        assert code == EXIT_INVALID

    def test_bad_path(self, clean_env):
        """Test an unparsable path."""
        code = main(["compute", "--surface", "pentagon", "--path", "path p=v2"])
        assert code == EXIT_INVALID

    def test_invalid_geodesic(self, clean_env):
        """Test a notched boundary end."""
        code = main(["compute", "--surface", "pentagon", "--path", "path p=v2~ q=v5 cross=1,2"])
        assert code == EXIT_INVALID

    def test_non_positive_budget(self, clean_env, capsys):
        """Test that a zero budget is a configuration error."""
        code = main(["verify", "--surface", "pentagon", "--budget", "0"])
        assert code == EXIT_INVALID
        assert "--budget must be positive" in capsys.readouterr().err

    def test_missing_command(self):
        """Test that a subcommand is required."""
        with pytest.raises(SystemExit) as exc_info:
            build_parser().parse_args([])
        assert exc_info.value.code == 2


class TestLogLevel:
    """Test the log level override."""

    def test_apply_log_level(self):
        """Test that a known level is applied to the package logger."""
        package_logger = logging.getLogger("cluster_ideals")
        previous = package_logger.level
        try:
            _apply_log_level("debug")
            assert package_logger.level == logging.DEBUG
            _apply_log_level("LOUD")
            assert package_logger.level == logging.DEBUG
        finally:
            package_logger.setLevel(previous)
