"""The experiment scripts run end to end at toy scale."""

import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).parent.parent / "scripts"


def run(script, *args):
    return subprocess.run(
        [sys.executable, str(SCRIPTS / script), *args],
        capture_output=True,
        text=True,
        timeout=120,
    )


def test_descent_depth_survey():
    proc = run("descent_depth_survey.py", "--to", "1000", "--top", "3")
    assert proc.returncode == 0, proc.stderr
    assert "depth  count" in proc.stdout
    assert "500 instances, all split" in proc.stdout


def test_parabolic_density():
    proc = run("parabolic_density.py", "--decades", "2")
    assert proc.returncode == 0, proc.stderr
    assert "k in [     11,     100]      14" in proc.stdout
    assert "no side is taken" in proc.stdout


def test_twin_shape():
    proc = run("twin_shape.py", "--max-n", "2000")
    assert proc.returncode == 0, proc.stderr
    assert "N/(ln N)^2" in proc.stdout


@pytest.mark.parametrize(
    "script", ["descent_depth_survey.py", "parabolic_density.py", "twin_shape.py"]
)
def test_help_exits_zero(script):
    proc = run(script, "--help")
    assert proc.returncode == 0
    assert "usage" in proc.stdout.lower()
