"""Shared fixtures: real artifact directories produced by the kgpilot CLI.

The renderer talks to the simulator only through its files, so the test
inputs come from actual preset runs, generated once per session.
"""

from __future__ import annotations

import shutil
import subprocess

import pytest

PRESET_COMMANDS = {
    1: "scan",
    2: "trace",
    3: "trace",
    4: "scan",
    5: "trace",
    6: "scan",
    7: "trace",
}


def run_renderer(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(["render-figures", *args], capture_output=True, text=True)


@pytest.fixture(scope="session")
def inputs_dir(tmp_path_factory):
    if shutil.which("kgpilot") is None:
        pytest.skip("kgpilot CLI is not installed")
    root = tmp_path_factory.mktemp("artifacts")
    for n, command in PRESET_COMMANDS.items():
        preset = f"fig{n}"
        proc = subprocess.run(
            ["kgpilot", command, "--preset", preset, "--out", str(root / preset)],
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            pytest.fail(f"kgpilot {command} --preset {preset} failed:\n{proc.stderr}")
    return root
