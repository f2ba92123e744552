from __future__ import annotations

from pathlib import Path

from epsec.demo import run_demo
from epsec.demo.demo import show_worked_example
from epsec._core.vectors import WORKED_TRACE


def test_worked_example_trace():
    assert show_worked_example() == WORKED_TRACE


def test_demo_run(tmp_path: Path, capsys):
    script = tmp_path / 'acceptance.txt'
    assert run_demo(['--seed', '2', '--script-out', str(script)]) == 0

    out = capsys.readouterr().out
    assert 'accept           100' in out
    assert 'mac-mismatch     64' in out
    assert 'replay-detected  10' in out
    assert out.rstrip().endswith('MAC-I = f0668c1e')

    lines = script.read_text().splitlines()
    assert 'seed 2' in lines
    assert sum(line.startswith('send ul') for line in lines) == 100
