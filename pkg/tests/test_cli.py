from __future__ import annotations

import json
from pathlib import Path

import pytest

from epsec import __version__
from epsec._main import EXIT_OK, EXIT_USAGE, EXIT_FAILED, main
from epsec._core.vectors import EEA2_253, EIA2_WORKED, WORKED_TRACE, KEYSTREAM_WORKED

WORKED_ARGS = [
    '--key', EIA2_WORKED.key,
    '--count', '36af6144',
    '--bearer', '18',
    '--direction', '0',
    '--message', EIA2_WORKED.message,
]


def _out(capsys) -> str:
    return capsys.readouterr().out


@pytest.mark.quick
def test_eia2_worked_example(capsys):
    assert main(['eia2', *WORKED_ARGS]) == EXIT_OK
    assert _out(capsys) == 'f0668c1e\n'


def test_eia2_decimal_inputs(capsys):
    args = [a.replace('18', '0d24') if a == '18' else a for a in WORKED_ARGS]
    assert main(['eia2', *args]) == EXIT_OK
    assert _out(capsys) == 'f0668c1e\n'


def test_eia2_trace(capsys):
    assert main(['eia2', *WORKED_ARGS, '--trace']) == EXIT_OK
    assert _out(capsys) == WORKED_TRACE + '\n'


def test_eia2_verify(capsys):
    assert main(['eia2', *WORKED_ARGS, '--verify', 'f0668c1e']) == EXIT_OK
    assert _out(capsys) == 'accept\n'

    assert main(['eia2', *WORKED_ARGS, '--verify', 'f0668c1f']) == EXIT_FAILED
    assert _out(capsys) == 'reject\n'


def test_eia2_trace_and_verify_are_exclusive():
    with pytest.raises(SystemExit) as e:
        main(['eia2', *WORKED_ARGS, '--trace', '--verify', 'f0668c1e'])
    assert e.value.code == 2


def test_eia0_needs_no_key(capsys):
    args = ['--count', '0', '--bearer', '0', '--direction', '1', '--message', 'ab']
    assert main(['eia2', '--algo', 'eia0', *args]) == EXIT_OK
    assert _out(capsys) == '00000000\n'


def test_eia0_has_no_trace(capsys):
    args = ['--count', '0', '--bearer', '0', '--direction', '1', '--message', 'ab']
    assert main(['eia2', '--algo', 'eia0', '--trace', *args]) == EXIT_USAGE
    assert 'only available for eia2' in capsys.readouterr().err


def test_eea2_vector(capsys):
    args = ['--key', EEA2_253.key, '--count', '398a59b4', '--bearer', '15',
            '--direction', '1', '--message', EEA2_253.plaintext]
    assert main(['eea2', *args]) == EXIT_OK
    assert _out(capsys) == EEA2_253.ciphertext + '\n'

    assert main(['eea2', *args, '--roundtrip']) == EXIT_OK
    assert _out(capsys) == EEA2_253.plaintext + '\n'


def test_eea0_identity(capsys):
    args = ['--algo', 'eea0', '--count', '0', '--bearer', '0', '--direction', '0',
            '--message', 'deadbeef']
    assert main(['eea2', *args]) == EXIT_OK
    assert _out(capsys) == 'deadbeef/32\n'


def test_key_from_environment(capsys, monkeypatch):
    monkeypatch.setenv('EPSEC_KEY', EIA2_WORKED.key)
    assert main(['eia2', *WORKED_ARGS[2:]]) == EXIT_OK
    assert _out(capsys) == 'f0668c1e\n'


def test_missing_key(capsys):
    assert main(['eia2', *WORKED_ARGS[2:]]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith('epsec: error: argument --key')


@pytest.mark.parametrize('flag, value', [
    ('--key', '00'),
    ('--count', '1ffffffff'),
    ('--bearer', '20'),
    ('--message', 'ff/9'),
    ('--direction', '2'),
])
def test_invalid_frame_inputs(flag, value, capsys):
    args = list(WORKED_ARGS)
    args[args.index(flag) + 1] = value
    with pytest.raises(SystemExit) as e:
        main(['eia2', *args])
    assert e.value.code == 2
    assert flag in capsys.readouterr().err


def test_version(capsys):
    with pytest.raises(SystemExit):
        main(['--version'])
    assert __version__ in capsys.readouterr().out


def test_selftest_list(capsys):
    assert main(['selftest', '--list']) == EXIT_OK
    lines = _out(capsys).splitlines()
    assert lines[0] == 'eia2-worked-example [reference]'
    assert len(lines) == 22


def test_selftest_only(capsys):
    assert main(['selftest', '--only', 'eia2-worked-example', '--only', 'eea2-253-bits']) == EXIT_OK
    lines = _out(capsys).splitlines()
    assert lines[0].startswith('PASS eia2-worked-example')
    assert lines[-1] == '# items=2 passed=2 failed=0'


def test_selftest_unknown_item(capsys):
    assert main(['selftest', '--only', 'nope']) == EXIT_USAGE


def test_selftest_samples_must_be_positive(capsys):
    assert main(['selftest', '--samples', '0']) == EXIT_USAGE


def test_selftest_samples_from_settings(isolated_config: Path, capsys):
    settings = isolated_config / 'epsec' / 'settings.json'
    settings.parent.mkdir(parents=True, exist_ok=True)
    settings.write_text(json.dumps({'selftest_samples': 5}))

    assert main(['selftest', '--only', 'eea2-involution']) == EXIT_OK
    assert '5 trials' in _out(capsys)


def test_scenario(tmp_path: Path, capsys):
    script = tmp_path / 'link.txt'
    script.write_text('plane control\nbearer 18\nseed 7\nsend ul d3c53839/32\n'
                      'tamper ul 7\nreplay ul\n')

    assert main(['scenario', str(script)]) == EXIT_OK
    lines = _out(capsys).splitlines()
    assert len(lines) == 4
    assert 'verdict=mac-mismatch' in lines[1]
    assert lines[-1] == '# events=3 accept=1 mac-mismatch=1 replay-detected=1 unexpected=0'

    assert main(['scenario', str(script), '--quiet']) == EXIT_OK
    assert _out(capsys).startswith('# events=3')


def test_scenario_unexpected_verdict(tmp_path: Path, capsys):
    script = tmp_path / 'link.txt'
    script.write_text('send ul 01/8 expect=replay-detected\n')
    assert main(['scenario', str(script)]) == EXIT_FAILED
    assert 'UNEXPECTED' in _out(capsys)


def test_scenario_parse_error(tmp_path: Path, capsys):
    script = tmp_path / 'link.txt'
    script.write_text('plane control\nbogus 1\n')
    assert main(['scenario', str(script)]) == EXIT_USAGE
    assert 'line 2' in capsys.readouterr().err


def test_scenario_missing_file(tmp_path: Path, capsys):
    assert main(['scenario', str(tmp_path / 'missing.txt')]) == EXIT_USAGE
    assert 'cannot read scenario' in capsys.readouterr().err


def test_eea2_zero_block_is_keystream(capsys):
    args = WORKED_ARGS[:-1] + ['00' * 16]
    assert main(['eea2', *args]) == EXIT_OK
    assert _out(capsys) == f'{KEYSTREAM_WORKED.blocks[0]}/128\n'
