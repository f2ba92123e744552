"""epsec demo

Runs the control-plane tamper/replay acceptance scenario end to end and prints
its verdict tallies, followed by the worked EIA2 example.

Usage:
    >>> from epsec.demo import run_demo
    >>> run_demo()

    Or from the command line:
    $ epsec-demo [--seed N] [--script-out FILE]
"""

from __future__ import annotations

import sys
import argparse
from typing import Optional, Sequence
from pathlib import Path

from epsec import (AesKey128, IntegrityContext, trace_mac, parse_bits,
                   write_log, acceptance_script, run_link_scenario)
from epsec._core.vectors import EIA2_WORKED


def show_worked_example() -> str:
    vector = EIA2_WORKED
    ctx = IntegrityContext(AesKey128.from_hex(vector.key), vector.count,
                           vector.bearer, vector.direction)
    return trace_mac(ctx, parse_bits(vector.message)).format()


def run_demo(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog='epsec-demo')
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--script-out', type=Path,
                        help='also write the generated scenario script here')
    args = parser.parse_args(argv)

    script = acceptance_script(args.seed)
    if args.script_out:
        args.script_out.write_text(script)

    transcript = run_link_scenario(script)
    for verdict, count in transcript.tally().items():
        write_log(f'{verdict:<16} {count}', stream=sys.stdout)
    write_log(transcript.summary(), stream=sys.stdout)

    write_log('', stream=sys.stdout)
    write_log(show_worked_example(), stream=sys.stdout)

    return 0 if transcript.all_expected else 1


if __name__ == '__main__':
    sys.exit(run_demo())
