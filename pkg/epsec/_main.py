"""Command-line front-end.

```
epsec eia2 --key 6832a65cff4473621ebdd4ba26a921fe --count 36af6144 --bearer 18 \\
    --direction 0 --message d3c5...a6dc/383 --trace
epsec eea2 --algo eea0 --count 0 --bearer 0 --direction 0 --message deadbeef
epsec selftest --samples 1000
epsec scenario link.txt --quiet
```

COUNT and BEARER are hex unless prefixed with `0d`. `--key` falls back to
the EPSEC_KEY environment variable.
"""
from __future__ import annotations

import os
import sys
import argparse
from typing import TypeVar, Callable, Optional, Sequence

from ._core.eea import CipherContext
from ._core.eia import MacTag32, MacVerdict, IntegrityContext, trace_mac
from .version import __version__
from .exceptions import EpsecError
from .utils.hexarg import parse_bits, parse_number
from ._core.link import load_script, run_link_scenario
from ._core.logger import write_log, enable_file_logging, enable_console_logging
from ._core.aes_core import AesKey128
from ._core.selftest import SelftestItem, list_items, run_selftest
from ._core.settings import Settings, open_settings, get_config_path
from ._core.algo_registry import (EEA0, EIA0, EIA2, AlgoId, get_cipher,
                                  get_verifier, get_integrity)

T = TypeVar('T')

KEY_ENV = 'EPSEC_KEY'
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _arg_type(parse: Callable[[str], T], name: str) -> Callable[[str], T]:
    """Wrap a parser so argparse reports errors against the offending flag."""
    def convert(text: str) -> T:
        try:
            return parse(text)
        except (EpsecError, ValueError) as e:
            raise argparse.ArgumentTypeError(str(e)) from e
    convert.__name__ = name
    return convert


def _parse_key(text: str) -> AesKey128:
    return AesKey128.from_hex(text)


def _add_frame_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--key', type=_arg_type(_parse_key, 'key'),
                        help=f'128-bit key as 32 hex digits (default: ${KEY_ENV})')
    parser.add_argument('--count', required=True,
                        type=_arg_type(lambda t: parse_number(t, 32, 'count'), 'count'),
                        help='32-bit COUNT, hex (0d prefix for decimal)')
    parser.add_argument('--bearer', required=True,
                        type=_arg_type(lambda t: parse_number(t, 5, 'bearer'), 'bearer'),
                        help='5-bit BEARER, hex (0d prefix for decimal)')
    parser.add_argument('--direction', required=True, type=int, choices=(0, 1),
                        help='0 for uplink, 1 for downlink')
    parser.add_argument('--message', required=True,
                        type=_arg_type(lambda t: parse_bits(t, 'message'), 'message'),
                        help='hex digits with an optional /bits suffix')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='epsec',
        description='128-EEA2 / 128-EIA2 conformance tool and link simulator.',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--debug', action='store_true', help='log debug output to stderr')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    eea2 = commands.add_parser('eea2', help='cipher or decipher a message')
    _add_frame_args(eea2)
    eea2.add_argument('--algo', choices=('eea0', 'eea2'), default='eea2')
    eea2.add_argument('--roundtrip', action='store_true',
                      help='apply the cipher twice; prints the input back')
    eea2.set_defaults(handler=cmd_eea2)

    eia2 = commands.add_parser('eia2', help='compute or verify a MAC-I')
    _add_frame_args(eia2)
    eia2.add_argument('--algo', choices=('eia0', 'eia2'), default='eia2')
    mode = eia2.add_mutually_exclusive_group()
    mode.add_argument('--trace', action='store_true',
                      help='print every intermediate value of the computation')
    mode.add_argument('--verify', metavar='MAC_I',
                      type=_arg_type(MacTag32.from_hex, 'verify'),
                      help='compare against a received 8-digit MAC-I')
    eia2.set_defaults(handler=cmd_eia2)

    selftest = commands.add_parser('selftest', help='run the embedded conformance suite')
    selftest.add_argument('--list', action='store_true', help='list items without running')
    selftest.add_argument('--samples', type=int, help='property-suite sample count')
    selftest.add_argument('--only', action='append', metavar='NAME',
                          help='run only the named item (repeatable)')
    selftest.set_defaults(handler=cmd_selftest)

    scenario = commands.add_parser('scenario', help='run a link scenario script')
    scenario.add_argument('script', help='scenario file')
    scenario.add_argument('--quiet', action='store_true', help='print the summary line only')
    scenario.add_argument('--seed', type=int, help='seed for scripts without a seed directive')
    scenario.set_defaults(handler=cmd_scenario)

    return parser


def _resolve_key(args: argparse.Namespace, algo: AlgoId) -> AesKey128:
    if args.key is not None:
        return args.key

    env = os.getenv(KEY_ENV)
    if env:
        return AesKey128.from_hex(env)

    if algo in (EEA0, EIA0):
        return AesKey128(bytes(16))
    raise EpsecError(f'argument --key: required (or set {KEY_ENV})')


def cmd_eea2(args: argparse.Namespace, settings: Settings) -> int:
    algo = AlgoId.parse(args.algo)
    cipher = get_cipher(algo)
    ctx = CipherContext(_resolve_key(args, algo), args.count, args.bearer, args.direction)

    output = cipher(ctx, args.message)
    if args.roundtrip:
        output = cipher(ctx, output)

    write_log(str(output), stream=sys.stdout)
    return EXIT_OK


def cmd_eia2(args: argparse.Namespace, settings: Settings) -> int:
    algo = AlgoId.parse(args.algo)
    ctx = IntegrityContext(_resolve_key(args, algo), args.count, args.bearer, args.direction)

    if args.verify is not None:
        verdict = get_verifier(algo)(ctx, args.message, args.verify)
        write_log(verdict.value, stream=sys.stdout)
        return EXIT_OK if verdict == MacVerdict.ACCEPT else EXIT_FAILED

    if args.trace:
        if algo != EIA2:
            raise EpsecError('argument --trace: only available for eia2')
        write_log(trace_mac(ctx, args.message).format(), stream=sys.stdout)
        return EXIT_OK

    write_log(get_integrity(algo)(ctx, args.message).hex(), stream=sys.stdout)
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace, settings: Settings) -> int:
    samples = args.samples if args.samples is not None else settings.selftest_samples
    if samples < 1:
        raise EpsecError('argument --samples: must be at least 1')

    if args.list:
        for name in list_items(samples):
            write_log(name, stream=sys.stdout)
        return EXIT_OK

    def on_item(item: SelftestItem) -> None:
        write_log(item.format(), stream=sys.stdout)

    report = run_selftest(samples, names=args.only, on_item=on_item)
    write_log(report.summary(), stream=sys.stdout)
    return EXIT_OK if report.all_passed else EXIT_FAILED


def cmd_scenario(args: argparse.Namespace, settings: Settings) -> int:
    try:
        scenario = load_script(args.script)
    except OSError as e:
        raise EpsecError(f'cannot read scenario {args.script}: {e.strerror}') from e

    seed = args.seed if args.seed is not None else settings.scenario_seed
    transcript = run_link_scenario(scenario, default_seed=seed)

    write_log(transcript.summary() if args.quiet else transcript.format(), stream=sys.stdout)
    return EXIT_OK if transcript.all_expected else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    with open_settings() as s:
        settings = s

    if args.debug or settings.enable_debug:
        enable_console_logging()
    if settings.log_to_file:
        enable_file_logging(get_config_path())

    try:
        return args.handler(args, settings)
    except EpsecError as e:
        write_log(f'epsec: error: {e}', stream=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == '__main__':
    run()
