"""
epsec: 128-EEA2 / 128-EIA2 EPS security algorithms with a PDCP-style link simulator.
"""

from __future__ import annotations

from .version import __version__

from ._core import logger
from ._core.logger import write_log

from . import exceptions
from ._core.aes_core import AesKey128, Block128, KeySchedule, expand_key, encrypt_block
from ._core.bitstring import BitString
from ._core.eea import (CipherContext, mask, apply_eea0, apply_eea2,
                        generate_keystream, iter_keystream_blocks)
from ._core.eia import (MacTag32, MacTrace, MacVerdict, IntegrityContext, cmac,
                        trace_mac, verify_mac, generate_mac, derive_subkeys,
                        build_mac_input, verify_mac_eia0, generate_mac_eia0)
from ._core.algo_registry import (EEA0, EEA2, EIA0, EIA2, AlgoId, AlgoKind,
                                  AlgoStatus, resolve, get_cipher,
                                  get_verifier, get_integrity)
from ._core.link import (Plane, KeyRole, Stratum, Verdict, Transcript,
                         BearerConfig, ProtectedPdu, EndpointState,
                         BearerConfigBuilder, protect, unprotect, parse_script,
                         create_endpoints, acceptance_script, run_link_scenario)
from ._core.selftest import run_selftest
from .utils.hexarg import HexArg, parse_bits


__all__ = [
    'exceptions',
    'logger',
    'write_log',
    'AesKey128',
    'Block128',
    'KeySchedule',
    'expand_key',
    'encrypt_block',
    'BitString',
    'CipherContext',
    'mask',
    'apply_eea0',
    'apply_eea2',
    'generate_keystream',
    'iter_keystream_blocks',
    'MacTag32',
    'MacTrace',
    'MacVerdict',
    'IntegrityContext',
    'cmac',
    'trace_mac',
    'verify_mac',
    'generate_mac',
    'derive_subkeys',
    'build_mac_input',
    'verify_mac_eia0',
    'generate_mac_eia0',
    'EEA0',
    'EEA2',
    'EIA0',
    'EIA2',
    'AlgoId',
    'AlgoKind',
    'AlgoStatus',
    'resolve',
    'get_cipher',
    'get_verifier',
    'get_integrity',
    'Plane',
    'KeyRole',
    'Stratum',
    'Verdict',
    'Transcript',
    'BearerConfig',
    'ProtectedPdu',
    'EndpointState',
    'BearerConfigBuilder',
    'protect',
    'unprotect',
    'parse_script',
    'create_endpoints',
    'acceptance_script',
    'run_link_scenario',
    'run_selftest',
    'HexArg',
    'parse_bits',
    '__version__',
]
