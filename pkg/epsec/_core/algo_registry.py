"""EPS algorithm identifiers.

Every (kind, 4-bit code) pair resolves to exactly one capability entry.
SNOW 3G based algorithms are standardized but not implemented here, which is
reported separately from codes that are simply reserved.
"""
from __future__ import annotations

from enum import Enum
from typing import Dict, Tuple, Callable
from dataclasses import dataclass

from .eea import CipherContext, apply_eea0, apply_eea2
from .eia import (MacTag32, MacVerdict, IntegrityContext, verify_mac,
                  generate_mac, verify_mac_eia0, generate_mac_eia0)
from .bitstring import BitString
from ..exceptions import AlgorithmError, UnsupportedAlgorithmError

CipherFn = Callable[[CipherContext, BitString], BitString]
IntegrityFn = Callable[[IntegrityContext, BitString], MacTag32]
VerifyFn = Callable[[IntegrityContext, BitString, MacTag32], MacVerdict]


class AlgoKind(str, Enum):
    CONFIDENTIALITY = 'confidentiality'
    INTEGRITY = 'integrity'


class AlgoStatus(str, Enum):
    IMPLEMENTED = 'implemented'
    RESERVED = 'reserved'
    UNSUPPORTED_EXTERNAL = 'unsupported-external'


@dataclass(frozen=True)
class AlgoId:
    kind: AlgoKind
    code: int

    def __post_init__(self) -> None:
        if not 0 <= self.code < 16:
            raise AlgorithmError(f'Algorithm identifiers are 4 bits, got {self.code}')

    def __str__(self) -> str:
        return resolve(self).name

    @classmethod
    def parse(cls, text: str) -> AlgoId:
        """Parse a display or short name: `eea2`, `128-EIA2`, `EIA0`..."""
        name = text.strip().upper()
        if name.startswith('128-'):
            name = name[4:]

        for algo_id, capability in _TABLE.items():
            short = capability.name.upper().replace('128-', '')
            if short == name:
                return algo_id

        raise AlgorithmError(f'Unknown algorithm name: {text!r}')


@dataclass(frozen=True)
class AlgoCapability:
    id: AlgoId
    status: AlgoStatus
    name: str

    @property
    def is_implemented(self) -> bool:
        return self.status == AlgoStatus.IMPLEMENTED


_KNOWN: Dict[Tuple[AlgoKind, int], Tuple[AlgoStatus, str]] = {
    (AlgoKind.CONFIDENTIALITY, 0b0000): (AlgoStatus.IMPLEMENTED, 'EEA0'),
    (AlgoKind.CONFIDENTIALITY, 0b0001): (AlgoStatus.UNSUPPORTED_EXTERNAL, '128-EEA1'),
    (AlgoKind.CONFIDENTIALITY, 0b0010): (AlgoStatus.IMPLEMENTED, '128-EEA2'),
    (AlgoKind.INTEGRITY, 0b0000): (AlgoStatus.IMPLEMENTED, 'EIA0'),
    (AlgoKind.INTEGRITY, 0b0001): (AlgoStatus.UNSUPPORTED_EXTERNAL, '128-EIA1'),
    (AlgoKind.INTEGRITY, 0b0010): (AlgoStatus.IMPLEMENTED, '128-EIA2'),
}


def _build_table() -> Dict[AlgoId, AlgoCapability]:
    table: Dict[AlgoId, AlgoCapability] = {}
    for kind in AlgoKind:
        prefix = 'EEA' if kind == AlgoKind.CONFIDENTIALITY else 'EIA'
        for code in range(16):
            algo_id = AlgoId(kind, code)
            status, name = _KNOWN.get(
                (kind, code), (AlgoStatus.RESERVED, f'{prefix}-reserved-{code:04b}')
            )
            table[algo_id] = AlgoCapability(algo_id, status, name)
    return table


_TABLE = _build_table()

EEA0 = AlgoId(AlgoKind.CONFIDENTIALITY, 0b0000)
EEA2 = AlgoId(AlgoKind.CONFIDENTIALITY, 0b0010)
EIA0 = AlgoId(AlgoKind.INTEGRITY, 0b0000)
EIA2 = AlgoId(AlgoKind.INTEGRITY, 0b0010)


def resolve(algo_id: AlgoId) -> AlgoCapability:
    return _TABLE[algo_id]


def capabilities() -> Tuple[AlgoCapability, ...]:
    return tuple(_TABLE.values())


def _null_cipher(ctx: CipherContext, data: BitString) -> BitString:
    return apply_eea0(data)


_CIPHERS: Dict[AlgoId, CipherFn] = {EEA0: _null_cipher, EEA2: apply_eea2}
_INTEGRITY: Dict[AlgoId, Tuple[IntegrityFn, VerifyFn]] = {
    EIA0: (generate_mac_eia0, verify_mac_eia0),
    EIA2: (generate_mac, verify_mac),
}


def _require(algo_id: AlgoId, kind: AlgoKind) -> AlgoCapability:
    if algo_id.kind != kind:
        raise AlgorithmError(f'{resolve(algo_id).name} is not a {kind.value} algorithm')

    capability = resolve(algo_id)
    if not capability.is_implemented:
        raise UnsupportedAlgorithmError(
            f'{capability.name} ({algo_id.code:04b}) is {capability.status.value}'
        )
    return capability


def get_cipher(algo_id: AlgoId) -> CipherFn:
    _require(algo_id, AlgoKind.CONFIDENTIALITY)
    return _CIPHERS[algo_id]


def get_integrity(algo_id: AlgoId) -> IntegrityFn:
    _require(algo_id, AlgoKind.INTEGRITY)
    return _INTEGRITY[algo_id][0]


def get_verifier(algo_id: AlgoId) -> VerifyFn:
    _require(algo_id, AlgoKind.INTEGRITY)
    return _INTEGRITY[algo_id][1]
