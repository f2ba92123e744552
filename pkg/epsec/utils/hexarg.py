"""Hex arguments with an optional exact bit length.

`deadbeef` is 32 bits, `abc` is 12 bits, `d3c5...a6dc/383` is 383 bits. With a
`/bits` suffix, the digits beyond the significant bits must be zero.
The normalized text form is byte-aligned lowercase hex plus `/bits`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..exceptions import HexArgError
from .._core.bitstring import BitString

_HEXARG = re.compile(r'^(?P<digits>[0-9a-fA-F]*)(?:/(?P<bits>\d+))?$')


@dataclass(frozen=True)
class HexArg:
    digits: str
    length_bits: int

    @classmethod
    def parse(cls, text: str, field: str = 'value') -> HexArg:
        match = _HEXARG.match(text.strip().replace(' ', ''))
        if not match:
            raise HexArgError(f'{field}: {text!r} is not hex digits with an optional /bits suffix')

        digits = match.group('digits').lower()
        available = 4 * len(digits)
        bits = match.group('bits')
        length_bits = available if bits is None else int(bits)

        if length_bits > available:
            raise HexArgError(f'{field}: /{length_bits} exceeds the {available} bits given')

        value = int(digits, 16) if digits else 0
        if value & ((1 << (available - length_bits)) - 1):
            raise HexArgError(f'{field}: bits beyond /{length_bits} must be zero')

        return cls(digits, length_bits)

    @classmethod
    def from_bitstring(cls, bits: BitString) -> HexArg:
        return cls(bits.hex(), bits.length_bits)

    def to_bitstring(self) -> BitString:
        digits = self.digits + '0' * (len(self.digits) % 2)
        return BitString.from_hex(digits, self.length_bits)

    def __str__(self) -> str:
        return str(self.to_bitstring())


def parse_bits(text: str, field: str = 'value') -> BitString:
    return HexArg.parse(text, field).to_bitstring()


def format_bits(bits: BitString) -> str:
    return str(bits)


def parse_number(text: str, limit_bits: int, field: str) -> int:
    """Parse a frame input. Hex by default; `0d` prefix for decimal, `0x` accepted."""
    raw = text.strip().lower()
    try:
        if raw.startswith('0d'):
            value = int(raw[2:], 10)
        else:
            value = int(raw[2:] if raw.startswith('0x') else raw, 16)
    except ValueError as e:
        raise HexArgError(f'{field}: {text!r} is not a number') from e

    if not 0 <= value < (1 << limit_bits):
        raise HexArgError(f'{field}: {text!r} does not fit in {limit_bits} bits')
    return value
