"""Bit-exact message buffers.

A `BitString` carries LENGTH bits packed MSB-first into the fewest bytes. Any
slack bits at the end of the final byte are zero; that normalized form is
enforced at construction so two equal messages always compare equal.
"""
from __future__ import annotations

from typing import Iterator
from dataclasses import dataclass

from ..exceptions import BitStringError


def _byte_count(length_bits: int) -> int:
    return (length_bits + 7) // 8


@dataclass(frozen=True)
class BitString:
    data: bytes = b''
    length_bits: int = 0

    def __post_init__(self) -> None:
        if self.length_bits < 0:
            raise BitStringError(f'Negative bit length: {self.length_bits}')

        if len(self.data) != _byte_count(self.length_bits):
            raise BitStringError(
                f'{len(self.data)} bytes cannot hold exactly {self.length_bits} bits'
            )

        slack = self.slack_bits
        if slack and self.data[-1] & ((1 << slack) - 1):
            raise BitStringError('Slack bits of the final byte must be zero')

    @classmethod
    def from_bytes(cls, data: bytes, length_bits: int | None = None) -> BitString:
        """Build a normalized BitString from a byte buffer.

        Without `length_bits` every bit of `data` is significant. Otherwise
        the buffer is truncated to the bytes needed and the slack bits of the
        final byte are cleared.
        """
        if length_bits is None:
            return cls(bytes(data), len(data) * 8)

        if length_bits < 0 or length_bits > len(data) * 8:
            raise BitStringError(
                f'Bit length {length_bits} does not fit in {len(data)} bytes'
            )

        buffer = bytearray(data[:_byte_count(length_bits)])
        slack = -length_bits % 8
        if slack:
            buffer[-1] &= (0xff << slack) & 0xff
        return cls(bytes(buffer), length_bits)

    @classmethod
    def from_int(cls, value: int, length_bits: int) -> BitString:
        """Build a BitString whose MSB-first value is `value`."""
        if length_bits < 0 or value < 0 or value >> length_bits:
            raise BitStringError(f'{value:#x} does not fit in {length_bits} bits')
        slack = -length_bits % 8
        return cls((value << slack).to_bytes(_byte_count(length_bits), 'big'), length_bits)

    @classmethod
    def from_hex(cls, digits: str, length_bits: int | None = None) -> BitString:
        try:
            data = bytes.fromhex(digits)
        except ValueError as e:
            raise BitStringError(f'Invalid hex digits: {digits!r}') from e
        return cls.from_bytes(data, length_bits)

    @classmethod
    def zeros(cls, length_bits: int) -> BitString:
        return cls(bytes(_byte_count(length_bits)), length_bits)

    @property
    def slack_bits(self) -> int:
        return len(self.data) * 8 - self.length_bits

    def __len__(self) -> int:
        return self.length_bits

    def __str__(self) -> str:
        return f'{self.data.hex()}/{self.length_bits}'

    def __iter__(self) -> Iterator[int]:
        return (self.bit(i) for i in range(self.length_bits))

    def __add__(self, other: BitString) -> BitString:
        return self.concat(other)

    def __xor__(self, other: BitString) -> BitString:
        return self.xor(other)

    def hex(self) -> str:
        return self.data.hex()

    def to_int(self) -> int:
        """MSB-first integer value of the significant bits."""
        return int.from_bytes(self.data, 'big') >> self.slack_bits

    def bit(self, index: int) -> int:
        if not 0 <= index < self.length_bits:
            raise BitStringError(f'Bit index {index} outside [0, {self.length_bits})')
        return (self.data[index // 8] >> (7 - index % 8)) & 1

    def flip_bit(self, index: int) -> BitString:
        if not 0 <= index < self.length_bits:
            raise BitStringError(f'Bit index {index} outside [0, {self.length_bits})')
        buffer = bytearray(self.data)
        buffer[index // 8] ^= 0x80 >> (index % 8)
        return BitString(bytes(buffer), self.length_bits)

    def concat(self, other: BitString) -> BitString:
        if not self.slack_bits:
            return BitString(self.data + other.data, self.length_bits + other.length_bits)
        value = (self.to_int() << other.length_bits) | other.to_int()
        return BitString.from_int(value, self.length_bits + other.length_bits)

    def slice(self, start: int, length_bits: int) -> BitString:
        """Return `length_bits` bits starting at bit `start`."""
        if start < 0 or length_bits < 0 or start + length_bits > self.length_bits:
            raise BitStringError(
                f'Slice [{start}, {start + length_bits}) outside [0, {self.length_bits})'
            )
        shift = self.length_bits - start - length_bits
        value = (self.to_int() >> shift) & ((1 << length_bits) - 1)
        return BitString.from_int(value, length_bits)

    def prefix(self, length_bits: int) -> BitString:
        return self.slice(0, length_bits)

    def xor(self, other: BitString) -> BitString:
        if self.length_bits != other.length_bits:
            raise BitStringError(
                f'Cannot XOR {self.length_bits} bits with {other.length_bits} bits'
            )
        mixed = int.from_bytes(self.data, 'big') ^ int.from_bytes(other.data, 'big')
        return BitString(mixed.to_bytes(len(self.data), 'big'), self.length_bits)
