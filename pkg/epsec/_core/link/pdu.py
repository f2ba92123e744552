from __future__ import annotations

from typing import Any, Dict
from dataclasses import replace, dataclass

from ..context import validate_frame_inputs
from ..bitstring import BitString
from ...exceptions import ContextError, MalformedPduError

HEADER_BITS = 40


@dataclass(frozen=True)
class ProtectedPdu:
    """A framed PDU: clear header (COUNT, BEARER, DIRECTION) and ciphered body.

    On the control plane the body is the ciphered payload || MAC-I.
    Serialized, the header is COUNT(32) BEARER(5) DIRECTION(1) and two zero
    bits, followed by the body.
    """
    bearer: int
    direction: int
    count: int
    body: BitString

    def __post_init__(self) -> None:
        try:
            validate_frame_inputs(self.count, self.bearer, self.direction)
        except ContextError as e:
            raise MalformedPduError(str(e)) from e

    def __str__(self) -> str:
        return str(self.to_bitstring())

    @property
    def header(self) -> BitString:
        value = (self.count << 8) | (self.bearer << 3) | (self.direction << 2)
        return BitString.from_int(value, HEADER_BITS)

    def to_bitstring(self) -> BitString:
        return self.header + self.body

    @classmethod
    def from_bitstring(cls, frame: BitString) -> ProtectedPdu:
        if frame.length_bits < HEADER_BITS:
            raise MalformedPduError(f'Frame of {frame.length_bits} bits has no complete header')

        header = frame.prefix(HEADER_BITS).to_int()
        if header & 0b11:
            raise MalformedPduError('Reserved header bits must be zero')

        return cls(
            bearer=(header >> 3) & 0x1f,
            direction=(header >> 2) & 1,
            count=header >> 8,
            body=frame.slice(HEADER_BITS, frame.length_bits - HEADER_BITS),
        )

    def flip_body_bit(self, index: int) -> ProtectedPdu:
        return replace(self, body=self.body.flip_bit(index))

    def flip_count_bit(self, index: int) -> ProtectedPdu:
        return replace(self, count=self.count ^ (1 << (31 - index)))

    def flip_bearer_bit(self, index: int) -> ProtectedPdu:
        return replace(self, bearer=self.bearer ^ (1 << (4 - index)))

    def flip_direction(self) -> ProtectedPdu:
        return replace(self, direction=self.direction ^ 1)

    def inspect(self) -> Dict[str, Any]:
        return {
            'bearer': self.bearer,
            'direction': self.direction,
            'count': f'{self.count:08x}',
            'body': str(self.body),
        }
