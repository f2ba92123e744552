"""128-EEA2 confidentiality (AES-CTR) and the EEA0 null cipher.

Each call is stateless: COUNT management belongs to the link layer. The same
function encrypts and decrypts because both are an XOR with the keystream.
"""
from __future__ import annotations

from typing import Iterator
from dataclasses import dataclass

from .context import SecurityContext
from .aes_core import MASK_64, Block128, encrypt_value
from .bitstring import BitString
from ..exceptions import BitStringError


class CipherContext(SecurityContext):
    """Inputs of one EEA invocation: key, COUNT, BEARER and DIRECTION."""


@dataclass(frozen=True)
class CounterBlock:
    """A CTR counter block T_i.

    The high 64 bits hold the packed frame inputs; the low 64 bits are the
    block counter.
    """
    block: Block128

    @property
    def high(self) -> int:
        return self.block.high

    @property
    def low(self) -> int:
        return self.block.low


def build_initial_counter(ctx: CipherContext) -> CounterBlock:
    """T_1 = COUNT || BEARER || DIRECTION || 0^26 || 0^64."""
    return CounterBlock(Block128.from_halves(ctx.header, 0))


def increment_counter(t: CounterBlock) -> CounterBlock:
    """Add one modulo 2^64 to the low half; the high half never changes."""
    return CounterBlock(Block128.from_halves(t.high, (t.low + 1) & MASK_64))


def iter_keystream_blocks(ctx: CipherContext) -> Iterator[bytes]:
    """Yield AES_K(T_1), AES_K(T_2), ... as 16-byte blocks, on demand."""
    schedule = ctx.schedule
    high = ctx.header << 64
    low = 0
    while True:
        yield encrypt_value(schedule, high | low).to_bytes(16, 'big')
        low = (low + 1) & MASK_64


def generate_keystream(ctx: CipherContext, length_bits: int) -> BitString:
    """The first `length_bits` bits of the EEA2 keystream."""
    if length_bits < 0:
        raise BitStringError(f'Negative keystream length: {length_bits}')

    blocks = iter_keystream_blocks(ctx)
    stream = b''.join(next(blocks) for _ in range((length_bits + 127) // 128))
    return BitString.from_bytes(stream, length_bits)


def generate_null_keystream(length_bits: int) -> BitString:
    """EEA0 keystream: LENGTH zero bits."""
    if length_bits < 0:
        raise BitStringError(f'Negative keystream length: {length_bits}')
    return BitString.zeros(length_bits)


def mask(data: BitString, keystream: BitString) -> BitString:
    """XOR `data` with the leading bits of a pre-generated keystream."""
    if keystream.length_bits < data.length_bits:
        raise BitStringError(
            f'Keystream of {keystream.length_bits} bits is too short '
            f'for {data.length_bits} bits of data'
        )
    if keystream.length_bits > data.length_bits:
        keystream = keystream.prefix(data.length_bits)
    return data ^ keystream


def apply_eea2(ctx: CipherContext, data: BitString) -> BitString:
    """Encrypt or decrypt `data` with 128-EEA2."""
    return mask(data, generate_keystream(ctx, data.length_bits))


def apply_eea0(data: BitString) -> BitString:
    """EEA0: XOR with an all-zero keystream of the same length."""
    return mask(data, generate_null_keystream(data.length_bits))
