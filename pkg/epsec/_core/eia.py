"""128-EIA2 integrity (AES-CMAC, 32-bit tag) and the EIA0 null algorithm."""
from __future__ import annotations

import hmac
from enum import Enum
from typing import List, Tuple
from dataclasses import field, dataclass

from .logger import LOGGER
from .context import SecurityContext
from .aes_core import (MASK_128, Block128, AesKey128, KeySchedule, expand_key,
                       encrypt_value)
from .bitstring import BitString

R_128 = 0x87
MAC_BITS = 32
HEADER_BITS = 64


class MacVerdict(str, Enum):
    ACCEPT = 'accept'
    REJECT = 'reject'


@dataclass(frozen=True)
class Subkeys:
    k1: Block128
    k2: Block128


@dataclass(frozen=True)
class MacTag32:
    """MAC-I / NAS-MAC; MACT[0] is the most significant bit."""
    value: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.value < (1 << MAC_BITS):
            raise ValueError(f'{self.value:#x} is not a 32-bit tag')

    @classmethod
    def from_hex(cls, digits: str) -> MacTag32:
        if len(digits) != 8:
            raise ValueError(f'MAC tag must be 8 hex digits, got {digits!r}')
        return cls(int(digits, 16))

    @classmethod
    def from_bitstring(cls, bits: BitString) -> MacTag32:
        if bits.length_bits != MAC_BITS:
            raise ValueError(f'MAC tag must be 32 bits, got {bits.length_bits}')
        return cls(bits.to_int())

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(4, 'big')

    def to_bitstring(self) -> BitString:
        return BitString(self.to_bytes(), MAC_BITS)

    def hex(self) -> str:
        return f'{self.value:08x}'

    def __str__(self) -> str:
        return self.hex()


def _double(block: Block128) -> Block128:
    shifted = block.shift_left()
    return Block128(shifted.value ^ R_128) if block.msb else shifted


def _subkeys_from_schedule(schedule: KeySchedule) -> Tuple[Block128, Subkeys]:
    l_block = Block128(encrypt_value(schedule, 0))
    k1 = _double(l_block)
    return l_block, Subkeys(k1, _double(k1))


def derive_subkeys(key: AesKey128) -> Subkeys:
    """K1 and K2 from L = AES_K(0^128)."""
    return _subkeys_from_schedule(expand_key(key))[1]


class IntegrityContext(SecurityContext):
    """Inputs of one EIA invocation. Subkeys are precomputed with the key."""

    subkeys: Subkeys

    def __post_init__(self) -> None:
        super().__post_init__()
        _, subkeys = _subkeys_from_schedule(self.schedule)
        object.__setattr__(self, 'subkeys', subkeys)


@dataclass(frozen=True)
class MacTrace:
    """Every intermediate of one MAC computation, in the order it is produced."""
    mlen: int
    l_block: Block128
    subkeys: Subkeys
    n: int
    last_unpadded: Block128
    last_block: Block128
    blocks: Tuple[Tuple[Block128, Block128], ...] = field(default_factory=tuple)
    tag: MacTag32 = field(default_factory=MacTag32)

    def lines(self) -> List[str]:
        """Render the trace in the two-half hex layout."""
        lines = [
            'EIA2 ALGORITHM ENCRYPTION',
            'Based on AES-128',
            f'Mlen = {self.mlen}',
            f'L = {self.l_block}',
            f'K1 = {self.subkeys.k1}',
            f'K2 = {self.subkeys.k2}',
            '',
            'MAC-I Generation:',
            f'n = {self.n}',
            f'Mn* = {self.last_unpadded}',
            f'Mn = {self.last_block}',
            '',
            f'C[0] = {Block128(0)}',
        ]
        for i, (m_block, c_block) in enumerate(self.blocks, start=1):
            lines.append(f'M[{i}] = {m_block}')
            lines.append(f'C[{i}] = {c_block}')
        lines.extend(['', f'MAC-I = {self.tag}'])
        return lines

    def format(self) -> str:
        return '\n'.join(self.lines())


def build_mac_input(ctx: SecurityContext, message: BitString) -> BitString:
    """M = COUNT || BEARER || DIRECTION || 0^26 || MESSAGE, Mlen = LENGTH + 64."""
    return BitString.from_int(ctx.header, HEADER_BITS) + message


def _split_blocks(m: BitString, subkeys: Subkeys) -> Tuple[List[int], int, int]:
    """Cut M into 128-bit blocks and finalize the last one.

    Returns the finalized blocks, the last block before finalization (message
    bits zero-extended, no padding bit) and the bit count of that last block.
    """
    mlen = m.length_bits
    n = 1 if mlen == 0 else (mlen + 127) // 128
    value = m.to_int()

    blocks = [(value >> (mlen - 128 * (i + 1))) & MASK_128 for i in range(n - 1)]
    rem = mlen - 128 * (n - 1)
    tail = value & ((1 << rem) - 1)
    unpadded = tail << (128 - rem)

    if mlen > 0 and rem == 128:
        blocks.append(tail ^ subkeys.k1.value)
    else:
        padded = ((tail << 1) | 1) << (127 - rem)
        blocks.append(padded ^ subkeys.k2.value)

    return blocks, unpadded, rem


def cmac(schedule: KeySchedule, subkeys: Subkeys, m: BitString) -> Block128:
    """Full 128-bit AES-CMAC of an arbitrary bit string (Mlen may be 0)."""
    blocks, _, _ = _split_blocks(m, subkeys)
    chain = 0
    for block in blocks:
        chain = encrypt_value(schedule, chain ^ block)
    return Block128(chain)


def generate_mac(ctx: IntegrityContext, message: BitString) -> MacTag32:
    """128-EIA2: MSB_32 of the CMAC over the header-prefixed message."""
    m = build_mac_input(ctx, message)
    return MacTag32(cmac(ctx.schedule, ctx.subkeys, m).msb32())


def trace_mac(ctx: IntegrityContext, message: BitString) -> MacTrace:
    """Compute the 128-EIA2 tag while recording every intermediate value."""
    m = build_mac_input(ctx, message)
    l_block, subkeys = _subkeys_from_schedule(ctx.schedule)
    blocks, unpadded, _ = _split_blocks(m, subkeys)

    chain = 0
    recorded: List[Tuple[Block128, Block128]] = []
    for block in blocks:
        chain = encrypt_value(ctx.schedule, chain ^ block)
        recorded.append((Block128(block), Block128(chain)))

    return MacTrace(
        mlen=m.length_bits,
        l_block=l_block,
        subkeys=subkeys,
        n=len(blocks),
        last_unpadded=Block128(unpadded),
        last_block=Block128(blocks[-1]),
        blocks=tuple(recorded),
        tag=MacTag32(chain >> 96),
    )


def verify_mac(
    ctx: IntegrityContext,
    message: BitString,
    received: MacTag32,
) -> MacVerdict:
    """Compare XMAC-I with the received MAC-I over all 32 bits."""
    expected = generate_mac(ctx, message)

    if hmac.compare_digest(expected.to_bytes(), received.to_bytes()):
        return MacVerdict.ACCEPT

    LOGGER.debug('MAC mismatch: count=%08x bearer=%d direction=%d',
                 ctx.count, ctx.bearer, ctx.direction)
    return MacVerdict.REJECT


def generate_mac_eia0(ctx: IntegrityContext, message: BitString) -> MacTag32:
    """EIA0 null integrity: always the all-zero tag."""
    return MacTag32(0)


def verify_mac_eia0(
    ctx: IntegrityContext,
    message: BitString,
    received: MacTag32,
) -> MacVerdict:
    """EIA0 receivers perform no check."""
    return MacVerdict.ACCEPT
