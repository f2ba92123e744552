"""AES-128 forward cipher.

Only the forward direction is implemented; counter mode and CMAC never call
the inverse cipher. Rounds use four 32-bit lookup tables that combine
SubBytes, ShiftRows and MixColumns. Every table is derived from the single
S-box below, so the S-box is the one source of truth for the round function
and the key schedule alike.

All 128-bit values are big-endian: bit 0 is the most significant bit of
byte 0.
"""
from __future__ import annotations

from typing import Tuple, NamedTuple
from dataclasses import field, dataclass

from ..exceptions import ContextError

SBOX: Tuple[int, ...] = (
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
)

RCON: Tuple[int, ...] = (0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1b, 0x36)

ROUNDS = 10
MASK_32 = 0xffffffff
MASK_64 = (1 << 64) - 1
MASK_128 = (1 << 128) - 1


class CipherTables(NamedTuple):
    sbox: Tuple[int, ...]
    te0: Tuple[int, ...]
    te1: Tuple[int, ...]
    te2: Tuple[int, ...]
    te3: Tuple[int, ...]


def _xtime(value: int) -> int:
    value <<= 1
    return (value ^ 0x11b) if value & 0x100 else value


def _rotr(word: int, bits: int) -> int:
    return ((word >> bits) | (word << (32 - bits))) & MASK_32


def build_tables(sbox: Tuple[int, ...]) -> CipherTables:
    """Derive the round lookup tables from a 256-entry S-box."""
    te0 = []
    for s in sbox:
        s2 = _xtime(s)
        te0.append((s2 << 24) | (s << 16) | (s << 8) | (s2 ^ s))

    return CipherTables(
        sbox=tuple(sbox),
        te0=tuple(te0),
        te1=tuple(_rotr(w, 8) for w in te0),
        te2=tuple(_rotr(w, 16) for w in te0),
        te3=tuple(_rotr(w, 24) for w in te0),
    )


_TABLES = build_tables(SBOX)


@dataclass(frozen=True)
class AesKey128:
    """A 128-bit secret key. The repr never shows the key material."""
    value: bytes = field(repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.value, (bytes, bytearray)) or len(self.value) != 16:
            raise ContextError('AES-128 key must be exactly 16 bytes')
        object.__setattr__(self, 'value', bytes(self.value))

    @classmethod
    def from_hex(cls, digits: str) -> AesKey128:
        try:
            return cls(bytes.fromhex(digits.replace(' ', '')))
        except ValueError as e:
            raise ContextError('AES-128 key must be 32 hex digits') from e

    def hex(self) -> str:
        return self.value.hex()


@dataclass(frozen=True)
class Block128:
    """A 128-bit value; bit 0 is the most significant bit of byte 0."""
    value: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.value <= MASK_128:
            raise ValueError(f'{self.value:#x} is not a 128-bit value')

    @classmethod
    def from_bytes(cls, data: bytes) -> Block128:
        if len(data) != 16:
            raise ValueError(f'Block128 needs 16 bytes, got {len(data)}')
        return cls(int.from_bytes(data, 'big'))

    @classmethod
    def from_hex(cls, digits: str) -> Block128:
        return cls.from_bytes(bytes.fromhex(digits.replace(' ', '')))

    @classmethod
    def from_halves(cls, high: int, low: int) -> Block128:
        return cls(((high & MASK_64) << 64) | (low & MASK_64))

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(16, 'big')

    def hex(self) -> str:
        return f'{self.value:032x}'

    def grouped(self) -> str:
        """Hex rendering as two 16-digit halves."""
        digits = self.hex()
        return f'{digits[:16]} {digits[16:]}'

    def __str__(self) -> str:
        return self.grouped()

    def __xor__(self, other: Block128) -> Block128:
        return Block128(self.value ^ other.value)

    @property
    def high(self) -> int:
        return self.value >> 64

    @property
    def low(self) -> int:
        return self.value & MASK_64

    @property
    def msb(self) -> int:
        return self.value >> 127

    def msb32(self) -> int:
        return self.value >> 96

    def shift_left(self) -> Block128:
        """Single left shift: drop the MSB, append a zero LSB."""
        return Block128((self.value << 1) & MASK_128)


@dataclass(frozen=True)
class KeySchedule:
    words: Tuple[int, ...] = field(repr=False)

    @property
    def round_keys(self) -> Tuple[Block128, ...]:
        w = self.words
        return tuple(
            Block128((w[i] << 96) | (w[i + 1] << 64) | (w[i + 2] << 32) | w[i + 3])
            for i in range(0, len(w), 4)
        )


def _sub_word(word: int, sbox: Tuple[int, ...]) -> int:
    return (
        (sbox[word >> 24] << 24)
        | (sbox[(word >> 16) & 0xff] << 16)
        | (sbox[(word >> 8) & 0xff] << 8)
        | sbox[word & 0xff]
    )


def expand_key(key: AesKey128) -> KeySchedule:
    """Expand a 128-bit key into the 11 round keys (44 words)."""
    sbox = _TABLES.sbox
    raw = key.value
    words = [int.from_bytes(raw[i:i + 4], 'big') for i in range(0, 16, 4)]

    for i in range(4, 4 * (ROUNDS + 1)):
        temp = words[i - 1]
        if i % 4 == 0:
            temp = _sub_word(((temp << 8) & MASK_32) | (temp >> 24), sbox)
            temp ^= RCON[i // 4 - 1] << 24
        words.append(words[i - 4] ^ temp)

    return KeySchedule(tuple(words))


def encrypt_value(ks: KeySchedule, value: int) -> int:
    """Encrypt one block given and returned as a 128-bit integer."""
    sbox, te0, te1, te2, te3 = _TABLES
    rk = ks.words

    s0 = ((value >> 96) & MASK_32) ^ rk[0]
    s1 = ((value >> 64) & MASK_32) ^ rk[1]
    s2 = ((value >> 32) & MASK_32) ^ rk[2]
    s3 = (value & MASK_32) ^ rk[3]

    for r in range(4, 4 * ROUNDS, 4):
        t0 = te0[s0 >> 24] ^ te1[(s1 >> 16) & 0xff] ^ te2[(s2 >> 8) & 0xff] ^ te3[s3 & 0xff] ^ rk[r]
        t1 = te0[s1 >> 24] ^ te1[(s2 >> 16) & 0xff] ^ te2[(s3 >> 8) & 0xff] ^ te3[s0 & 0xff] ^ rk[r + 1]
        t2 = te0[s2 >> 24] ^ te1[(s3 >> 16) & 0xff] ^ te2[(s0 >> 8) & 0xff] ^ te3[s1 & 0xff] ^ rk[r + 2]
        t3 = te0[s3 >> 24] ^ te1[(s0 >> 16) & 0xff] ^ te2[(s1 >> 8) & 0xff] ^ te3[s2 & 0xff] ^ rk[r + 3]
        s0, s1, s2, s3 = t0, t1, t2, t3

    # last round has no MixColumns
    o0 = ((sbox[s0 >> 24] << 24) | (sbox[(s1 >> 16) & 0xff] << 16)
          | (sbox[(s2 >> 8) & 0xff] << 8) | sbox[s3 & 0xff]) ^ rk[40]
    o1 = ((sbox[s1 >> 24] << 24) | (sbox[(s2 >> 16) & 0xff] << 16)
          | (sbox[(s3 >> 8) & 0xff] << 8) | sbox[s0 & 0xff]) ^ rk[41]
    o2 = ((sbox[s2 >> 24] << 24) | (sbox[(s3 >> 16) & 0xff] << 16)
          | (sbox[(s0 >> 8) & 0xff] << 8) | sbox[s1 & 0xff]) ^ rk[42]
    o3 = ((sbox[s3 >> 24] << 24) | (sbox[(s0 >> 16) & 0xff] << 16)
          | (sbox[(s1 >> 8) & 0xff] << 8) | sbox[s2 & 0xff]) ^ rk[43]

    return (o0 << 96) | (o1 << 64) | (o2 << 32) | o3


def encrypt_block(ks: KeySchedule, block: Block128) -> Block128:
    """AES-128 forward cipher on a single block."""
    return Block128(encrypt_value(ks, block.value))
