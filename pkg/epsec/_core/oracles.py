"""Reference CTR and CMAC computations for the property suites.

These deliberately share nothing with the eea/eia modules except the AES
block function: messages are handled as explicit lists of bits, the counter
and the subkeys are rebuilt from scratch.
"""
from __future__ import annotations

from typing import List, Tuple

from .aes_core import AesKey128, Block128, expand_key, encrypt_block

Bits = List[int]


def bytes_to_bits(data: bytes, length_bits: int) -> Bits:
    bits = [(byte >> (7 - i)) & 1 for byte in data for i in range(8)]
    return bits[:length_bits]


def bits_to_bytes(bits: Bits) -> bytes:
    padded = bits + [0] * (-len(bits) % 8)
    out = bytearray()
    for i in range(0, len(padded), 8):
        byte = 0
        for bit in padded[i:i + 8]:
            byte = (byte << 1) | bit
        out.append(byte)
    return bytes(out)


def _int_bits(value: int, width: int) -> Bits:
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def _bits_int(bits: Bits) -> int:
    value = 0
    for bit in bits:
        value = (value << 1) | bit
    return value


def _header_bits(count: int, bearer: int, direction: int) -> Bits:
    return _int_bits(count, 32) + _int_bits(bearer, 5) + [direction] + [0] * 26


def ctr_oracle(
    key: bytes, count: int, bearer: int, direction: int, data: bytes, length_bits: int
) -> Tuple[bytes, int]:
    """Encrypt `length_bits` bits of `data` in counter mode, bit by bit."""
    ks = expand_key(AesKey128(key))
    high = _header_bits(count, bearer, direction)
    message = bytes_to_bits(data, length_bits)

    stream: Bits = []
    counter = 0
    while len(stream) < length_bits:
        block = Block128(_bits_int(high + _int_bits(counter, 64)))
        stream += _int_bits(encrypt_block(ks, block).value, 128)
        counter = (counter + 1) % (1 << 64)

    return bits_to_bytes([m ^ k for m, k in zip(message, stream)]), length_bits


def _shift_with_feedback(bits: Bits) -> Bits:
    shifted = bits[1:] + [0]
    if bits[0]:
        shifted[-8:] = [s ^ r for s, r in zip(shifted[-8:], [1, 0, 0, 0, 0, 1, 1, 1])]
    return shifted


def cmac_oracle_bits(key: bytes, message: Bits) -> Bits:
    """Plain CBC-MAC whose final block is masked with a CMAC subkey."""
    ks = expand_key(AesKey128(key))
    l_bits = _int_bits(encrypt_block(ks, Block128(0)).value, 128)
    k1 = _shift_with_feedback(l_bits)
    k2 = _shift_with_feedback(k1)

    chunks = [message[i:i + 128] for i in range(0, len(message), 128)] or [[]]
    last = chunks[-1]
    if len(last) == 128:
        chunks[-1] = [a ^ b for a, b in zip(last, k1)]
    else:
        padded = last + [1] + [0] * (127 - len(last))
        chunks[-1] = [a ^ b for a, b in zip(padded, k2)]

    state = [0] * 128
    for chunk in chunks:
        mixed = [a ^ b for a, b in zip(state, chunk)]
        state = _int_bits(encrypt_block(ks, Block128(_bits_int(mixed))).value, 128)
    return state


def eia2_oracle(
    key: bytes, count: int, bearer: int, direction: int, data: bytes, length_bits: int
) -> int:
    """32-bit EIA2 tag computed through the bit-list CMAC."""
    message = _header_bits(count, bearer, direction) + bytes_to_bits(data, length_bits)
    return _bits_int(cmac_oracle_bits(key, message)[:32])
