from __future__ import annotations

import random

import pytest
from Crypto.Hash import CMAC
from Crypto.Cipher import AES

from epsec import (BitString, AesKey128, MacTag32, MacVerdict, IntegrityContext,
                   cmac, trace_mac, parse_bits, verify_mac, generate_mac,
                   derive_subkeys, build_mac_input, verify_mac_eia0,
                   generate_mac_eia0)
from epsec._core import eia
from epsec._core.vectors import (EIA2_58, EIA2_WORKED, CMAC_RFC4493, WORKED_CHAIN,
                                 WORKED_TRACE, WORKED_LAST_PADDED, RFC4493_KEY,
                                 RFC4493_SUBKEYS, WORKED_LAST_UNPADDED)
from epsec._core.oracles import eia2_oracle
from epsec._core.aes_core import Block128, expand_key, encrypt_block


def _random_ctx(rng: random.Random) -> IntegrityContext:
    return IntegrityContext(AesKey128(rng.getrandbits(128).to_bytes(16, 'big')),
                            rng.getrandbits(32), rng.randrange(32), rng.randrange(2))


def _random_bits(rng: random.Random, length: int) -> BitString:
    return BitString.from_int(rng.getrandbits(length) if length else 0, length)


@pytest.mark.quick
def test_worked_example_mac(worked_ctx, worked_message):
    assert generate_mac(worked_ctx, worked_message).hex() == 'f0668c1e'


@pytest.mark.quick
def test_worked_example_subkeys(worked_key):
    subkeys = derive_subkeys(worked_key)
    assert subkeys.k1.hex() == EIA2_WORKED.k1
    assert subkeys.k2.hex() == EIA2_WORKED.k2


def test_worked_example_l_has_msb_set(worked_key):
    l_block = encrypt_block(expand_key(worked_key), Block128(0))
    assert l_block.hex() == EIA2_WORKED.l_block
    assert l_block.msb == 1
    assert (l_block.shift_left().value ^ 0x87) == derive_subkeys(worked_key).k1.value


def test_worked_example_trace(worked_ctx, worked_message):
    trace = trace_mac(worked_ctx, worked_message)

    assert trace.mlen == 447
    assert trace.n == 4
    assert trace.last_unpadded.hex() == WORKED_LAST_UNPADDED
    assert (trace.last_block ^ trace.subkeys.k2).hex() == WORKED_LAST_PADDED
    assert [(m.hex(), c.hex()) for m, c in trace.blocks] == list(WORKED_CHAIN)
    assert trace.tag.hex() == 'f0668c1e'
    assert trace.format() == WORKED_TRACE


def test_mac_input_header(worked_ctx, worked_message):
    m = build_mac_input(worked_ctx, worked_message)
    assert m.length_bits == 447
    assert m.prefix(128).hex() == '36af6144c0000000d3c5383962682071'


def test_mac_input_empty_message():
    ctx = IntegrityContext(AesKey128(bytes(16)), 0, 0, 0)
    m = build_mac_input(ctx, BitString())
    assert m == BitString.zeros(64)


def test_verify(worked_ctx, worked_message):
    assert verify_mac(worked_ctx, worked_message, MacTag32.from_hex('f0668c1e')) == MacVerdict.ACCEPT
    assert verify_mac(worked_ctx, worked_message, MacTag32.from_hex('f0668c1f')) == MacVerdict.REJECT

    flipped = worked_message.flip_bit(0)
    assert verify_mac(worked_ctx, flipped, MacTag32.from_hex('f0668c1e')) == MacVerdict.REJECT


def test_verify_compares_every_byte(monkeypatch, worked_ctx, worked_message):
    calls = []

    def spy(a, b):
        calls.append((a, b))
        return a == b

    monkeypatch.setattr(eia.hmac, 'compare_digest', spy)
    verify_mac(worked_ctx, worked_message, MacTag32.from_hex('00668c1e'))
    assert calls == [(bytes.fromhex('f0668c1e'), bytes.fromhex('00668c1e'))]


def test_58_bit_vector_takes_unreduced_k1_branch():
    key = AesKey128.from_hex(EIA2_58.key)
    l_block = encrypt_block(expand_key(key), Block128(0))
    assert l_block.hex() == EIA2_58.l_block
    assert l_block.msb == 0

    subkeys = derive_subkeys(key)
    assert subkeys.k1 == l_block.shift_left()
    assert subkeys.k1.hex() == EIA2_58.k1
    assert subkeys.k2.hex() == EIA2_58.k2

    ctx = IntegrityContext(key, EIA2_58.count, EIA2_58.bearer, EIA2_58.direction)
    assert generate_mac(ctx, parse_bits(EIA2_58.message)).hex() == EIA2_58.mac


def test_context_caches_subkeys(worked_ctx, worked_key):
    assert worked_ctx.subkeys == derive_subkeys(worked_key)


def test_k2_is_k1_doubled():
    rng = random.Random(4)
    for _ in range(50):
        key = AesKey128(rng.getrandbits(128).to_bytes(16, 'big'))
        subkeys = derive_subkeys(key)
        doubled = subkeys.k1.shift_left().value ^ (0x87 if subkeys.k1.msb else 0)
        assert subkeys.k2.value == doubled


def test_cmac_of_empty_message_uses_k2():
    key = AesKey128.from_hex(RFC4493_KEY)
    schedule = expand_key(key)
    subkeys = derive_subkeys(key)
    expected = encrypt_block(schedule, Block128(subkeys.k2.value ^ (1 << 127)))
    assert cmac(schedule, subkeys, BitString()) == expected


@pytest.mark.parametrize('vector', CMAC_RFC4493, ids=lambda v: v.name)
def test_rfc4493(vector):
    key = AesKey128.from_hex(vector.key)
    tag = cmac(expand_key(key), derive_subkeys(key), BitString.from_hex(vector.message))
    assert tag.hex() == vector.tag


def test_rfc4493_subkeys():
    subkeys = derive_subkeys(AesKey128.from_hex(RFC4493_KEY))
    assert (subkeys.k1.hex(), subkeys.k2.hex()) == RFC4493_SUBKEYS[1:]


def test_matches_pycryptodome_cmac():
    rng = random.Random(12)
    for _ in range(50):
        ctx = _random_ctx(rng)
        message = _random_bits(rng, 8 * rng.randint(0, 64))

        reference = CMAC.new(ctx.key.value, ciphermod=AES)
        reference.update(ctx.header.to_bytes(8, 'big') + message.data)
        assert generate_mac(ctx, message).to_bytes() == reference.digest()[:4]


def _oracle_equivalence(trials: int) -> None:
    rng = random.Random(6)
    for _ in range(trials):
        ctx = _random_ctx(rng)
        message = _random_bits(rng, rng.randint(0, 512))
        expected = eia2_oracle(ctx.key.value, ctx.count, ctx.bearer, ctx.direction,
                               message.data, message.length_bits)
        assert generate_mac(ctx, message).value == expected


def test_oracle_equivalence_sampled():
    _oracle_equivalence(100)


@pytest.mark.slow
def test_oracle_equivalence_full():
    _oracle_equivalence(1_000)


def test_roundtrip_and_avalanche():
    rng = random.Random(9)
    unchanged = 0
    for _ in range(300):
        ctx = _random_ctx(rng)
        message = _random_bits(rng, rng.randint(1, 512))
        tag = generate_mac(ctx, message)
        assert verify_mac(ctx, message, tag) == MacVerdict.ACCEPT

        index = rng.randrange(message.length_bits)
        if generate_mac(ctx, message.flip_bit(index)) == tag:
            unchanged += 1
    assert unchanged <= 1


def test_eia0():
    rng = random.Random(0)
    ctx = _random_ctx(rng)
    for length in (0, 7, 383):
        message = _random_bits(rng, length)
        assert generate_mac_eia0(ctx, message).hex() == '00000000'
        assert verify_mac_eia0(ctx, message, MacTag32(0xdeadbeef)) == MacVerdict.ACCEPT


def test_tag_parsing():
    assert MacTag32.from_hex('f0668c1e').value == 0xf0668c1e
    assert str(MacTag32(0x1e)) == '0000001e'
    with pytest.raises(ValueError):
        MacTag32.from_hex('f0668c1')
    with pytest.raises(ValueError):
        MacTag32(1 << 32)
    assert MacTag32.from_bitstring(BitString.from_hex('f0668c1e')).hex() == 'f0668c1e'
