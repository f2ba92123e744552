"""Conformance self-test: embedded vectors plus sampled property suites."""
from __future__ import annotations

import random
from enum import Enum
from typing import Any, Dict, List, Tuple, Callable, Optional, Sequence
from functools import partial
from dataclasses import field, dataclass

from .eea import (CipherContext, CounterBlock, apply_eea0, apply_eea2,
                  increment_counter, generate_keystream)
from .eia import (MacVerdict, IntegrityContext, cmac, trace_mac, verify_mac,
                  generate_mac, derive_subkeys, verify_mac_eia0,
                  generate_mac_eia0)
from .link import (BearerConfigBuilder, Verdict, protect, unprotect,
                   create_endpoints, acceptance_script, run_link_scenario)
from .logger import LOGGER
from .oracles import ctr_oracle, eia2_oracle
from .vectors import (EEA2_253, EIA2_58, AES_FIPS_A1, AES_FIPS_C1, EIA2_WORKED,
                      AES_WORKED_L, CMAC_RFC4493, WORKED_CHAIN, WORKED_TRACE,
                      RFC4493_KEY, RFC4493_SUBKEYS, KEYSTREAM_WORKED,
                      COUNTER_WRAP_INPUT, COUNTER_WRAP_OUTPUT,
                      WORKED_LAST_PADDED, WORKED_LAST_UNPADDED, AesVector,
                      EeaVector, EiaVector, CmacVector, VectorSource)
from .aes_core import AesKey128, Block128, expand_key, encrypt_block
from .bitstring import BitString
from .algo_registry import EEA0, EEA2, EIA0, EIA2
from ..utils.hexarg import parse_bits
from ..exceptions import LinkError, SelftestFailure, BearerConfigError

DEFAULT_SAMPLES = 200
PROPERTY_LABEL = 'property'

Check = Callable[[], str]


class ItemStatus(str, Enum):
    PENDING = 'pending'
    PASSED = 'passed'
    FAILED = 'failed'


@dataclass
class SelftestItem:
    name: str
    label: str
    check: Check = field(repr=False)
    status: ItemStatus = ItemStatus.PENDING
    detail: str = ''

    @property
    def passed(self) -> bool:
        return self.status == ItemStatus.PASSED

    def run(self) -> None:
        try:
            self.detail = self.check()
            self.status = ItemStatus.PASSED
        except SelftestFailure as e:
            self.detail = str(e)
            self.status = ItemStatus.FAILED
        except Exception as e:
            self.detail = f'{type(e).__name__}: {e}'
            self.status = ItemStatus.FAILED

        LOGGER.info('selftest %s: %s %s', self.name, self.status.value, self.detail)

    def format(self) -> str:
        mark = {ItemStatus.PASSED: 'PASS', ItemStatus.FAILED: 'FAIL'}.get(self.status, '....')
        line = f'{mark} {self.name:<34} [{self.label}]'
        return f'{line} {self.detail}' if self.detail else line

    def inspect(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'label': self.label,
            'status': self.status.value,
            'detail': self.detail,
        }


@dataclass
class SelftestReport:
    items: Tuple[SelftestItem, ...] = field(default_factory=tuple)

    @property
    def all_passed(self) -> bool:
        return bool(self.items) and all(item.passed for item in self.items)

    def failures(self) -> List[SelftestItem]:
        return [item for item in self.items if not item.passed]

    def summary(self) -> str:
        failed = len(self.failures())
        return f'# items={len(self.items)} passed={len(self.items) - failed} failed={failed}'

    def format(self) -> str:
        return '\n'.join([item.format() for item in self.items] + [self.summary()])


def _expect(actual: object, expected: object, what: str) -> None:
    if actual != expected:
        raise SelftestFailure(f'{what}: got {actual}, expected {expected}')


def _random_key(rng: random.Random) -> AesKey128:
    return AesKey128(rng.getrandbits(128).to_bytes(16, 'big'))


def _random_bits(rng: random.Random, length_bits: int) -> BitString:
    value = rng.getrandbits(length_bits) if length_bits else 0
    return BitString.from_int(value, length_bits)


def _frame_inputs(rng: random.Random) -> Tuple[int, int, int]:
    return rng.getrandbits(32), rng.randrange(32), rng.randrange(2)


def _check_aes(vector: AesVector) -> str:
    schedule = expand_key(AesKey128.from_hex(vector.key))
    round_keys = schedule.round_keys
    for index, expected in vector.round_keys:
        _expect(round_keys[index].hex(), expected, f'round key {index}')

    if vector.plaintext:
        output = encrypt_block(schedule, Block128.from_hex(vector.plaintext))
        _expect(output.hex(), vector.ciphertext, 'ciphertext')
    return ''


def _check_worked_example(vector: EiaVector) -> str:
    ctx = IntegrityContext(AesKey128.from_hex(vector.key), vector.count,
                           vector.bearer, vector.direction)
    message = parse_bits(vector.message, 'message')
    trace = trace_mac(ctx, message)

    _expect(trace.mlen, message.length_bits + 64, 'Mlen')
    _expect(trace.l_block.hex(), vector.l_block, 'L')
    _expect(trace.subkeys.k1.hex(), vector.k1, 'K1')
    _expect(trace.subkeys.k2.hex(), vector.k2, 'K2')
    _expect(trace.last_unpadded.hex(), WORKED_LAST_UNPADDED, 'Mn*')
    _expect((trace.last_block ^ trace.subkeys.k2).hex(), WORKED_LAST_PADDED, 'padded Mn*')

    _expect(len(trace.blocks), len(WORKED_CHAIN), 'n')
    for i, ((m_block, c_block), (m_hex, c_hex)) in enumerate(
        zip(trace.blocks, WORKED_CHAIN), start=1
    ):
        _expect(m_block.hex(), m_hex, f'M[{i}]')
        _expect(c_block.hex(), c_hex, f'C[{i}]')

    _expect(trace.tag.hex(), vector.mac, 'MAC-I')
    _expect(trace.format(), WORKED_TRACE, 'trace layout')
    _expect(verify_mac(ctx, message, trace.tag), MacVerdict.ACCEPT, 'verify')
    return f'MAC-I = {trace.tag}'


def _check_eia(vector: EiaVector) -> str:
    key = AesKey128.from_hex(vector.key)
    ctx = IntegrityContext(key, vector.count, vector.bearer, vector.direction)
    message = parse_bits(vector.message, 'message')

    subkeys = derive_subkeys(key)
    if vector.k1:
        _expect(subkeys.k1.hex(), vector.k1, 'K1')
        _expect(subkeys.k2.hex(), vector.k2, 'K2')
    _expect(generate_mac(ctx, message).hex(), vector.mac, 'MAC-I')
    return f'MAC-I = {vector.mac}'


def _check_eea(vector: EeaVector) -> str:
    ctx = CipherContext(AesKey128.from_hex(vector.key), vector.count,
                        vector.bearer, vector.direction)
    plaintext = parse_bits(vector.plaintext, 'plaintext')
    ciphertext = parse_bits(vector.ciphertext, 'ciphertext')

    _expect(str(apply_eea2(ctx, plaintext)), str(ciphertext), 'ciphertext')
    _expect(str(apply_eea2(ctx, ciphertext)), str(plaintext), 'plaintext')
    return ''


def _check_keystream() -> str:
    vector = KEYSTREAM_WORKED
    ctx = CipherContext(AesKey128.from_hex(vector.key), vector.count,
                        vector.bearer, vector.direction)
    stream = generate_keystream(ctx, 128 * len(vector.blocks))
    _expect(stream.hex(), ''.join(vector.blocks), 'keystream')
    return ''


def _check_counter_wrap() -> str:
    start = CounterBlock(Block128.from_hex(COUNTER_WRAP_INPUT))
    wrapped = increment_counter(start)
    _expect(wrapped.low, 0, 'low half after wrap')
    _expect(wrapped.high, start.high, 'high half after wrap')

    schedule = expand_key(AesKey128.from_hex(KEYSTREAM_WORKED.key))
    _expect(encrypt_block(schedule, start.block).hex(), COUNTER_WRAP_OUTPUT, 'AES_K(T)')
    return ''


def _check_cmac(vector: CmacVector) -> str:
    key = AesKey128.from_hex(vector.key)
    tag = cmac(expand_key(key), derive_subkeys(key), BitString.from_hex(vector.message))
    _expect(tag.hex(), vector.tag, 'tag')
    return ''


def _check_cmac_subkeys() -> str:
    key = AesKey128.from_hex(RFC4493_KEY)
    l_hex, k1_hex, k2_hex = RFC4493_SUBKEYS
    _expect(encrypt_block(expand_key(key), Block128(0)).hex(), l_hex, 'L')
    subkeys = derive_subkeys(key)
    _expect(subkeys.k1.hex(), k1_hex, 'K1')
    _expect(subkeys.k2.hex(), k2_hex, 'K2')
    return ''


def _property_involution(samples: int, seed: int) -> str:
    rng = random.Random(seed)
    for _ in range(samples):
        ctx = CipherContext(_random_key(rng), *_frame_inputs(rng))
        message = _random_bits(rng, rng.randint(0, 1024))
        if apply_eea2(ctx, apply_eea2(ctx, message)) != message:
            raise SelftestFailure(f'involution broken for {message}')
    return f'{samples} trials'


def _property_linearity(samples: int, seed: int) -> str:
    rng = random.Random(seed)
    for _ in range(samples):
        ctx = CipherContext(_random_key(rng), *_frame_inputs(rng))
        length = rng.randint(0, 1024)
        a, b = _random_bits(rng, length), _random_bits(rng, length)
        if apply_eea2(ctx, a) ^ apply_eea2(ctx, b) != a ^ b:
            raise SelftestFailure(f'ciphertext XOR differs for {length}-bit messages')
    return f'{samples} trials'


def _property_ctr_oracle(samples: int, seed: int) -> str:
    rng = random.Random(seed)
    for _ in range(samples):
        key = _random_key(rng)
        count, bearer, direction = _frame_inputs(rng)
        message = _random_bits(rng, rng.randint(0, 512))

        got = apply_eea2(CipherContext(key, count, bearer, direction), message)
        data, length = ctr_oracle(key.value, count, bearer, direction,
                                  message.data, message.length_bits)
        if got != BitString(data, length):
            raise SelftestFailure(f'CTR oracle disagrees on {message}')
    return f'{samples} trials'


def _property_cmac_oracle(samples: int, seed: int) -> str:
    rng = random.Random(seed)
    for _ in range(samples):
        key = _random_key(rng)
        count, bearer, direction = _frame_inputs(rng)
        message = _random_bits(rng, rng.randint(0, 512))

        got = generate_mac(IntegrityContext(key, count, bearer, direction), message)
        expected = eia2_oracle(key.value, count, bearer, direction,
                               message.data, message.length_bits)
        if got.value != expected:
            raise SelftestFailure(f'CMAC oracle disagrees on {message}: {got} != {expected:08x}')
    return f'{samples} trials'


def _mutate(rng: random.Random, ctx: IntegrityContext, message: BitString
            ) -> Tuple[IntegrityContext, BitString, str]:
    target = rng.choice(('message', 'count', 'bearer', 'direction'))
    key, count, bearer, direction = ctx.key, ctx.count, ctx.bearer, ctx.direction

    if target == 'message':
        index = rng.randrange(message.length_bits)
        return ctx, message.flip_bit(index), f'message bit {index}'
    if target == 'count':
        index = rng.randrange(32)
        return IntegrityContext(key, count ^ (1 << index), bearer, direction), message, target
    if target == 'bearer':
        index = rng.randrange(5)
        return IntegrityContext(key, count, bearer ^ (1 << index), direction), message, target
    return IntegrityContext(key, count, bearer, direction ^ 1), message, target


def _property_avalanche(samples: int, seed: int) -> str:
    rng = random.Random(seed)
    allowed = max(1, samples // 1000)
    anomalies = 0

    for _ in range(samples):
        ctx = IntegrityContext(_random_key(rng), *_frame_inputs(rng))
        message = _random_bits(rng, rng.randint(1, 512))
        tag = generate_mac(ctx, message)

        if verify_mac(ctx, message, tag) != MacVerdict.ACCEPT:
            raise SelftestFailure(f'generated tag {tag} not accepted')

        mutated_ctx, mutated, where = _mutate(rng, ctx, message)
        if generate_mac(mutated_ctx, mutated) == tag:
            anomalies += 1
            LOGGER.warning('MAC unchanged after flipping %s: count=%08x bearer=%d '
                           'direction=%d message=%s tag=%s',
                           where, ctx.count, ctx.bearer, ctx.direction, message, tag)

    if anomalies > allowed:
        raise SelftestFailure(f'{anomalies} unchanged MACs in {samples} trials')
    return f'{samples} trials, {anomalies} anomalies'


def _property_aes_injective(samples: int, seed: int) -> str:
    rng = random.Random(seed)
    schedule = expand_key(_random_key(rng))
    inputs = {rng.getrandbits(128) for _ in range(samples)}
    outputs = {encrypt_block(schedule, Block128(value)).value for value in inputs}
    _expect(len(outputs), len(inputs), 'distinct outputs')
    return f'{len(inputs)} blocks'


def _property_null_algorithms(samples: int, seed: int) -> str:
    rng = random.Random(seed)
    for _ in range(samples):
        message = _random_bits(rng, rng.randint(0, 1024))
        ctx = IntegrityContext(_random_key(rng), *_frame_inputs(rng))
        _expect(apply_eea0(message), message, 'EEA0 output')
        _expect(generate_mac_eia0(ctx, message).hex(), '00000000', 'EIA0 tag')
        _expect(verify_mac_eia0(ctx, message, generate_mac(ctx, message)),
                MacVerdict.ACCEPT, 'EIA0 verdict')

    builder = (
        BearerConfigBuilder(1)
        .with_cipher(EEA0, _random_key(rng))
        .with_integrity(EIA0, _random_key(rng))
    )
    try:
        builder.build()
    except BearerConfigError:
        return f'{samples} trials'
    raise SelftestFailure('EIA0 accepted outside emergency mode')


def _property_link_acceptance(seed: int) -> str:
    transcript = run_link_scenario(acceptance_script(seed))
    tally = transcript.tally()

    _expect(tally[Verdict.ACCEPT.value], 100, 'accepts')
    _expect(tally[Verdict.MAC_MISMATCH.value], 64, 'mac-mismatch')
    _expect(tally[Verdict.REPLAY_DETECTED.value], 10, 'replay-detected')
    _expect(transcript.all_expected, True, 'all verdicts as scripted')

    counts = transcript.accepted_counts('ul')
    if any(a >= b for a, b in zip(counts, counts[1:])):
        raise SelftestFailure('accepted counts are not strictly increasing')

    for entry in transcript.entries:
        if entry.verdict == Verdict.ACCEPT and not entry.payload_match:
            raise SelftestFailure(f'payload mismatch at event {entry.index}')
    return transcript.summary().lstrip('# ')


def _property_link_tamper(samples: int, seed: int) -> str:
    rng = random.Random(seed)
    config = (
        BearerConfigBuilder(rng.randrange(32))
        .with_cipher(EEA2, _random_key(rng))
        .with_integrity(EIA2, _random_key(rng))
        .build()
    )
    ue, network = create_endpoints(config)
    collisions = 0

    for _ in range(samples):
        pdu = protect(ue, _random_bits(rng, rng.randint(1, 256)))
        target = rng.choice(('body', 'count', 'bearer', 'direction'))
        if target == 'body':
            tampered = pdu.flip_body_bit(rng.randrange(pdu.body.length_bits))
        elif target == 'count':
            tampered = pdu.flip_count_bit(rng.randrange(32))
        elif target == 'bearer':
            tampered = pdu.flip_bearer_bit(rng.randrange(5))
        else:
            tampered = pdu.flip_direction()

        try:
            unprotect(network, tampered)
        except LinkError:
            continue

        collisions += 1
        LOGGER.warning('Tampered %s accepted: %s', target, tampered)

    allowed = max(1, samples // 1000)
    if collisions > allowed:
        raise SelftestFailure(f'{collisions} of {samples} tampered PDUs accepted')
    return f'{samples} flips, {collisions} collisions'


_PROPERTIES: Tuple[Tuple[str, Callable[[int, int], str]], ...] = (
    ('aes128-injectivity', _property_aes_injective),
    ('eea2-involution', _property_involution),
    ('eea2-linearity', _property_linearity),
    ('eea2-ctr-oracle', _property_ctr_oracle),
    ('eia2-cmac-oracle', _property_cmac_oracle),
    ('eia2-avalanche', _property_avalanche),
    ('null-algorithms', _property_null_algorithms),
    ('link-tamper-sampled', _property_link_tamper),
)


def build_suite(samples: int = DEFAULT_SAMPLES, seed: int = 0) -> List[SelftestItem]:
    """All self-test items in run order; nothing is executed."""
    items = [
        SelftestItem(EIA2_WORKED.name, EIA2_WORKED.source.value,
                     partial(_check_worked_example, EIA2_WORKED)),
        SelftestItem(AES_WORKED_L.name, AES_WORKED_L.source.value,
                     partial(_check_aes, AES_WORKED_L)),
        SelftestItem(AES_FIPS_C1.name, AES_FIPS_C1.source.value,
                     partial(_check_aes, AES_FIPS_C1)),
        SelftestItem(AES_FIPS_A1.name, AES_FIPS_A1.source.value,
                     partial(_check_aes, AES_FIPS_A1)),
        SelftestItem('cmac-rfc4493-subkeys', VectorSource.RFC_4493.value, _check_cmac_subkeys),
    ]
    items.extend(
        SelftestItem(vector.name, vector.source.value, partial(_check_cmac, vector))
        for vector in CMAC_RFC4493
    )
    items.extend([
        SelftestItem(EEA2_253.name, EEA2_253.source.value, partial(_check_eea, EEA2_253)),
        SelftestItem(EIA2_58.name, EIA2_58.source.value, partial(_check_eia, EIA2_58)),
        SelftestItem(KEYSTREAM_WORKED.name, KEYSTREAM_WORKED.source.value, _check_keystream),
        SelftestItem('eea2-counter-wrap', VectorSource.DERIVED.value, _check_counter_wrap),
    ])
    items.extend(
        SelftestItem(name, PROPERTY_LABEL, partial(fn, samples, seed))
        for name, fn in _PROPERTIES
    )
    items.append(SelftestItem('link-acceptance', PROPERTY_LABEL,
                              partial(_property_link_acceptance, seed)))
    return items


def list_items(samples: int = DEFAULT_SAMPLES) -> List[str]:
    return [f'{item.name} [{item.label}]' for item in build_suite(samples)]


def run_selftest(
    samples: int = DEFAULT_SAMPLES,
    *,
    seed: int = 0,
    names: Optional[Sequence[str]] = None,
    on_item: Optional[Callable[[SelftestItem], None]] = None,
) -> SelftestReport:
    """Run the suite, optionally restricted to `names`.

    `on_item` is called after each item so callers can stream results.
    """
    items = build_suite(samples, seed)
    if names:
        wanted = set(names)
        unknown = wanted - {item.name for item in items}
        if unknown:
            raise SelftestFailure(f'Unknown selftest items: {", ".join(sorted(unknown))}')
        items = [item for item in items if item.name in wanted]

    LOGGER.debug('Running %d selftest items with %d samples', len(items), samples)
    for item in items:
        item.run()
        if on_item:
            on_item(item)

    return SelftestReport(tuple(items))
