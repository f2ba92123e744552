from __future__ import annotations

import random

import pytest

from epsec import (EEA0, EEA2, EIA2, BitString, ProtectedPdu, BearerConfigBuilder,
                   protect, unprotect, parse_bits, create_endpoints)
from epsec._core.context import COUNT_LIMIT
from epsec._core.vectors import EIA2_WORKED
from epsec.exceptions import (LinkError, MacMismatchError, MalformedPduError,
                              BearerMismatchError, CountExhaustedError,
                              ReplayDetectedError, DirectionMismatchError)

KEY_A = '6832a65cff4473621ebdd4ba26a921fe'
KEY_B = 'd3c5d592327fb11c4035c6680af8c6d1'


def _control_config(bearer: int = 1):
    return (
        BearerConfigBuilder(bearer=bearer)
        .with_cipher(EEA2, KEY_B)
        .with_integrity(EIA2, KEY_A)
        .build()
    )


def _user_config(algo=EEA2):
    return BearerConfigBuilder(bearer=4).with_user_plane().with_cipher(algo, KEY_B).build()


def test_null_cipher_exposes_the_worked_mac():
    config = (
        BearerConfigBuilder(bearer=EIA2_WORKED.bearer)
        .with_cipher(EEA0, bytes(16))
        .with_integrity(EIA2, EIA2_WORKED.key)
        .build()
    )
    ue, network = create_endpoints(config, ul_count=EIA2_WORKED.count)
    message = parse_bits(EIA2_WORKED.message)

    pdu = protect(ue, message)
    assert pdu.count == EIA2_WORKED.count
    assert pdu.body == message + BitString.from_hex('f0668c1e')
    assert unprotect(network, pdu) == message


def test_user_plane_null_cipher_passes_body_through():
    ue, network = create_endpoints(_user_config(EEA0))
    payload = parse_bits('abc')
    pdu = protect(ue, payload)
    assert pdu.body == payload
    assert unprotect(network, pdu) == payload


def test_roundtrip_both_directions():
    rng = random.Random(2)
    ue, network = create_endpoints(_control_config(), ul_count=10, dl_count=500)
    for _ in range(20):
        length = rng.randint(1, 300)
        payload = BitString.from_int(rng.getrandbits(length), length)

        assert unprotect(network, protect(ue, payload)) == payload
        assert unprotect(ue, protect(network, payload)) == payload

    assert ue.send_count == 30
    assert network.send_count == 520
    assert network.highest_accepted_count[0] == 29


def test_body_is_payload_plus_mac_length():
    ue, _ = create_endpoints(_control_config())
    pdu = protect(ue, parse_bits('1f/5'))
    assert pdu.body.length_bits == 37


def test_replay_is_rejected_after_mac_check():
    ue, network = create_endpoints(_control_config())
    first = protect(ue, parse_bits('01'))
    second = protect(ue, parse_bits('02'))

    unprotect(network, second)
    with pytest.raises(ReplayDetectedError):
        unprotect(network, first)
    with pytest.raises(ReplayDetectedError):
        unprotect(network, second)


def test_tampered_replay_reports_mac_first():
    ue, network = create_endpoints(_control_config())
    pdu = protect(ue, parse_bits('0102'))
    unprotect(network, pdu)
    with pytest.raises(MacMismatchError):
        unprotect(network, pdu.flip_body_bit(3))


def test_rejected_pdu_does_not_advance_freshness():
    ue, network = create_endpoints(_control_config())
    pdu = protect(ue, parse_bits('0102'))
    with pytest.raises(MacMismatchError):
        unprotect(network, pdu.flip_count_bit(31))
    assert network.highest_accepted_count[0] is None
    assert unprotect(network, pdu) == parse_bits('0102')


def test_user_plane_accepts_replays():
    ue, network = create_endpoints(_user_config())
    pdu = protect(ue, parse_bits('cafe'))
    assert unprotect(network, pdu) == unprotect(network, pdu)


def test_bearer_mismatch():
    ue, network = create_endpoints(_control_config())
    pdu = protect(ue, parse_bits('aa'))
    with pytest.raises(BearerMismatchError):
        unprotect(network, pdu.flip_bearer_bit(4))


def test_reflected_pdu_is_rejected():
    ue, network = create_endpoints(_control_config())
    pdu = protect(ue, parse_bits('aa'))
    with pytest.raises(DirectionMismatchError):
        unprotect(ue, pdu)
    assert ue.highest_accepted_count[0] is None
    assert unprotect(network, pdu) == parse_bits('aa')


def test_user_plane_does_not_check_direction():
    ue, _ = create_endpoints(_user_config())
    assert unprotect(ue, protect(ue, parse_bits('cafe'))) == parse_bits('cafe')


@pytest.mark.slow
def test_sampled_header_and_body_flips_are_rejected():
    rng = random.Random(33401)
    ue, network = create_endpoints(_control_config(bearer=rng.randrange(32)))

    for n in range(1200):
        length = rng.randint(1, 256)
        pdu = protect(ue, BitString.from_int(rng.getrandbits(length), length))
        target = ('body', 'count', 'bearer', 'direction')[n % 4]
        if target == 'body':
            tampered = pdu.flip_body_bit(rng.randrange(pdu.body.length_bits))
        elif target == 'count':
            tampered = pdu.flip_count_bit(rng.randrange(32))
        elif target == 'bearer':
            tampered = pdu.flip_bearer_bit(rng.randrange(5))
        else:
            tampered = pdu.flip_direction()

        with pytest.raises(LinkError):
            unprotect(network, tampered)

    assert network.highest_accepted_count == {0: None, 1: None}


def test_malformed_control_plane_body():
    _, network = create_endpoints(_control_config())
    with pytest.raises(MalformedPduError):
        unprotect(network, ProtectedPdu(1, 0, 0, BitString.zeros(32)))


def test_empty_control_plane_payload():
    ue, _ = create_endpoints(_control_config())
    with pytest.raises(MalformedPduError):
        protect(ue, BitString())


def test_count_exhausted():
    ue, network = create_endpoints(_control_config(), ul_count=COUNT_LIMIT - 1)
    pdu = protect(ue, parse_bits('aa'))
    assert pdu.count == COUNT_LIMIT - 1
    assert unprotect(network, pdu) == parse_bits('aa')

    with pytest.raises(CountExhaustedError):
        protect(ue, parse_bits('bb'))
    assert ue.send_count == COUNT_LIMIT


def test_pdu_framing():
    pdu = ProtectedPdu(bearer=0x18, direction=1, count=0x36af6144, body=parse_bits('abc'))
    frame = pdu.to_bitstring()
    assert frame.length_bits == 52
    assert frame.prefix(40).hex() == '36af6144c4'
    assert ProtectedPdu.from_bitstring(frame) == pdu

    with pytest.raises(MalformedPduError):
        ProtectedPdu.from_bitstring(BitString.zeros(39))
    with pytest.raises(MalformedPduError):
        ProtectedPdu.from_bitstring(BitString.from_hex('00000000c1'))
    with pytest.raises(MalformedPduError):
        ProtectedPdu(bearer=32, direction=0, count=0, body=BitString())


def test_pdu_inspect():
    pdu = ProtectedPdu(bearer=3, direction=0, count=5, body=parse_bits('ff'))
    assert pdu.inspect() == {'bearer': 3, 'direction': 0, 'count': '00000005', 'body': 'ff/8'}
    assert pdu.flip_direction().direction == 1
