"""Embedded conformance vectors.

`EIA2_WORKED` is the published worked example with every intermediate.
`EEA2_253` and `EIA2_58` are test set 1 of the 3GPP 128-EEA2 and 128-EIA2
conformance data. FIPS-197 and RFC 4493 values anchor the AES and CMAC
building blocks. Everything labelled `derived` was computed once and
cross-checked against an independent AES implementation; those are regression
values, not standard test sets.
"""
from __future__ import annotations

from enum import Enum
from typing import Tuple
from dataclasses import dataclass


class VectorSource(str, Enum):
    REFERENCE = 'reference'
    FIPS_197 = 'fips-197'
    RFC_4493 = 'rfc-4493'
    TS_33401 = '3gpp'
    DERIVED = 'derived'


@dataclass(frozen=True)
class AesVector:
    name: str
    source: VectorSource
    key: str
    round_keys: Tuple[Tuple[int, str], ...] = ()
    plaintext: str = ''
    ciphertext: str = ''


@dataclass(frozen=True)
class EeaVector:
    name: str
    source: VectorSource
    key: str
    count: int
    bearer: int
    direction: int
    plaintext: str
    ciphertext: str


@dataclass(frozen=True)
class EiaVector:
    name: str
    source: VectorSource
    key: str
    count: int
    bearer: int
    direction: int
    message: str
    mac: str
    l_block: str = ''
    k1: str = ''
    k2: str = ''


@dataclass(frozen=True)
class CmacVector:
    name: str
    source: VectorSource
    key: str
    message: str
    tag: str


@dataclass(frozen=True)
class KeystreamVector:
    name: str
    source: VectorSource
    key: str
    count: int
    bearer: int
    direction: int
    blocks: Tuple[str, ...]


WORKED_KEY = '6832a65cff4473621ebdd4ba26a921fe'
WORKED_COUNT = 0x36af6144
WORKED_BEARER = 0x18
WORKED_DIRECTION = 0
WORKED_MESSAGE = (
    'd3c5383962682071776566762032383763624098'
    '1ba6824c1bfb1ab485472029b71d808ce33e2cc3'
    'c0b5fc1f3de8a6dc/383'
)

EIA2_WORKED = EiaVector(
    name='eia2-worked-example',
    source=VectorSource.REFERENCE,
    key=WORKED_KEY,
    count=WORKED_COUNT,
    bearer=WORKED_BEARER,
    direction=WORKED_DIRECTION,
    message=WORKED_MESSAGE,
    mac='f0668c1e',
    l_block='e50123c387e13fd68d8bf0d0a4581685',
    k1='ca0247870fc27fad1b17e1a148b02d8d',
    k2='94048f0e1f84ff5a362fc34291605b9d',
)

# Published C[1] drops one digit; the value below is the recomputed chain.
WORKED_CHAIN: Tuple[Tuple[str, str], ...] = (
    ('36af6144c0000000d3c5383962682071', '263dd98fbeccb69a428e92d421fbed9e'),
    ('7765667620323837636240981ba6824c', '1838cb78cb2d32dcec486c79d9007a19'),
    ('1bfb1ab485472029b71d808ce33e2cc3', '5ebf1009f663be7b683730724c20271f'),
    ('54b17311226c5987362fc34291605b9d', 'f0668c1e4197300b1243f83425d06c25'),
)

# Last block before finalization: 63 message bits, zero-extended.
WORKED_LAST_UNPADDED = 'c0b5fc1f3de8a6dc0000000000000000'
WORKED_LAST_PADDED = 'c0b5fc1f3de8a6dd0000000000000000'

WORKED_TRACE = '\n'.join([
    'EIA2 ALGORITHM ENCRYPTION',
    'Based on AES-128',
    'Mlen = 447',
    'L = e50123c387e13fd6 8d8bf0d0a4581685',
    'K1 = ca0247870fc27fad 1b17e1a148b02d8d',
    'K2 = 94048f0e1f84ff5a 362fc34291605b9d',
    '',
    'MAC-I Generation:',
    'n = 4',
    'Mn* = c0b5fc1f3de8a6dc 0000000000000000',
    'Mn = 54b17311226c5987 362fc34291605b9d',
    '',
    'C[0] = 0000000000000000 0000000000000000',
    'M[1] = 36af6144c0000000 d3c5383962682071',
    'C[1] = 263dd98fbeccb69a 428e92d421fbed9e',
    'M[2] = 7765667620323837 636240981ba6824c',
    'C[2] = 1838cb78cb2d32dc ec486c79d9007a19',
    'M[3] = 1bfb1ab485472029 b71d808ce33e2cc3',
    'C[3] = 5ebf1009f663be7b 683730724c20271f',
    'M[4] = 54b17311226c5987 362fc34291605b9d',
    'C[4] = f0668c1e4197300b 1243f83425d06c25',
    '',
    'MAC-I = f0668c1e',
])

AES_FIPS_C1 = AesVector(
    name='aes128-fips197-c1',
    source=VectorSource.FIPS_197,
    key='000102030405060708090a0b0c0d0e0f',
    round_keys=(
        (0, '000102030405060708090a0b0c0d0e0f'),
        (1, 'd6aa74fdd2af72fadaa678f1d6ab76fe'),
        (2, 'b692cf0b643dbdf1be9bc5006830b3fe'),
        (3, 'b6ff744ed2c2c9bf6c590cbf0469bf41'),
        (4, '47f7f7bc95353e03f96c32bcfd058dfd'),
        (5, '3caaa3e8a99f9deb50f3af57adf622aa'),
        (6, '5e390f7df7a69296a7553dc10aa31f6b'),
        (7, '14f9701ae35fe28c440adf4d4ea9c026'),
        (8, '47438735a41c65b9e016baf4aebf7ad2'),
        (9, '549932d1f08557681093ed9cbe2c974e'),
        (10, '13111d7fe3944a17f307a78b4d2b30c5'),
    ),
    plaintext='00112233445566778899aabbccddeeff',
    ciphertext='69c4e0d86a7b0430d8cdb78070b4c55a',
)

AES_FIPS_A1 = AesVector(
    name='aes128-fips197-a1-schedule',
    source=VectorSource.FIPS_197,
    key='2b7e151628aed2a6abf7158809cf4f3c',
    round_keys=(
        (0, '2b7e151628aed2a6abf7158809cf4f3c'),
        (1, 'a0fafe1788542cb123a339392a6c7605'),
        (10, 'd014f9a8c9ee2589e13f0cc8b6630ca6'),
    ),
)

AES_WORKED_L = AesVector(
    name='aes128-worked-l',
    source=VectorSource.REFERENCE,
    key=WORKED_KEY,
    plaintext='00000000000000000000000000000000',
    ciphertext='e50123c387e13fd68d8bf0d0a4581685',
)

EEA2_253 = EeaVector(
    name='eea2-253-bits',
    source=VectorSource.TS_33401,
    key='d3c5d592327fb11c4035c6680af8c6d1',
    count=0x398a59b4,
    bearer=0x15,
    direction=1,
    plaintext='981ba6824c1bfb1ab485472029b71d808ce33e2cc3c0b5fc1f3de8a6dc66b1f0/253',
    ciphertext='e9fed8a63d155304d71df20bf3e82214b20ed7dad2f233dc3c22d7bdeeed8e78/253',
)

EIA2_58 = EiaVector(
    name='eia2-58-bits',
    source=VectorSource.TS_33401,
    key='2bd6459f82c5b300952c49104881ff48',
    count=0x38a6f056,
    bearer=0x18,
    direction=0,
    message='3332346263393840/58',
    mac='118c6eb8',
    l_block='6e4261385adfc1fcb7c85f0c469fb20c',
    k1='dc84c270b5bf83f96f90be188d3f6418',
    k2='b90984e16b7f07f2df217c311a7ec8b7',
)

KEYSTREAM_WORKED = KeystreamVector(
    name='eea2-worked-context-keystream',
    source=VectorSource.DERIVED,
    key=WORKED_KEY,
    count=WORKED_COUNT,
    bearer=WORKED_BEARER,
    direction=WORKED_DIRECTION,
    blocks=(
        '371faf99a0f41e18746c95d7e81744e8',
        '57224d1e8860d831fcbdaef17d9c5c8d',
    ),
)

# AES_K(T) for the worked-context counter block whose low half is 2^64 - 1.
COUNTER_WRAP_INPUT = '36af6144c0000000ffffffffffffffff'
COUNTER_WRAP_OUTPUT = '54be804b283bc6e9b9de7c1409f6816c'

RFC4493_KEY = '2b7e151628aed2a6abf7158809cf4f3c'
RFC4493_SUBKEYS = (
    '7df76b0c1ab899b33e42f047b91b546f',
    'fbeed618357133667c85e08f7236a8de',
    'f7ddac306ae266ccf90bc11ee46d513b',
)

_RFC4493_MESSAGE = (
    '6bc1bee22e409f96e93d7e117393172a'
    'ae2d8a571e03ac9c9eb76fac45af8e51'
    '30c81c46a35ce411e5fbc1191a0a52ef'
    'f69f2445df4f9b17ad2b417be66c3710'
)

CMAC_RFC4493: Tuple[CmacVector, ...] = (
    CmacVector('cmac-rfc4493-empty', VectorSource.RFC_4493, RFC4493_KEY,
               '', 'bb1d6929e95937287fa37d129b756746'),
    CmacVector('cmac-rfc4493-16', VectorSource.RFC_4493, RFC4493_KEY,
               _RFC4493_MESSAGE[:32], '070a16b46b4d4144f79bdd9dd04a287c'),
    CmacVector('cmac-rfc4493-40', VectorSource.RFC_4493, RFC4493_KEY,
               _RFC4493_MESSAGE[:80], 'dfa66747de9ae63030ca32611497c827'),
    CmacVector('cmac-rfc4493-64', VectorSource.RFC_4493, RFC4493_KEY,
               _RFC4493_MESSAGE, '51f0bebf7e3b9d92fc49741779363cfe'),
)
