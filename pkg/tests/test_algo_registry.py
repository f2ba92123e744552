from __future__ import annotations

import pytest

from epsec import (EEA0, EEA2, EIA0, EIA2, AlgoId, AlgoKind, AlgoStatus, resolve,
                   get_cipher, get_verifier, get_integrity, apply_eea2)
from epsec._core.algo_registry import capabilities
from epsec.exceptions import AlgorithmError, UnsupportedAlgorithmError


def test_every_code_resolves():
    table = capabilities()
    assert len(table) == 32
    for kind in AlgoKind:
        for code in range(16):
            assert resolve(AlgoId(kind, code)).id == AlgoId(kind, code)


def test_only_null_and_aes_are_implemented():
    implemented = {c.id for c in capabilities() if c.is_implemented}
    assert implemented == {EEA0, EEA2, EIA0, EIA2}


def test_names_and_status():
    assert resolve(EEA2).name == '128-EEA2'
    assert str(EIA0) == 'EIA0'
    assert resolve(AlgoId(AlgoKind.INTEGRITY, 0b1111)).name == 'EIA-reserved-1111'
    assert resolve(AlgoId(AlgoKind.CONFIDENTIALITY, 1)).status == AlgoStatus.UNSUPPORTED_EXTERNAL
    assert resolve(AlgoId(AlgoKind.CONFIDENTIALITY, 3)).status == AlgoStatus.RESERVED


@pytest.mark.parametrize('text, expected', [
    ('eea2', EEA2),
    ('128-EIA2', EIA2),
    ('EIA0', EIA0),
    (' eea0 ', EEA0),
])
def test_parse(text, expected):
    assert AlgoId.parse(text) == expected


def test_parse_unknown():
    with pytest.raises(AlgorithmError):
        AlgoId.parse('eea9')


def test_code_must_fit_four_bits():
    with pytest.raises(AlgorithmError):
        AlgoId(AlgoKind.INTEGRITY, 16)


def test_lookup_by_kind():
    assert get_cipher(EEA2) is apply_eea2
    assert callable(get_integrity(EIA2))
    assert callable(get_verifier(EIA0))

    with pytest.raises(AlgorithmError):
        get_cipher(EIA2)
    with pytest.raises(AlgorithmError):
        get_integrity(EEA2)


@pytest.mark.parametrize('algo_id', [
    AlgoId(AlgoKind.CONFIDENTIALITY, 1),
    AlgoId(AlgoKind.CONFIDENTIALITY, 0b0111),
])
def test_unimplemented_codes_are_rejected(algo_id):
    with pytest.raises(UnsupportedAlgorithmError):
        get_cipher(algo_id)
