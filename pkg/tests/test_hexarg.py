from __future__ import annotations

import pytest

from epsec import HexArg, BitString, parse_bits
from epsec.utils.hexarg import format_bits, parse_number
from epsec.exceptions import HexArgError


@pytest.mark.parametrize('text, length', [
    ('deadbeef', 32),
    ('abc', 12),
    ('3332346263393840/58', 58),
    ('', 0),
    ('/0', 0),
    ('DE AD', 16),
])
def test_lengths(text, length):
    assert parse_bits(text).length_bits == length


def test_odd_digit_count_is_left_aligned():
    assert parse_bits('abc') == BitString.from_hex('abc0', 12)
    assert str(HexArg.parse('abc')) == 'abc0/12'


def test_worked_message_length():
    bits = parse_bits('d3c5383962682071776566762032383763624098'
                      '1ba6824c1bfb1ab485472029b71d808ce33e2cc3'
                      'c0b5fc1f3de8a6dc/383')
    assert bits.length_bits == 383
    assert bits.hex().endswith('a6dc')


@pytest.mark.parametrize('text', [
    'xyz',
    'ff/9',
    'ff/7',
    'ab/x',
    '0x12',
])
def test_rejected(text):
    with pytest.raises(HexArgError):
        parse_bits(text, 'message')


def test_error_names_the_field():
    with pytest.raises(HexArgError, match='^message:'):
        parse_bits('ff/9', 'message')


def test_roundtrip_text_form():
    bits = parse_bits('3332346263393840/58')
    assert format_bits(bits) == '3332346263393840/58'
    assert HexArg.from_bitstring(bits).to_bitstring() == bits


@pytest.mark.parametrize('text, value', [
    ('18', 0x18),
    ('0d24', 24),
    ('0x1f', 31),
    ('36af6144', 0x36af6144),
    ('0D10', 10),
])
def test_parse_number(text, value):
    assert parse_number(text, 32, 'count') == value


@pytest.mark.parametrize('text, limit', [
    ('20', 5),
    ('0d32', 5),
    ('1ffffffff', 32),
    ('-1', 5),
    ('0dxx', 5),
    ('', 5),
])
def test_parse_number_rejects(text, limit):
    with pytest.raises(HexArgError):
        parse_number(text, limit, 'bearer')
