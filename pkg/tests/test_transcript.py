from __future__ import annotations

import pytest

from epsec import Verdict, Transcript, parse_bits
from epsec._core.link import TranscriptEntry
from epsec.exceptions import (LinkError, MacMismatchError, MalformedPduError,
                              BearerMismatchError, CountExhaustedError,
                              ReplayDetectedError, DirectionMismatchError)


@pytest.mark.parametrize('error, verdict', [
    (MacMismatchError('x'), Verdict.MAC_MISMATCH),
    (ReplayDetectedError('x'), Verdict.REPLAY_DETECTED),
    (MalformedPduError('x'), Verdict.MALFORMED),
    (BearerMismatchError('x'), Verdict.BEARER_MISMATCH),
    (CountExhaustedError('x'), Verdict.COUNT_EXHAUSTED),
    (DirectionMismatchError('x'), Verdict.DIRECTION_MISMATCH),
])
def test_verdict_from_error(error, verdict):
    assert Verdict.from_error(error) == verdict


def test_verdict_from_plain_link_error():
    with pytest.raises(ValueError):
        Verdict.from_error(LinkError('x'))


def _entry(index, verdict, expected=None, count=None, sent=None, received=None):
    return TranscriptEntry(index=index, event='send', link='ul', verdict=verdict,
                           expected=expected or verdict, count=count, sent=sent,
                           received=received)


def test_entry_format():
    payload = parse_bits('d3c5')
    entry = _entry(1, Verdict.ACCEPT, count=0x10, sent=payload, received=payload)
    assert entry.format() == (
        '0001 send ul count=00000010 verdict=accept expect=accept payload=d3c5/16 match=yes'
    )

    wrong = _entry(2, Verdict.MAC_MISMATCH, expected=Verdict.ACCEPT)
    assert wrong.format().endswith('count=- verdict=mac-mismatch expect=accept UNEXPECTED')
    assert wrong.payload_match is None


def test_payload_mismatch():
    entry = _entry(1, Verdict.ACCEPT, sent=parse_bits('01'), received=parse_bits('02'))
    assert entry.payload_match is False
    assert 'match=no' in entry.format()


def test_tally_and_summary():
    transcript = Transcript()
    transcript.add(_entry(1, Verdict.ACCEPT, count=0))
    transcript.add(_entry(2, Verdict.MAC_MISMATCH, count=1))
    transcript.add(_entry(3, Verdict.ACCEPT, count=2))
    transcript.add(_entry(4, Verdict.REPLAY_DETECTED, expected=Verdict.ACCEPT, count=2))

    assert len(transcript) == 4
    assert transcript.next_index == 5
    assert transcript.tally()['accept'] == 2
    assert transcript.tally()['malformed'] == 0
    assert transcript.accepted_counts('ul') == [0, 2]
    assert not transcript.all_expected
    assert [e.index for e in transcript.unexpected()] == [4]
    assert transcript.summary() == (
        '# events=4 accept=2 mac-mismatch=1 replay-detected=1 unexpected=1'
    )
    assert transcript.format().splitlines()[-1] == transcript.summary()


def test_inspect():
    transcript = Transcript()
    transcript.add(_entry(1, Verdict.ACCEPT, count=7))
    data = transcript.inspect()
    assert data['all_expected'] is True
    assert data['entries'][0]['verdict'] == 'accept'
    assert data['entries'][0]['count'] == 7
