from __future__ import annotations

from enum import Enum
from typing import Any, Dict, List, Tuple, Optional
from collections import Counter
from dataclasses import field, dataclass

from .pdu import ProtectedPdu
from ..bitstring import BitString
from ...exceptions import (LinkError, MacMismatchError, MalformedPduError,
                           BearerMismatchError, CountExhaustedError,
                           ReplayDetectedError, DirectionMismatchError)


class Verdict(str, Enum):
    """Outcome of delivering (or trying to send) one PDU."""
    ACCEPT = 'accept'
    MAC_MISMATCH = 'mac-mismatch'
    REPLAY_DETECTED = 'replay-detected'
    MALFORMED = 'malformed'
    BEARER_MISMATCH = 'bearer-mismatch'
    COUNT_EXHAUSTED = 'count-exhausted'
    DIRECTION_MISMATCH = 'direction-mismatch'

    @classmethod
    def from_error(cls, error: LinkError) -> Verdict:
        for error_type, verdict in _ERROR_VERDICTS:
            if isinstance(error, error_type):
                return verdict
        raise ValueError(f'No verdict for {type(error).__name__}')


_ERROR_VERDICTS: Tuple[Tuple[type, Verdict], ...] = (
    (MacMismatchError, Verdict.MAC_MISMATCH),
    (ReplayDetectedError, Verdict.REPLAY_DETECTED),
    (MalformedPduError, Verdict.MALFORMED),
    (BearerMismatchError, Verdict.BEARER_MISMATCH),
    (CountExhaustedError, Verdict.COUNT_EXHAUSTED),
    (DirectionMismatchError, Verdict.DIRECTION_MISMATCH),
)


@dataclass(frozen=True)
class TranscriptEntry:
    index: int
    event: str
    link: str
    verdict: Verdict
    expected: Verdict
    count: Optional[int] = None
    sent: Optional[BitString] = None
    received: Optional[BitString] = None
    pdu: Optional[ProtectedPdu] = None
    line_no: int = 0
    comment: str = ''

    @property
    def matched(self) -> bool:
        return self.verdict == self.expected

    @property
    def payload_match(self) -> Optional[bool]:
        if self.received is None or self.sent is None:
            return None
        return self.received == self.sent

    def format(self) -> str:
        fields = [
            f'{self.index:04d}',
            self.event,
            self.link,
            f'count={self.count:08x}' if self.count is not None else 'count=-',
            f'verdict={self.verdict.value}',
            f'expect={self.expected.value}',
        ]
        if self.sent is not None:
            fields.append(f'payload={self.sent}')
        if self.payload_match is not None:
            fields.append(f'match={"yes" if self.payload_match else "no"}')
        if self.pdu is not None:
            fields.append(f'pdu={self.pdu}')
        if not self.matched:
            fields.append('UNEXPECTED')
        return ' '.join(fields)

    def inspect(self) -> Dict[str, Any]:
        return {
            'index': self.index,
            'event': self.event,
            'link': self.link,
            'count': self.count,
            'verdict': self.verdict.value,
            'expected': self.expected.value,
            'payload_match': self.payload_match,
            'pdu': self.pdu.inspect() if self.pdu else None,
            'line_no': self.line_no,
            'comment': self.comment,
        }


@dataclass
class Transcript:
    """Ordered record of every delivery attempt in a link scenario."""
    entries: Tuple[TranscriptEntry, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, entry: TranscriptEntry) -> None:
        self.entries = self.entries + (entry,)

    @property
    def next_index(self) -> int:
        return len(self.entries) + 1

    @property
    def all_expected(self) -> bool:
        return all(entry.matched for entry in self.entries)

    def unexpected(self) -> List[TranscriptEntry]:
        return [entry for entry in self.entries if not entry.matched]

    def tally(self) -> Dict[str, int]:
        counts = Counter(entry.verdict.value for entry in self.entries)
        return {verdict.value: counts.get(verdict.value, 0) for verdict in Verdict}

    def accepted_counts(self, link: str) -> List[int]:
        return [
            entry.count for entry in self.entries
            if entry.link == link and entry.verdict == Verdict.ACCEPT and entry.count is not None
        ]

    def summary(self) -> str:
        tally = ' '.join(f'{name}={count}' for name, count in self.tally().items() if count)
        return f'# events={len(self)} {tally} unexpected={len(self.unexpected())}'

    def format(self) -> str:
        return '\n'.join([entry.format() for entry in self.entries] + [self.summary()])

    def inspect(self) -> Dict[str, Any]:
        return {
            'entries': [entry.inspect() for entry in self.entries],
            'tally': self.tally(),
            'all_expected': self.all_expected,
        }
