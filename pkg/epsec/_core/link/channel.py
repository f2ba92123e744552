from __future__ import annotations

from typing import List, Deque, Iterator
from collections import deque

from .pdu import ProtectedPdu


class ChannelEmptyError(Exception):
    pass


class NothingAcceptedError(Exception):
    pass


class LinkChannel:
    """In-memory FIFO of PDUs in flight on one link direction.

    The channel also keeps the PDUs the receiver accepted, in order, so a
    scenario can replay them later.
    """

    ChannelEmpty = ChannelEmptyError
    NothingAccepted = NothingAcceptedError

    def __init__(self) -> None:
        self.in_flight: Deque[ProtectedPdu] = deque()
        self.accepted: List[ProtectedPdu] = []

    def is_empty(self) -> bool:
        return not self.in_flight

    def size(self) -> int:
        return len(self.in_flight)

    def enqueue(self, pdu: ProtectedPdu) -> None:
        self.in_flight.append(pdu)

    def dequeue(self) -> ProtectedPdu:
        """Pop the oldest PDU in flight.

        Raises:
            ChannelEmptyError: nothing is in flight.
        """
        if self.is_empty():
            raise ChannelEmptyError('Channel is empty')
        return self.in_flight.popleft()

    def reorder(self) -> None:
        """Reverse the delivery order of everything in flight."""
        self.in_flight.reverse()

    def drain(self) -> Iterator[ProtectedPdu]:
        while not self.is_empty():
            yield self.dequeue()

    def record_accepted(self, pdu: ProtectedPdu) -> None:
        self.accepted.append(pdu)

    def last_accepted(self) -> ProtectedPdu:
        """The most recent PDU the receiver accepted.

        Raises:
            NothingAcceptedError: no PDU has been accepted yet.
        """
        if not self.accepted:
            raise NothingAcceptedError('No PDU accepted on this link yet')
        return self.accepted[-1]

    def clear(self) -> None:
        self.in_flight.clear()
        self.accepted.clear()

    def __iter__(self) -> Iterator[ProtectedPdu]:
        return iter(list(self.in_flight))

    def __contains__(self, pdu: ProtectedPdu) -> bool:
        return pdu in self.in_flight
