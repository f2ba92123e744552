"""PDU protection on one end of a bearer.

Control plane: MAC-I is computed over the plaintext payload, then payload and
MAC-I are ciphered together. User plane: the payload is ciphered only.
The receiver deciphers and checks XMAC-I. It then rejects PDUs carrying its
own direction before checking COUNT freshness.
"""
from __future__ import annotations

from typing import Dict, Tuple, Optional
from dataclasses import field, dataclass

from ..eia import MAC_BITS, MacTag32, MacVerdict
from ..logger import LOGGER
from .pdu import ProtectedPdu
from ..context import UPLINK, DOWNLINK, COUNT_LIMIT
from ..bitstring import BitString
from .bearer_config import BearerConfig
from ...exceptions import (MacMismatchError, MalformedPduError,
                           BearerMismatchError, CountExhaustedError,
                           ReplayDetectedError, DirectionMismatchError)


@dataclass
class EndpointState:
    """One side of a bearer. Single writer: callers serialize protect/unprotect."""
    config: BearerConfig
    direction: int
    send_count: int = 0
    highest_accepted_count: Dict[int, Optional[int]] = field(
        default_factory=lambda: {UPLINK: None, DOWNLINK: None}
    )
    name: str = ''

    def __post_init__(self) -> None:
        if not self.name:
            self.name = 'ue' if self.direction == UPLINK else 'network'

    def __str__(self) -> str:
        return f'{self.name}<bearer={self.config.bearer} send_count={self.send_count:08x}>'


def create_endpoints(
    config: BearerConfig,
    ul_count: int = 0,
    dl_count: int = 0
) -> Tuple[EndpointState, EndpointState]:
    """Return the (UE, network) endpoint pair for one bearer."""
    return (
        EndpointState(config, UPLINK, send_count=ul_count),
        EndpointState(config, DOWNLINK, send_count=dl_count),
    )


def protect(state: EndpointState, payload: BitString) -> ProtectedPdu:
    """Protect one payload and advance the sending COUNT.

    Raises:
        CountExhaustedError: COUNT would wrap past 2^32 - 1; rekeying is needed.
        MalformedPduError: empty payload on a control-plane bearer.
    """
    config = state.config
    count = state.send_count
    if count >= COUNT_LIMIT:
        raise CountExhaustedError(f'{state.name}: COUNT exhausted on bearer {config.bearer}')

    if config.is_control_plane:
        if not payload.length_bits:
            raise MalformedPduError('Control-plane payload must not be empty')

        ictx = config.integrity_context(count, state.direction)
        plaintext = payload + config.generate_mac(ictx, payload).to_bitstring()
    else:
        plaintext = payload

    cctx = config.cipher_context(count, state.direction)
    pdu = ProtectedPdu(config.bearer, state.direction, count, config.cipher(cctx, plaintext))
    state.send_count = count + 1

    LOGGER.debug('%s: protected count=%08x bearer=%d direction=%d bits=%d',
                 state.name, count, config.bearer, state.direction, payload.length_bits)
    return pdu


def unprotect(state: EndpointState, pdu: ProtectedPdu) -> BitString:
    """Recover the payload of a received PDU.

    Raises:
        BearerMismatchError: the PDU belongs to another bearer.
        MalformedPduError: control-plane body shorter than 33 bits.
        MacMismatchError: XMAC-I differs from the received MAC-I.
        DirectionMismatchError: control-plane PDU carries the receiver's own direction.
        ReplayDetectedError: control-plane COUNT not above the highest accepted.
    """
    config = state.config
    if pdu.bearer != config.bearer:
        raise BearerMismatchError(
            f'{state.name}: PDU for bearer {pdu.bearer} received on bearer {config.bearer}'
        )

    if config.is_control_plane and pdu.body.length_bits <= MAC_BITS:
        raise MalformedPduError(
            f'{state.name}: control-plane body of {pdu.body.length_bits} bits has no payload'
        )

    cctx = config.cipher_context(pdu.count, pdu.direction, pdu.bearer)
    plaintext = config.cipher(cctx, pdu.body)

    if not config.is_control_plane:
        LOGGER.debug('%s: accepted user-plane count=%08x', state.name, pdu.count)
        return plaintext

    payload_bits = plaintext.length_bits - MAC_BITS
    payload = plaintext.prefix(payload_bits)
    received = MacTag32.from_bitstring(plaintext.slice(payload_bits, MAC_BITS))

    ictx = config.integrity_context(pdu.count, pdu.direction, pdu.bearer)
    if config.verify_mac(ictx, payload, received) != MacVerdict.ACCEPT:
        raise MacMismatchError(f'{state.name}: MAC-I mismatch at count {pdu.count:08x}')

    if pdu.direction == state.direction:
        raise DirectionMismatchError(
            f'{state.name}: PDU sent in direction {pdu.direction} reflected back to its sender'
        )

    highest = state.highest_accepted_count.get(pdu.direction)
    if highest is not None and pdu.count <= highest:
        raise ReplayDetectedError(
            f'{state.name}: count {pdu.count:08x} not above accepted {highest:08x}'
        )

    state.highest_accepted_count[pdu.direction] = pdu.count
    LOGGER.debug('%s: accepted control-plane count=%08x', state.name, pdu.count)
    return payload
