"""Deterministic two-endpoint link scenarios.

A script is line oriented: one directive or event per line, fields separated
by spaces, `#` starts a comment. Directives configure the bearer and must
come before the first event::

    plane control            # user | control
    stratum rrc              # rrc | nas (control plane only)
    bearer 18                # hex by default, 0d prefix for decimal
    cipher eea2
    integrity eia2
    enc-key 6832a65cff4473621ebdd4ba26a921fe
    int-key 6832a65cff4473621ebdd4ba26a921fe
    emergency                # allows EIA0
    seed 7                   # decimal; draws any key not given above
    ul-count 36af6144
    dl-count 0

Events run on the uplink (`ul`, UE to network) or downlink (`dl`)::

    send ul d3c53839/32
    tamper ul 7              # body bit 7; also count:N, bearer:N, direction
    replay ul                # re-deliver the last accepted PDU
    reorder dl 01/8 02/8     # protect two PDUs, deliver newest first

Any event may end with `expect=<verdict>[,<verdict>]`; otherwise the
expectation follows from the plane. On a control plane running EIA0 nothing
vouches for the header, so the expectation is worked out on delivery from the
header and the highest COUNT accepted so far. Tamper and
reorder payloads default to the last payload sent on that link.
"""
from __future__ import annotations

import random
from enum import Enum
from typing import Dict, List, Tuple, Union, Callable, Optional
from pathlib import Path
from dataclasses import field, dataclass

from ..logger import LOGGER
from .pdu import ProtectedPdu
from ..context import UPLINK, DOWNLINK, COUNT_LIMIT
from .channel import LinkChannel
from .endpoint import EndpointState, protect, unprotect, create_endpoints
from ..aes_core import AesKey128
from ..bitstring import BitString
from .transcript import Verdict, Transcript, TranscriptEntry
from ..algo_registry import EEA2, EIA0, EIA2, AlgoId
from ...utils.hexarg import parse_bits, parse_number
from .bearer_config import Plane, Stratum, BearerConfig
from .bearer_builder import BearerConfigBuilder
from ...exceptions import (LinkError, EpsecError, ScenarioError,
                           BitStringError, ScenarioParseError)


class Link(str, Enum):
    UL = 'ul'
    DL = 'dl'

    @property
    def direction(self) -> int:
        return UPLINK if self == Link.UL else DOWNLINK


class EventKind(str, Enum):
    SEND = 'send'
    TAMPER = 'tamper'
    REPLAY = 'replay'
    REORDER = 'reorder'


@dataclass(frozen=True)
class TamperTarget:
    """Which bit of a PDU to flip in transit."""
    field: str = 'body'
    bit: int = 0

    @classmethod
    def parse(cls, text: str) -> TamperTarget:
        if text == 'direction':
            return cls('direction', 0)

        name, _, index = text.rpartition(':')
        name = name or 'body'
        bit = int(index, 10)

        limits = {'body': None, 'count': 32, 'bearer': 5}
        if name not in limits:
            raise ValueError(f'unknown tamper target {text!r}')

        limit = limits[name]
        if bit < 0 or (limit is not None and bit >= limit):
            raise ValueError(f'tamper bit {bit} outside the {name} field')
        return cls(name, bit)

    def apply(self, pdu: ProtectedPdu) -> ProtectedPdu:
        if self.field == 'count':
            return pdu.flip_count_bit(self.bit)
        if self.field == 'bearer':
            return pdu.flip_bearer_bit(self.bit)
        if self.field == 'direction':
            return pdu.flip_direction()
        return pdu.flip_body_bit(self.bit)

    def __str__(self) -> str:
        if self.field == 'direction':
            return 'direction'
        if self.field == 'body':
            return str(self.bit)
        return f'{self.field}:{self.bit}'


@dataclass(frozen=True)
class ScenarioEvent:
    kind: EventKind
    link: Link
    payloads: Tuple[BitString, ...] = ()
    target: Optional[TamperTarget] = None
    expect: Tuple[Verdict, ...] = ()
    line_no: int = 0

    def format(self) -> str:
        fields = [self.kind.value, self.link.value]
        if self.target is not None:
            fields.append(str(self.target))
        fields.extend(str(payload) for payload in self.payloads)
        if self.expect:
            fields.append('expect=' + ','.join(v.value for v in self.expect))
        return ' '.join(fields)


def _random_key(rng: random.Random) -> AesKey128:
    return AesKey128(rng.getrandbits(128).to_bytes(16, 'big'))


@dataclass
class Scenario:
    plane: Plane = Plane.CONTROL
    stratum: Stratum = Stratum.RRC
    bearer: int = 0
    cipher: AlgoId = EEA2
    integrity: AlgoId = EIA2
    enc_key: Optional[AesKey128] = None
    int_key: Optional[AesKey128] = None
    emergency: bool = False
    seed: Optional[int] = None
    ul_count: int = 0
    dl_count: int = 0
    events: List[ScenarioEvent] = field(default_factory=list)

    @property
    def checks_integrity(self) -> bool:
        return self.plane == Plane.CONTROL and self.integrity != EIA0

    def bearer_config(self, default_seed: int = 0) -> BearerConfig:
        """Build the shared bearer configuration; missing keys come from the seed."""
        rng = random.Random(default_seed if self.seed is None else self.seed)
        enc_key = self.enc_key or _random_key(rng)
        int_key = self.int_key or _random_key(rng)

        builder = BearerConfigBuilder(self.bearer)
        if self.plane == Plane.USER:
            builder.with_user_plane().with_cipher(self.cipher, enc_key)
        else:
            (
                builder
                .with_control_plane(self.stratum)
                .with_cipher(self.cipher, enc_key)
                .with_integrity(self.integrity, int_key)
            )
        return builder.with_emergency(self.emergency).build()

    def expectations(self, event: ScenarioEvent) -> Tuple[Verdict, ...]:
        """Scripted expectation of an event, or the plane's default."""
        if event.expect:
            return event.expect

        control = self.plane == Plane.CONTROL
        if event.kind == EventKind.TAMPER:
            target = event.target.field if event.target is not None else 'body'
            if target == 'bearer':
                return (Verdict.BEARER_MISMATCH,)
            if self.checks_integrity:
                return (Verdict.MAC_MISMATCH,)
            if control and target == 'direction':
                return (Verdict.DIRECTION_MISMATCH,)
            return (Verdict.ACCEPT,)

        if event.kind == EventKind.REPLAY:
            return (Verdict.REPLAY_DETECTED if control else Verdict.ACCEPT,)

        if event.kind == EventKind.REORDER:
            return (Verdict.ACCEPT, Verdict.REPLAY_DETECTED if control else Verdict.ACCEPT)

        return (Verdict.ACCEPT,)

    def format(self) -> str:
        lines = [f'plane {self.plane.value}']
        if self.plane == Plane.CONTROL:
            lines.append(f'stratum {self.stratum.value}')
        lines.extend([f'bearer {self.bearer:x}', f'cipher {self.cipher}'])
        if self.plane == Plane.CONTROL:
            lines.append(f'integrity {self.integrity}')
        if self.enc_key is not None:
            lines.append(f'enc-key {self.enc_key.hex()}')
        if self.int_key is not None:
            lines.append(f'int-key {self.int_key.hex()}')
        if self.emergency:
            lines.append('emergency')
        if self.seed is not None:
            lines.append(f'seed {self.seed}')
        lines.extend([f'ul-count {self.ul_count:08x}', f'dl-count {self.dl_count:08x}'])
        lines.extend(event.format() for event in self.events)
        return '\n'.join(lines) + '\n'


def _set_plane(scenario: Scenario, value: str) -> None:
    scenario.plane = Plane(value)


def _set_stratum(scenario: Scenario, value: str) -> None:
    scenario.stratum = Stratum(value)


def _set_bearer(scenario: Scenario, value: str) -> None:
    scenario.bearer = parse_number(value, 5, 'bearer')


def _set_cipher(scenario: Scenario, value: str) -> None:
    scenario.cipher = AlgoId.parse(value)


def _set_integrity(scenario: Scenario, value: str) -> None:
    scenario.integrity = AlgoId.parse(value)


def _set_enc_key(scenario: Scenario, value: str) -> None:
    scenario.enc_key = AesKey128.from_hex(value)


def _set_int_key(scenario: Scenario, value: str) -> None:
    scenario.int_key = AesKey128.from_hex(value)


def _set_seed(scenario: Scenario, value: str) -> None:
    scenario.seed = int(value, 10)


def _set_ul_count(scenario: Scenario, value: str) -> None:
    scenario.ul_count = parse_number(value, 32, 'ul-count')


def _set_dl_count(scenario: Scenario, value: str) -> None:
    scenario.dl_count = parse_number(value, 32, 'dl-count')


_DIRECTIVES: Dict[str, Callable[[Scenario, str], None]] = {
    'plane': _set_plane,
    'stratum': _set_stratum,
    'bearer': _set_bearer,
    'cipher': _set_cipher,
    'integrity': _set_integrity,
    'enc-key': _set_enc_key,
    'int-key': _set_int_key,
    'seed': _set_seed,
    'ul-count': _set_ul_count,
    'dl-count': _set_dl_count,
}


def _parse_event(fields: List[str], line_no: int) -> ScenarioEvent:
    expect: Tuple[Verdict, ...] = ()
    if fields[-1].startswith('expect='):
        expect = tuple(Verdict(v) for v in fields.pop()[len('expect='):].split(','))

    kind = EventKind(fields[0])
    if len(fields) < 2:
        raise ValueError(f'{kind.value} needs a link (ul or dl)')
    link = Link(fields[1])
    args = fields[2:]

    target: Optional[TamperTarget] = None
    if kind == EventKind.SEND:
        if len(args) != 1:
            raise ValueError('send takes exactly one payload')
    elif kind == EventKind.TAMPER:
        if len(args) not in (1, 2):
            raise ValueError('tamper takes a target and an optional payload')
        target = TamperTarget.parse(args.pop(0))
    elif kind == EventKind.REPLAY:
        if args:
            raise ValueError('replay takes no payload')
    elif len(args) > 2:
        raise ValueError('reorder takes at most two payloads')

    payloads = tuple(parse_bits(arg, 'payload') for arg in args)
    return ScenarioEvent(kind, link, payloads, target, expect, line_no)


def parse_script(text: str) -> Scenario:
    """Parse a scenario script.

    Raises:
        ScenarioParseError: with the offending line number.
    """
    scenario = Scenario()
    events = {kind.value for kind in EventKind}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue

        fields = line.split()
        keyword = fields[0]
        try:
            if keyword in events:
                scenario.events.append(_parse_event(fields, line_no))
                continue

            if scenario.events:
                raise ValueError(f'directive {keyword!r} after the first event')

            if keyword == 'emergency' and len(fields) == 1:
                scenario.emergency = True
            elif keyword in _DIRECTIVES and len(fields) == 2:
                _DIRECTIVES[keyword](scenario, fields[1])
            elif keyword in _DIRECTIVES:
                raise ValueError(f'{keyword} takes exactly one value')
            else:
                raise ValueError(f'unknown directive {keyword!r}')

        except (ValueError, EpsecError) as e:
            raise ScenarioParseError(f'line {line_no}: {e}') from e

    LOGGER.debug('Parsed scenario with %d events', len(scenario.events))
    return scenario


def load_script(path: Union[str, Path]) -> Scenario:
    return parse_script(Path(path).read_text())


def _header_verdict(receiver: EndpointState, pdu: ProtectedPdu) -> Verdict:
    """Verdict a receiver without an integrity check reaches from the header alone."""
    if pdu.bearer != receiver.config.bearer:
        return Verdict.BEARER_MISMATCH
    if pdu.direction == receiver.direction:
        return Verdict.DIRECTION_MISMATCH

    highest = receiver.highest_accepted_count.get(pdu.direction)
    if highest is not None and pdu.count <= highest:
        return Verdict.REPLAY_DETECTED
    return Verdict.ACCEPT


class _ScenarioRunner:
    """Executes events over one in-memory channel per link direction."""

    def __init__(self, scenario: Scenario, config: BearerConfig) -> None:
        self.scenario = scenario
        ue, network = create_endpoints(config, scenario.ul_count, scenario.dl_count)
        self.endpoints: Dict[Link, Tuple[EndpointState, EndpointState]] = {
            Link.UL: (ue, network),
            Link.DL: (network, ue),
        }
        self.channels = {Link.UL: LinkChannel(), Link.DL: LinkChannel()}
        self.last_payload: Dict[Link, Optional[BitString]] = {Link.UL: None, Link.DL: None}
        self.sent: Dict[ProtectedPdu, BitString] = {}
        self.transcript = Transcript()

    def run(self, event: ScenarioEvent) -> None:
        expected = list(self.scenario.expectations(event))
        handlers = {
            EventKind.SEND: self._send,
            EventKind.TAMPER: self._tamper,
            EventKind.REPLAY: self._replay,
            EventKind.REORDER: self._reorder,
        }
        try:
            handlers[event.kind](event, expected)
        except (BitStringError, LinkChannel.NothingAccepted) as e:
            raise ScenarioError(f'line {event.line_no}: {event.kind.value}: {e}') from e

    def _payload(self, event: ScenarioEvent, index: int) -> BitString:
        if index < len(event.payloads):
            payload = event.payloads[index]
        else:
            last = self.last_payload[event.link]
            if last is None:
                raise ScenarioError(
                    f'line {event.line_no}: no payload given and nothing sent on {event.link.value}'
                )
            payload = last
        self.last_payload[event.link] = payload
        return payload

    def _record(
        self,
        event: ScenarioEvent,
        expected: List[Verdict],
        verdict: Verdict,
        *,
        count: Optional[int],
        sent: Optional[BitString] = None,
        received: Optional[BitString] = None,
        pdu: Optional[ProtectedPdu] = None,
        comment: str = '',
        expect: Optional[Verdict] = None,
    ) -> None:
        scripted = expected.pop(0) if len(expected) > 1 else expected[0]
        expect = expect or scripted
        self.transcript.add(TranscriptEntry(
            index=self.transcript.next_index,
            event=event.kind.value,
            link=event.link.value,
            verdict=verdict,
            expected=expect,
            count=count,
            sent=sent,
            received=received,
            pdu=pdu,
            line_no=event.line_no,
            comment=comment,
        ))
        if verdict != expect:
            LOGGER.warning('Line %d: %s %s gave %s, expected %s',
                           event.line_no, event.kind.value, event.link.value,
                           verdict.value, expect.value)

    def _protect(
        self, event: ScenarioEvent, expected: List[Verdict], payload: BitString
    ) -> Optional[ProtectedPdu]:
        sender, _ = self.endpoints[event.link]
        try:
            pdu = protect(sender, payload)
        except LinkError as e:
            count = sender.send_count if sender.send_count < COUNT_LIMIT else None
            self._record(event, expected, Verdict.from_error(e), count=count,
                         sent=payload, comment=str(e))
            return None
        self.sent[pdu] = payload
        return pdu

    def _deliver_all(self, event: ScenarioEvent, expected: List[Verdict]) -> None:
        _, receiver = self.endpoints[event.link]
        channel = self.channels[event.link]
        unchecked = (not event.expect and self.scenario.plane == Plane.CONTROL
                     and not self.scenario.checks_integrity)

        for pdu in channel.drain():
            sent = self.sent.get(pdu)
            expect = _header_verdict(receiver, pdu) if unchecked else None
            try:
                received = unprotect(receiver, pdu)
            except LinkError as e:
                self._record(event, expected, Verdict.from_error(e), count=pdu.count,
                             sent=sent, pdu=pdu, comment=str(e), expect=expect)
                continue

            channel.record_accepted(pdu)
            self._record(event, expected, Verdict.ACCEPT, count=pdu.count,
                         sent=sent, received=received, pdu=pdu, expect=expect)

    def _send(self, event: ScenarioEvent, expected: List[Verdict]) -> None:
        pdu = self._protect(event, expected, self._payload(event, 0))
        if pdu is not None:
            self.channels[event.link].enqueue(pdu)
            self._deliver_all(event, expected)

    def _tamper(self, event: ScenarioEvent, expected: List[Verdict]) -> None:
        payload = self._payload(event, 0)
        pdu = self._protect(event, expected, payload)
        if pdu is None:
            return

        tampered = (event.target or TamperTarget()).apply(pdu)
        self.sent[tampered] = payload
        self.channels[event.link].enqueue(tampered)
        self._deliver_all(event, expected)

    def _replay(self, event: ScenarioEvent, expected: List[Verdict]) -> None:
        channel = self.channels[event.link]
        channel.enqueue(channel.last_accepted())
        self._deliver_all(event, expected)

    def _reorder(self, event: ScenarioEvent, expected: List[Verdict]) -> None:
        channel = self.channels[event.link]
        for index in range(2):
            pdu = self._protect(event, expected, self._payload(event, index))
            if pdu is not None:
                channel.enqueue(pdu)
        channel.reorder()
        self._deliver_all(event, expected)


def run_link_scenario(script: Union[Scenario, str], *, default_seed: int = 0) -> Transcript:
    """Run a scenario between a UE and a network endpoint.

    The result depends only on the script and the seed. Rejections are
    recorded as verdicts; only a script that cannot run (for example a replay
    before anything was accepted) raises ScenarioError.
    """
    scenario = parse_script(script) if isinstance(script, str) else script
    config = scenario.bearer_config(default_seed)
    LOGGER.debug('Running scenario on %s', config.inspect())

    runner = _ScenarioRunner(scenario, config)
    for event in scenario.events:
        runner.run(event)

    LOGGER.debug('Scenario finished: %s', runner.transcript.summary())
    return runner.transcript


def acceptance_script(seed: int = 0) -> str:
    """RRC bearer run: 100 sends, 64 single-bit body tampers and 10 replays.

    Each tamper flips body bit i of a fresh PDU carrying the previous payload;
    every tenth send is followed by a replay of the last accepted PDU.
    """
    rng = random.Random(seed)
    lines = [
        '# control-plane tamper and replay run',
        'plane control',
        'stratum rrc',
        'bearer 1',
        'cipher eea2',
        'integrity eia2',
        f'seed {seed}',
    ]
    for i in range(100):
        payload = BitString.from_int(rng.getrandbits(64), 64)
        lines.append(f'send ul {payload}')
        if i < 64:
            lines.append(f'tamper ul {i}')
        if i % 10 == 9:
            lines.append('replay ul')
    return '\n'.join(lines) + '\n'
