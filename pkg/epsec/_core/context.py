from __future__ import annotations

from dataclasses import field, dataclass

from .aes_core import AesKey128, KeySchedule, expand_key
from ..exceptions import ContextError

COUNT_LIMIT = 1 << 32
BEARER_LIMIT = 1 << 5

UPLINK = 0
DOWNLINK = 1


def validate_frame_inputs(count: int, bearer: int, direction: int) -> None:
    """Raise ContextError unless COUNT, BEARER and DIRECTION are in range."""
    if not 0 <= count < COUNT_LIMIT:
        raise ContextError(f'COUNT must be a 32-bit value, got {count:#x}')
    if not 0 <= bearer < BEARER_LIMIT:
        raise ContextError(f'BEARER must be < 32, got {bearer}')
    if direction not in (UPLINK, DOWNLINK):
        raise ContextError(f'DIRECTION must be 0 or 1, got {direction}')


def pack_frame_header(count: int, bearer: int, direction: int) -> int:
    """64-bit COUNT || BEARER || DIRECTION || 0^26, most significant bit first."""
    return (count << 32) | (bearer << 27) | (direction << 26)


@dataclass(frozen=True)
class SecurityContext:
    """The (key, COUNT, BEARER, DIRECTION) tuple of one algorithm invocation.

    The key schedule is expanded once at construction and travels with the
    context; it is excluded from equality and repr.
    """
    key: AesKey128
    count: int
    bearer: int
    direction: int
    schedule: KeySchedule = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        validate_frame_inputs(self.count, self.bearer, self.direction)
        object.__setattr__(self, 'schedule', expand_key(self.key))

    @property
    def header(self) -> int:
        return pack_frame_header(self.count, self.bearer, self.direction)
