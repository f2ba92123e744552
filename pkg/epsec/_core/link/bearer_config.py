from __future__ import annotations

from enum import Enum
from typing import Any, Dict, Optional
from dataclasses import field, dataclass

from ..eea import CipherContext
from ..eia import MacTag32, MacVerdict, IntegrityContext
from ..context import BEARER_LIMIT
from ..aes_core import AesKey128
from ..bitstring import BitString
from ..algo_registry import (EIA0, AlgoId, VerifyFn, CipherFn, AlgoKind,
                             IntegrityFn, get_cipher, get_verifier,
                             get_integrity)
from ...exceptions import AlgorithmError, BearerConfigError


class Plane(str, Enum):
    USER = 'user'
    CONTROL = 'control'


class Stratum(str, Enum):
    UP = 'up'
    RRC = 'rrc'
    NAS = 'nas'


class KeyRole(str, Enum):
    """Which key of the hierarchy a 128-bit key plays."""
    UP_ENC = 'UPenc'
    RRC_ENC = 'RRCenc'
    RRC_INT = 'RRCint'
    NAS_ENC = 'NASenc'
    NAS_INT = 'NASint'

    @property
    def is_integrity(self) -> bool:
        return self.value.endswith('int')

    @property
    def stratum(self) -> Stratum:
        return Stratum(self.value[:-3].lower())

    @classmethod
    def for_stratum(cls, stratum: Stratum, integrity: bool = False) -> KeyRole:
        suffix = 'int' if integrity else 'enc'
        try:
            return cls(f'{stratum.value.upper()}{suffix}')
        except ValueError as e:
            raise BearerConfigError(f'No {suffix} key role for the {stratum.value} stratum') from e


@dataclass(frozen=True)
class RoleKey:
    key: AesKey128
    role: KeyRole

    def __str__(self) -> str:
        return self.role.value


@dataclass(frozen=True)
class BearerConfig:
    """Security configuration of one bearer, shared by both endpoints.

    Invalid combinations are rejected here, before any PDU is built.
    """
    bearer: int
    plane: Plane
    cipher_algo: AlgoId
    cipher_key: RoleKey
    integrity_algo: Optional[AlgoId] = None
    integrity_key: Optional[RoleKey] = None
    emergency_mode: bool = False

    cipher: CipherFn = field(init=False, repr=False, compare=False)
    integrity: Optional[IntegrityFn] = field(init=False, repr=False, compare=False)
    verifier: Optional[VerifyFn] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.bearer < BEARER_LIMIT:
            raise BearerConfigError(f'BEARER must be < 32, got {self.bearer}')

        if self.cipher_algo.kind != AlgoKind.CONFIDENTIALITY:
            raise BearerConfigError(f'{self.cipher_algo} is not a ciphering algorithm')

        if self.cipher_key.role.is_integrity:
            raise BearerConfigError(
                f'{self.cipher_key.role.value} key cannot be used for ciphering'
            )

        try:
            object.__setattr__(self, 'cipher', get_cipher(self.cipher_algo))
        except AlgorithmError as e:
            raise BearerConfigError(str(e)) from e

        if self.plane == Plane.USER:
            self._validate_user_plane()
            object.__setattr__(self, 'integrity', None)
            object.__setattr__(self, 'verifier', None)
        else:
            self._validate_control_plane()

    def _validate_user_plane(self) -> None:
        if self.integrity_algo is not None or self.integrity_key is not None:
            raise BearerConfigError('User-plane data is not integrity protected')

        if self.cipher_key.role != KeyRole.UP_ENC:
            raise BearerConfigError(
                f'User-plane ciphering needs a UPenc key, got {self.cipher_key.role.value}'
            )

    def _validate_control_plane(self) -> None:
        if self.integrity_algo is None or self.integrity_key is None:
            raise BearerConfigError('Control-plane bearers require integrity protection')

        if self.integrity_algo.kind != AlgoKind.INTEGRITY:
            raise BearerConfigError(f'{self.integrity_algo} is not an integrity algorithm')

        if not self.integrity_key.role.is_integrity:
            raise BearerConfigError(
                f'{self.integrity_key.role.value} key cannot be used for integrity'
            )

        if self.cipher_key.role == KeyRole.UP_ENC:
            raise BearerConfigError('UPenc key cannot protect control-plane signalling')

        if self.cipher_key.role.stratum != self.integrity_key.role.stratum:
            raise BearerConfigError(
                f'{self.cipher_key.role.value} and {self.integrity_key.role.value} '
                'belong to different strata'
            )

        if self.integrity_algo == EIA0 and not self.emergency_mode:
            raise BearerConfigError('EIA0 is only allowed for unauthenticated emergency calls')

        try:
            object.__setattr__(self, 'integrity', get_integrity(self.integrity_algo))
            object.__setattr__(self, 'verifier', get_verifier(self.integrity_algo))
        except AlgorithmError as e:
            raise BearerConfigError(str(e)) from e

    @property
    def is_control_plane(self) -> bool:
        return self.plane == Plane.CONTROL

    def inspect(self) -> Dict[str, Any]:
        return {
            'bearer': self.bearer,
            'plane': self.plane.value,
            'cipher': str(self.cipher_algo),
            'cipher_key_role': str(self.cipher_key),
            'integrity': str(self.integrity_algo or ''),
            'integrity_key_role': str(self.integrity_key or ''),
            'emergency_mode': self.emergency_mode,
        }

    def cipher_context(self, count: int, direction: int, bearer: Optional[int] = None) -> CipherContext:
        bearer = self.bearer if bearer is None else bearer
        return CipherContext(self.cipher_key.key, count, bearer, direction)

    def integrity_context(
        self, count: int, direction: int, bearer: Optional[int] = None
    ) -> IntegrityContext:
        if self.integrity_key is None:
            raise BearerConfigError(f'Bearer {self.bearer} has no integrity key')
        bearer = self.bearer if bearer is None else bearer
        return IntegrityContext(self.integrity_key.key, count, bearer, direction)

    def generate_mac(self, ctx: IntegrityContext, payload: BitString) -> MacTag32:
        if self.integrity is None:
            raise BearerConfigError(f'Bearer {self.bearer} is not integrity protected')
        return self.integrity(ctx, payload)

    def verify_mac(self, ctx: IntegrityContext, payload: BitString, received: MacTag32) -> MacVerdict:
        if self.verifier is None:
            raise BearerConfigError(f'Bearer {self.bearer} is not integrity protected')
        return self.verifier(ctx, payload, received)
