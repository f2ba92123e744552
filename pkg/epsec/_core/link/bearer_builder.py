from __future__ import annotations

from typing import Union, Optional

from ..aes_core import AesKey128
from .bearer_config import Plane, KeyRole, RoleKey, Stratum, BearerConfig
from ..algo_registry import EEA0, EEA2, EIA0, EIA2, AlgoId
from ...exceptions import BearerConfigError

KeyLike = Union[AesKey128, bytes, str]


def _as_key(key: KeyLike) -> AesKey128:
    if isinstance(key, AesKey128):
        return key
    if isinstance(key, str):
        return AesKey128.from_hex(key)
    return AesKey128(key)


class BearerConfigBuilder:
    """Chained construction of a BearerConfig.

    >>> config = (
    ...     BearerConfigBuilder(bearer=0x18)
    ...     .with_control_plane(Stratum.RRC)
    ...     .with_cipher(EEA2, '6832a65cff4473621ebdd4ba26a921fe')
    ...     .with_integrity(EIA2, '6832a65cff4473621ebdd4ba26a921fe')
    ...     .build()
    ... )

    Key roles default to the plane and stratum: UPenc on the user plane,
    RRCenc/RRCint or NASenc/NASint on the control plane.
    """

    def __init__(self, bearer: int):
        self.bearer = bearer
        self.plane = Plane.CONTROL
        self.stratum = Stratum.RRC

        self.cipher_algo: AlgoId = EEA2
        self.cipher_key: Optional[AesKey128] = None
        self.cipher_role: Optional[KeyRole] = None

        self.integrity_algo: Optional[AlgoId] = EIA2
        self.integrity_key: Optional[AesKey128] = None
        self.integrity_role: Optional[KeyRole] = None

        self.emergency_mode = False

    def with_user_plane(self) -> BearerConfigBuilder:
        """User-plane bearer: ciphering only."""
        self.plane = Plane.USER
        self.stratum = Stratum.UP
        self.integrity_algo = None
        return self

    def with_control_plane(self, stratum: Stratum = Stratum.RRC) -> BearerConfigBuilder:
        """Signalling bearer for RRC or NAS: ciphering and integrity."""
        self.plane = Plane.CONTROL
        self.stratum = stratum
        if self.integrity_algo is None:
            self.integrity_algo = EIA2
        return self

    def with_cipher(
        self,
        algo: AlgoId,
        key: KeyLike,
        role: Optional[KeyRole] = None
    ) -> BearerConfigBuilder:
        self.cipher_algo = algo
        self.cipher_key = _as_key(key)
        self.cipher_role = role
        return self

    def with_integrity(
        self,
        algo: AlgoId,
        key: KeyLike,
        role: Optional[KeyRole] = None
    ) -> BearerConfigBuilder:
        self.integrity_algo = algo
        self.integrity_key = _as_key(key)
        self.integrity_role = role
        return self

    def with_emergency(self, enabled: bool = True) -> BearerConfigBuilder:
        """Mark the bearer as an unauthenticated emergency call (allows EIA0)."""
        self.emergency_mode = enabled
        return self

    def build(self) -> BearerConfig:
        """Validate and create the configuration.

        Keys may be omitted only for the null algorithms.

        Raises:
            BearerConfigError: if the combination violates a plane, role or
                algorithm rule.
        """
        cipher_key = self._key_or_null(self.cipher_key, self.cipher_algo, 'cipher')
        cipher_role = self.cipher_role or KeyRole.for_stratum(self.stratum)

        integrity_key: Optional[RoleKey] = None
        if self.integrity_algo is not None or self.integrity_key is not None:
            integrity_key = RoleKey(
                self._key_or_null(self.integrity_key, self.integrity_algo, 'integrity'),
                self.integrity_role or KeyRole.for_stratum(self.stratum, integrity=True),
            )

        return BearerConfig(
            bearer=self.bearer,
            plane=self.plane,
            cipher_algo=self.cipher_algo,
            cipher_key=RoleKey(cipher_key, cipher_role),
            integrity_algo=self.integrity_algo,
            integrity_key=integrity_key,
            emergency_mode=self.emergency_mode,
        )

    @staticmethod
    def _key_or_null(key: Optional[AesKey128], algo: Optional[AlgoId], label: str) -> AesKey128:
        if key is not None:
            return key
        if algo in (EEA0, EIA0):
            return AesKey128(bytes(16))
        raise BearerConfigError(f'No {label} key configured')
