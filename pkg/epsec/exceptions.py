from __future__ import annotations

from typing import Type


class EpsecError(Exception):
    """Base class for exceptions in the epsec package."""


def create_exception(name: str, base: Type[EpsecError] = EpsecError) -> type[EpsecError]:
    """Factory function to create new exception classes."""
    return type(name, (base,), {
        '__init__': lambda self, message: super(base, self).__init__(message)
    })


BitStringError = create_exception('BitStringError')
HexArgError = create_exception('HexArgError')
ContextError = create_exception('ContextError')

AlgorithmError = create_exception('AlgorithmError')
UnsupportedAlgorithmError = create_exception('UnsupportedAlgorithmError', AlgorithmError)

BearerConfigError = create_exception('BearerConfigError')

LinkError = create_exception('LinkError')
CountExhaustedError = create_exception('CountExhaustedError', LinkError)
MacMismatchError = create_exception('MacMismatchError', LinkError)
ReplayDetectedError = create_exception('ReplayDetectedError', LinkError)
MalformedPduError = create_exception('MalformedPduError', LinkError)
BearerMismatchError = create_exception('BearerMismatchError', LinkError)
DirectionMismatchError = create_exception('DirectionMismatchError', LinkError)

ScenarioError = create_exception('ScenarioError')
ScenarioParseError = create_exception('ScenarioParseError', ScenarioError)

SelftestFailure = create_exception('SelftestFailure')
