from .hexarg import HexArg, format_bits, parse_bits, parse_number

__all__ = [
    'HexArg',
    'parse_bits',
    'format_bits',
    'parse_number',
]
