"""Python bindings for the weakarr array solver."""

from ._weakarr import (
    CapError,
    Error,
    ParseError,
    UnsupportedError,
    family,
    generate,
    oracle_check,
    run,
    solve,
)

__all__ = [
    "CapError",
    "Error",
    "ParseError",
    "UnsupportedError",
    "family",
    "generate",
    "oracle_check",
    "run",
    "solve",
]
