"""Python bindings for the GCSA index."""

from ._gcsa import (
    FormatError,
    GcsaError,
    Index,
    InputError,
    InternalError,
    reverse_complement,
    simulate,
)

__all__ = [
    "FormatError",
    "GcsaError",
    "Index",
    "InputError",
    "InternalError",
    "reverse_complement",
    "simulate",
]
