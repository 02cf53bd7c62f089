"""32-bit operator kernel, with an optional compiled fast path.

The Cython extension `rjanus._intops_c` implements the same three functions
over C int32; it is selected at import when available.  Set RJANUS_PURE=1 to
force the pure-Python kernel (the benchmark uses this to compare both).
"""

from __future__ import annotations

import os

from .errors import DivisionByZero  # re-export for callers  # noqa: F401

if os.environ.get("RJANUS_PURE"):
    from ._intops_py import BACKEND, apply_binop, apply_modop, wrap32
else:
    try:
        from ._intops_c import BACKEND, apply_binop, apply_modop, wrap32
    except ImportError:
        from ._intops_py import BACKEND, apply_binop, apply_modop, wrap32

_INVERSE = {"+": "-", "-": "+", "^": "^"}


def invert_modop(op: str) -> str:
    return _INVERSE[op]


def is_true(v: int) -> bool:
    return v != 0


def is_false(v: int) -> bool:
    return v == 0


__all__ = [
    "BACKEND",
    "apply_binop",
    "apply_modop",
    "wrap32",
    "invert_modop",
    "is_true",
    "is_false",
    "DivisionByZero",
]
