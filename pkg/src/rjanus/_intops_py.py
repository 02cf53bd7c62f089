"""Pure-Python 32-bit integer kernel.

All arithmetic wraps modulo 2**32 into signed two's-complement range; this is
what makes `x += e; x -= e` an exact identity at the boundary values, which
reversibility depends on.  Division truncates toward zero and the remainder
takes the sign of the dividend (so `a == (a / b) * b + a % b`).
"""

from __future__ import annotations

from .errors import DivisionByZero

_MASK = 0xFFFFFFFF
_SIGN = 0x80000000

BACKEND = "python"


def wrap32(v: int) -> int:
    v &= _MASK
    return v - 0x100000000 if v & _SIGN else v


def _div(a: int, b: int, op: str) -> int:
    if b == 0:
        raise DivisionByZero(op)
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q


def _rem(a: int, b: int) -> int:
    return wrap32(a - _div(a, b, "%") * b)


def apply_binop(op: str, a: int, b: int) -> int:
    if op == "+":
        return wrap32(a + b)
    if op == "-":
        return wrap32(a - b)
    if op == "*":
        return wrap32(a * b)
    if op == "/":
        return wrap32(_div(a, b, "/"))
    if op == "%":
        return _rem(a, b)
    if op == "^":
        return wrap32(a ^ b)
    if op == "&":
        return wrap32(a & b)
    if op == "|":
        return wrap32(a | b)
    if op == "&&":
        return 1 if (a != 0 and b != 0) else 0
    if op == "||":
        return 1 if (a != 0 or b != 0) else 0
    if op == "<":
        return 1 if a < b else 0
    if op == ">":
        return 1 if a > b else 0
    if op == "<=":
        return 1 if a <= b else 0
    if op == ">=":
        return 1 if a >= b else 0
    if op == "=":
        return 1 if a == b else 0
    if op == "!=":
        return 1 if a != b else 0
    raise ValueError(f"unknown operator {op!r}")


def apply_modop(op: str, a: int, b: int) -> int:
    """Apply one of the three invertible update operators (+, -, ^)."""
    if op == "+":
        return wrap32(a + b)
    if op == "-":
        return wrap32(a - b)
    if op == "^":
        return wrap32(a ^ b)
    raise ValueError(f"not an update operator: {op!r}")
