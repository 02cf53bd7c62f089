# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled 32-bit integer kernel (same contract as _intops_py).

All arithmetic wraps modulo 2**32 into signed two's-complement range;
division truncates toward zero and the remainder takes the sign of the
dividend.  `cdivision=True` gives exactly those semantics for C `/` and `%`.
"""

from .errors import DivisionByZero

BACKEND = "cython"

cdef long long _MASK = 0xFFFFFFFF
cdef long long _SIGN = 0x80000000


cdef inline long long _wrap(long long v):
    v &= _MASK
    if v & _SIGN:
        v -= 0x100000000
    return v


def wrap32(v):
    return _wrap(v)


def apply_binop(str op, long long a, long long b):
    if op == "+":
        return _wrap(a + b)
    if op == "-":
        return _wrap(a - b)
    if op == "*":
        return _wrap(a * b)
    if op == "/":
        if b == 0:
            raise DivisionByZero("/")
        return _wrap(a / b)
    if op == "%":
        if b == 0:
            raise DivisionByZero("%")
        return _wrap(a % b)
    if op == "^":
        return _wrap(a ^ b)
    if op == "&":
        return _wrap(a & b)
    if op == "|":
        return _wrap(a | b)
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


def apply_modop(str op, long long a, long long b):
    if op == "+":
        return _wrap(a + b)
    if op == "-":
        return _wrap(a - b)
    if op == "^":
        return _wrap(a ^ b)
    raise ValueError(f"not an update operator: {op!r}")
