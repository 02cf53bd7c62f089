"""Statement and program inversion.

Inverting a sequence reverses it; the result is re-right-associated so the
parser invariant (Seq is a right comb) holds for inverted code too.
"""

from __future__ import annotations

from .syntax import (
    ArrayAssign,
    Call,
    If,
    Loop,
    ModOp,
    Program,
    ScalarAssign,
    Seq,
    Skip,
    Start,
    Statement,
    Stop,
    Uncall,
    inverse_name,
    seq_items,
    seq_of,
)

_OP_INVERSE = {ModOp.PLUS: ModOp.MINUS, ModOp.MINUS: ModOp.PLUS, ModOp.XOR: ModOp.XOR}


def invert_op(op: ModOp) -> ModOp:
    return _OP_INVERSE[op]


def invert_stmt(s: Statement) -> Statement:
    if isinstance(s, ScalarAssign):
        return ScalarAssign(span=s.span, name=s.name, op=invert_op(s.op), expr=s.expr)
    if isinstance(s, ArrayAssign):
        return ArrayAssign(
            span=s.span, name=s.name, index=s.index, op=invert_op(s.op), expr=s.expr
        )
    if isinstance(s, If):
        return If(
            span=s.span,
            test=s.assertion,
            then=invert_stmt(s.then),
            orelse=invert_stmt(s.orelse),
            assertion=s.test,
        )
    if isinstance(s, Loop):
        return Loop(
            span=s.span,
            assertion=s.test,
            do=invert_stmt(s.do),
            loop=invert_stmt(s.loop),
            test=s.assertion,
        )
    if isinstance(s, Call):
        return Uncall(span=s.span, name=s.name)
    if isinstance(s, Uncall):
        return Call(span=s.span, name=s.name)
    if isinstance(s, Skip):
        return Skip(span=s.span)
    if isinstance(s, Start):
        return Stop(span=s.span)
    if isinstance(s, Stop):
        return Start(span=s.span)
    if isinstance(s, Seq):
        return seq_of([invert_stmt(item) for item in reversed(seq_items(s))])
    raise TypeError(s)


def invert_program(p: Program) -> Program:
    """Add an inverse procedure id⁻¹ for every declared procedure.

    A procedure whose inverse is already declared is skipped, which makes the
    transformation a fixpoint after one application: inverting twice yields
    (id⁻¹)⁻¹ = id with the original body, not a duplicate declaration.
    """
    declared = set(p.proc_names())
    extra = tuple(
        (inverse_name(name), invert_stmt(body))
        for name, body in p.procedures
        if inverse_name(name) not in declared
    )
    return Program(main=p.main, procedures=p.procedures + extra)
