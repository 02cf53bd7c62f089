"""Static checks: the reversibility restriction and call-target resolution.

An assignment `x ⊕= e` is only invertible when `x` does not occur in `e`
(for arrays, the base name must not occur in the index or the right-hand
side).  Violations and calls to undeclared procedures are reported as
diagnostics; anything else is left to runtime.
"""

from __future__ import annotations

from .syntax import (
    ArrayAssign,
    Binop,
    Call,
    Const,
    Expression,
    If,
    Index,
    Loop,
    Program,
    ScalarAssign,
    Seq,
    Diagnostic,
    Statement,
    Uncall,
)


def expr_names(e: Expression, out=None) -> set:
    """All variable base names occurring in e (scalars and array bases)."""
    if out is None:
        out = set()
    if isinstance(e, (Const, type(None))):
        return out
    if isinstance(e, Index):
        out.add(e.name)
        expr_names(e.index, out)
        return out
    if isinstance(e, Binop):
        expr_names(e.left, out)
        expr_names(e.right, out)
        return out
    out.add(e.name)  # Var
    return out


def check_reversibility(p: Program) -> list:
    """Return a (possibly empty) list of error diagnostics."""
    declared = set(p.proc_names())
    diags = []

    def walk(s: Statement):
        if isinstance(s, ScalarAssign):
            if s.name in expr_names(s.expr):
                diags.append(Diagnostic(
                    "error",
                    f"'{s.name}' occurs on both sides of a reversible assignment",
                    s.span,
                ))
        elif isinstance(s, ArrayAssign):
            if s.name in expr_names(s.index) | expr_names(s.expr):
                diags.append(Diagnostic(
                    "error",
                    f"array '{s.name}' occurs on both sides of a reversible assignment",
                    s.span,
                ))
        elif isinstance(s, (Call, Uncall)):
            if s.name not in declared:
                kind = "call" if isinstance(s, Call) else "uncall"
                diags.append(Diagnostic(
                    "error", f"{kind} of undeclared procedure '{s.name}'", s.span
                ))
        elif isinstance(s, Seq):
            walk(s.first)
            walk(s.rest)
        elif isinstance(s, If):
            walk(s.then)
            walk(s.orelse)
        elif isinstance(s, Loop):
            walk(s.do)
            walk(s.loop)

    walk(p.main)
    for _, body in p.procedures:
        walk(body)
    return diags
