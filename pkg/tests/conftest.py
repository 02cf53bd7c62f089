"""Shared fixtures and random-program generators.

`gen_program` builds assertion-correct programs: every loop uses a fresh
read-only counter (`from k = 0 ... k += 1 ... until k = N`) and every
conditional asserts the same expression it tests, with the tested variables
never assigned inside the branches.  Such programs run to completion on all
three engines, which is what the differential and round-trip suites need.

`gen_stmt_syntax` builds arbitrary well-formed ASTs with no semantic
guarantees, for the purely syntactic properties (inverter involution,
flow-reversal lemma).
"""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from rjanus.syntax import (
    ArrayAssign,
    Binop,
    Call,
    Const,
    If,
    Loop,
    ModOp,
    Program,
    ScalarAssign,
    Skip,
    Uncall,
    Var,
    seq_items,
    seq_of,
)


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance pass/fail lines after capture has ended."""
    try:
        from test_acceptance import RESULT_LINES
    except ImportError:
        return
    if RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in RESULT_LINES:
            terminalreporter.write_line(line)


def rseq(stmts):
    """Right-comb sequence with nested Seq nodes flattened (parser shape)."""
    return seq_of([item for s in stmts for item in seq_items(s)])

CORPUS_DIR = Path(__file__).parent / "corpus"


def corpus_paths():
    return sorted(CORPUS_DIR.glob("*.ja"))


def corpus_sources():
    return [(p.name, p.read_text()) for p in corpus_paths()]


@pytest.fixture
def sum3_source():
    return (CORPUS_DIR / "sum3.ja").read_text()


# --- assertion-correct program generator ---------------------------------

_VARS = ["v0", "v1", "v2", "v3", "v4"]
_ARRAYS = ["g0", "g1"]
_MODOPS = [ModOp.PLUS, ModOp.MINUS, ModOp.XOR]
_ARITH = ["+", "-", "*", "^", "&", "|"]
_CMP = ["<", ">", "<=", ">=", "=", "!="]


class _Gen:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.counters = 0

    def fresh_counter(self) -> str:
        self.counters += 1
        return f"k{self.counters}"

    def expr(self, names, depth=2):
        r = self.rng
        if depth <= 0 or r.random() < 0.35:
            if names and r.random() < 0.6:
                return Var(name=r.choice(names))
            return Const(value=r.randint(-8, 8))
        kind = r.random()
        if kind < 0.72:
            op = r.choice(_ARITH)
        elif kind < 0.9:
            op = r.choice(_CMP)
        else:
            # Division and remainder only by a nonzero constant.
            return Binop(
                op=r.choice(["/", "%"]),
                left=self.expr(names, depth - 1),
                right=Const(value=r.choice([1, 2, 3, 5, -2])),
            )
        return Binop(op=op, left=self.expr(names, depth - 1),
                     right=self.expr(names, depth - 1))

    def assignment(self, readable, frozen):
        r = self.rng
        if r.random() < 0.2:
            name = r.choice(_ARRAYS)
            others = [v for v in readable if v != name]
            return ArrayAssign(
                name=name,
                index=Binop(op="&", left=self.expr(others, 1), right=Const(value=7)),
                op=r.choice(_MODOPS),
                expr=self.expr(others, 2),
            )
        candidates = [v for v in _VARS if v not in frozen] or _VARS
        name = r.choice(candidates)
        others = [v for v in readable if v != name]
        return ScalarAssign(name=name, op=r.choice(_MODOPS),
                            expr=self.expr(others, 2))

    def stmt(self, readable, depth, procs, frozen, allow_calls=True):
        """`frozen` names are never assigned in the generated subtree."""
        r = self.rng
        roll = r.random()
        if depth <= 0 or roll < 0.45:
            return self.assignment(readable, frozen)
        if roll < 0.55:
            return Skip()
        if roll < 0.7:
            # Branches must not assign the variables the guard reads, so the
            # assertion (the same expression) keeps the branch's truth value.
            # Calls are also disallowed there: procedure bodies are generated
            # without knowledge of the frozen set.
            guard_vars = r.sample(readable, min(2, len(readable))) if readable else []
            guard = Binop(op=r.choice(_CMP), left=self.expr(guard_vars, 1),
                          right=self.expr(guard_vars, 1))
            inner = frozen | set(guard_vars)
            then = self.block(readable, depth - 1, procs, inner, allow_calls=False)
            orelse = self.block(readable, depth - 1, procs, inner, allow_calls=False)
            return If(test=guard, then=then, orelse=orelse, assertion=guard)
        if roll < 0.9 or not (procs and allow_calls):
            k = self.fresh_counter()
            n = r.randint(1, 3)
            body = self.block(readable + [k], depth - 1, procs, frozen, allow_calls)
            loop = Loop(
                assertion=Binop(op="=", left=Var(name=k), right=Const(value=0)),
                do=body,
                loop=ScalarAssign(name=k, op=ModOp.PLUS, expr=Const(value=1)),
                test=Binop(op="=", left=Var(name=k), right=Const(value=n)),
            )
            # Reset the counter so re-entering this code (second call, outer
            # loop iteration, uncall) still satisfies the entry assertion.
            reset = ScalarAssign(name=k, op=ModOp.MINUS, expr=Const(value=n))
            return rseq([loop, reset])
        name = r.choice(procs)
        cls = Call if r.random() < 0.7 else Uncall
        return cls(name=name)

    def block(self, readable, depth, procs, frozen=frozenset(), allow_calls=True):
        n = self.rng.randint(1, 3)
        return rseq([
            self.stmt(readable, depth, procs, frozen, allow_calls)
            for _ in range(n)
        ])


def gen_program(seed: int, depth: int = 3, n_procs: int = 2) -> Program:
    """An assertion-correct random program (terminates on all engines)."""
    rng = random.Random(seed)
    g = _Gen(rng)
    procs = []
    names = []
    for i in range(rng.randint(0, n_procs)):
        name = f"p{i}"
        # Procedures may call earlier procedures only: no recursion.
        procs.append((name, g.block(list(_VARS), depth - 1, list(names))))
        names.append(name)
    main = g.block(list(_VARS), depth, names)
    return Program(main=main, procedures=tuple(procs))


# --- unconstrained syntactic AST generator -------------------------------


def gen_stmt_syntax(seed: int, depth: int = 4):
    """An arbitrary well-formed statement; no semantic guarantees."""
    rng = random.Random(seed)

    def expr(depth):
        if depth <= 0 or rng.random() < 0.4:
            if rng.random() < 0.5:
                return Var(name=rng.choice(_VARS))
            return Const(value=rng.randint(-5, 5))
        return Binop(op=rng.choice(_ARITH + _CMP + ["/", "%", "&&", "||"]),
                     left=expr(depth - 1), right=expr(depth - 1))

    def stmt(depth):
        roll = rng.random()
        if depth <= 0 or roll < 0.3:
            if rng.random() < 0.3:
                return ArrayAssign(name=rng.choice(_ARRAYS), index=expr(1),
                                   op=rng.choice(_MODOPS), expr=expr(2))
            return ScalarAssign(name=rng.choice(_VARS),
                                op=rng.choice(_MODOPS), expr=expr(2))
        if roll < 0.4:
            return Skip()
        if roll < 0.5:
            return rng.choice([Call, Uncall])(name=rng.choice(["p0", "p1"]))
        if roll < 0.7:
            return If(test=expr(2), then=stmt(depth - 1),
                      orelse=stmt(depth - 1), assertion=expr(2))
        if roll < 0.85:
            return Loop(assertion=expr(2), do=stmt(depth - 1),
                        loop=stmt(depth - 1), test=expr(2))
        return rseq([stmt(depth - 1) for _ in range(rng.randint(2, 3))])

    return stmt(depth)
