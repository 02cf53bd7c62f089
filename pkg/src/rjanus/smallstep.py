"""Stack-based small-step engine.

Configurations are ⟨store, control statement, frame stack⟩.  The stack holds
seq/if_true/if_false/loop1/loop2 frames; the engine is forward-only and acts
as the mid-level oracle between the big-step and reversible engines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bigstep import DEFAULT_FUEL, ProcEnv
from .errors import AssertionViolation, StuckConfiguration, Timeout
from .store import Store, eval_expr
from .intops import apply_modop, is_true
from .syntax import (
    ArrayAssign,
    Call,
    Expression,
    If,
    Loop,
    Program,
    ScalarAssign,
    Seq,
    Skip,
    Start,
    Statement,
    Stop,
    Uncall,
)


@dataclass(frozen=True)
class SeqFrame:
    rest: Statement


@dataclass(frozen=True)
class IfTrueFrame:
    assertion: Expression


@dataclass(frozen=True)
class IfFalseFrame:
    assertion: Expression


@dataclass(frozen=True)
class Loop1Frame:
    stmt: Loop


@dataclass(frozen=True)
class Loop2Frame:
    stmt: Loop


@dataclass(frozen=True)
class SmallConfig:
    store: Store
    control: Statement
    stack: tuple = ()

    def is_terminal(self) -> bool:
        return isinstance(self.control, Skip) and not self.stack


def initial_config(s: Statement, store: Store = None) -> SmallConfig:
    return SmallConfig(store=store if store is not None else Store(), control=s)


def step(c: SmallConfig, env: ProcEnv):
    """One transition; returns (successor, rule name)."""
    s, store, stack = c.control, c.store, c.stack

    if isinstance(s, ScalarAssign):
        v = eval_expr(store, s.expr)
        store = store.update(s.name, apply_modop(s.op.value, store.get(s.name), v))
        return SmallConfig(store, Skip(), stack), "AssVarS"
    if isinstance(s, ArrayAssign):
        key = (s.name, eval_expr(store, s.index))
        v = eval_expr(store, s.expr)
        store = store.update(key, apply_modop(s.op.value, store.get(key), v))
        return SmallConfig(store, Skip(), stack), "AssArrS"
    if isinstance(s, Call):
        return SmallConfig(store, env.body(s.name), stack), "CallS"
    if isinstance(s, Uncall):
        return SmallConfig(store, env.inverse_body(s.name), stack), "UnCallS"
    if isinstance(s, Seq):
        return SmallConfig(store, s.first, (SeqFrame(s.rest),) + stack), "Seq1"
    if isinstance(s, If):
        if is_true(eval_expr(store, s.test)):
            return SmallConfig(store, s.then, (IfTrueFrame(s.assertion),) + stack), "IfTrue1"
        return SmallConfig(store, s.orelse, (IfFalseFrame(s.assertion),) + stack), "IfFalse1"
    if isinstance(s, Loop):
        if not is_true(eval_expr(store, s.assertion)):
            raise AssertionViolation(s.span, expected=True, actual=False)
        return SmallConfig(store, s.do, (Loop1Frame(s),) + stack), "LoopMainS"
    if isinstance(s, (Start, Stop)):
        # Markers behave like skip; they only matter to the reversible engine.
        return SmallConfig(store, Skip(), stack), "SkipS"

    if not isinstance(s, Skip):
        raise TypeError(s)
    if not stack:
        raise StuckConfiguration("terminal configuration cannot step")
    top, rest = stack[0], stack[1:]
    if isinstance(top, SeqFrame):
        return SmallConfig(store, top.rest, rest), "Seq2"
    if isinstance(top, (IfTrueFrame, IfFalseFrame)):
        expected = isinstance(top, IfTrueFrame)
        actual = is_true(eval_expr(store, top.assertion))
        if actual != expected:
            raise AssertionViolation(top.assertion.span, expected=expected, actual=actual)
        rule = "IfTrue2" if expected else "IfFalse2"
        return SmallConfig(store, Skip(), rest), rule
    if isinstance(top, Loop1Frame):
        loop = top.stmt
        if is_true(eval_expr(store, loop.test)):
            return SmallConfig(store, Skip(), rest), "LoopBaseS"
        return SmallConfig(store, loop.loop, (Loop2Frame(loop),) + rest), "Loop1"
    if isinstance(top, Loop2Frame):
        loop = top.stmt
        if is_true(eval_expr(store, loop.assertion)):
            raise AssertionViolation(loop.assertion.span, expected=False, actual=True)
        return SmallConfig(store, loop.do, (Loop1Frame(loop),) + rest), "Loop2"
    raise StuckConfiguration(f"no rule for frame {top!r}")


def run(store: Store, s: Statement, env: ProcEnv, fuel: int = DEFAULT_FUEL):
    """Iterate `step` to the terminal configuration.

    Returns (final store, list of applied rule names).
    """
    c = initial_config(s, store)
    trace = []
    while not c.is_terminal():
        if len(trace) >= fuel:
            raise Timeout(fuel)
        c, rule = step(c, env)
        trace.append(rule)
    return c.store, trace


def run_program(p: Program, store: Store = None, fuel: int = DEFAULT_FUEL):
    return run(store if store is not None else Store(), p.main, ProcEnv.of_program(p), fuel)
