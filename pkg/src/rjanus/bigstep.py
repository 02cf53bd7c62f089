"""Reference big-step evaluator: ⟨σ, s⟩ ⇓ σ′.

The loop-internal judgement ⟨σ, (e1,s1,e2,s2)⟩ ⇓ σ′ is the `_loop_tail`
recursion below.  A fuel budget (counted in rule applications) turns
divergent loops into a Timeout error.
"""

from __future__ import annotations

from .errors import AssertionViolation, Timeout, UndefinedProcedure
from .inverter import invert_stmt
from .store import Store, eval_expr
from .intops import apply_modop, is_true
from .syntax import (
    ArrayAssign,
    Call,
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

DEFAULT_FUEL = 10_000_000


class ProcEnv:
    """Γ: procedure name → body, with inverse bodies cached on demand."""

    def __init__(self, procedures=()):
        self.bodies = dict(procedures)
        self._inverses = {}

    @classmethod
    def of_program(cls, p: Program) -> "ProcEnv":
        return cls(p.procedures)

    def body(self, name: str) -> Statement:
        try:
            return self.bodies[name]
        except KeyError:
            raise UndefinedProcedure(name) from None

    def inverse_body(self, name: str) -> Statement:
        if name not in self._inverses:
            self._inverses[name] = invert_stmt(self.body(name))
        return self._inverses[name]


class _Fuel:
    __slots__ = ("left", "budget")

    def __init__(self, budget):
        self.left = budget
        self.budget = budget

    def burn(self):
        if self.left <= 0:
            raise Timeout(self.budget)
        self.left -= 1


def exec_stmt(store: Store, s: Statement, env: ProcEnv, fuel: int = DEFAULT_FUEL) -> Store:
    return _exec(store, s, env, _Fuel(fuel))


def exec_program(p: Program, store: Store = None, fuel: int = DEFAULT_FUEL) -> Store:
    return exec_stmt(store if store is not None else Store(), p.main, ProcEnv.of_program(p), fuel)


def _exec(store, s, env, fuel) -> Store:
    fuel.burn()
    if isinstance(s, (Skip, Start, Stop)):
        return store
    if isinstance(s, ScalarAssign):
        v = eval_expr(store, s.expr)
        return store.update(s.name, apply_modop(s.op.value, store.get(s.name), v))
    if isinstance(s, ArrayAssign):
        key = (s.name, eval_expr(store, s.index))
        v = eval_expr(store, s.expr)
        return store.update(key, apply_modop(s.op.value, store.get(key), v))
    if isinstance(s, Seq):
        return _exec(_exec(store, s.first, env, fuel), s.rest, env, fuel)
    if isinstance(s, Call):
        return _exec(store, env.body(s.name), env, fuel)
    if isinstance(s, Uncall):
        return _exec(store, env.inverse_body(s.name), env, fuel)
    if isinstance(s, If):
        taken = is_true(eval_expr(store, s.test))
        out = _exec(store, s.then if taken else s.orelse, env, fuel)
        after = is_true(eval_expr(out, s.assertion))
        if after != taken:
            raise AssertionViolation(s.span, expected=taken, actual=after)
        return out
    if isinstance(s, Loop):
        if not is_true(eval_expr(store, s.assertion)):
            raise AssertionViolation(s.span, expected=True, actual=False)
        out = _exec(store, s.do, env, fuel)
        return _loop_tail(out, s, env, fuel)
    raise TypeError(s)


def _loop_tail(store, s: Loop, env, fuel) -> Store:
    # ⟨σ, (e1,s1,e2,s2)⟩ ⇓ σ′: s1 has just finished, decide on e2.
    while True:
        fuel.burn()
        if is_true(eval_expr(store, s.test)):
            return store
        store = _exec(store, s.loop, env, fuel)
        if is_true(eval_expr(store, s.assertion)):
            raise AssertionViolation(s.span, expected=False, actual=True)
        store = _exec(store, s.do, env, fuel)
