"""Program-counter semantics: forward (⇀) and backward (↽) step relations.

A configuration is ⟨store, prev, next, stack⟩ where prev is the label of the
last executed block and next the label of the block to execute.  Forward
rules dispatch on block(next); backward rules dispatch on block(prev),
traverse the CFG against the edges, and undo assignment effects with the
inverse operator.  Every forward step from a reachable configuration is
undone exactly by one backward step and vice versa (the loop lemma), which
the debugger relies on: backward execution is computed, never replayed from
history.

Loop frames store node identities of the loop bodies rather than copies;
only entry/exit lookups are ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cfg import MAIN_UNIT, LabeledProgram
from .errors import (
    AssertionViolation,
    StuckConfiguration,
    Timeout,
    UndefinedProcedure,
)
from .store import Store, eval_expr
from .intops import apply_modop, invert_modop, is_true
from .syntax import (
    ArrayAssign,
    Call,
    If,
    Loop,
    ScalarAssign,
    Skip,
    Start,
    Stop,
    Uncall,
    inverse_name,
)


# --- frames and configurations -------------------------------------------


@dataclass(frozen=True)
class CallFrame:
    label: int  # label of the call site


@dataclass(frozen=True)
class UncallFrame:
    label: int


@dataclass(frozen=True)
class IfTrueFrame:
    l1: int
    l2: int


@dataclass(frozen=True)
class IfFalseFrame:
    l1: int
    l2: int


@dataclass(frozen=True)
class Loop1Frame:
    l1: int
    do_id: int  # node id of s1
    l2: int
    loop_id: int  # node id of s2


@dataclass(frozen=True)
class Loop2Frame:
    l1: int
    do_id: int
    l2: int
    loop_id: int


@dataclass(frozen=True)
class RevConfig:
    store: Store
    prev: int
    next: int
    stack: tuple = ()


def frame_to_json(f) -> dict:
    if isinstance(f, CallFrame):
        return {"kind": "call", "label": f.label}
    if isinstance(f, UncallFrame):
        return {"kind": "uncall", "label": f.label}
    if isinstance(f, IfTrueFrame):
        return {"kind": "if_true", "l1": f.l1, "l2": f.l2}
    if isinstance(f, IfFalseFrame):
        return {"kind": "if_false", "l1": f.l1, "l2": f.l2}
    if isinstance(f, Loop1Frame):
        return {"kind": "loop1", "l1": f.l1, "l2": f.l2}
    if isinstance(f, Loop2Frame):
        return {"kind": "loop2", "l1": f.l1, "l2": f.l2}
    raise TypeError(f)


def frame_from_json(lp: LabeledProgram, data: dict):
    kind = data["kind"]
    if kind == "call":
        return CallFrame(data["label"])
    if kind == "uncall":
        return UncallFrame(data["label"])
    if kind == "if_true":
        return IfTrueFrame(data["l1"], data["l2"])
    if kind == "if_false":
        return IfFalseFrame(data["l1"], data["l2"])
    if kind in ("loop1", "loop2"):
        loop, _ = lp.ctx(data["l1"])
        cls = Loop1Frame if kind == "loop1" else Loop2Frame
        return cls(data["l1"], loop.do.node_id, data["l2"], loop.loop.node_id)
    raise ValueError(f"unknown frame kind {kind!r}")


def config_to_json(c: RevConfig) -> dict:
    return {
        "prev": c.prev,
        "next": c.next,
        "stack": [frame_to_json(f) for f in c.stack],
        "store": c.store.to_json(),
    }


def config_from_json(lp: LabeledProgram, data: dict) -> RevConfig:
    return RevConfig(
        store=Store.from_json(data["store"]),
        prev=data["prev"],
        next=data["next"],
        stack=tuple(frame_from_json(lp, f) for f in data["stack"]),
    )


# --- boundary predicates -------------------------------------------------


def initial(lp: LabeledProgram) -> RevConfig:
    start = lp.unit_entry(MAIN_UNIT)
    return RevConfig(store=Store(), prev=start, next=_only_succ(lp, start), stack=())


def is_terminal(lp: LabeledProgram, c: RevConfig) -> bool:
    return (
        not c.stack
        and isinstance(lp.block(c.next).stmt, Stop)
        and lp.unit_of[c.next] == MAIN_UNIT
    )


def is_initial(lp: LabeledProgram, c: RevConfig) -> bool:
    return (
        not c.stack
        and isinstance(lp.block(c.prev).stmt, Start)
        and lp.unit_of[c.prev] == MAIN_UNIT
    )


def _only_succ(lp: LabeledProgram, label: int) -> int:
    succ = lp.successors(label)
    if len(succ) != 1:
        raise StuckConfiguration(f"label {label} has {len(succ)} successors, expected 1")
    return succ[0]


def _only_pred(lp: LabeledProgram, label: int) -> int:
    pred = lp.predecessors(label)
    if len(pred) != 1:
        raise StuckConfiguration(f"label {label} has {len(pred)} predecessors, expected 1")
    return pred[0]


def _loop_frame(lp: LabeledProgram, cls, loop: Loop):
    l1, l2 = lp.cond_labels(loop)
    return cls(l1, loop.do.node_id, l2, loop.loop.node_id)


# --- forward -------------------------------------------------------------


def step_forward(lp: LabeledProgram, c: RevConfig):
    """Apply the unique forward rule; returns (successor, rule name)."""
    b = lp.block(c.next)
    store, stack = c.store, c.stack

    if b.kind == "stmt":
        s = b.stmt
        if isinstance(s, ScalarAssign):
            v = eval_expr(store, s.expr)
            store = store.update(s.name, apply_modop(s.op.value, store.get(s.name), v))
            return RevConfig(store, c.next, _only_succ(lp, c.next), stack), "AssVar"
        if isinstance(s, ArrayAssign):
            key = (s.name, eval_expr(store, s.index))
            v = eval_expr(store, s.expr)
            store = store.update(key, apply_modop(s.op.value, store.get(key), v))
            return RevConfig(store, c.next, _only_succ(lp, c.next), stack), "AssArr"
        if isinstance(s, Skip):
            return RevConfig(store, c.next, _only_succ(lp, c.next), stack), "Skip"
        if isinstance(s, Call):
            entry = _unit_entry(lp, s.name)
            frame = CallFrame(c.next)
            return RevConfig(store, entry, _only_succ(lp, entry), (frame,) + stack), "Call"
        if isinstance(s, Uncall):
            entry = _unit_entry(lp, inverse_name(s.name))
            frame = UncallFrame(c.next)
            return RevConfig(store, entry, _only_succ(lp, entry), (frame,) + stack), "UnCall"
        if isinstance(s, Stop):
            if not stack:
                raise StuckConfiguration("forward step at terminal configuration")
            top, rest = stack[0], stack[1:]
            if isinstance(top, CallFrame):
                return RevConfig(store, top.label, _only_succ(lp, top.label), rest), "Return1"
            if isinstance(top, UncallFrame):
                return RevConfig(store, top.label, _only_succ(lp, top.label), rest), "Return2"
            raise StuckConfiguration(f"stop with frame {top!r} on top")
        raise StuckConfiguration(f"no forward rule for block {c.next} ({b.text()})")

    # Condition labels.
    node, pos = b.stmt, b.pos
    l1, l2 = lp.cond_labels(node)
    v = is_true(eval_expr(store, b.expr))

    if isinstance(node, If):
        if pos == "l1":
            if v:
                frame, target, rule = IfTrueFrame(l1, l2), node.then, "IfTrue1"
            else:
                frame, target, rule = IfFalseFrame(l1, l2), node.orelse, "IfFalse1"
            return RevConfig(store, l1, lp.entry(target), (frame,) + stack), rule
        top = stack[0] if stack else None
        if isinstance(top, IfTrueFrame) and top == IfTrueFrame(l1, l2):
            if not v:
                raise AssertionViolation(l2, expected=True, actual=False, direction="fwd")
            return RevConfig(store, l2, _only_succ(lp, l2), stack[1:]), "IfTrue2"
        if isinstance(top, IfFalseFrame) and top == IfFalseFrame(l1, l2):
            if v:
                raise AssertionViolation(l2, expected=False, actual=True, direction="fwd")
            return RevConfig(store, l2, _only_succ(lp, l2), stack[1:]), "IfFalse2"
        raise StuckConfiguration(f"assertion {l2} without matching frame")

    # Loop node.
    top = stack[0] if stack else None
    if pos == "l1":
        if isinstance(top, Loop2Frame) and (top.l1, top.l2) == (l1, l2):
            if v:
                raise AssertionViolation(l1, expected=False, actual=True, direction="fwd")
            frame = Loop1Frame(top.l1, top.do_id, top.l2, top.loop_id)
            return RevConfig(store, l1, lp.entry(node.do), (frame,) + stack[1:]), "Loop2"
        if not v:
            raise AssertionViolation(l1, expected=True, actual=False, direction="fwd")
        frame = _loop_frame(lp, Loop1Frame, node)
        return RevConfig(store, l1, lp.entry(node.do), (frame,) + stack), "LoopMain"
    # pos == "l2": the until test; requires the matching loop1 frame.
    if not (isinstance(top, Loop1Frame) and (top.l1, top.l2) == (l1, l2)):
        raise StuckConfiguration(f"loop test {l2} without matching loop1 frame")
    if v:
        # Leave the loop: take the successor that does not re-enter s2.
        out = [t for t in lp.successors(l2) if t != lp.entry(node.loop)]
        if len(out) != 1:
            raise StuckConfiguration(f"loop test {l2} has no unique exit edge")
        return RevConfig(store, l2, out[0], stack[1:]), "LoopBase"
    frame = Loop2Frame(top.l1, top.do_id, top.l2, top.loop_id)
    return RevConfig(store, l2, lp.entry(node.loop), (frame,) + stack[1:]), "Loop1"


def _unit_entry(lp: LabeledProgram, name: str) -> int:
    if name not in lp.units:
        raise UndefinedProcedure(name)
    return lp.unit_entry(name)


# --- backward ------------------------------------------------------------


def step_backward(lp: LabeledProgram, c: RevConfig):
    """Apply the unique backward rule; returns (predecessor, rule name)."""
    b = lp.block(c.prev)
    store, stack = c.store, c.stack

    if b.kind == "stmt":
        s = b.stmt
        if isinstance(s, ScalarAssign):
            v = eval_expr(store, s.expr)
            store = store.update(
                s.name, apply_modop(invert_modop(s.op.value), store.get(s.name), v)
            )
            return RevConfig(store, _only_pred(lp, c.prev), c.prev, stack), "AssVar"
        if isinstance(s, ArrayAssign):
            key = (s.name, eval_expr(store, s.index))
            v = eval_expr(store, s.expr)
            store = store.update(
                key, apply_modop(invert_modop(s.op.value), store.get(key), v)
            )
            return RevConfig(store, _only_pred(lp, c.prev), c.prev, stack), "AssArr"
        if isinstance(s, Skip):
            return RevConfig(store, _only_pred(lp, c.prev), c.prev, stack), "Skip"
        if isinstance(s, Start):
            if not stack:
                raise StuckConfiguration("backward step at initial configuration")
            top, rest = stack[0], stack[1:]
            if isinstance(top, CallFrame):
                return RevConfig(store, _only_pred(lp, top.label), top.label, rest), "Call"
            if isinstance(top, UncallFrame):
                return RevConfig(store, _only_pred(lp, top.label), top.label, rest), "UnCall"
            raise StuckConfiguration(f"start with frame {top!r} on top")
        if isinstance(s, Call):
            exit_l = _unit_exit(lp, s.name)
            frame = CallFrame(c.prev)
            return RevConfig(store, _only_pred(lp, exit_l), exit_l, (frame,) + stack), "Return1"
        if isinstance(s, Uncall):
            exit_l = _unit_exit(lp, inverse_name(s.name))
            frame = UncallFrame(c.prev)
            return RevConfig(store, _only_pred(lp, exit_l), exit_l, (frame,) + stack), "Return2"
        raise StuckConfiguration(f"no backward rule for block {c.prev} ({b.text()})")

    node, pos = b.stmt, b.pos
    l1, l2 = lp.cond_labels(node)
    v = is_true(eval_expr(store, b.expr))

    if isinstance(node, If):
        if pos == "l1":
            top = stack[0] if stack else None
            if isinstance(top, IfTrueFrame) and top == IfTrueFrame(l1, l2):
                if not v:
                    raise AssertionViolation(l1, expected=True, actual=False, direction="bwd")
                return RevConfig(store, _only_pred(lp, l1), l1, stack[1:]), "IfTrue1"
            if isinstance(top, IfFalseFrame) and top == IfFalseFrame(l1, l2):
                if v:
                    raise AssertionViolation(l1, expected=False, actual=True, direction="bwd")
                return RevConfig(store, _only_pred(lp, l1), l1, stack[1:]), "IfFalse1"
            raise StuckConfiguration(f"if test {l1} without matching frame")
        if v:
            frame = IfTrueFrame(l1, l2)
            return RevConfig(store, lp.exit(node.then), l2, (frame,) + stack), "IfTrue2"
        frame = IfFalseFrame(l1, l2)
        return RevConfig(store, lp.exit(node.orelse), l2, (frame,) + stack), "IfFalse2"

    # Loop node.
    top = stack[0] if stack else None
    if pos == "l1":
        if not (isinstance(top, Loop1Frame) and (top.l1, top.l2) == (l1, l2)):
            raise StuckConfiguration(f"loop assertion {l1} without matching loop1 frame")
        if v:
            # Leave the loop backward: take the inverse edge that does not
            # re-enter an iteration of s2.
            back = [t for t in lp.predecessors(l1) if t != lp.exit(node.loop)]
            if len(back) != 1:
                raise StuckConfiguration(f"loop assertion {l1} has no unique entry edge")
            return RevConfig(store, back[0], l1, stack[1:]), "LoopMain"
        frame = Loop2Frame(top.l1, top.do_id, top.l2, top.loop_id)
        return RevConfig(store, lp.exit(node.loop), l1, (frame,) + stack[1:]), "Loop2"
    # pos == "l2": the until test.
    if isinstance(top, Loop2Frame) and (top.l1, top.l2) == (l1, l2):
        if v:
            raise AssertionViolation(l2, expected=False, actual=True, direction="bwd")
        frame = Loop1Frame(top.l1, top.do_id, top.l2, top.loop_id)
        return RevConfig(store, lp.exit(node.do), l2, (frame,) + stack[1:]), "Loop1"
    if not v:
        raise AssertionViolation(l2, expected=True, actual=False, direction="bwd")
    frame = _loop_frame(lp, Loop1Frame, node)
    return RevConfig(store, lp.exit(node.do), l2, (frame,) + stack), "LoopBase"


def _unit_exit(lp: LabeledProgram, name: str) -> int:
    if name not in lp.units:
        raise UndefinedProcedure(name)
    return lp.unit_exit(name)


# --- driver --------------------------------------------------------------

DEFAULT_FUEL = 10_000_000


def run_forward(lp: LabeledProgram, c: RevConfig = None, fuel: int = DEFAULT_FUEL):
    """Iterate ⇀ to the terminal configuration; returns (config, trace).

    The trace is a list of (rule name, configuration-after) pairs.
    """
    if c is None:
        c = initial(lp)
    trace = []
    while not is_terminal(lp, c):
        if len(trace) >= fuel:
            raise Timeout(fuel)
        c, rule = step_forward(lp, c)
        trace.append((rule, c))
    return c, trace


def run_backward(lp: LabeledProgram, c: RevConfig, fuel: int = DEFAULT_FUEL):
    """Iterate ↽ to the initial configuration; returns (config, trace)."""
    trace = []
    while not is_initial(lp, c):
        if len(trace) >= fuel:
            raise Timeout(fuel)
        c, rule = step_backward(lp, c)
        trace.append((rule, c))
    return c, trace
