"""Labeling and control-flow graphs.

`label_program` wraps every unit (main, each procedure, each generated
inverse procedure) in start/stop markers and assigns one label per
elementary block in depth-first pre-order: main first, then procedures in
declaration order, then inverse procedures.  For a conditional or loop the
order is l(test/assertion), branches/bodies, l(assertion/test), which
reproduces the Sum3 numbering 1..15.

Edges never cross unit boundaries; call/return flow is handled dynamically
by the reversible engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .inverter import invert_program
from .printer import render_expr, stmt_summary
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
    Span,
    Start,
    Statement,
    Stop,
    Uncall,
    seq_items,
    seq_of,
    surface_name,
)

MAIN_UNIT = "main"


@dataclass(frozen=True)
class Block:
    """What a label points at: an elementary statement or a condition."""

    label: int
    kind: str  # "stmt" | "cond"
    stmt: Statement  # the elementary stmt, or the enclosing If/Loop for conds
    expr: Expression = None  # the condition expression, for kind == "cond"
    pos: str = None  # "l1" | "l2" within the enclosing If/Loop

    def text(self) -> str:
        if self.kind == "cond":
            return render_expr(self.expr)
        return stmt_summary(self.stmt)

    def span(self) -> Span:
        if self.kind == "cond":
            return self.expr.span
        return self.stmt.span


@dataclass
class Unit:
    name: str
    body: Statement  # start ... stop, right-associated
    labels: tuple = ()  # labels in assignment order
    flow: frozenset = frozenset()

    @property
    def start_label(self) -> int:
        return self.labels[0]

    @property
    def stop_label(self) -> int:
        return self.labels[-1]


@dataclass
class LabeledProgram:
    program: Program  # includes generated inverse procedures (unwrapped)
    units: dict = field(default_factory=dict)  # name -> Unit, main first
    blocks: dict = field(default_factory=dict)  # label -> Block
    unit_of: dict = field(default_factory=dict)  # label -> unit name
    _stmt_label: dict = field(default_factory=dict)  # node_id -> label
    _cond_labels: dict = field(default_factory=dict)  # node_id -> (l1, l2)
    _nodes: dict = field(default_factory=dict)  # node_id -> Statement
    _succ: dict = field(default_factory=dict)
    _pred: dict = field(default_factory=dict)

    # -- label lookups --

    def block(self, label: int) -> Block:
        return self.blocks[label]

    def ctx(self, label: int):
        """(enclosing If/Loop, "l1" or "l2") for a condition label."""
        b = self.blocks[label]
        if b.kind != "cond":
            raise KeyError(f"label {label} is not a condition")
        return b.stmt, b.pos

    def cond_labels(self, s: Statement):
        return self._cond_labels[s.node_id]

    def node(self, node_id: int) -> Statement:
        return self._nodes[node_id]

    def entry(self, s: Statement) -> int:
        if isinstance(s, (If, Loop)):
            return self._cond_labels[s.node_id][0]
        if isinstance(s, Seq):
            return self.entry(s.first)
        return self._stmt_label[s.node_id]

    def exit(self, s: Statement) -> int:
        if isinstance(s, (If, Loop)):
            return self._cond_labels[s.node_id][1]
        if isinstance(s, Seq):
            return self.exit(s.rest)
        return self._stmt_label[s.node_id]

    def successors(self, label: int) -> tuple:
        return self._succ.get(label, ())

    def predecessors(self, label: int) -> tuple:
        return self._pred.get(label, ())

    def flow_of(self, unit: str) -> frozenset:
        return self.units[unit].flow

    def unit_entry(self, name: str) -> int:
        """entry(Γ(id)): the unit's start label."""
        return self.units[name].start_label

    def unit_exit(self, name: str) -> int:
        return self.units[name].stop_label

    # -- serialization --

    def to_json(self) -> dict:
        units = []
        for unit in self.units.values():
            units.append({
                "name": surface_name(unit.name),
                "edges": sorted([a, b] for a, b in unit.flow),
                "blocks": {str(l): self.blocks[l].text() for l in unit.labels},
            })
        return {"units": units}

    def to_dot(self) -> str:
        lines = []
        for unit in self.units.values():
            name = surface_name(unit.name).replace("⁻¹", "_inv")
            lines.append(f'digraph "{name}" {{')
            lines.append("  rankdir=LR;")
            for l in unit.labels:
                text = self.blocks[l].text().replace('"', '\\"')
                lines.append(f'  n{l} [label="{l}: {text}"];')
            for a, b in sorted(unit.flow):
                lines.append(f"  n{a} -> n{b};")
            lines.append("}")
        return "\n".join(lines) + "\n"

    def label_spans(self) -> dict:
        return {l: b.span() for l, b in self.blocks.items()}


class _Labeler:
    def __init__(self):
        self.next_label = 1
        self.blocks = {}
        self.stmt_label = {}
        self.cond_labels = {}
        self.nodes = {}

    def take(self) -> int:
        l = self.next_label
        self.next_label += 1
        return l

    def label_stmt(self, s: Statement):
        self.nodes[s.node_id] = s
        if isinstance(s, Seq):
            self.label_stmt(s.first)
            self.label_stmt(s.rest)
        elif isinstance(s, If):
            l1 = self.take()
            self.blocks[l1] = Block(l1, "cond", s, s.test, "l1")
            self.label_stmt(s.then)
            self.label_stmt(s.orelse)
            l2 = self.take()
            self.blocks[l2] = Block(l2, "cond", s, s.assertion, "l2")
            self.cond_labels[s.node_id] = (l1, l2)
        elif isinstance(s, Loop):
            l1 = self.take()
            self.blocks[l1] = Block(l1, "cond", s, s.assertion, "l1")
            self.label_stmt(s.do)
            self.label_stmt(s.loop)
            l2 = self.take()
            self.blocks[l2] = Block(l2, "cond", s, s.test, "l2")
            self.cond_labels[s.node_id] = (l1, l2)
        else:
            l = self.take()
            self.blocks[l] = Block(l, "stmt", s)
            self.stmt_label[s.node_id] = l


def _wrap(body: Statement) -> Statement:
    return seq_of([Start(span=body.span)] + seq_items(body) + [Stop(span=body.span)])


def label_program(p: Program) -> LabeledProgram:
    """Label a checked program, generating inverse procedures first."""
    full = invert_program(p)
    labeler = _Labeler()
    lp = LabeledProgram(program=full)

    unit_bodies = [(MAIN_UNIT, _wrap(full.main))]
    unit_bodies += [(name, _wrap(body)) for name, body in full.procedures]

    for name, body in unit_bodies:
        first = labeler.next_label
        labeler.label_stmt(body)
        labels = tuple(range(first, labeler.next_label))
        unit = Unit(name=name, body=body, labels=labels)
        lp.units[name] = unit
        for l in labels:
            lp.unit_of[l] = name

    lp.blocks = labeler.blocks
    lp._stmt_label = labeler.stmt_label
    lp._cond_labels = labeler.cond_labels
    lp._nodes = labeler.nodes

    for unit in lp.units.values():
        unit.flow = frozenset(flow(lp, unit.body))
        for a, b in unit.flow:
            lp._succ.setdefault(a, ())
            lp._succ[a] += (b,)
            lp._pred.setdefault(b, ())
            lp._pred[b] += (a,)
    for d in (lp._succ, lp._pred):
        for k in d:
            d[k] = tuple(sorted(d[k]))
    return lp


def flow(lp: LabeledProgram, s: Statement) -> set:
    """Edge set of a labeled statement, per construct."""
    if isinstance(s, If):
        l1, l2 = lp.cond_labels(s)
        return (
            {
                (l1, lp.entry(s.then)), (lp.exit(s.then), l2),
                (l1, lp.entry(s.orelse)), (lp.exit(s.orelse), l2),
            }
            | flow(lp, s.then)
            | flow(lp, s.orelse)
        )
    if isinstance(s, Loop):
        l1, l2 = lp.cond_labels(s)
        return (
            {
                (l1, lp.entry(s.do)), (lp.exit(s.do), l2),
                (l2, lp.entry(s.loop)), (lp.exit(s.loop), l1),
            }
            | flow(lp, s.do)
            | flow(lp, s.loop)
        )
    if isinstance(s, Seq):
        return (
            {(lp.exit(s.first), lp.entry(s.rest))}
            | flow(lp, s.first)
            | flow(lp, s.rest)
        )
    return set()


def flow_inv(lp: LabeledProgram, s: Statement) -> set:
    return {(b, a) for a, b in flow(lp, s)}
