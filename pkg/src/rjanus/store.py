"""Stores and expression evaluation.

A store maps cell keys to 32-bit values.  A cell key is either a scalar name
(str) or an array element (name, index).  The canonical representation drops
zero-valued bindings, so the empty store and "everything is zero" are the
same object; lookup of an absent cell yields 0.  Stores are immutable:
`update` returns a new store, which lets traces keep cheap snapshots.
"""

from __future__ import annotations

from . import intops
from .syntax import Binop, Const, Expression, Index, Var

CellKey = "str | tuple[str, int]"


class Store:
    __slots__ = ("_cells",)

    def __init__(self, cells=None):
        if cells:
            self._cells = {k: v for k, v in cells.items() if v != 0}
        else:
            self._cells = {}

    def get(self, key) -> int:
        return self._cells.get(key, 0)

    def update(self, key, value: int) -> "Store":
        cells = dict(self._cells)
        if value == 0:
            cells.pop(key, None)
        else:
            cells[key] = value
        out = Store.__new__(Store)
        out._cells = cells
        return out

    def items(self):
        return self._cells.items()

    def __len__(self):
        return len(self._cells)

    def __eq__(self, other):
        return isinstance(other, Store) and self._cells == other._cells

    def __hash__(self):
        return hash(frozenset(self._cells.items()))

    def __repr__(self):
        if not self._cells:
            return "Store(ε)"
        body = ", ".join(f"{_key_str(k)}↦{v}" for k, v in sorted(self._cells.items(), key=lambda kv: _key_str(kv[0])))
        return f"Store({{{body}}})"

    def to_json(self) -> dict:
        """Snapshot: {"scalars": {...}, "arrays": {name: {index: value}}}."""
        scalars, arrays = {}, {}
        for key, value in self._cells.items():
            if isinstance(key, tuple):
                arrays.setdefault(key[0], {})[str(key[1])] = value
            else:
                scalars[key] = value
        return {"scalars": scalars, "arrays": arrays}

    @classmethod
    def from_json(cls, data: dict) -> "Store":
        cells = {}
        for name, value in data.get("scalars", {}).items():
            cells[name] = int(value)
        for name, elems in data.get("arrays", {}).items():
            for index, value in elems.items():
                cells[(name, int(index))] = int(value)
        return cls(cells)


def _key_str(key) -> str:
    if isinstance(key, tuple):
        return f"{key[0]}[{key[1]}]"
    return key


EMPTY = Store()


def eval_expr(store: Store, e: Expression) -> int:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return store.get(e.name)
    if isinstance(e, Index):
        return store.get((e.name, eval_expr(store, e.index)))
    if isinstance(e, Binop):
        return intops.apply_binop(
            e.op, eval_expr(store, e.left), eval_expr(store, e.right)
        )
    raise TypeError(e)
