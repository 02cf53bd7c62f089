"""rjanus: a reversible (Janus-style) language toolkit.

Parser, three equivalent execution engines (big-step, stack-based
small-step, and a program-counter machine that runs forward and backward),
program inverter, CFG construction, CLI, and a JSON/WebSocket debug service.
"""

from .errors import (
    AssertionViolation,
    DivisionByZero,
    JanusError,
    StuckConfiguration,
    Timeout,
    UndefinedProcedure,
)
from .parser import ParseError, parse, parse_expression
from .printer import render, render_expr, render_stmt
from .checks import check_reversibility
from .inverter import invert_program, invert_stmt
from .store import Store, eval_expr
from .bigstep import exec_program, exec_stmt, ProcEnv
from .smallstep import run_program as smallstep_run_program
from .cfg import LabeledProgram, label_program
from .reversible import (
    RevConfig,
    initial,
    is_initial,
    is_terminal,
    run_backward,
    run_forward,
    step_backward,
    step_forward,
)

__version__ = "1.0.0"

__all__ = [
    "AssertionViolation",
    "DivisionByZero",
    "JanusError",
    "LabeledProgram",
    "ParseError",
    "ProcEnv",
    "RevConfig",
    "Store",
    "StuckConfiguration",
    "Timeout",
    "UndefinedProcedure",
    "check_reversibility",
    "eval_expr",
    "exec_program",
    "exec_stmt",
    "initial",
    "invert_program",
    "invert_stmt",
    "is_initial",
    "is_terminal",
    "label_program",
    "parse",
    "parse_expression",
    "render",
    "render_expr",
    "render_stmt",
    "run_backward",
    "run_forward",
    "smallstep_run_program",
    "step_backward",
    "step_forward",
]
