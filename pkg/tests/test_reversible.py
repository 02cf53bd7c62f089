"""Program-counter semantics: goldens, loop lemma, engine agreement."""

import dataclasses
import random

import pytest

from conftest import CORPUS_DIR, corpus_sources, gen_program
from rjanus.bigstep import exec_program
from rjanus.cfg import label_program
from rjanus.errors import (
    AssertionViolation,
    JanusError,
    StuckConfiguration,
)
from rjanus.parser import parse
from rjanus.reversible import (
    RevConfig,
    config_from_json,
    config_to_json,
    frame_to_json,
    initial,
    is_initial,
    is_terminal,
    run_backward,
    run_forward,
    step_backward,
    step_forward,
)
from rjanus.smallstep import run_program
from rjanus.store import Store
from rjanus.syntax import Binop, Call, Const, If, Loop, Seq, Statement

SUM3 = (CORPUS_DIR / "sum3.ja").read_text()

GOLDEN_FORWARD_RULES = [
    "AssVar", "Call", "AssVar", "LoopMain", "IfFalse1", "Skip", "IfFalse2",
    "Loop1", "AssVar", "Loop2", "IfFalse1", "Skip", "IfFalse2", "Loop1",
    "AssVar", "Loop2", "IfTrue1", "AssVar", "IfTrue2", "LoopBase", "AssVar",
    "Return1",
]

# Frame shorthands for the golden configuration rows.
CALL3 = {"kind": "call", "label": 3}
L1 = {"kind": "loop1", "l1": 7, "l2": 13}
L2 = {"kind": "loop2", "l1": 7, "l2": 13}
IT = {"kind": "if_true", "l1": 8, "l2": 11}
IF = {"kind": "if_false", "l1": 8, "l2": 11}

# Every configuration row of the backward derivation, starting from the
# terminal configuration: (rule, store, prev, next, stack top-first).
GOLDEN_BACKWARD_ROWS = [
    ("Return1", {"n": 6, "i": 3, "total": 3}, 14, 15, [CALL3]),
    ("AssVar", {"n": 3, "i": 3, "total": 3}, 13, 14, [CALL3]),
    ("LoopBase", {"n": 3, "i": 3, "total": 3}, 11, 13, [L1, CALL3]),
    ("IfTrue2", {"n": 3, "i": 3, "total": 3}, 9, 11, [IT, L1, CALL3]),
    ("AssVar", {"n": 3, "i": 3}, 8, 9, [IT, L1, CALL3]),
    ("IfTrue1", {"n": 3, "i": 3}, 7, 8, [L1, CALL3]),
    ("Loop2", {"n": 3, "i": 3}, 12, 7, [L2, CALL3]),
    ("AssVar", {"n": 3, "i": 2}, 13, 12, [L2, CALL3]),
    ("Loop1", {"n": 3, "i": 2}, 11, 13, [L1, CALL3]),
    ("IfFalse2", {"n": 3, "i": 2}, 10, 11, [IF, L1, CALL3]),
    ("Skip", {"n": 3, "i": 2}, 8, 10, [IF, L1, CALL3]),
    ("IfFalse1", {"n": 3, "i": 2}, 7, 8, [L1, CALL3]),
    ("Loop2", {"n": 3, "i": 2}, 12, 7, [L2, CALL3]),
    ("AssVar", {"n": 3, "i": 1}, 13, 12, [L2, CALL3]),
    ("Loop1", {"n": 3, "i": 1}, 11, 13, [L1, CALL3]),
    ("IfFalse2", {"n": 3, "i": 1}, 10, 11, [IF, L1, CALL3]),
    ("Skip", {"n": 3, "i": 1}, 8, 10, [IF, L1, CALL3]),
    ("IfFalse1", {"n": 3, "i": 1}, 7, 8, [L1, CALL3]),
    ("LoopMain", {"n": 3, "i": 1}, 6, 7, [CALL3]),
    ("AssVar", {"n": 3}, 5, 6, [CALL3]),
    ("Call", {"n": 3}, 2, 3, []),
    ("AssVar", {}, 1, 2, []),
]


@pytest.fixture
def sum3_lp():
    return label_program(parse(SUM3))


def _row(config):
    scalars = {k: v for k, v in config.store.items()}
    return (scalars, config.prev, config.next,
            [frame_to_json(f) for f in config.stack])


def test_initial_config(sum3_lp):
    c = initial(sum3_lp)
    assert (c.prev, c.next, c.stack) == (1, 2, ())
    assert c.store == Store()
    assert is_initial(sum3_lp, c)
    assert not is_terminal(sum3_lp, c)


def test_golden_forward_run(sum3_lp):
    c, trace = run_forward(sum3_lp)
    assert [r for r, _ in trace] == GOLDEN_FORWARD_RULES
    assert c.store == Store({"n": 6, "i": 3, "total": 3})
    assert (c.prev, c.next, c.stack) == (3, 4, ())
    assert is_terminal(sum3_lp, c)


def test_golden_forward_first_steps(sum3_lp):
    c = initial(sum3_lp)
    c, rule = step_forward(sum3_lp, c)
    assert rule == "AssVar"
    assert _row(c) == ({"n": 3}, 2, 3, [])
    c, rule = step_forward(sum3_lp, c)
    assert rule == "Call"
    assert _row(c) == ({"n": 3}, 5, 6, [CALL3])


def test_golden_backward_run(sum3_lp):
    terminal, _ = run_forward(sum3_lp)
    c, trace = run_backward(sum3_lp, terminal)
    rows = [(rule, *_row(cfg)) for rule, cfg in trace]
    assert rows == GOLDEN_BACKWARD_ROWS
    assert is_initial(sum3_lp, c)
    assert c.store == Store()


def test_trace_reversal(sum3_lp):
    terminal, fwd = run_forward(sum3_lp)
    _, bwd = run_backward(sum3_lp, terminal)
    assert [r for r, _ in bwd] == list(reversed([r for r, _ in fwd]))


def test_boundaries_do_not_step(sum3_lp):
    with pytest.raises(StuckConfiguration):
        step_backward(sum3_lp, initial(sum3_lp))
    terminal, _ = run_forward(sum3_lp)
    with pytest.raises(StuckConfiguration):
        step_forward(sum3_lp, terminal)


def test_skip_program():
    lp = label_program(parse("skip"))
    c, trace = run_forward(lp)
    assert [r for r, _ in trace] == ["Skip"]
    assert is_terminal(lp, c)


def test_config_json_round_trip(sum3_lp):
    _, trace = run_forward(sum3_lp)
    for _, c in trace:
        again = config_from_json(sum3_lp, config_to_json(c))
        assert again == c


def test_uncall_forward_and_backward():
    lp = label_program(parse("x += 4\nuncall f\nprocedure f\nx -= 3"))
    c, trace = run_forward(lp)
    rules = [r for r, _ in trace]
    assert "UnCall" in rules and "Return2" in rules
    assert c.store == Store({"x": 7})
    b, btrace = run_backward(lp, c)
    assert [r for r, _ in btrace] == list(reversed(rules))
    assert is_initial(lp, b) and b.store == Store()


# --- loop lemma ----------------------------------------------------------


def _assert_round_trips(lp, steps):
    """Walk forward/backward randomly; each step must invert exactly."""
    rng = random.Random(hash(steps) & 0xFFFF)
    c = initial(lp)
    done = 0
    while done < steps:
        go_fwd = not is_terminal(lp, c) and (is_initial(lp, c) or rng.random() < 0.7)
        if go_fwd:
            nxt, rule = step_forward(lp, c)
            back, brule = step_backward(lp, nxt)
            assert back == c and brule == rule
            c = nxt
        else:
            prv, rule = step_backward(lp, c)
            fwd, frule = step_forward(lp, prv)
            assert fwd == c and frule == rule
            c = prv
        done += 1
        if is_terminal(lp, c) and rng.random() < 0.5:
            break
    return done


@pytest.mark.parametrize("name,src", corpus_sources())
def test_loop_lemma_corpus(name, src):
    lp = label_program(parse(src))
    assert _assert_round_trips(lp, 400) > 0


@pytest.mark.parametrize("seed", range(60))
def test_loop_lemma_generated(seed):
    lp = label_program(gen_program(seed))
    _assert_round_trips(lp, 200)


# --- engine agreement ----------------------------------------------------


def _outcome(fn):
    try:
        return ("store", fn())
    except JanusError as e:
        return ("error", type(e).__name__)


def _all_engine_outcomes(p, fuel=500_000):
    big = _outcome(lambda: exec_program(p, fuel=fuel))
    small = _outcome(lambda: run_program(p, fuel=fuel)[0])
    lp = label_program(p)
    rev = _outcome(lambda: run_forward(lp, fuel=fuel)[0].store)
    return big, small, rev


@pytest.mark.parametrize("name,src", corpus_sources())
def test_engine_agreement_corpus(name, src):
    big, small, rev = _all_engine_outcomes(parse(src))
    assert big == small == rev
    assert big[0] == "store"


@pytest.mark.parametrize("seed", range(80))
def test_engine_agreement_generated(seed):
    big, small, rev = _all_engine_outcomes(gen_program(seed))
    assert big == small == rev


def _replace(s: Statement, target: Statement, build):
    """Rebuild `s` with `target` (by identity) replaced by build(target)."""
    if s is target:
        return build(s)
    changes = {}
    for f in dataclasses.fields(s):
        v = getattr(s, f.name)
        if isinstance(v, Statement):
            w = _replace(v, target, build)
            if w is not v:
                changes[f.name] = w
    return dataclasses.replace(s, **changes) if changes else s


def _find(s: Statement, pred, out):
    if pred(s):
        out.append(s)
    for f in dataclasses.fields(s):
        v = getattr(s, f.name)
        if isinstance(v, Statement):
            _find(v, pred, out)


def _flip(e):
    return Binop(op="=", left=e, right=Const(value=0))


def mutants(p):
    """Assertion-breaking and name-breaking variants of a program."""
    bodies = [("main", p.main)] + list(p.procedures)
    for where, body in bodies:
        found = []
        _find(body, lambda s: isinstance(s, If), found)
        for node in found:
            new_body = _replace(
                body, node,
                lambda n: dataclasses.replace(n, assertion=_flip(n.assertion)),
            )
            yield _rebuild(p, where, new_body)
        found = []
        _find(body, lambda s: isinstance(s, Loop), found)
        for node in found:
            new_body = _replace(
                body, node,
                lambda n: dataclasses.replace(n, assertion=_flip(n.assertion)),
            )
            yield _rebuild(p, where, new_body)
        found = []
        _find(body, lambda s: isinstance(s, Call), found)
        for node in found[:1]:
            new_body = _replace(
                body, node, lambda n: dataclasses.replace(n, name="missing_proc")
            )
            yield _rebuild(p, where, new_body)


def _rebuild(p, where, new_body):
    if where == "main":
        return dataclasses.replace(p, main=new_body)
    procs = tuple((n, new_body if n == where else b) for n, b in p.procedures)
    return dataclasses.replace(p, procedures=procs)


@pytest.mark.parametrize("name,src", corpus_sources())
def test_engine_error_agreement_mutants(name, src):
    p = parse(src)
    for mutant in mutants(p):
        big, small, rev = _all_engine_outcomes(mutant, fuel=100_000)
        assert big == small == rev, name


def test_mutant_assertion_fails_everywhere():
    p = parse("if x = 0 then y += 1 else y -= 1 fi x = 0")
    broken = next(iter(mutants(p)))
    for outcome in _all_engine_outcomes(broken):
        assert outcome == ("error", "AssertionViolation")


def test_assertion_violation_direction_backward(sum3_lp):
    terminal, _ = run_forward(sum3_lp)
    # Corrupt the store so the backward assertions cannot hold.
    bad = RevConfig(store=terminal.store.update("i", 0).update("n", 0),
                    prev=terminal.prev, next=terminal.next, stack=terminal.stack)
    with pytest.raises((AssertionViolation, StuckConfiguration)):
        run_backward(sum3_lp, bad)
