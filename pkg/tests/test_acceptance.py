"""Acceptance criteria, one printed pass/fail line each.

Lines are written to the real stdout so they appear even under pytest's
capture. Each criterion enforces its stated time budget.
"""

import random
import sys
import time

import pytest

from conftest import corpus_sources, gen_program, gen_stmt_syntax
from rjanus import intops
from rjanus.bigstep import ProcEnv, exec_program, exec_stmt
from rjanus.cfg import label_program
from rjanus.inverter import invert_stmt
from rjanus.parser import parse
from rjanus.reversible import initial, is_terminal, run_backward, run_forward, \
    step_backward, step_forward
from rjanus.smallstep import run_program
from rjanus.store import Store
from rjanus.syntax import INT32_MAX, INT32_MIN, same_stmt
from test_cfg import CFG_MAIN, CFG_SUMMUL3, assert_flow_lemma
from test_reversible import (
    GOLDEN_BACKWARD_ROWS,
    GOLDEN_FORWARD_RULES,
    SUM3,
    _all_engine_outcomes,
    _row,
    mutants,
)


RESULT_LINES = []  # echoed by the pytest_terminal_summary hook in conftest


def _report(name, limit, started, failed=None):
    elapsed = time.perf_counter() - started
    status = "PASS" if failed is None else f"FAIL ({failed})"
    line = f"ACCEPTANCE {status}: {name} [{elapsed:.2f}s / limit {limit}]"
    RESULT_LINES.append(line)
    print(line, file=sys.__stdout__, flush=True)
    if failed is None and limit is not None:
        assert elapsed < limit, f"{name} exceeded {limit}s ({elapsed:.2f}s)"


class _criterion:
    def __init__(self, name, limit=None):
        self.name, self.limit = name, limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        _report(self.name, self.limit, self.t0,
                failed=None if exc_type is None else exc_type.__name__)
        return False


def test_sum3_golden_forward():
    with _criterion("Sum3 golden forward run (22-rule trace, exact)", 1.0):
        lp = label_program(parse(SUM3))
        c, trace = run_forward(lp)
        assert [r for r, _ in trace] == GOLDEN_FORWARD_RULES
        assert c.store == Store({"n": 6, "i": 3, "total": 3})
        assert (c.prev, c.next, c.stack) == (3, 4, ())


def test_sum3_golden_backward():
    with _criterion("Sum3 golden backward run (all configuration rows, exact)", 1.0):
        lp = label_program(parse(SUM3))
        terminal, _ = run_forward(lp)
        c, trace = run_backward(lp, terminal)
        assert [(rule, *_row(cfg)) for rule, cfg in trace] == GOLDEN_BACKWARD_ROWS
        assert (c.prev, c.next, c.stack) == (1, 2, ())
        assert c.store == Store()


def test_cfg_golden():
    with _criterion("CFG golden edge sets (main 3 edges, sumMul3 12 edges)", None):
        lp = label_program(parse(SUM3))
        assert set(lp.flow_of("main")) == CFG_MAIN
        assert set(lp.flow_of("sumMul3")) == CFG_SUMMUL3


def test_loop_lemma_suite():
    name = "Loop Lemma fuzz (corpus + 200 generated, >= 10^4 steps)"
    with _criterion(name, 30.0):
        programs = [parse(src) for _, src in corpus_sources()]
        assert len(programs) >= 20
        programs += [gen_program(seed) for seed in range(200)]
        rng = random.Random(20240817)
        total = 0
        for p in programs:
            lp = label_program(p)
            c = initial(lp)
            # Forward with round-trip checks, plus random backward excursions.
            while not is_terminal(lp, c):
                nxt, rule = step_forward(lp, c)
                back, brule = step_backward(lp, nxt)
                assert back == c and brule == rule
                c = nxt
                total += 1
                if rng.random() < 0.1:
                    prv, rule = step_backward(lp, c)
                    fwd, frule = step_forward(lp, prv)
                    assert fwd == c and frule == rule
                    c = prv
                    total += 2
        assert total >= 10_000, total


def test_engine_agreement():
    name = "Engine agreement (3 engines, corpus + generated + mutants)"
    with _criterion(name, 30.0):
        programs = [parse(src) for _, src in corpus_sources()]
        programs += [gen_program(seed) for seed in range(100)]
        for p in programs:
            big, small, rev = _all_engine_outcomes(p)
            assert big == small == rev
            assert big[0] == "store"
        for p in programs[:25]:
            for mutant in mutants(p):
                big, small, rev = _all_engine_outcomes(mutant, fuel=100_000)
                assert big == small == rev


def test_flow_inverse_lemma():
    name = "flow inverse lemma (corpus + 1000 generated ASTs)"
    with _criterion(name, 10.0):
        for _, src in corpus_sources():
            p = parse(src)
            for body in [p.main] + [b for _, b in p.procedures]:
                assert_flow_lemma(body)
        for seed in range(1000):
            assert_flow_lemma(gen_stmt_syntax(seed, depth=4))


def test_inverter_semantics():
    name = "Inverter semantics (exec round-trip + involution on 1000 ASTs)"
    with _criterion(name, None):
        for _, src in corpus_sources():
            p = parse(src)
            env = ProcEnv.of_program(p)
            sigma = Store()
            sigma_prime = exec_stmt(sigma, p.main, env)
            assert exec_stmt(sigma_prime, invert_stmt(p.main), env) == sigma
        for seed in range(1000):
            s = gen_stmt_syntax(seed, depth=5)
            assert same_stmt(invert_stmt(invert_stmt(s)), s)


def test_modop_invertibility_boundaries():
    name = "Update-operator invertibility (10^5 random pairs per operator)"
    with _criterion(name, None):
        rng = random.Random(13)
        boundary = [0, 1, -1, INT32_MIN, INT32_MAX, INT32_MIN + 1, INT32_MAX - 1]
        for op in ("+", "-", "^"):
            inv = intops.invert_modop(op)
            pairs = [(v, w) for v in boundary for w in boundary]
            pairs += [
                (rng.randint(INT32_MIN, INT32_MAX), rng.randint(INT32_MIN, INT32_MAX))
                for _ in range(100_000 - len(pairs))
            ]
            assert len(pairs) == 100_000
            for v, w in pairs:
                assert intops.apply_modop(inv, intops.apply_modop(op, v, w), w) == v


def test_cross_engine_cli_stores():
    name = "CLI engines print identical canonical stores on the corpus"
    with _criterion(name, None):
        import io

        from conftest import corpus_paths
        from rjanus.cli import execute_command

        for path in corpus_paths():
            outputs = set()
            for engine in ("bigstep", "smallstep", "reversible"):
                out = io.StringIO()
                code = execute_command(
                    ["run", str(path), "--engine", engine, "--json"],
                    out=out, err=io.StringIO(),
                )
                assert code == 0
                outputs.add(out.getvalue())
            assert len(outputs) == 1
