"""Command-line interface.

Subcommands: run, invert, cfg, trace, serve.  Exit codes: 0 success,
1 program error (parse/check/runtime), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import bigstep, smallstep
from .cfg import label_program
from .checks import check_reversibility
from .errors import JanusError
from .inverter import invert_program
from .parser import ParseError, parse
from .printer import render
from .reversible import (
    config_from_json,
    config_to_json,
    frame_to_json,
    initial,
    run_backward,
    run_forward,
)
from .store import Store


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rjanus", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a program and print the final store")
    run.add_argument("file")
    run.add_argument("--engine", choices=["bigstep", "smallstep", "reversible"],
                     default="bigstep")
    run.add_argument("--backward", action="store_true",
                     help="run the reversible engine backward from --from-state")
    run.add_argument("--from-state", metavar="FILE",
                     help="JSON configuration snapshot to start from")
    run.add_argument("--store", default="",
                     help="initial nonzero bindings, e.g. n=5,a[2]=7")
    run.add_argument("--json", action="store_true")
    run.add_argument("--fuel", type=int, default=bigstep.DEFAULT_FUEL)
    run.add_argument("--strict-grammar", action="store_true",
                     help="require at least one procedure declaration")

    inv = sub.add_parser("invert", help="print the inverted program")
    inv.add_argument("file")
    inv.add_argument("--strict-grammar", action="store_true")

    cfg = sub.add_parser("cfg", help="print control-flow graphs")
    cfg.add_argument("file")
    fmt = cfg.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    cfg.add_argument("--strict-grammar", action="store_true")

    tr = sub.add_parser("trace", help="print the rule-by-rule execution trace")
    tr.add_argument("file")
    tr.add_argument("--engine", choices=["smallstep", "reversible"],
                    default="reversible")
    tr.add_argument("--jsonl", action="store_true")
    tr.add_argument("--fuel", type=int, default=bigstep.DEFAULT_FUEL)
    tr.add_argument("--strict-grammar", action="store_true")

    sv = sub.add_parser("serve", help="start the debug service")
    sv.add_argument("--port", type=int, default=7420)
    return ap


_STORE_ITEM = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)(?:\[(-?\d+)\])?\s*=\s*(-?\d+)\s*$")


def parse_store_arg(text: str) -> Store:
    cells = {}
    if text:
        for item in text.split(","):
            m = _STORE_ITEM.match(item)
            if m is None:
                raise ValueError(f"bad --store item: {item!r}")
            name, index, value = m.groups()
            key = (name, int(index)) if index is not None else name
            cells[key] = int(value)
    return Store(cells)


def _store_flat_json(store: Store) -> dict:
    out = {}
    for key, value in sorted(store.items(), key=lambda kv: str(kv[0])):
        name = f"{key[0]}[{key[1]}]" if isinstance(key, tuple) else key
        out[name] = value
    return out


def _print_store(store: Store, as_json: bool, out):
    if as_json:
        print(json.dumps(_store_flat_json(store)), file=out)
    else:
        for name, value in _store_flat_json(store).items():
            print(f"{name} = {value}", file=out)


def _load_program(args):
    with open(args.file, encoding="utf-8") as f:
        source = f.read()
    p = parse(source, strict_grammar=getattr(args, "strict_grammar", False))
    diags = check_reversibility(p)
    errors = [d for d in diags if d.severity == "error"]
    if errors:
        raise JanusError("; ".join(str(d) for d in errors))
    return p


def _cmd_run(args, out, err) -> int:
    p = _load_program(args)
    store = parse_store_arg(args.store)

    if args.backward:
        if args.engine != "reversible" or not args.from_state:
            print("run --backward requires --engine reversible and --from-state",
                  file=err)
            return 2
        lp = label_program(p)
        with open(args.from_state, encoding="utf-8") as f:
            c = config_from_json(lp, json.load(f))
        final, _ = run_backward(lp, c, fuel=args.fuel)
        _print_store(final.store, args.json, out)
        return 0

    if args.engine == "bigstep":
        final_store = bigstep.exec_program(p, store, fuel=args.fuel)
    elif args.engine == "smallstep":
        final_store, _ = smallstep.run_program(p, store, fuel=args.fuel)
    else:
        lp = label_program(p)
        c0 = initial(lp)
        if len(store):
            c0 = type(c0)(store=store, prev=c0.prev, next=c0.next, stack=c0.stack)
        c, _ = run_forward(lp, c0, fuel=args.fuel)
        final_store = c.store
    _print_store(final_store, args.json, out)
    return 0


def _cmd_invert(args, out, err) -> int:
    p = _load_program(args)
    print(render(invert_program(p)), end="", file=out)
    return 0


def _cmd_cfg(args, out, err) -> int:
    p = _load_program(args)
    lp = label_program(p)
    if args.dot:
        print(lp.to_dot(), end="", file=out)
    else:
        print(json.dumps(lp.to_json(), indent=2), file=out)
    return 0


def _cmd_trace(args, out, err) -> int:
    p = _load_program(args)
    if args.engine == "smallstep":
        c = smallstep.initial_config(p.main)
        env = bigstep.ProcEnv.of_program(p)
        idx = 0
        while not c.is_terminal():
            if idx >= args.fuel:
                raise JanusError(f"fuel budget of {args.fuel} exhausted")
            c, rule = smallstep.step(c, env)
            idx += 1
            if args.jsonl:
                print(json.dumps({
                    "idx": idx,
                    "rule": rule,
                    "store": c.store.to_json(),
                    "stackDepth": len(c.stack),
                }), file=out)
            else:
                print(f"{idx:4d}  {rule:<10} stack={len(c.stack)}  {c.store!r}",
                      file=out)
        return 0

    lp = label_program(p)
    _, trace = run_forward(lp, fuel=args.fuel)
    for idx, (rule, c) in enumerate(trace, start=1):
        if args.jsonl:
            print(json.dumps({
                "idx": idx,
                "dir": "fwd",
                "rule": rule,
                "prev": c.prev,
                "next": c.next,
                "stack": [frame_to_json(f) for f in c.stack],
                "store": c.store.to_json(),
            }), file=out)
        else:
            stack = ":".join(str(frame_to_json(f)) for f in c.stack) or "[]"
            print(f"{idx:4d}  {rule:<10} ⟨{c.prev},{c.next}⟩ {stack}  {c.store!r}",
                  file=out)
    return 0


def _cmd_serve(args, out, err) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host="127.0.0.1", port=args.port)
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "invert": _cmd_invert,
    "cfg": _cmd_cfg,
    "trace": _cmd_trace,
    "serve": _cmd_serve,
}


def execute_command(argv, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args, out, err)
    except ParseError as e:
        print(f"parse error: {e.diagnostic}", file=err)
        return 1
    except (JanusError, OSError, ValueError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=err)
        return 1


def main() -> None:
    sys.exit(execute_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
