"""Compare the compiled and pure integer kernels.

Times the raw operator kernel and a full interpreter workload (a counting
loop run by every engine) under both backends.  Run directly:

    python3 benchmarks/bench_intops.py [--ops N] [--loop N]
"""

from __future__ import annotations

import argparse
import random
import subprocess
import sys
import time

OPS = ["+", "-", "*", "/", "%", "^", "&", "|", "<", "=", "&&"]


def bench_kernel(n: int) -> float:
    from rjanus import intops

    rng = random.Random(7)
    pairs = [(rng.randint(-(2**31), 2**31 - 1), rng.randint(1, 2**31 - 1))
             for _ in range(1000)]
    apply_binop = intops.apply_binop
    t0 = time.perf_counter()
    for i in range(n):
        a, b = pairs[i % 1000]
        apply_binop(OPS[i % len(OPS)], a, b)
    return time.perf_counter() - t0


def bench_interp(iterations: int) -> dict:
    from rjanus import exec_program, label_program, parse, run_forward
    from rjanus.smallstep import run_program

    src = f"""
    from i = 0 do
        acc += i * 3 + 7
        acc ^= i
    loop
        i += 1
    until i = {iterations}
    """
    p = parse(src)
    out = {}
    t0 = time.perf_counter()
    exec_program(p)
    out["bigstep"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    run_program(p)
    out["smallstep"] = time.perf_counter() - t0
    lp = label_program(p)
    t0 = time.perf_counter()
    run_forward(lp)
    out["reversible"] = time.perf_counter() - t0
    return out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--ops", type=int, default=1_000_000)
    ap.add_argument("--loop", type=int, default=20_000)
    ap.add_argument("--backend-run", action="store_true",
                    help=argparse.SUPPRESS)  # internal: single-backend child run
    args = ap.parse_args()

    if args.backend_run:
        from rjanus import intops

        print(f"backend={intops.BACKEND}")
        print(f"kernel {args.ops} mixed ops: {bench_kernel(args.ops):.3f}s")
        for engine, dt in bench_interp(args.loop).items():
            print(f"{engine} loop x{args.loop}: {dt:.3f}s")
        return

    base = [sys.executable, __file__, "--backend-run",
            "--ops", str(args.ops), "--loop", str(args.loop)]
    for label, env_extra in (("compiled", {}), ("pure", {"RJANUS_PURE": "1"})):
        import os

        print(f"--- {label} ---")
        r = subprocess.run(base, env={**os.environ, **env_extra},
                           capture_output=True, text=True)
        print(r.stdout, end="")
        if r.returncode != 0:
            print(r.stderr, end="")


if __name__ == "__main__":
    main()
