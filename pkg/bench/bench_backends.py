"""Compare the compiled scan kernel against the pure-Python fallback.

Runs the same exhaustive validity scans through both backends and
reports models/second.  Usage:

    python3 bench/bench_backends.py [--repeat N]
"""
import argparse
import importlib
import time

from kripkit import parse
from kripkit.engine import compile_program, run_range
from kripkit.validity import model_bits


CASES = (
    ("axiom K_D", "D{a,b}(p -> q) -> (D{a,b} p -> D{a,b} q)", 2,
     ("a", "b"), ("p", "q")),
    ("nested update", "[sse a | p] D{a,b} q -> [see a,b] K_a (p | q)", 2,
     ("a", "b"), ("p", "q")),
    ("three agents", "[eee] D{a,b,c} p -> [see b,c] K_a p", 2,
     ("a", "b", "c"), ("p",)),
)


def scan(impl, prog, n_max):
    total = 0
    for n in range(1, n_max + 1):
        count = 1 << model_bits(n, len(prog.agents), len(prog.atoms))
        run_range(prog, n, 0, count, impl=impl)
        total += count
    return total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = []
    for mod in ("kripkit._engine_c", "kripkit._engine_py"):
        try:
            backends.append(importlib.import_module(mod))
        except ImportError:
            print(f"{mod}: not built, skipping")

    rates = {}
    for name, text, n_max, agents, atoms in CASES:
        prog = compile_program(parse(text), agents, atoms)
        print(f"\n{name}: {text}")
        for impl in backends:
            best = 0.0
            models = 0
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                models = scan(impl, prog, n_max)
                dt = time.perf_counter() - t0
                best = max(best, models / dt)
            rates.setdefault(impl.NAME, []).append(best)
            print(f"  {impl.NAME:>5}: {best:>12,.0f} models/s "
                  f"({models:,} models)")

    if len(rates) == 2:
        speedups = [c / p for c, p in zip(rates["c"], rates["pure"])]
        lo, hi = min(speedups), max(speedups)
        print(f"\ncompiled vs pure speedup: {lo:.1f}x - {hi:.1f}x")


if __name__ == "__main__":
    main()
