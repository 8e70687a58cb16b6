#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the numpy fallback.

Times each elementwise dual-arithmetic kernel on random float64 arrays and
reports the per-call best-of-``repeats`` wall time for both backends plus
the speedup.  Also times an end-to-end surrogate evaluation (forward pass
with input tangents on the default feed-forward network) in a subprocess
for each backend, since the backend is fixed at import time.

Usage::

    python3 scripts/bench_backends.py [--size 1000000] [--repeats 7]
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from popinn.kernels import compiled_backend, numpy_backend

KERNELS = {
    "tanh_val": 1,
    "tanh_val_bwd": 2,
    "sigmoid_val": 1,
    "sigmoid_val_bwd": 2,
    "dual_tanh": 3,
    "dual_tanh_bwd": 6,
    "dual_sigmoid": 3,
    "dual_sigmoid_bwd": 6,
    "dual_mul": 6,
    "dual_mul_bwd": 9,
}

END_TO_END = """
import time
import numpy as np
from popinn.training.models import build_surrogate

model = build_surrogate("mlp")
rng = np.random.default_rng(0)
a, t = rng.random(2000), rng.random(2000)
model.dual_batch(a, t)  # warm up
best = min(
    (lambda s: (model.dual_batch(a, t), time.perf_counter() - s)[1])(time.perf_counter())
    for _ in range({repeats})
)
print(best)
"""


def best_of(fn, args, repeats):
    fn(*args)  # warm up
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def run_end_to_end(pure_python, repeats):
    env = dict(os.environ, POPINN_PURE_PYTHON="1" if pure_python else "0")
    out = subprocess.run(
        [sys.executable, "-c", END_TO_END.format(repeats=repeats)],
        env=env, capture_output=True, text=True, check=True,
    )
    return float(out.stdout)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=1_000_000,
                        help="array length per kernel argument")
    parser.add_argument("--repeats", type=int, default=7,
                        help="timing repetitions; the best is reported")
    args = parser.parse_args(argv)

    if compiled_backend is None:
        print("compiled backend not built; only the numpy fallback is available")
        return 1

    rng = np.random.default_rng(0)
    print(f"array size {args.size}, best of {args.repeats} runs\n")
    print(f"{'kernel':<18} {'numpy (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}")
    for name, n_args in KERNELS.items():
        data = [rng.standard_normal(args.size) for _ in range(n_args)]
        t_np = best_of(getattr(numpy_backend, name), data, args.repeats)
        t_c = best_of(getattr(compiled_backend, name), data, args.repeats)
        print(f"{name:<18} {1e3 * t_np:>12.3f} {1e3 * t_c:>14.3f} {t_np / t_c:>8.2f}x")

    t_np = run_end_to_end(True, args.repeats)
    t_c = run_end_to_end(False, args.repeats)
    print(f"\n{'mlp dual_batch':<18} {1e3 * t_np:>12.3f} {1e3 * t_c:>14.3f} {t_np / t_c:>8.2f}x")
    print("(default network, 2000 points, value + both input tangents)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
