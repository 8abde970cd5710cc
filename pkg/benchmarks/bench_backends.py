"""Time the trajectory stepper: compiled extension vs pure-Python reference.

Usage: python3 benchmarks/bench_backends.py [n_steps]

Integrates the two-mode reference state from (1.9, -0.04) under both laws
with each available backend and prints steps/second plus the speedup.
"""

from __future__ import annotations

import math
import sys
import time

import numpy as np

from kgpilot._kernels import LAW_DEBROGLIE, LAW_MODIFIED, get_integrator


def bench(n_steps: int) -> None:
    L = math.pi
    m0 = 1.0
    ks = np.array([1.0, 2.0]) * math.pi / L
    oms = np.sqrt(ks**2 + m0**2)
    amp = math.sqrt(2.0 / L) / math.sqrt(2.0)
    amp_re = np.array([amp, amp])
    amp_im = np.array([0.0, 0.0])
    eps_sq = (1e-10 * math.sqrt(2.0 / L) * math.sqrt(2.0)) ** 2

    backends = {}
    for name in ("python", "compiled"):
        try:
            backends[name] = get_integrator(name)
        except ImportError:
            print(f"{name:>9}: not available")

    results = {}
    for law_name, law in (("debroglie", LAW_DEBROGLIE), ("modified", LAW_MODIFIED)):
        for name, fn in backends.items():
            # Warm-up pass, then the timed one.
            fn(ks, oms, amp_re, amp_im, L, law, 1.9, -0.04, 1e-4, 1000, eps_sq)
            start = time.perf_counter()
            xs, *_ = fn(ks, oms, amp_re, amp_im, L, law, 1.9, -0.04, 1e-4, n_steps, eps_sq)
            dt = time.perf_counter() - start
            rate = (len(xs) - 1) / dt
            results[law_name, name] = rate
            print(f"{law_name:>9} / {name:>8}: {dt * 1e3:8.1f} ms for {len(xs) - 1} steps  ({rate:,.0f} steps/s)")
    for law_name in ("debroglie", "modified"):
        if (law_name, "compiled") in results and (law_name, "python") in results:
            ratio = results[law_name, "compiled"] / results[law_name, "python"]
            print(f"{law_name:>9}: compiled is {ratio:.1f}x the python reference")


if __name__ == "__main__":
    bench(int(sys.argv[1]) if len(sys.argv) > 1 else 50_000)
