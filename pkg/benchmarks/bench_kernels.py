"""Timing comparison of the numba and numpy kernel paths.

Run:  python3 benchmarks/bench_kernels.py [--repeats 200]

The numba rows disappear when numba is unavailable or disabled via
QDARWIN_DISABLE_NUMBA=1 (in that case only the numpy path is active anyway).
"""

import argparse
import time

import numpy as np

from qdarwin import kernels
from qdarwin.backend import NUMBA_ENABLED, active_backend


def haar(dim, rng):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def timed(fn, repeats):
    fn()  # warm up (numba compilation, caches)
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()
    rng = np.random.default_rng(0)

    print(f"active backend: {active_backend()}")
    print(f"{'kernel':<26}{'qubits':>7}{'numpy':>12}{'numba':>12}{'speedup':>9}")

    for n in (8, 11, 14):
        amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        amps /= np.linalg.norm(amps)

        for k, label in ((2, "apply_gate (2q)"), (3, "apply_gate (3q)")):
            u = haar(1 << k, rng)
            targets = tuple(range(0, n, max(1, n // k)))[:k]
            t_numpy = timed(
                lambda: kernels._apply_gate_numpy(amps, u, targets, n), args.repeats
            )
            if NUMBA_ENABLED:
                t_numba = timed(
                    lambda: kernels._apply_gate_numba(amps, u, targets, n),
                    args.repeats,
                )
                print(
                    f"{label:<26}{n:>7}{t_numpy * 1e6:>10.1f}us"
                    f"{t_numba * 1e6:>10.1f}us{t_numpy / t_numba:>8.2f}x"
                )
            else:
                print(f"{label:<26}{n:>7}{t_numpy * 1e6:>10.1f}us{'-':>12}{'-':>9}")

        keep = tuple(range(0, n, 2))[: n // 2]
        t_numpy = timed(lambda: kernels._gather_numpy(amps, keep, n), args.repeats)
        if NUMBA_ENABLED:
            t_numba = timed(lambda: kernels._gather_numba(amps, keep, n), args.repeats)
            print(
                f"{'reduced-density gather':<26}{n:>7}{t_numpy * 1e6:>10.1f}us"
                f"{t_numba * 1e6:>10.1f}us{t_numpy / t_numba:>8.2f}x"
            )
        else:
            print(
                f"{'reduced-density gather':<26}{n:>7}"
                f"{t_numpy * 1e6:>10.1f}us{'-':>12}{'-':>9}"
            )


if __name__ == "__main__":
    main()
