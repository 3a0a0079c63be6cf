"""Benchmark the numba and numpy march backends on the same grid.

Run with ``python -m freeconv.bench``. The numba kernel is warmed up once so
JIT compilation is excluded from the timings.
"""

from __future__ import annotations

import argparse
import time

from . import _kernels


def _time(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="freeconv.bench",
        description="Compare the numba and numpy finite-difference backends.")
    parser.add_argument("--ny", type=int, default=1999,
                        help="interior grid points (default 1999, i.e. dy=0.01)")
    parser.add_argument("--steps", type=int, default=2000,
                        help="time steps (default 2000)")
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions; best time is reported")
    args = parser.parse_args(argv)

    # reference comparison case: alpha=30deg, Gr=15, Gc=5, Pr=0.71, Sc=0.78
    march_args = (0.71, 0.78, 12.990381056766578, 4.330127018922193,
                  20.0, args.ny, 0.2 / args.steps, args.steps, 0.5, args.steps)

    t_numpy = _time(_kernels.march_numpy, march_args, args.repeat)
    print(f"numpy  backend: {t_numpy * 1e3:8.1f} ms "
          f"(ny={args.ny}, steps={args.steps}, best of {args.repeat})")

    if _kernels.march_numba is None:
        print("numba  backend: unavailable "
              "(not installed, or disabled via FREECONV_DISABLE_NUMBA/NUMBA_DISABLE_JIT)")
        return 0

    _kernels.march_numba(0.71, 0.78, 1.0, 1.0, 20.0, 31, 1e-3, 4, 0.5, 4)  # warm-up
    t_numba = _time(_kernels.march_numba, march_args, args.repeat)
    print(f"numba  backend: {t_numba * 1e3:8.1f} ms "
          f"(ny={args.ny}, steps={args.steps}, best of {args.repeat})")
    print(f"speedup: {t_numpy / t_numba:.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
