"""Compare the numba and numpy backends on the two hot kernels.

    python3 benchmarks/bench_kernels.py [--pairs 2000] [--colength 20] [--repeat 3]

Both backends are checked for identical output before timing.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from conftest import random_staircase2  # noqa: E402
from hilbsing import kernels, tangent3d  # noqa: E402
from hilbsing.enumeration import enum_borel3  # noqa: E402


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=2000)
    ap.add_argument("--max-l", type=int, default=25, help="max colength of random 2D staircases")
    ap.add_argument("--colength", type=int, default=20, help="3D colength to scan")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba not importable; nothing to compare")
        return 1

    rng = random.Random(args.seed)
    pairs = [(random_staircase2(rng, rng.randint(1, args.max_l)).rows,
              random_staircase2(rng, rng.randint(1, args.max_l)).rows) for _ in range(args.pairs)]
    for a, b in pairs[:50]:
        x, y = kernels.hom2d_grid_numba(a, b), kernels.hom2d_grid_numpy(a, b)
        assert np.array_equal(x[0], y[0]) and np.array_equal(x[1], y[1])

    ideals = list(enum_borel3(args.colength))
    inputs = [(tangent3d.generator_array(I), tangent3d.complement_array(I), tangent3d.candidate_shifts(I))
              for I in ideals]
    for g, c, a in inputs[:50]:
        assert np.array_equal(kernels.tangent_pieces_numba(g, c, a), kernels.tangent_pieces_numpy(g, c, a))

    rows = []
    for name, nb, npy in [
        (f"hom2d grid, {args.pairs} pairs l<={args.max_l}",
         lambda: [kernels.hom2d_grid_numba(a, b) for a, b in pairs],
         lambda: [kernels.hom2d_grid_numpy(a, b) for a, b in pairs]),
        (f"tangent pieces, {len(inputs)} ideals l={args.colength}",
         lambda: [kernels.tangent_pieces_numba(*x) for x in inputs],
         lambda: [kernels.tangent_pieces_numpy(*x) for x in inputs]),
    ]:
        t_nb, t_np = best_of(nb, args.repeat), best_of(npy, args.repeat)
        rows.append((name, t_nb, t_np))

    print(f"{'kernel':<44} {'numba s':>9} {'numpy s':>9} {'ratio':>7}")
    for name, t_nb, t_np in rows:
        print(f"{name:<44} {t_nb:9.3f} {t_np:9.3f} {t_np / t_nb:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
