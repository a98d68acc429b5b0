"""Compiled vs pure-Python tower kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Micro-benchmarks call both backends on the same integer vectors.  The
end-to-end run times the sextactic conic catalog in a subprocess per backend
(the backend is fixed at import, so it has to be a fresh interpreter).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from fermat_torsion.exactfield import Q_ALPHA_BETA, Q_EPS_MU
from fermat_torsion.exactfield import kernels

END_TO_END = (
    "import time; from fermat_torsion.arrangements import conic_catalog; "
    "t = time.perf_counter(); conic_catalog('sextactic'); print(time.perf_counter() - t)"
)


def vectors(tower, spread, rng):
    return [rng.randint(-spread, spread) for _ in range(tower.dim)]


def micro(repeat):
    rng = random.Random(0)
    rows = []
    for tower in (Q_EPS_MU, Q_ALPHA_BETA):
        table = tower.kernel_table
        a, b = vectors(tower, 10 ** 6, rng), vectors(tower, 10 ** 6, rng)
        big_a, big_b = vectors(tower, 10 ** 40, rng), vectors(tower, 10 ** 40, rng)
        terms = [(vectors(tower, 10 ** 5, rng), vectors(tower, 10 ** 5, rng), 1) for _ in range(6)]
        m = kernels.pure.mul_matrix(table, a)
        rhs = [1] + [0] * (tower.dim - 1)
        cases = {
            "mul (small)": lambda be: be.mul(table, a, b),
            "mul (bignum)": lambda be: be.mul(table, big_a, big_b),
            "dot x6": lambda be: be.dot(table, terms),
            "inverse solve": lambda be: be.solve(m, rhs),
        }
        for name, fn in cases.items():
            n = repeat if "solve" not in name else max(1, repeat // 50)
            pure = min(timeit.repeat(lambda: fn(kernels.pure), number=n, repeat=3)) / n
            if kernels.compiled is not None:
                comp = min(timeit.repeat(lambda: fn(kernels.compiled), number=n, repeat=3)) / n
            else:
                comp = float("nan")
            rows.append((tower.id, name, pure, comp))
    return rows


def end_to_end():
    out = {}
    for label, env in (("compiled", {}), ("pure", {"FERMAT_TORSION_PURE": "1"})):
        res = subprocess.run([sys.executable, "-c", END_TO_END], capture_output=True, text=True,
                             env={**os.environ, **env}, check=True)
        out[label] = float(res.stdout.strip())
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    print(f"compiled kernel available: {kernels.compiled is not None}")
    print(f"{'tower':<14}{'kernel':<16}{'pure us':>12}{'compiled us':>14}{'speedup':>10}")
    for tower, name, pure, comp in micro(args.repeat):
        print(f"{tower:<14}{name:<16}{pure * 1e6:>12.1f}{comp * 1e6:>14.1f}{pure / comp:>10.1f}")
    if args.end_to_end:
        times = end_to_end()
        print(f"sextactic conic catalog: compiled {times['compiled']:.2f} s, pure {times['pure']:.2f} s")


if __name__ == "__main__":
    main()
