"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Micro benchmarks call both kernel modules directly; the end-to-end timing
runs a Tr-DGB completion in a subprocess per backend, since the backend is
fixed at import time.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from tropdiff import _kernels_py

try:
    from tropdiff import _kernels as compiled
except ImportError:
    compiled = None

END_TO_END = r"""
import time
from tropdiff.diffpoly import DiffPolynomial as P
from tropdiff.tropical import SupportSet, SupportProfile
from tropdiff.engine import tr_dgb
from tropdiff.kernels import BACKEND
S = SupportProfile((SupportSet.progression(0, 4), SupportSet.progression(1, 2)))
F = [P.linear({(1, 4): 1, (1, 2): 1, (1, 1): 1, (2, 3): 2}, 2),
     P.linear({(2, 5): 1, (1, 3): -1, (2, 0): 3}, 2)]
t = time.perf_counter()
res = tr_dgb(F, S)
print(BACKEND, time.perf_counter() - t, len(res.basis), res.pairs_processed)
"""


def random_monomials(count, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        exps = {(rng.randint(0, 12), rng.randint(1, 3)): rng.randint(1, 3)
                for _ in range(rng.randint(1, 5))}
        out.append(tuple((o, v, e) for (o, v), e in sorted(exps.items())))
    return out


def micro(mod, monos, supports, repeat):
    pairs = list(zip(monos, monos[1:]))
    cases = {
        "mono_mul": lambda: [mod.mono_mul(a, b) for a, b in pairs],
        "mono_div": lambda: [mod.mono_div(a, b) for a, b in pairs],
        "mono_lcm": lambda: [mod.mono_lcm(a, b) for a, b in pairs],
        "mono_coprime": lambda: [mod.mono_coprime(a, b) for a, b in pairs],
        "mono_key": lambda: [mod.mono_key(a) for a in monos],
        "mono_deriv": lambda: [mod.mono_deriv(a) for a in monos],
        "mono_val": lambda: [mod.mono_val(a, supports) for a in monos],
    }
    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in cases.items()}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=20000)
    args = ap.parse_args()

    monos = random_monomials(args.size)
    supports = (((), 0, 4), ((0, 2, 5), 7, 3), ((), 1, 2))
    py = micro(_kernels_py, monos, supports, args.repeat)
    cy = micro(compiled, monos, supports, args.repeat) if compiled else None
    print(f"{'kernel':<14}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, t_py in py.items():
        if cy:
            print(f"{name:<14}{t_py:>12.4f}{cy[name]:>14.4f}{t_py / cy[name]:>9.2f}x")
        else:
            print(f"{name:<14}{t_py:>12.4f}{'n/a':>14}{'':>10}")

    print("\nend to end (Tr-DGB, 2 variables):")
    for pure in ("1", "0"):
        env = dict(os.environ, TROPDIFF_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True)
        backend, secs, size, pairs = out.stdout.split()
        print(f"  {backend:<8} {float(secs):.3f} s  basis={size} pairs={pairs}")


if __name__ == "__main__":
    main()
