"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from harmap import kernels


def cases(rng):
    coeffs = rng.normal(size=257) + 1j * rng.normal(size=257)
    z = 0.9 * np.sqrt(rng.random(16384)) * np.exp(2j * np.pi * rng.random(16384))
    m = 128 * 512
    hp = rng.normal(size=m) + 1j * rng.normal(size=m) + 5.0
    hpp, gp, gpp = (rng.normal(size=m) + 1j * rng.normal(size=m) for _ in range(3))
    w = rng.random(m)
    ph = np.exp(2j * np.pi * np.arange(512) / 512)
    return {
        "horner_derivs N=256, 16k points": lambda mod: mod.horner_derivs(coeffs, z),
        "theta_sup 64k points x 512 phases": lambda mod: mod.theta_sup(hp, hpp, gp, gpp, w, ph),
        "extremal_recurrence N=100k": lambda mod: mod.extremal_recurrence(1.5, 100_000),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the numpy fallback is timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':38s}" + "".join(f"{name:>12s}" for name in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label, fn in cases(rng).items():
        times = {}
        for name, mod in backends.items():
            times[name] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        row = f"{label:38s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in backends)
        if len(backends) > 1:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
