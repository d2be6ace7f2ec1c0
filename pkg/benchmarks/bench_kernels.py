"""Compare the compiled and pure-Python kernel backends.

Run ``python3 benchmarks/bench_kernels.py [--nodes N] [--repeat R]``.  Each
row reports the best of ``R`` wall-clock timings per backend and the speedup
of the compiled backend over the fallback.
"""
import argparse
import contextlib
import timeit

import numpy as np

from steplike import Interaction, StepPotential, kernels
from steplike.fd_oracle import build, oracle_resolvent_norm
from steplike.resolvent_kernel import SampledFunction, apply_resolvent


@contextlib.contextmanager
def using(module):
    """Route the package's kernel calls through ``module`` for the duration."""
    saved = kernels.TridiagonalFactor, kernels.decay_sweep
    kernels.TridiagonalFactor, kernels.decay_sweep = module.TridiagonalFactor, module.decay_sweep
    try:
        yield
    finally:
        kernels.TridiagonalFactor, kernels.decay_sweep = saved


def cases(n: int):
    rng = np.random.default_rng(0)
    h = 0.01
    diag = 2 / h**2 + rng.normal(size=n) + 1j * rng.normal(size=n) - (5 + 0.2j)
    off = complex(-1 / h**2)
    rhs = rng.normal(size=n) + 1j * rng.normal(size=n)
    ratio = np.exp(-(0.05 + 1j) * h)
    pot = StepPotential(1j, -1j)
    half_width = n * h / 2
    disc = build(pot, Interaction(-0.5), half_width, h)
    f = SampledFunction.from_callable(lambda x: np.exp(-x * x), half_width, h)

    def factor_solve(mod):
        return lambda: mod.TridiagonalFactor(diag, off).solve(rhs)

    def gram_iterations(mod):
        fac = mod.TridiagonalFactor(diag, off)

        def run():
            v = rhs
            for _ in range(20):
                v = fac.apply_gram_inverse(v)
                v /= np.linalg.norm(v)
            return v

        return run

    def sweep(mod):
        return lambda: mod.decay_sweep(ratio, rhs)

    def oracle(mod):
        def run():
            with using(mod):
                return oracle_resolvent_norm(disc, 2 + 0.3j)

        return run

    def resolvent(mod):
        def run():
            with using(mod):
                return apply_resolvent(pot, Interaction(-0.5), -1 + 0.2j, f)

        return run

    return {
        "factor + solve": factor_solve,
        "20 gram-inverse steps": gram_iterations,
        "decay sweep": sweep,
        "oracle resolvent norm": oracle,
        "apply resolvent": resolvent,
    }


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nodes", type=int, default=100_001)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    backends = kernels.available_backends()
    names = sorted(backends)
    print(f"nodes={args.nodes} repeat={args.repeat} backends={','.join(names)}")
    print(f"{'kernel':<24}" + "".join(f"{n + ' [ms]':>16}" for n in names) + f"{'speedup':>10}")
    for label, make in cases(args.nodes).items():
        best = {}
        for name in names:
            fn = make(backends[name])
            fn()
            best[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3
        speed = f"{best['python'] / best['compiled']:.2f}x" if "compiled" in best else "n/a"
        print(f"{label:<24}" + "".join(f"{best[n]:>16.2f}" for n in names) + f"{speed:>10}")


if __name__ == "__main__":
    main()
