"""Compare the trace-form radical and the Levi splitting against constructed S + N algebras.

Builds block incidence algebras with known nilpotent part in a scrambled
basis, over Q and several primes, and reports mismatches and timings.
"""

import argparse
import time
from collections import Counter

from locsys.fixtures import oracle_family
from locsys.structure import radical, wedderburn_malcev


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()
    family = oracle_family(args.count, seed=args.seed)
    by_field, dims, bad = Counter(), [], []
    t = time.perf_counter()
    for k, case in enumerate(family):
        a = case.algebra
        by_field[a.field.name] += 1
        dims.append(a.dim)
        if radical(a).space != case.radical:
            bad.append(k)
            continue
        split = wedderburn_malcev(a)
        if split.levi.dim != sum(s * s for s in case.semisimple_dims):
            bad.append(k)
    dt = time.perf_counter() - t
    print(f"cases: {len(family)}  fields: {dict(sorted(by_field.items()))}")
    print(f"dims: min {min(dims)}  max {max(dims)}  mean {sum(dims) / len(dims):.1f}")
    print(f"mismatches: {bad if bad else 'none'}")
    print(f"seconds: {dt:.2f} ({1000 * dt / len(family):.1f} ms per case)")


if __name__ == "__main__":
    main()
