"""Rank profiles of diagonal matrix towers and of the conical systems built from them.

Each run prints, per tower, the node sizes, the rank profile, the rank of
the conical system seeded at the first node, and the wall time.
"""

import argparse
import time

from locsys.tower import Budget, build_diagonal_tower, conical_from_perfect, is_conical, rank_profile

TOWERS = {
    "corner": (1, [(1, 1)] * 5),
    "doubling": (2, [(2, 0), (2, 0)]),
    "padded": (2, [(2, 0), (2, 4)]),
    "tripling": (1, [(3, 0), (3, 0)]),
    "mixed": (2, [(1, 1), (2, 0), (1, 2)]),
}


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-size", type=int, default=12)
    args = p.parse_args()
    budget = Budget(max_matrix_size=args.max_size, max_dim=args.max_size ** 2)
    print(f"{'tower':10} {'sizes':18} {'ranks':18} {'conical rank':>12} {'seconds':>8}")
    for name, (n1, sigs) in TOWERS.items():
        t = time.perf_counter()
        ls = build_diagonal_tower(n1, sigs, budget=budget)
        ranks = [r for _, r in rank_profile(ls)]
        rep = is_conical(conical_from_perfect(ls, "1", 0))
        sizes = [round(a.dim ** 0.5) for _, a in ls.nodes]
        print(f"{name:10} {str(sizes):18} {str(ranks):18} {rep.witnesses.get('rank', rep.status)!s:>12} "
              f"{time.perf_counter() - t:8.2f}")


if __name__ == "__main__":
    main()
