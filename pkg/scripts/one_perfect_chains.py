"""Codimension-1 chains under different tie-break seeds.

Intermediate chains depend on the seed; the terminal subspace must not.
"""

import argparse

from locsys.fixtures import named_algebras, named_towers
from locsys.structure import one_perfect_chain


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seeds", type=int, default=8)
    args = p.parse_args()
    algs = dict(named_algebras())
    for name, ls in named_towers().items():
        for node, a in ls.nodes:
            algs.setdefault(f"{name}@{node}", a)
    print(f"{'algebra':28} {'dim':>4} {'P dim':>6} {'distinct chains':>16} {'terminal agrees':>16}")
    for name, a in algs.items():
        if a.dim > 40:
            continue
        chains = [one_perfect_chain(a, seed=s) for s in range(args.seeds)]
        terminals = {c[-1].space for c in chains}
        distinct = {tuple(x.space for x in c) for c in chains}
        print(f"{name:28} {a.dim:>4} {chains[0][-1].dim:>6} {len(distinct):>16} {str(len(terminals) == 1):>16}")


if __name__ == "__main__":
    main()
