"""Fixture algebras and towers with known structure, plus the S + N oracle family."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .algebra import (Algebra, block_incidence_algebra, change_basis, direct_sum, matrix_algebra, matrix_units,
                      null_algebra, strictly_upper, upper_triangular)
from .formats import diagonal_doc, dump_algebra, dump_doc, dump_tower
from .linear import GF, QQ, Field, Mat, Subspace, inverse
from .tower import DiagonalSignature, LocalSystem, build_diagonal_tower, conical_from_perfect


def non_associative() -> Algebra:
    """dim 2 with e1 e1 = e2, e2 e1 = e1 and the other products zero."""
    return Algebra.from_constants(2, QQ, [(0, 0, 1, 1), (1, 0, 0, 1)], label="nonassoc")


def named_algebras(field: Field = QQ) -> dict[str, Algebra]:
    out = {f"m{n}": matrix_algebra(n, field) for n in range(1, 7)}
    out.update({f"t{n}": upper_triangular(n, field) for n in range(2, 6)})
    out.update({f"n{n}": strictly_upper(n, field) for n in (3, 4)})
    out["m2m3"] = direct_sum(matrix_algebra(2, field), matrix_algebra(3, field), label="M_2+M_3")
    out["fm2"] = direct_sum(matrix_algebra(1, field), matrix_algebra(2, field), label="F+M_2")
    out["null1"] = null_algebra(1, field)
    return out


def _units_map(src: Algebra, tgt: Algebra, pairs) -> Mat:
    """Embedding matrix sending the named source unit to a sum of named target units."""
    sidx = {n: i for i, n in enumerate(src.basis_names())}
    tidx = {n: i for i, n in enumerate(tgt.basis_names())}
    trip = []
    for s, targets in pairs:
        for t in targets:
            trip.append((tidx[t], sidx[s], 1))
    return Mat.from_sparse(src.field, tgt.dim, src.dim, trip)


def _corner(src: Algebra, tgt: Algebra) -> Mat:
    """Unit e_ij of the source goes to e_ij of the target (names must agree)."""
    return _units_map(src, tgt, [(n, [n]) for n in src.basis_names()])


def _block_shift(src: Algebra, tgt: Algebra, offset: int, size: int) -> list:
    """Source M_k units (plain names) placed at block offset in a target of total size."""
    out = []
    for n in src.basis_names():
        i, j = int(n[1]), int(n[2])
        out.append((n, [f"e{i + offset}{j + offset}" if size <= 9 else f"e{i + offset}_{j + offset}"]))
    return out


def _chain(ids, algs, steps, label) -> LocalSystem:
    return LocalSystem.chain(ids, algs, steps, label=label)


def corrupted_tower() -> LocalSystem:
    """Corner chain M_1 -> M_2 -> M_3 whose recorded composite sends e to e22 instead of e11."""
    a1, a2, a3 = (matrix_algebra(n) for n in (1, 2, 3))
    good = _chain(["1", "2", "3"], [a1, a2, a3], [_corner(a1, a2), _corner(a2, a3)], "corrupted")
    emb = dict(good.embeddings)
    bad = _units_map(a1, a3, [("e11", ["e22"])])
    emb[("1", "3")] = type(emb[("1", "3")])(a1, a3, bad)
    return LocalSystem(good.nodes, good.order, emb, good.joins, good.label)


def two_node() -> LocalSystem:
    t2, m2 = upper_triangular(2), matrix_algebra(2)
    return _chain(["1", "2"], [t2, m2], [_corner(t2, m2)], "T_2<M_2")


def nilpotent_chain() -> LocalSystem:
    algs = [strictly_upper(n) for n in (2, 3, 4)]
    return _chain(["1", "2", "3"], algs, [_corner(algs[0], algs[1]), _corner(algs[1], algs[2])], "N_2<N_3<N_4")


def adversarial_triangular() -> LocalSystem:
    algs = [upper_triangular(n) for n in (2, 3, 4)]
    return _chain(["1", "2", "3"], algs, [_corner(algs[0], algs[1]), _corner(algs[1], algs[2])],
                  "T_2<T_3<T_4")


def _diag_field_algebra(n: int) -> Algebra:
    return block_incidence_algebra([1] * n, [(i, i) for i in range(n)], QQ, label=f"F^{n}")


def adversarial_diagonal() -> LocalSystem:
    """F^2 -> F^3 -> F^4, each step repeating the last coordinate."""
    algs = [_diag_field_algebra(n) for n in (2, 3, 4)]
    steps = []
    for a, b in zip(algs, algs[1:]):
        trip = [(i, i, 1) for i in range(a.dim)] + [(b.dim - 1, a.dim - 1, 1)]
        steps.append(Mat.from_sparse(QQ, b.dim, a.dim, trip))
    return _chain(["1", "2", "3"], algs, steps, "F^2<F^3<F^4")


def cond3_fail() -> LocalSystem:
    """M_2 mapped into the first block of M_2 + M_2 only."""
    m2 = matrix_algebra(2)
    big = direct_sum(m2, m2, label="M_2+M_2")
    step = _units_map(m2, big, [(n, [f"1.{n}"]) for n in m2.basis_names()])
    return _chain(["1", "2"], [m2, big], [step], "cond3")


def fm2_tower() -> LocalSystem:
    """F + M_2 -> M_3 (block diagonal) -> M_6 (two copies)."""
    fm2 = named_algebras()["fm2"]
    m3 = matrix_algebra(3)
    pairs = [("1.e11", ["e11"])] + [(f"2.{n}", t) for n, t in _block_shift(matrix_algebra(2), m3, 1, 3)]
    s1 = _units_map(fm2, m3, pairs)
    s2 = build_diagonal_tower(3, [DiagonalSignature(2, 0)]).embedding("1", "2").matrix
    return _chain(["1", "2", "3"], [fm2, m3, matrix_algebra(6)], [s1, s2], "F+M_2<M_3<M_6")


def fmn_tower() -> LocalSystem:
    """F + M_2 -> F + M_4, (a, X) -> (a, diag(X, X))."""
    m2, m4 = matrix_algebra(2), matrix_algebra(4)
    a = direct_sum(matrix_algebra(1), m2, label="F+M_2")
    b = direct_sum(matrix_algebra(1), m4, label="F+M_4")
    diag = build_diagonal_tower(2, [DiagonalSignature(2, 0)]).embedding("1", "2").matrix
    trip = [(0, 0, 1)] + [(i + 1, j + 1, x) for i, j, x in diag.nonzeros()]
    return _chain(["1", "2"], [a, b], [Mat.from_sparse(QQ, b.dim, a.dim, trip)], "F+M_2<F+M_4")


def m2m3_tower() -> LocalSystem:
    """M_2 + M_3 -> M_5 block diagonal."""
    m2, m3, m5 = matrix_algebra(2), matrix_algebra(3), matrix_algebra(5)
    a = direct_sum(m2, m3, label="M_2+M_3")
    pairs = [(f"1.{n}", t) for n, t in _block_shift(m2, m5, 0, 5)]
    pairs += [(f"2.{n}", t) for n, t in _block_shift(m3, m5, 2, 5)]
    return _chain(["1", "2"], [a, m5], [_units_map(a, m5, pairs)], "M_2+M_3<M_5")


def conical_fixture() -> LocalSystem:
    return conical_from_perfect(build_diagonal_tower(2, [(2, 0), (2, 0)]), "1", 0)


DIAGONAL_TOWERS = {
    "m_infty_prefix": (1, [(1, 1)] * 5),
    "diag_2_4_12": (2, [(2, 0), (2, 4)]),
    "diag_2_4_8": (2, [(2, 0), (2, 0)]),
}


def named_towers() -> dict[str, LocalSystem]:
    out = {name: build_diagonal_tower(n1, sigs) for name, (n1, sigs) in DIAGONAL_TOWERS.items()}
    out.update({
        "conical_fixture": conical_fixture(),
        "cond3_fail": cond3_fail(),
        "corrupted": corrupted_tower(),
        "nilpotent_chain": nilpotent_chain(),
        "two_node": two_node(),
        "fm2_tower": fm2_tower(),
        "fmn_tower": fmn_tower(),
        "m2m3_tower": m2m3_tower(),
        "adversarial_triangular": adversarial_triangular(),
        "adversarial_diagonal": adversarial_diagonal(),
    })
    return out


def corpus() -> dict[str, str]:
    """File name -> file text for the shipped fixture corpus."""
    files = {f"{name}.alg": dump_algebra(a) for name, a in named_algebras().items()}
    towers = named_towers()
    for name in towers:
        if name in DIAGONAL_TOWERS:
            n1, sigs = DIAGONAL_TOWERS[name]
            files[f"{name}.twr"] = dump_doc(diagonal_doc(n1, sigs, QQ))
        else:
            files[f"{name}.twr"] = dump_tower(towers[name])
    return dict(sorted(files.items()))


def write_corpus(outdir) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in corpus().items():
        p = out / name
        p.write_text(text, encoding="utf-8")
        written.append(p)
    return written


# --------------------------------------------------------------------------
# S + N oracle family


@dataclass(frozen=True)
class OracleCase:
    algebra: Algebra
    radical: Subspace  # the constructed nilpotent part, in the algebra's basis
    semisimple_dims: tuple  # block sizes of the semisimple part


def _random_strict_order(rng: random.Random, n: int, density: float) -> set:
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def _sparse_unipotent(rng: random.Random, field: Field, n: int, fill: int) -> Mat:
    """Permuted unit-triangular matrix with a few random off-diagonal entries."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(fill):
        i, j = sorted(rng.sample(range(n), 2)) if n > 1 else (0, 0)
        if i != j:
            rows[i][j] = field(rng.randint(-3, 3))
    perm = list(range(n))
    rng.shuffle(perm)
    return Mat.from_rows(field, [rows[p] for p in perm])


def oracle_case(rng: random.Random, field: Field, max_dim: int = 30) -> OracleCase:
    """Block incidence algebra S + N (optionally plus a null summand) in a scrambled basis."""
    while True:
        nblocks = rng.randint(1, 4)
        sizes = [rng.choice([1, 1, 2, 2, 3, 4]) for _ in range(nblocks)]
        rel = _random_strict_order(rng, nblocks, rng.choice([0.3, 0.6, 0.9]))
        pairs = {(i, i) for i in range(nblocks)} | rel
        a = block_incidence_algebra(sizes, pairs, field)
        extra = rng.choice([0, 0, 1, 2])
        if a.dim + extra <= max_dim:
            break
    units = matrix_units(sizes, pairs)
    block = [b for b, s in enumerate(sizes) for _ in range(s)]
    nil = [i for i, (r, c) in enumerate(units) if block[r] != block[c]]
    if extra:
        a = direct_sum(a, null_algebra(extra, field))
        nil += list(range(a.dim - extra, a.dim))
    g = _sparse_unipotent(rng, field, a.dim, fill=a.dim)
    ginv = inverse(g)
    b = change_basis(a, g, ginv, label=f"SN{tuple(sizes)}")
    rad = Subspace.span(field, b.dim, [ginv.apply(field.unit(a.dim, i)) for i in nil])
    return OracleCase(b, rad, tuple(sizes))


def oracle_family(count: int = 50, seed: int = 20240601) -> list[OracleCase]:
    rng = random.Random(seed)
    fields = [QQ, GF(31), GF(37), GF(101)]
    return [oracle_case(rng, fields[t % len(fields)]) for t in range(count)]
