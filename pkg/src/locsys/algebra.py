"""Finite-dimensional associative algebras given by structure constants.

Basis products are ``e_i e_j = sum_k c[i,j,k] e_k``; constants are stored as
sorted sparse quadruples ``(i, j, k, value)`` with 0-based indices.  No
identity element is assumed, and the 0-dimensional algebra is a legal value.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AlgebraMismatchError, FieldMismatchError, NotIdealError, NotSubalgebraError
from .linear import QQ, Echelon, Field, Mat, Subspace, _canon, to_dense


@dataclass(frozen=True)
class Algebra:
    dim: int
    field: Field
    sc: tuple = ()
    label: str = ""
    names: tuple = ()

    @classmethod
    def from_constants(cls, dim: int, field: Field, entries: Iterable, label: str = "", names: Sequence = ()) -> "Algebra":
        """Build from (i, j, k, value) quadruples; duplicates are summed, zeros dropped."""
        acc: dict[tuple, object] = {}
        for i, j, k, x in entries:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise ValueError(f"structure constant index out of range: {(i, j, k)}")
            acc[(i, j, k)] = acc.get((i, j, k), 0) + field(x)
        sc = tuple((i, j, k, field(x)) for (i, j, k), x in sorted(acc.items()) if field(x))
        names = tuple(names)
        if names and len(names) != dim:
            raise ValueError("basis name count differs from dim")
        return cls(dim, field, sc, label, names)

    # -- multiplication -----------------------------------------------------

    @cached_property
    def table(self) -> dict:
        """(i, j) -> tuple of (k, value) for nonzero basis products."""
        t: dict[tuple, list] = {}
        for i, j, k, x in self.sc:
            t.setdefault((i, j), []).append((k, x))
        return {key: tuple(v) for key, v in t.items()}

    @cached_property
    def _left(self) -> list[list]:
        # row i: list of (j, terms) with e_i e_j != 0
        rows = [[] for _ in range(self.dim)]
        for (i, j), terms in sorted(self.table.items()):
            rows[i].append((j, terms))
        return rows

    @cached_property
    def memo(self) -> dict:
        """Per-instance cache for derived invariants (radical, components...)."""
        return {}

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        """Product of two coordinate vectors."""
        out: dict[int, object] = {}
        vnz = {j: y for j, y in enumerate(v) if y}
        if not vnz:
            return (0,) * self.dim
        left = self._left
        for i, x in enumerate(u):
            if not x:
                continue
            for j, terms in left[i]:
                y = vnz.get(j)
                if y is None:
                    continue
                xy = x * y
                for k, c in terms:
                    out[k] = out.get(k, 0) + xy * c
        f = self.field
        res = [0] * self.dim
        for k, s in out.items():
            res[k] = _canon(f, s)
        return tuple(res)

    def basis_product(self, i: int, j: int) -> tuple:
        v = [0] * self.dim
        for k, c in self.table.get((i, j), ()):
            v[k] = c
        return tuple(v)

    def unit(self, i: int) -> tuple:
        return self.field.unit(self.dim, i)

    def element(self, coords: Sequence) -> "Element":
        return Element(self, tuple(self.field(x) for x in coords))

    def basis_names(self) -> tuple:
        return self.names or tuple(f"e{i + 1}" for i in range(self.dim))

    # -- subspaces ----------------------------------------------------------

    def subspace(self, vectors: Iterable) -> "AlgSubspace":
        return AlgSubspace(self, Subspace.span(self.field, self.dim, vectors))

    def zero(self) -> "AlgSubspace":
        return AlgSubspace(self, Subspace.zero(self.field, self.dim))

    def full(self) -> "AlgSubspace":
        return AlgSubspace(self, Subspace.full(self.field, self.dim))

    def __repr__(self):
        return f"Algebra({self.label or '?'}, dim={self.dim}, {self.field.name})"


@dataclass(frozen=True)
class Element:
    algebra: Algebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError("coordinate length differs from algebra dimension")

    def _same(self, other: "Element"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatchError("elements of different algebras")

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        f = self.algebra.field
        return Element(self.algebra, tuple(_canon(f, f(other) * x) for x in self.coords))

    __rmul__ = __mul__

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        f = self.algebra.field
        return Element(self.algebra, tuple(_canon(f, a + b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        f = self.algebra.field
        return Element(self.algebra, tuple(_canon(f, a - b) for a, b in zip(self.coords, other.coords)))

    def is_zero(self) -> bool:
        return not any(self.coords)


def multiply(x: Element, y: Element) -> Element:
    x._same(y)
    return Element(x.algebra, x.algebra.mul(x.coords, y.coords))


@dataclass(frozen=True)
class AlgSubspace:
    """A subspace of an algebra; ideal/subalgebra flags are computed, never assumed."""

    algebra: Algebra
    space: Subspace
    _flags: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> tuple:
        return self.space.basis

    def is_zero(self) -> bool:
        return self.space.is_zero()

    def is_full(self) -> bool:
        return self.space.is_full()

    def contains(self, w: Sequence) -> bool:
        return self.space.contains(w)

    def _same(self, other: "AlgSubspace"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatchError("subspaces of different algebras")

    def __add__(self, other: "AlgSubspace") -> "AlgSubspace":
        self._same(other)
        return AlgSubspace(self.algebra, self.space + other.space)

    def __and__(self, other: "AlgSubspace") -> "AlgSubspace":
        self._same(other)
        return AlgSubspace(self.algebra, self.space & other.space)

    def __le__(self, other: "AlgSubspace") -> bool:
        self._same(other)
        return self.space <= other.space

    @property
    def is_ideal(self) -> bool:
        if "ideal" not in self._flags:
            self._flags["ideal"] = self.is_zero() or self.is_full() or _check_ideal(self)
        return self._flags["ideal"]

    @property
    def is_subalgebra(self) -> bool:
        if "subalgebra" not in self._flags:
            if self.is_zero() or self.is_full():
                self._flags["subalgebra"] = True
                return True
            e = self.space.echelon()
            a = self.algebra
            self._flags["subalgebra"] = all(e.contains(a.mul(u, v)) for u in self.basis for v in self.basis)
        return self._flags["subalgebra"]


def _check_ideal(u: AlgSubspace) -> bool:
    a = u.algebra
    e = u.space.echelon()
    for v in u.basis:
        for i in range(a.dim):
            ei = a.unit(i)
            if not e.contains(a.mul(ei, v)) or not e.contains(a.mul(v, ei)):
                return False
    return True


# --------------------------------------------------------------------------
# constructions


def matrix_algebra(n: int, field: Field = QQ) -> Algebra:
    """M_n with matrix-unit basis e_ij in row-major order."""
    if n < 1:
        raise ValueError("n must be positive")
    return block_incidence_algebra([n], [(0, 0)], field, label=f"M_{n}")


def upper_triangular(n: int, field: Field = QQ) -> Algebra:
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    return block_incidence_algebra([1] * n, pairs, field, label=f"T_{n}")


def strictly_upper(n: int, field: Field = QQ) -> Algebra:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return block_incidence_algebra([1] * n, pairs, field, label=f"N_{n}")


def null_algebra(n: int, field: Field = QQ) -> Algebra:
    return Algebra.from_constants(n, field, [], label=f"null_{n}")


def unit_name(a: int, b: int, size: int) -> str:
    return f"e{a + 1}{b + 1}" if size <= 9 else f"e{a + 1}_{b + 1}"


def matrix_units(sizes: Sequence[int], pairs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Global (row, col) matrix units for the block pattern, row-major."""
    offs = [sum(sizes[:i]) for i in range(len(sizes))]
    block = []
    for b, s in enumerate(sizes):
        block += [b] * s
    allowed = set(pairs)
    n = sum(sizes)
    return [(r, c) for r in range(n) for c in range(n) if (block[r], block[c]) in allowed]


def block_incidence_algebra(sizes: Sequence[int], pairs: Iterable[tuple[int, int]], field: Field = QQ,
                            label: str = "") -> Algebra:
    """Span of matrix units e_rc with (block(r), block(c)) in a transitive relation.

    Diagonal pairs give the semisimple blocks M_{sizes[i]}; off-diagonal pairs
    give radical bimodule pieces.
    """
    pairs = set(pairs)
    for (i, j) in pairs:
        for (k, l) in pairs:
            if j == k and (i, l) not in pairs:
                raise ValueError(f"block relation not transitive: {(i, j)}, {(k, l)}")
    units = matrix_units(sizes, pairs)
    index = {u: t for t, u in enumerate(units)}
    by_row: dict[int, list] = {}
    for t, (r, c) in enumerate(units):
        by_row.setdefault(r, []).append((t, c))
    entries = []
    for s, (r, c) in enumerate(units):
        for t, c2 in by_row.get(c, ()):
            entries.append((s, t, index[(r, c2)], 1))
    n = sum(sizes)
    names = [unit_name(r, c, n) for r, c in units]
    return Algebra.from_constants(len(units), field, entries, label=label, names=names)


def direct_sum(a: Algebra, b: Algebra, label: str | None = None) -> Algebra:
    """Block direct sum; cross-block products vanish."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field.name} vs {b.field.name}")
    if b.dim == 0:
        return a
    if a.dim == 0:
        return b
    return direct_sum_many([a, b], label=f"{a.label}+{b.label}" if label is None else label)


def direct_sum_many(parts: Sequence[Algebra], label: str = "") -> Algebra:
    if not parts:
        raise ValueError("empty direct sum")
    f = parts[0].field
    entries, names, off = [], [], 0
    for t, p in enumerate(parts):
        if p.field != f:
            raise FieldMismatchError(f"{p.field.name} vs {f.name}")
        entries += [(i + off, j + off, k + off, x) for i, j, k, x in p.sc]
        names += [f"{t + 1}.{n}" for n in p.basis_names()]
        off += p.dim
    return Algebra.from_constants(off, f, entries, label=label, names=names)


def change_basis(a: Algebra, g: Mat, ginv: Mat, label: str | None = None) -> Algebra:
    """Presentation in the basis f_i = sum_k g[k][i] e_k (columns of g)."""
    cols = g.columns()
    entries = []
    for i, u in enumerate(cols):
        for j, v in enumerate(cols):
            w = ginv.apply(a.mul(u, v))
            entries += [(i, j, k, x) for k, x in enumerate(w) if x]
    return Algebra.from_constants(a.dim, a.field, entries, label=a.label if label is None else label)


# --------------------------------------------------------------------------
# associativity


@dataclass(frozen=True)
class AssociativityReport:
    ok: bool
    violation: tuple | None = None  # 0-based (i, j, k, l)
    lhs: object = None
    rhs: object = None


def check_associativity(a: Algebra) -> AssociativityReport:
    """Compare (e_i e_j) e_k with e_i (e_j e_k) on every coordinate l.

    Both sides are accumulated only over nonzero structure constants, so the
    cost follows the sparsity of the table rather than dim^4.
    """
    right_of: dict[int, list] = {}  # m -> [(k, terms of e_m e_k)]
    left_of: dict[int, list] = {}  # m -> [(i, terms of e_i e_m)]
    for (i, j), terms in a.table.items():
        right_of.setdefault(i, []).append((j, terms))
        left_of.setdefault(j, []).append((i, terms))
    lhs: dict[tuple, object] = {}
    rhs: dict[tuple, object] = {}
    for (i, j), terms in a.table.items():
        for m, x in terms:
            for k, inner in right_of.get(m, ()):
                for l, y in inner:
                    lhs[(i, j, k, l)] = lhs.get((i, j, k, l), 0) + x * y
    for (j, k), terms in a.table.items():
        for m, x in terms:
            for i, inner in left_of.get(m, ()):
                for l, y in inner:
                    rhs[(i, j, k, l)] = rhs.get((i, j, k, l), 0) + x * y
    f = a.field
    bad = sorted(q for q in set(lhs) | set(rhs) if f(lhs.get(q, 0)) != f(rhs.get(q, 0)))
    if bad:
        q = bad[0]
        return AssociativityReport(False, q, f(lhs.get(q, 0)), f(rhs.get(q, 0)))
    return AssociativityReport(True)


# --------------------------------------------------------------------------
# subspace operations


def _span_products(a: Algebra, left: Sequence, right: Sequence, start: Echelon | None = None) -> Echelon:
    e = start if start is not None else Echelon(a.field, a.dim)
    for u in left:
        for v in right:
            if e.full():
                return e
            e.add(a.mul(u, v))
    return e


def subspace_product(u: AlgSubspace, v: AlgSubspace) -> AlgSubspace:
    u._same(v)
    a = u.algebra
    if u.is_full() and v.is_full():
        return square(a)
    return AlgSubspace(a, _span_products(a, u.basis, v.basis).subspace())


def square(a: Algebra) -> AlgSubspace:
    key = "square"
    if key not in a.memo:
        e = Echelon(a.field, a.dim)
        for _, terms in sorted(a.table.items()):
            if e.full():
                break
            e.add(dict(terms))
        a.memo[key] = AlgSubspace(a, e.subspace())
    return a.memo[key]


def power_chain(a: Algebra) -> list[AlgSubspace]:
    """A^1, A^2 = A A^1, ... up to the first k with A^k = A^(k+1)."""
    if "power_chain" in a.memo:
        return list(a.memo["power_chain"])
    chain = [a.full()]
    if a.dim:
        chain.append(square(a))
    while len(chain) > 1 and chain[-1].dim < chain[-2].dim and not chain[-1].is_zero():
        nxt = AlgSubspace(a, _span_products(a, [a.unit(i) for i in range(a.dim)], chain[-1].basis).subspace())
        chain.append(nxt)
    if len(chain) > 1 and chain[-1].dim == chain[-2].dim:
        chain.pop()
    a.memo["power_chain"] = tuple(chain)
    return chain


def subalgebra_generated(a: Algebra, gens: Iterable) -> AlgSubspace:
    gens = [g.coords if isinstance(g, Element) else tuple(g) for g in gens]
    e = Echelon(a.field, a.dim)
    done: list[tuple] = []
    queue = []
    for g in gens:
        r = e.add(g)
        if r is not None:
            queue.append(to_dense(r, a.dim))
    while queue:
        v = queue.pop(0)
        done.append(v)
        for w in done:
            for prod in (a.mul(v, w), a.mul(w, v)):
                r = e.add(prod)
                if r is not None:
                    queue.append(to_dense(r, a.dim))
    return AlgSubspace(a, e.subspace())


def ideal_generated(a: Algebra, s) -> AlgSubspace:
    """Smallest two-sided ideal containing s (an AlgSubspace or vectors)."""
    vecs = s.basis if isinstance(s, AlgSubspace) else [tuple(v) for v in s]
    e = Echelon(a.field, a.dim)
    queue = []
    for v in vecs:
        r = e.add(v)
        if r is not None:
            queue.append(to_dense(r, a.dim))
    units = [a.unit(i) for i in range(a.dim)]
    while queue and not e.full():
        v = queue.pop()
        for ei in units:
            for prod in (a.mul(ei, v), a.mul(v, ei)):
                r = e.add(prod)
                if r is not None:
                    queue.append(to_dense(r, a.dim))
    out = AlgSubspace(a, e.subspace())
    out._flags["ideal"] = True
    return out


def is_ideal(a: Algebra, u: AlgSubspace) -> bool:
    if u.algebra != a:
        raise AlgebraMismatchError("subspace of a different algebra")
    return u.is_ideal


def restrict(u: AlgSubspace, label: str | None = None) -> tuple[Algebra, Mat]:
    """Present a subalgebra on its rref basis; returns (algebra, inclusion matrix)."""
    a = u.algebra
    if u.is_full():
        return a, Mat.identity(a.field, a.dim)
    if not u.is_subalgebra:
        raise NotSubalgebraError("subspace is not closed under multiplication")
    basis = u.basis
    piv = u.space.pivots
    entries = []
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            w = a.mul(x, y)
            entries += [(i, j, k, w[c]) for k, c in enumerate(piv) if w[c]]
    names = []
    an = a.basis_names()
    for t, v in enumerate(basis):
        nz = [i for i, x in enumerate(v) if x]
        names.append(an[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else f"b{t + 1}")
    if len(set(names)) != len(names):
        names = [f"b{t + 1}" for t in range(len(basis))]
    lab = label if label is not None else f"{a.label}|{u.dim}"
    b = Algebra.from_constants(len(basis), a.field, entries, label=lab, names=names)
    return b, Mat.from_columns(a.field, a.dim, list(basis))


def quotient(a: Algebra, i: AlgSubspace, label: str | None = None) -> tuple[Algebra, Mat]:
    """A/I on the complement pivots of I's rref basis; returns (algebra, projection)."""
    if not i.is_ideal:
        raise NotIdealError("quotient by a subspace that is not an ideal")
    comp = i.space.complement_pivots()
    e = i.space.echelon()

    def project(v):
        r = e.reduce(v)
        return tuple(r.get(c, 0) for c in comp)

    cols = [project(a.unit(j)) for j in range(a.dim)]
    proj = Mat.from_columns(a.field, len(comp), cols)
    entries = []
    for s, cs in enumerate(comp):
        for t, ct in enumerate(comp):
            w = project(a.basis_product(cs, ct))
            entries += [(s, t, k, x) for k, x in enumerate(w) if x]
    an = a.basis_names()
    lab = label if label is not None else f"{a.label}/{i.dim}"
    q = Algebra.from_constants(len(comp), a.field, entries, label=lab, names=[an[c] for c in comp])
    return q, proj


def lift_from_quotient(a: Algebra, i: AlgSubspace, y: Sequence) -> tuple:
    """Canonical preimage of a quotient vector: supported on the complement pivots."""
    comp = i.space.complement_pivots()
    v = [0] * a.dim
    for c, x in zip(comp, y):
        v[c] = x
    return tuple(v)


def preimage(a: Algebra, i: AlgSubspace, sub: Subspace) -> AlgSubspace:
    """Full preimage in A of a subspace of A/I."""
    vecs = [lift_from_quotient(a, i, y) for y in sub.basis]
    return AlgSubspace(a, Subspace.span(a.field, a.dim, list(i.basis) + vecs))


def is_simple(a: Algebra) -> bool:
    from .structure import is_simple as _is_simple

    return _is_simple(a)
