"""Exact linear algebra over Q and GF(p).

Vectors are plain tuples of field elements.  Rationals are ``int`` or
``fractions.Fraction`` (the two compare and hash equal, so canonical forms
are structural); prime-field elements are ints in ``[0, p)``.

Elimination runs on sparse dict rows when the input density is below 10%
and on dense lists otherwise.  Both paths produce the same reduced row
echelon form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, FieldMismatchError

SPARSE_DENSITY = 0.10


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``characteristic == 0``, otherwise the prime field GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or prime, got {p}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    @classmethod
    def from_name(cls, name: str) -> "Field":
        s = name.strip()
        if s in ("Q", "QQ"):
            return cls(0)
        if s.startswith("GF(") and s.endswith(")"):
            return cls(int(s[3:-1]))
        raise ValueError(f"unknown field {name!r}")

    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction or string to a canonical element."""
        if isinstance(x, str):
            return self.parse(x)
        p = self.characteristic
        if p == 0:
            if isinstance(x, int):
                return x
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x % p
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, p) % p

    def parse(self, s: str) -> int | Fraction:
        s = s.strip()
        if self.characteristic == 0:
            return self(Fraction(s))
        return int(s) % self.characteristic

    def fmt(self, x) -> str:
        if self.characteristic == 0:
            x = Fraction(x)
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(int(x) % self.characteristic)

    def inv(self, x):
        p = self.characteristic
        if p == 0:
            r = 1 / Fraction(x)
            return r.numerator if r.denominator == 1 else r
        return pow(int(x), -1, p)

    def zeros(self, n: int) -> tuple:
        return (0,) * n

    def unit(self, n: int, i: int) -> tuple:
        v = [0] * n
        v[i] = 1
        return tuple(v)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _canon(field: Field, x):
    if field.characteristic:
        return x % field.characteristic
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _check_field(a: Field, b: Field):
    if a != b:
        raise FieldMismatchError(f"{a.name} vs {b.name}")


# --------------------------------------------------------------------------
# vector helpers


def vadd(field: Field, u: Sequence, v: Sequence) -> tuple:
    p = field.characteristic
    if p:
        return tuple((a + b) % p for a, b in zip(u, v))
    return tuple(_canon(field, a + b) for a, b in zip(u, v))


def vsub(field: Field, u: Sequence, v: Sequence) -> tuple:
    p = field.characteristic
    if p:
        return tuple((a - b) % p for a, b in zip(u, v))
    return tuple(_canon(field, a - b) for a, b in zip(u, v))


def vscale(field: Field, c, u: Sequence) -> tuple:
    p = field.characteristic
    if p:
        return tuple(c * a % p for a in u)
    return tuple(_canon(field, c * a) for a in u)


def is_zero(v: Iterable) -> bool:
    return not any(v)


def to_dense(d: dict, n: int) -> tuple:
    v = [0] * n
    for i, x in d.items():
        v[i] = x
    return tuple(v)


def to_sparse(v: Sequence) -> dict:
    return {i: x for i, x in enumerate(v) if x}


# --------------------------------------------------------------------------
# incremental elimination


class Echelon:
    """Reduced row echelon basis, grown one vector at a time.

    Rows are sparse dicts with pivot entry 1; every row is zero in every
    other row's pivot column, so reduction is a single pass.
    """

    def __init__(self, field: Field, ncols: int, vectors: Iterable = ()):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict] = {}
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def full(self) -> bool:
        return len(self.rows) == self.ncols

    def reduce(self, vec) -> dict:
        r = dict(vec) if isinstance(vec, dict) else to_sparse(vec)
        rows = self.rows
        p = self.field.characteristic
        for c in [c for c in r if c in rows]:
            coef = r.pop(c)
            for j, x in rows[c].items():
                if j == c:
                    continue
                y = r.get(j, 0) - coef * x
                if p:
                    y %= p
                if y:
                    r[j] = y
                else:
                    r.pop(j, None)
        if not p:
            for j, x in r.items():
                if type(x) is Fraction and x.denominator == 1:
                    r[j] = x.numerator
        return r

    def add(self, vec) -> dict | None:
        """Insert ``vec``; return its nonzero remainder, or None if dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        field = self.field
        p = field.characteristic
        piv = min(r)
        inv = field.inv(r[piv])
        if p:
            row = {j: x * inv % p for j, x in r.items()}
        else:
            row = {j: _canon(field, x * inv) for j, x in r.items()}
        for c, other in self.rows.items():
            coef = other.get(piv)
            if coef is None:
                continue
            for j, x in row.items():
                y = other.get(j, 0) - coef * x
                if p:
                    y %= p
                elif type(y) is Fraction and y.denominator == 1:
                    y = y.numerator
                if y:
                    other[j] = y
                else:
                    other.pop(j, None)
        self.rows[piv] = row
        return r

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def copy(self) -> "Echelon":
        e = Echelon(self.field, self.ncols)
        e.rows = {c: dict(r) for c, r in self.rows.items()}
        return e

    def basis(self) -> tuple:
        n = self.ncols
        return tuple(to_dense(self.rows[c], n) for c in sorted(self.rows))

    def subspace(self) -> "Subspace":
        return Subspace(self.field, self.ncols, self.basis())


# --------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Mat:
    field: Field
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count inconsistent with shape")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = [tuple(field(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[Sequence]) -> "Mat":
        ents = tuple(tuple(col[i] for col in columns) for i in range(nrows))
        return cls(field, nrows, len(columns), ents)

    @classmethod
    def from_sparse(cls, field: Field, rows: int, cols: int, triples: Iterable) -> "Mat":
        m = [[0] * cols for _ in range(rows)]
        for i, j, x in triples:
            m[i][j] = field(x)
        return cls(field, rows, cols, tuple(tuple(r) for r in m))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(field, n, n, tuple(field.unit(n, i) for i in range(n)))

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "Mat":
        ents = tuple(tuple(r[j] for r in self.entries) for j in range(self.cols))
        return Mat(self.field, self.cols, self.rows, ents)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise AmbientMismatchError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for r in self.entries:
            s = 0
            for j, x in nz:
                if r[j]:
                    s += r[j] * x
            out.append(s)
        return tuple(_canon(self.field, s) for s in out)

    def __matmul__(self, other: "Mat") -> "Mat":
        _check_field(self.field, other.field)
        if self.cols != other.rows:
            raise AmbientMismatchError(f"shapes {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.columns()
        return Mat.from_columns(self.field, self.rows, [self.apply(c) for c in cols])

    def nonzeros(self):
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                if x:
                    yield i, j, x

    def density(self) -> float:
        total = self.rows * self.cols
        return sum(1 for _ in self.nonzeros()) / total if total else 0.0

    def rank(self) -> int:
        return len(_eliminate(self)[1])


def _eliminate(m: Mat) -> tuple[list[tuple], list[int]]:
    """Nonzero rref rows (dense tuples) and their pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return [], []
    if m.density() < SPARSE_DENSITY:
        e = Echelon(m.field, m.cols, m.entries)
        piv = e.pivots
        return [to_dense(e.rows[c], m.cols) for c in piv], piv
    return _dense_rref(m.field, [list(r) for r in m.entries], m.cols)


def _dense_rref(field: Field, a: list[list], ncols: int) -> tuple[list[tuple], list[int]]:
    p = field.characteristic
    pivots: list[int] = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        sel = next((i for i in range(r, nrows) if a[i][c]), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        inv = field.inv(a[r][c])
        a[r] = [_canon(field, x * inv) for x in a[r]]
        row = a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                if p:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], row)]
                else:
                    a[i] = [_canon(field, x - f * y) if y else x for x, y in zip(a[i], row)]
        pivots.append(c)
        r += 1
    return [tuple(a[i]) for i in range(r)], pivots


def rref(m: Mat) -> Mat:
    """Reduced row echelon form, same shape, zero rows at the bottom."""
    rows, _ = _eliminate(m)
    pad = [(0,) * m.cols] * (m.rows - len(rows))
    return Mat(m.field, m.rows, m.cols, tuple(rows) + tuple(pad))


def kernel(m: Mat) -> "Subspace":
    rows, piv = _eliminate(m)
    free = [c for c in range(m.cols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for r, pc in zip(rows, piv):
            if r[f]:
                v[pc] = _canon(m.field, -r[f])
        basis.append(v)
    return Subspace.span(m.field, m.cols, basis)


def solve(m: Mat, b: Sequence) -> tuple | None:
    """One solution x of m x = b (free variables set to 0), or None."""
    if len(b) != m.rows:
        raise AmbientMismatchError("right-hand side length")
    aug = Mat(m.field, m.rows, m.cols + 1, tuple(r + (m.field(x),) for r, x in zip(m.entries, b)))
    rows, piv = _eliminate(aug)
    if piv and piv[-1] == m.cols:
        return None
    x = [0] * m.cols
    for r, pc in zip(rows, piv):
        x[pc] = r[m.cols]
    return tuple(x)


def inverse(m: Mat) -> Mat | None:
    n = m.rows
    if m.cols != n:
        raise AmbientMismatchError("inverse of a non-square matrix")
    aug = Mat(m.field, n, 2 * n, tuple(r + m.field.unit(n, i) for i, r in enumerate(m.entries)))
    rows, piv = _eliminate(aug)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    return Mat(m.field, n, n, tuple(r[n:] for r in rows))


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n held by its canonical rref basis."""

    field: Field
    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, field: Field, n: int, vectors: Iterable) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != n:
                raise AmbientMismatchError(f"vector of length {len(v)} in F^{n}")
        return Echelon(field, n, vectors).subspace()

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, tuple(field.unit(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(v) if x) for v in self.basis)

    def complement_pivots(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def echelon(self) -> Echelon:
        e = Echelon(self.field, self.ambient_dim)
        for v, c in zip(self.basis, self.pivots):
            e.rows[c] = to_sparse(v)
        return e

    def _compatible(self, other: "Subspace"):
        _check_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatchError(f"F^{self.ambient_dim} vs F^{other.ambient_dim}")

    def contains(self, w: Sequence) -> bool:
        if len(w) != self.ambient_dim:
            raise AmbientMismatchError(f"vector of length {len(w)} in F^{self.ambient_dim}")
        return self.echelon().contains(w)

    def reduce(self, w: Sequence) -> tuple:
        """Representative of w modulo this subspace, zero at every pivot."""
        return to_dense(self.echelon().reduce(w), self.ambient_dim)

    def coords(self, w: Sequence) -> tuple:
        """Coordinates of w in the stored basis; w must lie in the subspace."""
        return tuple(w[c] for c in self.pivots)

    def from_coords(self, c: Sequence) -> tuple:
        out = [0] * self.ambient_dim
        for x, v in zip(c, self.basis):
            if x:
                for i, y in enumerate(v):
                    if y:
                        out[i] += x * y
        return tuple(_canon(self.field, x) for x in out)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        e = self.echelon()
        for v in other.basis:
            e.add(v)
        return e.subspace()

    def __and__(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.field, self.ambient_dim)
        f = self.field
        cols = list(self.basis) + [vscale(f, -1, v) for v in other.basis]
        ker = kernel(Mat.from_columns(f, self.ambient_dim, cols))
        a = self.dim
        return Subspace.span(f, self.ambient_dim, (self.from_coords(k[:a]) for k in ker.basis))

    def __le__(self, other: "Subspace") -> bool:
        self._compatible(other)
        e = other.echelon()
        return all(e.contains(v) for v in self.basis)

    def map(self, m: Mat) -> "Subspace":
        """Image under the linear map m (rows = target dimension)."""
        if m.cols != self.ambient_dim:
            raise AmbientMismatchError("map source dimension")
        return Subspace.span(self.field, m.rows, (m.apply(v) for v in self.basis))


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u + v


def intersect(u: Subspace, v: Subspace) -> Subspace:
    return u & v


def contains(u: Subspace, w: Sequence) -> bool:
    return u.contains(w)
