"""Structure theory of a single finite-dimensional algebra.

Radical via the trace form (char 0 or p > dim), Wedderburn-Malcev lifting,
simple components via central idempotents, characters, the 1-perfect
radical and the rank of a perfect algebra.

Tie-breaking is lowest-index-first; functions that make choices accept a
``seed`` which permutes candidate order and nothing else.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .algebra import (AlgSubspace, Algebra, _span_products, power_chain, preimage, quotient, restrict,
                      square)
from .errors import (CharacteristicError, LocsysError, NonSplitError, NotPerfectError,
                     NotSemisimpleError)
from .linear import QQ, Echelon, Field, Mat, Subspace, _canon, inverse, kernel, solve, vscale, vsub

NON_SPLIT = "non-split"


# --------------------------------------------------------------------------
# radical and powers


def radical(a: Algebra) -> AlgSubspace:
    """Jacobson radical as the kernel of the trace form Tr(L_x L_y)."""
    if "radical" in a.memo:
        return a.memo["radical"]
    p = a.field.characteristic
    if p and p <= a.dim:
        raise CharacteristicError(f"trace-form radical needs p > {a.dim} (the dimension), got p = {p}")
    n = a.dim
    tr = [0] * n  # Tr(L_{e_i}) = sum_m c[i, m, m]
    for i, j, k, c in a.sc:
        if j == k:
            tr[i] += c
    gram = [[0] * n for _ in range(n)]
    for (i, j), terms in a.table.items():
        s = sum(c * tr[k] for k, c in terms)
        gram[i][j] = _canon(a.field, s)
    rad = AlgSubspace(a, kernel(Mat(a.field, n, n, tuple(tuple(r) for r in gram))))
    if not rad.is_ideal:
        raise LocsysError("trace-form kernel is not an ideal")
    if not ideal_powers(rad)[-1].is_zero():
        raise LocsysError("trace-form kernel is not nilpotent")
    a.memo["radical"] = rad
    return rad


def ideal_powers(u: AlgSubspace) -> list[AlgSubspace]:
    """U, U^2, U^3, ... ending at 0 or at the first repeat."""
    a = u.algebra
    out = [u]
    while not out[-1].is_zero():
        nxt = AlgSubspace(a, _span_products(a, u.basis, out[-1].basis).subspace())
        if nxt.dim == out[-1].dim:
            break
        out.append(nxt)
    return out


def is_nilpotent(a: Algebra) -> bool:
    return power_chain(a)[-1].is_zero()


def perfect_core(a: Algebra) -> AlgSubspace:
    return power_chain(a)[-1]


def is_residually_nilpotent(a: Algebra) -> bool:
    # the power chain stabilizes, so the intersection of all powers is its last term
    return perfect_core(a).is_zero()


def is_perfect(a: Algebra) -> bool:
    return perfect_core(a).is_full()


def semisimple_quotient(a: Algebra) -> tuple[Algebra, Mat, AlgSubspace]:
    """(A/rad A, projection, rad A); A itself when the radical vanishes."""
    if "ss_quotient" not in a.memo:
        rad = radical(a)
        if rad.is_zero():
            a.memo["ss_quotient"] = (a, Mat.identity(a.field, a.dim), rad)
        else:
            b, proj = quotient(a, rad, label=f"{a.label}/rad")
            a.memo["ss_quotient"] = (b, proj, rad)
    return a.memo["ss_quotient"]


# --------------------------------------------------------------------------
# polynomials (sympy handles factoring only)

_X = sympy.Symbol("x")


def _to_poly(field: Field, coeffs: Sequence) -> sympy.Poly:
    """Poly from coefficients listed low degree first."""
    hi = list(reversed(coeffs))
    if field.characteristic:
        return sympy.Poly([int(c) for c in hi], _X, modulus=field.characteristic)
    return sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in hi], _X,
                      domain=sympy.QQ)


def _from_poly(field: Field, poly: sympy.Poly) -> list:
    out = []
    for c in reversed(poly.all_coeffs()):
        if field.characteristic:
            out.append(field(int(c)))
        else:
            c = sympy.Rational(c)
            out.append(field(Fraction(int(c.p), int(c.q))))
    return out


def _factors(field: Field, m: Sequence) -> list[tuple[sympy.Poly, int]]:
    _, facs = _to_poly(field, m).factor_list()
    facs = [(f.monic(), e) for f, e in facs]
    facs.sort(key=lambda fe: (fe[0].degree(), [str(c) for c in _from_poly(field, fe[0])]))
    return facs


def minimal_polynomial(a: Algebra, y: Sequence, one: Sequence) -> list:
    """Monic minimal polynomial of y over the unital subalgebra with identity ``one``."""
    n = a.dim
    e = Echelon(a.field, n + n + 2)
    power = tuple(one)
    for k in range(n + 2):
        aug = dict((i, x) for i, x in enumerate(power) if x)
        aug[n + k] = 1
        r = e.reduce(aug)
        if all(i >= n for i in r):
            coeffs = [r.get(n + i, 0) for i in range(k + 1)]
            return coeffs
        e.add(aug)
        power = a.mul(power, y)
    raise LocsysError("minimal polynomial degree exceeded dimension")


def evaluate(a: Algebra, coeffs: Sequence, y: Sequence, one: Sequence) -> tuple:
    f = a.field
    out = a.field.zeros(a.dim)
    for c in reversed(coeffs):
        out = a.mul(out, y)
        if c:
            out = tuple(_canon(f, u + c * v) for u, v in zip(out, one))
    return out


def _split_idempotent(a: Algebra, y, one, m) -> tuple | None:
    """Idempotent for the first primary factor of m(y), or None if m is primary."""
    facs = _factors(a.field, m)
    if len(facs) < 2:
        return None
    f0, e0 = facs[0]
    g = f0 ** e0
    h = _to_poly(a.field, m).quo(g)
    s, t, d = g.gcdex(h)
    u = (t * h).rem(_to_poly(a.field, m))
    return evaluate(a, _from_poly(a.field, u), y, one)


# --------------------------------------------------------------------------
# semisimple algebras


def center(a: Algebra) -> Subspace:
    """Elements commuting with every basis vector, by successive centralizers."""
    basis = [a.unit(i) for i in range(a.dim)]
    for i in range(a.dim):
        if not basis:
            break
        ei = a.unit(i)
        cols = [vsub(a.field, a.mul(b, ei), a.mul(ei, b)) for b in basis]
        if not any(any(c) for c in cols):
            continue
        ker = kernel(Mat.from_columns(a.field, a.dim, cols))
        basis = [_combine(a.field, basis, k) for k in ker.basis]
    return Subspace.span(a.field, a.dim, basis)


def _combine(field: Field, vecs: Sequence, coeffs: Sequence) -> tuple:
    out = [0] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        if c:
            for i, x in enumerate(v):
                if x:
                    out[i] += c * x
    return tuple(_canon(field, x) for x in out)


def identity_element(a: Algebra, z: Subspace | None = None) -> tuple | None:
    """Identity of A, searched inside the center (where it must live)."""
    z = center(a) if z is None else z
    if z.is_zero():
        return None
    cols = []
    for b in z.basis:
        cols.append(tuple(x for bs in z.basis for x in a.mul(b, bs)))
    rhs = tuple(x for bs in z.basis for x in bs)
    sol = solve(Mat.from_columns(a.field, len(rhs), cols), rhs)
    if sol is None:
        return None
    e = _combine(a.field, z.basis, sol)
    for i in range(a.dim):
        u = a.unit(i)
        if a.mul(e, u) != u or a.mul(u, e) != u:
            return None
    return e


@dataclass(frozen=True)
class ComponentList:
    components: tuple  # AlgSubspace per simple component, sorted by first pivot
    ranks: tuple  # int rank, or NON_SPLIT
    idempotents: tuple  # central primitive idempotent of each component
    matrix_units: tuple  # r x r nested tuples of vectors, or None when non-split

    @property
    def split(self) -> bool:
        return all(r != NON_SPLIT for r in self.ranks)

    def __len__(self):
        return len(self.components)


def _permuted(items: Sequence, rng: random.Random | None) -> list:
    items = list(items)
    if rng is not None:
        rng.shuffle(items)
    return items


def _primitive_central(a: Algebra, z: Subspace, one: tuple) -> tuple[tuple, list]:
    """A central element whose minimal polynomial has degree dim Z."""
    f = a.field
    p = f.characteristic
    zb = z.basis
    tries = []
    limit = 4 * z.dim * z.dim + 16
    for c in range(1, limit):
        if p and c >= p:
            break
        tries.append([f(c ** t) for t in range(z.dim)])
    for s in range(z.dim):
        for t in range(s + 1, z.dim):
            tries.append([1 if i in (s, t) else 0 for i in range(z.dim)])
    for co in tries:
        y = _combine(f, zb, co)
        m = minimal_polynomial(a, y, one)
        if len(m) - 1 == z.dim:
            return y, m
    raise LocsysError("no primitive central element found")


def simple_components(a: Algebra, seed: int | None = None) -> ComponentList:
    """Minimal ideals of a semisimple algebra, with split ranks certified by matrix units."""
    key = ("components", seed)
    if key in a.memo:
        return a.memo[key]
    if a.dim == 0:
        out = ComponentList((), (), (), ())
        a.memo[key] = out
        return out
    if not radical(a).is_zero():
        raise NotSemisimpleError("simple_components needs a semisimple algebra (nonzero radical)")
    rng = random.Random(seed) if seed is not None else None
    z = center(a)
    one = identity_element(a, z)
    if one is None:
        raise NotSemisimpleError("semisimple algebra without identity")
    if z.dim == 1:
        blocks = [(one, 1)]
    else:
        y, m = _primitive_central(a, z, one)
        blocks = []
        mp = _to_poly(a.field, m)
        for fac, mult in _factors(a.field, m):
            if mult != 1:
                raise NotSemisimpleError("center is not reduced")
            h = mp.quo(fac)
            s, t, d = fac.gcdex(h)
            u = (t * h).rem(mp)
            blocks.append((evaluate(a, _from_poly(a.field, u), y, one), fac.degree()))
    found = []
    units = [a.unit(j) for j in range(a.dim)]
    for e, deg in blocks:
        comp = AlgSubspace(a, Echelon(a.field, a.dim, (a.mul(e, u) for u in units)).subspace())
        comp._flags["ideal"] = True
        found.append((comp, e, deg))
    found.sort(key=lambda t: t[0].space.pivots[0])
    comps, ranks, idems, mus = [], [], [], []
    for comp, e, deg in found:
        mu = _matrix_units(a, comp, e, rng) if deg == 1 else None
        comps.append(comp)
        idems.append(e)
        mus.append(mu)
        ranks.append(len(mu) if mu is not None else NON_SPLIT)
    out = ComponentList(tuple(comps), tuple(ranks), tuple(idems), tuple(mus))
    a.memo[key] = out
    return out


def _sandwich(a: Algebra, f: tuple, comp: AlgSubspace) -> Subspace:
    e = Echelon(a.field, a.dim)
    for b in comp.basis:
        e.add(a.mul(a.mul(f, b), f))
    return e.subspace()


def _candidates(field: Field, basis: list):
    """Basis vectors first, then pairwise sums, lazily."""
    yield from basis
    for s in range(len(basis)):
        for t in range(s + 1, len(basis)):
            yield tuple(_canon(field, x + y) for x, y in zip(basis[s], basis[t]))


def _matrix_units(a: Algebra, comp: AlgSubspace, e: tuple, rng) -> tuple | None:
    """r x r matrix units spanning a simple component, or None if none are found."""
    f = e
    while True:
        u = _sandwich(a, f, comp)
        if u.dim == 1:
            break
        nxt = None
        for y in _candidates(a.field, _permuted(u.basis, rng)):
            g = _split_idempotent(a, y, f, minimal_polynomial(a, y, f))
            if g is None:
                continue
            g2 = vsub(a.field, f, g)
            nxt = g if _sandwich(a, g, comp).dim <= _sandwich(a, g2, comp).dim else g2
            break
        if nxt is None:
            return None
        f = nxt
    v = Echelon(a.field, a.dim, (a.mul(b, f) for b in comp.basis)).subspace()
    r = v.dim
    d = comp.dim
    if r * r != d:
        return None
    cols = []
    for b in comp.basis:
        cols.append(tuple(x for vq in v.basis for x in v.coords(a.mul(b, vq))))
    # cols[s] lists L_b(v_q) coordinates q-major: entry (row p, col q) at q*r + p
    phi = Mat.from_columns(a.field, d, cols)
    inv = inverse(phi)
    if inv is None:
        return None
    units = tuple(tuple(comp.space.from_coords(inv.column(q * r + p_)) for q in range(r)) for p_ in range(r))
    zero = a.field.zeros(a.dim)
    for i in range(r):
        for j in range(r):
            for k in range(r):
                for l in range(r):
                    want = units[i][l] if j == k else zero
                    if a.mul(units[i][j], units[k][l]) != want:
                        return None
    total = zero
    for i in range(r):
        total = tuple(_canon(a.field, x + y) for x, y in zip(total, units[i][i]))
    if total != tuple(e):
        return None
    return units


# --------------------------------------------------------------------------
# Wedderburn-Malcev


@dataclass(frozen=True)
class LeviSplit:
    levi: AlgSubspace
    radical: AlgSubspace


def wedderburn_malcev(a: Algebra) -> LeviSplit:
    """Semisimple subalgebra S with A = S + rad A (direct).

    Start from the coordinate complement of rad A and correct the lifted
    basis modulo rad^k, k = 1, 2, ..., by solving the linear system for the
    multiplicative defect.
    """
    rad = radical(a)
    if rad.is_zero():
        return LeviSplit(a.full(), rad)
    if rad.is_full():
        return LeviSplit(a.zero(), rad)
    b, proj, _ = semisimple_quotient(a)
    if not simple_components(b).split:
        raise NonSplitError("A/rad A has a non-split simple component")
    f = a.field
    pw = ideal_powers(rad)
    comp = rad.space.complement_pivots()
    s = [a.unit(c) for c in comp]
    d = len(s)
    gamma = b.table
    for k in range(len(pw) - 1):
        rk, rk1 = pw[k], pw[k + 1]
        defects = {}
        for i in range(d):
            for j in range(d):
                dij = a.mul(s[i], s[j])
                for l, g in gamma.get((i, j), ()):
                    dij = vsub(f, dij, vscale(f, g, s[l]))
                defects[(i, j)] = dij
        lower = rk1.space.echelon()
        if all(lower.contains(x) for x in defects.values()):
            continue
        comp_e = Echelon(f, a.dim)
        for w in rk.basis:
            r = lower.reduce(w)
            if r:
                comp_e.add(r)
        cvecs = comp_e.basis()
        cpiv = comp_e.pivots
        m = len(cvecs)

        def q(x):
            r = lower.reduce(x)
            return [r.get(c, 0) for c in cpiv]

        ql = [[q(a.mul(s[i], c)) for c in cvecs] for i in range(d)]
        qr = [[q(a.mul(c, s[j])) for c in cvecs] for j in range(d)]
        nvar = d * m
        sysm = Echelon(f, nvar + 1)
        for i in range(d):
            for j in range(d):
                qd = q(defects[(i, j)])
                for u in range(m):
                    row: dict[int, object] = {}
                    for t in range(m):
                        row[j * m + t] = row.get(j * m + t, 0) + ql[i][t][u]
                        row[i * m + t] = row.get(i * m + t, 0) + qr[j][t][u]
                    for l, g in gamma.get((i, j), ()):
                        row[l * m + u] = row.get(l * m + u, 0) - g
                    row[nvar] = -qd[u]
                    row = {c: _canon(f, x) for c, x in row.items() if _canon(f, x)}
                    if row:
                        sysm.add(row)
        if nvar in sysm.rows:
            raise LocsysError("Wedderburn-Malcev correction system is inconsistent")
        sol = [0] * nvar
        for c, row in sysm.rows.items():
            sol[c] = row.get(nvar, 0)
        for i in range(d):
            delta = _combine(f, cvecs, sol[i * m:(i + 1) * m])
            s[i] = tuple(_canon(f, x + y) for x, y in zip(s[i], delta))
    levi = AlgSubspace(a, Subspace.span(f, a.dim, s))
    split = LeviSplit(levi, rad)
    _check_levi(a, split)
    return split


def _check_levi(a: Algebra, split: LeviSplit):
    levi, rad = split.levi, split.radical
    if not (levi & rad).is_zero():
        raise LocsysError("Levi part meets the radical")
    if not (levi + rad).is_full():
        raise LocsysError("Levi part and radical do not span A")
    if not levi.is_subalgebra:
        raise LocsysError("Levi part is not closed under multiplication")
    s_alg, _ = restrict(levi)
    if not radical(s_alg).is_zero():
        raise LocsysError("Levi part is not semisimple")


# --------------------------------------------------------------------------
# characters and the 1-perfect radical


@dataclass(frozen=True)
class Character:
    functional: tuple
    field: Field = QQ

    def __call__(self, v: Sequence):
        return _canon(self.field, sum(x * y for x, y in zip(self.functional, v)))

    def kernel(self, a: Algebra) -> AlgSubspace:
        return AlgSubspace(a, kernel(Mat(a.field, 1, a.dim, (self.functional,))))


def characters(a: Algebra) -> list[Character]:
    """One character per 1-dimensional simple component of A/rad A."""
    if a.dim == 0:
        return []
    b, proj, _ = semisimple_quotient(a)
    comps = simple_components(b)
    f = a.field
    out = []
    for comp, e in zip(comps.components, comps.idempotents):
        if comp.dim != 1:
            continue
        pe = next(i for i, x in enumerate(e) if x)
        inv = f.inv(e[pe])
        fb = [_canon(f, b.mul(e, b.unit(j))[pe] * inv) for j in range(b.dim)]
        func = tuple(_canon(f, sum(x * y for x, y in zip(fb, proj.column(c)))) for c in range(a.dim))
        _check_character(a, func)
        out.append(Character(func, f))
    return out


def _check_character(a: Algebra, func: tuple):
    f = a.field
    if not any(func):
        raise LocsysError("zero functional")
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = _canon(f, sum(c * func[k] for k, c in a.table.get((i, j), ())))
            if lhs != _canon(f, func[i] * func[j]):
                raise LocsysError("functional is not multiplicative")


def find_codim1_ideal(a: Algebra, seed: int | None = None, rng: random.Random | None = None) -> AlgSubspace | None:
    """A codimension-1 ideal, or None when A is 1-perfect."""
    if rng is None and seed is not None:
        rng = random.Random(seed)
    if a.dim == 0:
        return None
    sq = square(a)
    if sq.dim < a.dim:
        free = _permuted(sq.space.complement_pivots(), rng)
        drop = free[0]
        vecs = list(sq.basis) + [a.unit(c) for c in free if c != drop]
        return a.subspace(vecs)
    chars = _permuted(characters(a), rng)
    if not chars:
        return None
    return chars[0].kernel(a)


def one_perfect_chain(a: Algebra, seed: int | None = None) -> list[AlgSubspace]:
    """A = A_0 > A_1 > ... > A_r with codimension-1 steps, in A's coordinates."""
    rng = random.Random(seed) if seed is not None else None
    cur, incl = a, Mat.identity(a.field, a.dim)
    chain = [a.full()]
    step = 0
    while True:
        h = find_codim1_ideal(cur, rng=rng)
        if h is None:
            break
        step += 1
        cur, sub_incl = restrict(h, label=f"{a.label}#{step}")
        incl = incl @ sub_incl
        chain.append(AlgSubspace(a, Subspace.span(a.field, a.dim, incl.columns())))
    return chain


def one_perfect_radical(a: Algebra, seed: int | None = None) -> AlgSubspace:
    return one_perfect_chain(a, seed)[-1]


def is_one_perfect(a: Algebra) -> bool:
    return find_codim1_ideal(a) is None


# --------------------------------------------------------------------------
# perfect algebras


def maximal_ideals(a: Algebra) -> list[AlgSubspace]:
    """For each simple component of A/rad A, the preimage of the other components."""
    if not is_perfect(a):
        raise NotPerfectError("maximal_ideals needs a perfect algebra")
    b, proj, rad = semisimple_quotient(a)
    comps = simple_components(b)
    out = []
    for i in range(len(comps)):
        others = Subspace.zero(b.field, b.dim)
        for j, c in enumerate(comps.components):
            if j != i:
                others = others + c.space
        m = preimage(a, rad, others) if b is not a else AlgSubspace(a, others)
        if not m.is_ideal:
            raise LocsysError("component complement preimage is not an ideal")
        q, _ = quotient(a, m)
        if not is_simple(q):
            raise LocsysError("quotient by candidate maximal ideal is not simple")
        out.append(m)
    return out


def algebra_rank(a: Algebra) -> int:
    """Smallest rank among the simple components of A/rad A (A perfect, split)."""
    if not is_perfect(a):
        raise NotPerfectError("rank is defined for perfect algebras only")
    if a.dim == 0:
        raise NotPerfectError("rank is undefined for the zero algebra")
    b, _, _ = semisimple_quotient(a)
    comps = simple_components(b)
    if not comps.split:
        raise NonSplitError("A/rad A has a non-split simple component")
    return min(comps.ranks)


def is_simple(a: Algebra) -> bool:
    if a.dim == 0 or square(a).is_zero():
        return False
    if not radical(a).is_zero():
        return False
    return len(simple_components(a)) == 1
