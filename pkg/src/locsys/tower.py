"""Finite prefixes of local systems of algebras.

A LocalSystem is a finite poset of node ids, one algebra per node, an
explicit embedding matrix for every ordered pair (composites included) and
a recorded upper bound for every pair of nodes.  Verifiers return
VerificationReport values; existential checks report
``undetermined-at-prefix`` rather than ``fail`` when no witness is found.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import AlgSubspace, Algebra, ideal_generated, matrix_algebra, restrict
from .errors import EmbeddingError, BudgetError, LocsysError, NotPerfectError
from .linear import QQ, Field, Mat, Subspace
from .structure import (algebra_rank, is_perfect, is_residually_nilpotent, is_simple, maximal_ideals,
                        one_perfect_radical, perfect_core, radical, semisimple_quotient, simple_components,
                        wedderburn_malcev)

PASS = "pass"
FAIL = "fail"
UNDETERMINED = "undetermined-at-prefix"

CONDITION3_READING = ("natural modules read as the column modules of the simple components of "
                      "A/rad A, with the radical acting through the quotient")


@dataclass
class VerificationReport:
    property: str
    status: str
    witnesses: dict = dc_field(default_factory=dict)
    narrative: str = ""
    details: list = dc_field(default_factory=list)
    system: "LocalSystem | None" = dc_field(default=None, repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"property": self.property, "status": self.status, "witnesses": self.witnesses,
                "narrative": self.narrative, "details": self.details}


class VerificationFailed(LocsysError):
    def __init__(self, report: VerificationReport):
        super().__init__(report.narrative)
        self.report = report


@dataclass(frozen=True)
class Budget:
    max_matrix_size: int = 12
    max_dim: int = 150


DEFAULT_BUDGET = Budget()


# --------------------------------------------------------------------------
# embeddings


@dataclass(frozen=True)
class Embedding:
    source: Algebra
    target: Algebra
    matrix: Mat

    def apply(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def image(self, sub=None) -> Subspace:
        """Image of a subspace of the source (all of it by default)."""
        if sub is None:
            vecs = self.matrix.columns()
        else:
            basis = sub.basis if not isinstance(sub, (list, tuple)) else sub
            vecs = [self.apply(v) for v in basis]
        return Subspace.span(self.target.field, self.target.dim, vecs)

    def then(self, nxt: "Embedding") -> "Embedding":
        return Embedding(self.source, nxt.target, nxt.matrix @ self.matrix)


def check_embedding(e: Embedding) -> VerificationReport:
    """Injective and multiplicative on all source basis pairs."""
    src, tgt, m = e.source, e.target, e.matrix
    if m.rows != tgt.dim or m.cols != src.dim:
        raise EmbeddingError(f"matrix shape {m.rows}x{m.cols} does not fit {src.dim} -> {tgt.dim}")
    rank = m.rank()
    if rank < src.dim:
        return VerificationReport("embedding", FAIL, {"rank": rank, "source_dim": src.dim},
                                  f"not injective: rank {rank} < {src.dim}")
    imgs = m.columns()
    names = src.basis_names()
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = m.apply(src.basis_product(i, j))
            rhs = tgt.mul(imgs[i], imgs[j])
            if lhs != rhs:
                return VerificationReport("embedding", FAIL, {"pair": [names[i], names[j]]},
                                          f"not multiplicative on ({names[i]}, {names[j]})")
    return VerificationReport("embedding", PASS, {"rank": rank}, "injective homomorphism")


def make_embedding(source: Algebra, target: Algebra, matrix: Mat) -> Embedding:
    e = Embedding(source, target, matrix)
    rep = check_embedding(e)
    if not rep.ok:
        raise EmbeddingError(rep.narrative)
    return e


@dataclass(frozen=True)
class DiagonalSignature:
    copies: int
    padding: int = 0

    def target_size(self, n: int) -> int:
        return self.copies * n + self.padding


def diagonal_embedding(n: int, sig: DiagonalSignature, field: Field = QQ,
                       source: Algebra | None = None, target: Algebra | None = None) -> Embedding:
    """M_n -> M_{kn+z}, X -> diag(X, ..., X, 0, ..., 0) with k copies."""
    if sig.copies < 1:
        raise EmbeddingError("a diagonal embedding needs at least one copy")
    if sig.padding < 0:
        raise EmbeddingError("padding must be nonnegative")
    big = sig.target_size(n)
    src = source or matrix_algebra(n, field)
    tgt = target or matrix_algebra(big, field)
    trip = []
    for i in range(n):
        for j in range(n):
            for c in range(sig.copies):
                r, s = c * n + i, c * n + j
                trip.append((r * big + s, i * n + j, 1))
    return make_embedding(src, tgt, Mat.from_sparse(field, big * big, n * n, trip))


# --------------------------------------------------------------------------
# local systems


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True, eq=False)
class LocalSystem:
    nodes: tuple  # ((id, Algebra), ...) in node order
    order: frozenset  # strict pairs (a, b) meaning A_a -> A_b
    embeddings: dict  # (a, b) -> Embedding
    joins: dict  # sorted pair -> upper bound id
    label: str = ""

    @cached_property
    def ids(self) -> list[str]:
        return [i for i, _ in self.nodes]

    @cached_property
    def _alg(self) -> dict:
        return dict(self.nodes)

    def algebra(self, node: str) -> Algebra:
        try:
            return self._alg[node]
        except KeyError:
            raise LocsysError(f"unknown node {node!r}") from None

    def index(self, node: str) -> int:
        return self.ids.index(node)

    @cached_property
    def closure(self) -> frozenset:
        rel = set(self.order)
        changed = True
        while changed:
            changed = False
            for (a, b) in list(rel):
                for (c, d) in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        return frozenset(rel)

    def leq(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.closure

    def above(self, a: str) -> list[str]:
        return [b for b in self.ids if self.leq(a, b)]

    def embedding(self, a: str, b: str) -> Embedding:
        if a == b:
            alg = self.algebra(a)
            return Embedding(alg, alg, Mat.identity(alg.field, alg.dim))
        try:
            return self.embeddings[(a, b)]
        except KeyError:
            raise LocsysError(f"no embedding recorded for {a} -> {b}") from None

    def top(self) -> str | None:
        for t in self.ids:
            if all(self.leq(a, t) for a in self.ids):
                return t
        return None

    def minimum(self) -> str | None:
        for m in self.ids:
            if all(self.leq(m, a) for a in self.ids):
                return m
        return None

    def topological_ids(self) -> list[str]:
        rest = list(self.ids)
        out = []
        while rest:
            nxt = next(b for b in rest if not any((a, b) in self.closure for a in rest if a != b))
            out.append(nxt)
            rest.remove(nxt)
        return out

    def join(self, a: str, b: str) -> str | None:
        if a == b:
            return a
        return self.joins.get(_pair(a, b))

    @classmethod
    def chain(cls, ids: Sequence[str], algebras: Sequence[Algebra], steps: Sequence[Mat],
              label: str = "") -> "LocalSystem":
        """Chain system with all composites and joins filled in."""
        if len(steps) != len(ids) - 1:
            raise ValueError("a chain of n nodes needs n-1 steps")
        emb = {}
        order = set()
        for s in range(len(ids)):
            acc = None
            for t in range(s + 1, len(ids)):
                m = steps[t - 1] if acc is None else steps[t - 1] @ acc
                acc = m
                emb[(ids[s], ids[t])] = Embedding(algebras[s], algebras[t], m)
                order.add((ids[s], ids[t]))
        joins = {_pair(ids[s], ids[t]): ids[max(s, t)] for s in range(len(ids)) for t in range(s + 1, len(ids))}
        return cls(tuple(zip(ids, algebras)), frozenset(order), emb, joins, label)


def build_diagonal_tower(n1: int, sigs: Sequence, field: Field = QQ,
                         budget: Budget = DEFAULT_BUDGET) -> LocalSystem:
    """M_{n1} -> M_{n2} -> ... with n_{i+1} = k_i n_i + z_i."""
    sigs = [s if isinstance(s, DiagonalSignature) else DiagonalSignature(*s) for s in sigs]
    sizes = [n1]
    for s in sigs:
        if s.copies < 1:
            raise EmbeddingError("a diagonal embedding needs at least one copy")
        sizes.append(s.target_size(sizes[-1]))
    for n in sizes:
        if n > budget.max_matrix_size or n * n > budget.max_dim:
            raise BudgetError(f"matrix node size {n} exceeds budget "
                              f"(n <= {budget.max_matrix_size}, dim <= {budget.max_dim})")
    algs = [matrix_algebra(n, field) for n in sizes]
    steps = [diagonal_embedding(sizes[i], s, field, algs[i], algs[i + 1]).matrix for i, s in enumerate(sigs)]
    ids = [str(i + 1) for i in range(len(sizes))]
    lab = f"diagonal({n1};" + ",".join(f"{s.copies}/{s.padding}" for s in sigs) + ")"
    return LocalSystem.chain(ids, algs, steps, label=lab)


# --------------------------------------------------------------------------
# verification of the local-system axioms


def check_local_system(ls: LocalSystem, probes: Iterable = ()) -> VerificationReport:
    """Order, embeddings, coherence of composites, recorded joins, probe containment."""
    details = []

    def fail(kind, witnesses, text):
        details.append({"check": kind, "status": FAIL, **witnesses})
        return VerificationReport("local-system", FAIL, {"check": kind, **witnesses}, text, details)

    ids = set(ls.ids)
    for (a, b) in ls.order:
        if a not in ids or b not in ids:
            return fail("order", {"pair": [a, b]}, f"order mentions unknown node in ({a}, {b})")
    for (a, b) in ls.closure:
        if a == b or (b, a) in ls.closure:
            return fail("order", {"pair": [a, b]}, f"order is not antisymmetric at ({a}, {b})")
    details.append({"check": "order", "status": PASS})

    for (a, b) in sorted(ls.closure, key=lambda p: (ls.index(p[0]), ls.index(p[1]))):
        if (a, b) not in ls.embeddings:
            return fail("embedding", {"pair": [a, b]}, f"no embedding recorded for {a} -> {b}")
        e = ls.embeddings[(a, b)]
        if e.source != ls.algebra(a) or e.target != ls.algebra(b):
            return fail("embedding", {"pair": [a, b]}, f"embedding {a} -> {b} has wrong endpoints")
        rep = check_embedding(e)
        if not rep.ok:
            return fail("embedding", {"pair": [a, b], **rep.witnesses}, f"edge {a} -> {b}: {rep.narrative}")
    for (a, b) in ls.embeddings:
        if (a, b) not in ls.closure:
            return fail("embedding", {"pair": [a, b]}, f"embedding {a} -> {b} outside the order")
    details.append({"check": "embeddings", "status": PASS, "count": len(ls.embeddings)})

    for a in ls.ids:
        for b in ls.ids:
            if (a, b) not in ls.closure:
                continue
            for c in ls.ids:
                if (b, c) not in ls.closure:
                    continue
                comp = ls.embeddings[(b, c)].matrix @ ls.embeddings[(a, b)].matrix
                if comp != ls.embeddings[(a, c)].matrix:
                    return fail("coherence", {"triple": [a, b, c]},
                                f"composite {a} -> {b} -> {c} differs from recorded {a} -> {c}")
    details.append({"check": "coherence", "status": PASS})

    for i, a in enumerate(ls.ids):
        for b in ls.ids[i + 1:]:
            g = ls.join(a, b)
            if g is None or g not in ids:
                return fail("directedness", {"pair": [a, b]}, f"no upper bound recorded for {a}, {b}")
            if not (ls.leq(a, g) and ls.leq(b, g)):
                return fail("directedness", {"pair": [a, b], "join": g},
                            f"recorded join {g} is not above both {a} and {b}")
    details.append({"check": "directedness", "status": PASS})

    top = ls.top()
    if top is not None:
        tgt = ls.algebra(top)
        images = {a: ls.embedding(a, top).image() for a in ls.ids}
        plist = [(f"image of {a}", images[a]) for a in ls.ids]
        for t, p in enumerate(probes):
            sub = p if isinstance(p, Subspace) else Subspace.span(tgt.field, tgt.dim, p)
            plist.append((f"probe {t + 1}", sub))
        found = []
        for name, sub in plist:
            host = next((a for a in ls.ids if sub <= images[a]), None)
            if host is None:
                return fail("probes", {"probe": name}, f"{name} is contained in no node")
            found.append([name, host])
        details.append({"check": "probes", "status": PASS, "top": top, "hosts": found})
    else:
        details.append({"check": "probes", "status": "skipped", "reason": "no top node"})
    return VerificationReport("local-system", PASS, {"nodes": len(ls.ids)}, "coherent directed system", details)


# --------------------------------------------------------------------------
# induced systems


def _restricted_system(ls: LocalSystem, keep: Sequence[str], subs: dict, label: str,
                       prop: str) -> LocalSystem:
    """Replace node algebras by subalgebras, restricting embeddings; containment is checked."""
    algs, incl = {}, {}
    for a in keep:
        sub = subs[a]
        algs[a], incl[a] = restrict(sub, label=f"{ls.algebra(a).label}|{sub.dim}")
    emb = {}
    order = set()
    for (a, b), e in ls.embeddings.items():
        if a not in algs or b not in algs:
            continue
        tgt_space = subs[b].space
        cols = []
        for v in incl[a].columns():
            w = e.apply(v)
            if not tgt_space.contains(w):
                rep = VerificationReport(prop, FAIL, {"edge": [a, b]},
                                         f"image of node {a}'s subalgebra escapes node {b}'s subalgebra")
                raise VerificationFailed(rep)
            cols.append(tgt_space.coords(w))
        m = Mat.from_columns(ls.algebra(a).field, algs[b].dim, cols)
        emb[(a, b)] = Embedding(algs[a], algs[b], m)
        order.add((a, b))
    joins = {k: v for k, v in ls.joins.items() if k[0] in algs and k[1] in algs}
    out = LocalSystem(tuple((a, algs[a]) for a in keep), frozenset(order), emb, joins, label)
    return out


def _require_pass(rep: VerificationReport, prop: str):
    if not rep.ok:
        raise VerificationFailed(VerificationReport(prop, FAIL, rep.witnesses,
                                                    f"induced system is not a local system: {rep.narrative}"))


def perfect_core_system(ls: LocalSystem) -> LocalSystem:
    subs = {a: perfect_core(ls.algebra(a)) for a in ls.ids}
    out = _restricted_system(ls, ls.ids, subs, f"core({ls.label})", "perfect-core")
    _require_pass(check_local_system(out), "perfect-core")
    return out


def ideal_subsystem(ls: LocalSystem, node0: str, p) -> LocalSystem:
    """Nodes above node0, each replaced by the ideal generated by the image of p."""
    base = ls.algebra(node0)
    vecs = p.basis if isinstance(p, (AlgSubspace, Subspace)) else [tuple(base.field(x) for x in v) for v in p]
    if not any(any(v) for v in vecs):
        raise LocsysError("ideal_subsystem needs a nonzero subspace")
    keep = ls.above(node0)
    subs = {}
    for b in keep:
        e = ls.embedding(node0, b)
        subs[b] = ideal_generated(ls.algebra(b), [e.apply(v) for v in vecs])
    out = _restricted_system(ls, keep, subs, f"ideal({ls.label}@{node0})", "ideal-subsystem")
    _require_pass(check_local_system(out), "ideal-subsystem")
    return out


def levi_components(a: Algebra) -> list[AlgSubspace]:
    """Simple components of a Levi subalgebra, in a's coordinates."""
    split = wedderburn_malcev(a)
    levi_alg, incl = restrict(split.levi)
    comps = simple_components(levi_alg)
    out = []
    for c in comps.components:
        out.append(a.subspace([incl.apply(v) for v in c.basis]))
    return out


def conical_from_perfect(ls: LocalSystem, base_node: str, component_index: int = 0,
                         apex: str = "apex") -> LocalSystem:
    """Minimal simple node S below every A_g^s = ideal of A_g generated by S (g >= base)."""
    for a in ls.ids:
        if not is_perfect(ls.algebra(a)):
            raise NotPerfectError(f"node {a} is not perfect")
    base = ls.algebra(base_node)
    comps = levi_components(base)
    if not 0 <= component_index < len(comps):
        raise LocsysError(f"component index {component_index} out of range (0..{len(comps) - 1})")
    s_sub = comps[component_index]
    s_alg, s_incl = restrict(s_sub, label=f"S({base.label})")
    algebra_rank(s_alg)  # raises NonSplitError when S does not split
    keep = ls.above(base_node)
    subs = {g: ideal_generated(ls.algebra(g), [ls.embedding(base_node, g).apply(v) for v in s_sub.basis])
            for g in keep}
    inner = _restricted_system(ls, keep, subs, f"conical({ls.label})", "conical")
    while apex in inner.ids:
        apex += "'"
    emb = dict(inner.embeddings)
    order = set(inner.order)
    joins = dict(inner.joins)
    for g in keep:
        e = ls.embedding(base_node, g)
        sub_g = subs[g].space
        cols = [sub_g.coords(e.apply(v)) for v in s_incl.columns()]
        emb[(apex, g)] = Embedding(s_alg, inner.algebra(g), Mat.from_columns(base.field, sub_g.dim, cols))
        order.add((apex, g))
        joins[_pair(apex, g)] = g
    out = LocalSystem(((apex, s_alg),) + inner.nodes, frozenset(order), emb, joins, inner.label)
    _require_pass(check_local_system(out), "conical")
    return out


# --------------------------------------------------------------------------
# property verifiers


def is_conical(ls: LocalSystem) -> VerificationReport:
    details = []
    prop = "conical"
    m = ls.minimum()
    if m is None:
        return VerificationReport(prop, FAIL, {"condition": 1},
                                  "no node lies below every other node", details)
    details.append({"condition": 1, "status": PASS, "minimal_node": m})
    a1 = ls.algebra(m)
    if not is_simple(a1):
        return VerificationReport(prop, FAIL, {"condition": 2, "node": m},
                                  f"minimal node {m} is not simple", details)
    details.append({"condition": 2, "status": PASS, "node": m})
    first_bad = None
    for a in ls.ids:
        alg = ls.algebra(a)
        b, proj, _ = semisimple_quotient(alg)
        comps = simple_components(b)
        img = [proj.apply(v) for v in ls.embedding(m, a).image().basis]
        for k, (comp, e) in enumerate(zip(comps.components, comps.idempotents)):
            nontrivial = any(any(b.mul(e, v)) for v in img)
            rank = comps.ranks[k]
            details.append({"condition": 3, "node": a, "component": k, "rank": rank,
                            "nontrivial": nontrivial})
            if not nontrivial and first_bad is None:
                first_bad = (a, k)
    if first_bad is not None:
        return VerificationReport(prop, FAIL, {"condition": 3, "node": first_bad[0], "component": first_bad[1]},
                                  f"node {first_bad[0]}: minimal node acts as zero on component "
                                  f"{first_bad[1]} ({CONDITION3_READING})", details)
    not_perfect = [a for a in ls.ids if not is_perfect(ls.algebra(a))]
    if not_perfect:
        return VerificationReport(prop, FAIL, {"condition": "perfect", "node": not_perfect[0]},
                                  f"node {not_perfect[0]} is not perfect", details)
    rank = algebra_rank(a1)
    return VerificationReport(prop, PASS, {"minimal_node": m, "rank": rank},
                              f"conical of rank {rank} ({CONDITION3_READING})", details)


def _image(ls: LocalSystem, a: str, b: str) -> Subspace:
    return ls.embedding(a, b).image()


def verify_radical_avoidance(ls: LocalSystem, alpha: str) -> VerificationReport:
    """Search zeta >= alpha with image(A_alpha) meeting rad A_zeta trivially."""
    prop = "radical-avoidance"
    above = ls.above(alpha)
    clean = {}
    details = []
    for z in above:
        meet = _image(ls, alpha, z) & radical(ls.algebra(z)).space
        clean[z] = meet.is_zero()
        details.append({"node": z, "intersection_dim": meet.dim})
    witness = next((z for z in above if clean[z]), None)
    if witness is None:
        return VerificationReport(prop, UNDETERMINED, {"node": alpha},
                                  f"no node above {alpha} in this prefix has a radical avoiding A_{alpha}",
                                  details)
    stable = next((z for z in above if all(clean[b] for b in ls.above(z))), None)
    wit = {"node": alpha, "zeta": witness, "stable_from": stable}
    text = f"A_{alpha} meets rad A_{witness} trivially"
    if stable is not None:
        text += f"; every node above {stable} avoids it too"
    return VerificationReport(prop, PASS, wit, text, details)


def verify_maximal_ideal_avoidance(ls: LocalSystem, alpha: str) -> VerificationReport:
    """Search gamma >= alpha and a maximal ideal M of A_gamma with M meeting A_alpha trivially."""
    prop = "maximal-ideal-avoidance"
    details = []
    for g in ls.above(alpha):
        alg = ls.algebra(g)
        if not is_perfect(alg) or alg.dim == 0:
            details.append({"node": g, "skipped": "not perfect"})
            continue
        img = _image(ls, alpha, g)
        for k, mi in enumerate(maximal_ideals(alg)):
            meet = img & mi.space
            details.append({"node": g, "ideal": k, "ideal_dim": mi.dim, "intersection_dim": meet.dim})
            if meet.is_zero():
                return VerificationReport(prop, PASS, {"node": alpha, "gamma": g, "ideal": k,
                                                       "ideal_dim": mi.dim},
                                          f"maximal ideal {k} of A_{g} meets A_{alpha} trivially", details)
    return VerificationReport(prop, UNDETERMINED, {"node": alpha},
                              f"no maximal ideal above {alpha} in this prefix avoids A_{alpha}", details)


def check_not_residually_nilpotent(ls: LocalSystem) -> VerificationReport:
    prop = "not-residually-nilpotent"
    for a in ls.ids:
        if not is_residually_nilpotent(ls.algebra(a)):
            return VerificationReport(prop, PASS, {"node": a},
                                      f"node {a} has a nonzero perfect core")
    return VerificationReport(prop, FAIL, {"nodes": list(ls.ids)},
                              "every node of the prefix is nilpotent; a local system of a simple "
                              "locally finite algebra must contain a non residually nilpotent member")


def rank_profile(ls: LocalSystem) -> list[tuple[str, int]]:
    return [(a, algebra_rank(ls.algebra(a))) for a in ls.topological_ids()]


def one_perfect_profile(ls: LocalSystem, seed: int | None = None) -> VerificationReport:
    prop = "one-perfect"
    subs = {a: one_perfect_radical(ls.algebra(a), seed) for a in ls.ids}
    details = [{"node": a, "dim": ls.algebra(a).dim, "one_perfect_radical_dim": subs[a].dim,
                "one_perfect": subs[a].is_full()} for a in ls.ids]
    if all(s.is_full() for s in subs.values()):
        return VerificationReport(prop, PASS, {"one_perfect_nodes": list(ls.ids)},
                                  "every node is 1-perfect", details, system=ls)
    try:
        sub = _restricted_system(ls, ls.ids, subs, f"onep({ls.label})", prop)
    except VerificationFailed as exc:
        exc.report.details = details
        return exc.report
    rep = check_local_system(sub)
    if not rep.ok:
        return VerificationReport(prop, FAIL, rep.witnesses,
                                  f"1-perfect radicals do not form a local system: {rep.narrative}", details)
    dims = [[a, subs[a].dim] for a in ls.ids]
    return VerificationReport(prop, PASS, {"subsystem_dims": dims},
                              "1-perfect radicals form a local system", details, system=sub)
