"""Text formats for algebras and towers.

Both are JSON documents laid out one row per line so that files diff well.
Indices are 1-based on disk and 0-based in memory.  Scalars are strings
("a/b" over Q, decimal residues over GF(p)).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import Algebra
from .errors import BudgetError, FormatError
from .linear import Field, Mat
from .tower import (DEFAULT_BUDGET, Budget, DiagonalSignature, Embedding, LocalSystem, build_diagonal_tower,
                    _pair)


def dumps(obj: Any, indent: int = 0) -> str:
    """Deterministic JSON: flat lists inline, nested containers one item per line."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}  {json.dumps(k)}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return json.dumps(list(obj), ensure_ascii=False)
        items = [pad + "  " + dumps(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None


def _need(d: dict, key: str, kind, where: str):
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"{where}: missing field {key!r}")
    v = d[key]
    if not isinstance(v, kind) or isinstance(v, bool):
        raise FormatError(f"{where}: field {key!r} has the wrong type")
    return v


def _scalar(field: Field, s, where: str):
    if not isinstance(s, str):
        raise FormatError(f"{where}: scalars must be strings, got {s!r}")
    try:
        return field.parse(s)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"{where}: bad scalar {s!r} for {field.name}") from None


# --------------------------------------------------------------------------
# algebras


def algebra_to_doc(a: Algebra) -> dict:
    doc: dict = {"label": a.label, "field": a.field.name, "dim": a.dim}
    if a.names:
        doc["basis"] = list(a.names)
    doc["sc"] = [[i + 1, j + 1, k + 1, a.field.fmt(x)] for i, j, k, x in a.sc]
    return doc


def algebra_from_doc(doc: dict, max_dim: int | None = None) -> Algebra:
    where = "algebra"
    if not isinstance(doc, dict):
        raise FormatError("algebra: expected an object")
    extra = set(doc) - {"label", "field", "dim", "basis", "sc"}
    if extra:
        raise FormatError(f"algebra: unknown fields {sorted(extra)}")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise FormatError("algebra: label must be a string")
    try:
        field = Field.from_name(_need(doc, "field", str, where))
    except ValueError as exc:
        raise FormatError(f"algebra: {exc}") from None
    dim = _need(doc, "dim", int, where)
    if dim < 0:
        raise FormatError("algebra: negative dim")
    if max_dim is not None and dim > max_dim:
        raise BudgetError(f"algebra dim {dim} exceeds budget {max_dim}")
    names = doc.get("basis", [])
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise FormatError("algebra: basis must be a list of strings")
    if names and len(names) != dim:
        raise FormatError(f"algebra: {len(names)} basis names for dim {dim}")
    entries = []
    for t, row in enumerate(_need(doc, "sc", list, where)):
        at = f"algebra sc entry {t + 1}"
        if not isinstance(row, list) or len(row) != 4:
            raise FormatError(f"{at}: expected [i, j, k, value]")
        i, j, k, v = row
        for x in (i, j, k):
            if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= dim:
                raise FormatError(f"{at}: index {x!r} outside 1..{dim}")
        entries.append((i - 1, j - 1, k - 1, _scalar(field, v, at)))
    return Algebra.from_constants(dim, field, entries, label=label, names=names)


def dump_algebra(a: Algebra) -> str:
    return dumps(algebra_to_doc(a)) + "\n"


def parse_algebra(text: str, max_dim: int | None = None) -> Algebra:
    return algebra_from_doc(_loads(text), max_dim)


def load_algebra(path, max_dim: int | None = None) -> Algebra:
    return parse_algebra(_read(path), max_dim)


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


# --------------------------------------------------------------------------
# towers


def tower_to_doc(ls: LocalSystem) -> dict:
    pos = {a: t for t, a in enumerate(ls.ids)}
    pairs = sorted(ls.embeddings, key=lambda p: (pos[p[0]], pos[p[1]]))
    embs = []
    for a, b in pairs:
        m = ls.embeddings[(a, b)].matrix
        f = m.field
        entries = [[i + 1, j + 1, f.fmt(x)] for i, j, x in sorted(m.nonzeros())]
        embs.append({"from": a, "to": b, "matrix": entries})
    joins = []
    for s, a in enumerate(ls.ids):
        for b in ls.ids[s + 1:]:
            g = ls.join(a, b)
            if g is not None:
                joins.append([a, b, g])
    order = sorted(ls.order, key=lambda p: (pos[p[0]], pos[p[1]]))
    return {"label": ls.label,
            "nodes": [{"id": a, "algebra": algebra_to_doc(alg)} for a, alg in ls.nodes],
            "order": [list(p) for p in order],
            "embeddings": embs,
            "joins": joins}


def diagonal_doc(n1: int, sigs, field: Field) -> dict:
    return {"diagonal": {"n1": n1, "field": field.name,
                         "sigs": [[s.copies, s.padding] if isinstance(s, DiagonalSignature) else list(s)
                                  for s in sigs]}}


def _node_id(x, where: str) -> str:
    if not isinstance(x, str) or not x:
        raise FormatError(f"{where}: node ids must be nonempty strings")
    return x


def tower_from_doc(doc: dict, base_dir=None, budget: Budget = DEFAULT_BUDGET) -> LocalSystem:
    if not isinstance(doc, dict):
        raise FormatError("tower: expected an object")
    if "diagonal" in doc:
        d = doc["diagonal"]
        n1 = _need(d, "n1", int, "tower diagonal")
        try:
            field = Field.from_name(d.get("field", "Q"))
        except (ValueError, AttributeError):
            raise FormatError(f"tower diagonal: bad field {d.get('field')!r}") from None
        sigs = []
        for s in _need(d, "sigs", list, "tower diagonal"):
            if (not isinstance(s, list) or len(s) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in s)):
                raise FormatError(f"tower diagonal: signature {s!r} is not [copies, padding]")
            sigs.append(DiagonalSignature(*s))
        if n1 < 1:
            raise FormatError("tower diagonal: n1 must be positive")
        return build_diagonal_tower(n1, sigs, field, budget)
    extra = set(doc) - {"label", "nodes", "order", "embeddings", "joins"}
    if extra:
        raise FormatError(f"tower: unknown fields {sorted(extra)}")
    nodes = []
    for t, nd in enumerate(_need(doc, "nodes", list, "tower")):
        where = f"tower node {t + 1}"
        nid = _node_id(_need(nd, "id", str, where), where)
        ref = nd.get("algebra") if isinstance(nd, dict) else None
        if isinstance(ref, str):
            path = Path(base_dir or ".") / ref
            alg = load_algebra(path, budget.max_dim)
        elif isinstance(ref, dict):
            alg = algebra_from_doc(ref, budget.max_dim)
        else:
            raise FormatError(f"{where}: algebra must be an inline object or a file name")
        nodes.append((nid, alg))
    ids = [a for a, _ in nodes]
    if len(set(ids)) != len(ids):
        raise FormatError("tower: duplicate node ids")
    algs = dict(nodes)
    fields = {a.field for a in algs.values()}
    if len(fields) > 1:
        raise FormatError("tower: nodes over different fields")

    def known(x, where):
        _node_id(x, where)
        if x not in algs:
            raise FormatError(f"{where}: unknown node {x!r}")
        return x

    order = set()
    for p in doc.get("order", []):
        if not isinstance(p, list) or len(p) != 2:
            raise FormatError(f"tower order: entry {p!r} is not a pair")
        order.add((known(p[0], "tower order"), known(p[1], "tower order")))
    emb = {}
    for t, e in enumerate(doc.get("embeddings", [])):
        where = f"tower embedding {t + 1}"
        a = known(_need(e, "from", str, where), where)
        b = known(_need(e, "to", str, where), where)
        if (a, b) in emb:
            raise FormatError(f"{where}: duplicate embedding {a} -> {b}")
        src, tgt = algs[a], algs[b]
        trip = []
        for row in _need(e, "matrix", list, where):
            if not isinstance(row, list) or len(row) != 3:
                raise FormatError(f"{where}: matrix entries are [row, col, value]")
            i, j, v = row
            if not (isinstance(i, int) and 1 <= i <= tgt.dim and isinstance(j, int) and 1 <= j <= src.dim):
                raise FormatError(f"{where}: entry ({i}, {j}) outside {tgt.dim}x{src.dim}")
            trip.append((i - 1, j - 1, _scalar(src.field, v, where)))
        emb[(a, b)] = Embedding(src, tgt, Mat.from_sparse(src.field, tgt.dim, src.dim, trip))
    joins = {}
    for j in doc.get("joins", []):
        if not isinstance(j, list) or len(j) != 3:
            raise FormatError(f"tower joins: entry {j!r} is not [a, b, upper bound]")
        a, b, g = (known(x, "tower joins") for x in j)
        joins[_pair(a, b)] = g
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise FormatError("tower: label must be a string")
    return LocalSystem(tuple(nodes), frozenset(order), emb, joins, label)


def dump_tower(ls: LocalSystem) -> str:
    return dumps(tower_to_doc(ls)) + "\n"


def dump_doc(doc: dict) -> str:
    return dumps(doc) + "\n"


def parse_tower(text: str, base_dir=None, budget: Budget = DEFAULT_BUDGET) -> LocalSystem:
    return tower_from_doc(_loads(text), base_dir, budget)


def load_tower(path, budget: Budget = DEFAULT_BUDGET) -> LocalSystem:
    return parse_tower(_read(path), Path(path).parent, budget)
