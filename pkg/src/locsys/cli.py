"""Command-line entry point.

Exit codes: 0 pass or computed, 1 fail with a counterexample,
2 undetermined at the prefix, 3 input or precondition error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .algebra import Algebra, check_associativity
from .errors import LocsysError
from .fixtures import corpus
from .formats import dump_tower, dumps, load_algebra, load_tower
from .linear import Field
from .structure import (algebra_rank, is_simple, one_perfect_radical, perfect_core, radical,
                        simple_components, wedderburn_malcev)
from .tower import (FAIL, PASS, UNDETERMINED, Budget, DiagonalSignature, LocalSystem, VerificationFailed,
                    VerificationReport, build_diagonal_tower, check_local_system, check_not_residually_nilpotent,
                    conical_from_perfect, ideal_subsystem, is_conical, one_perfect_profile, perfect_core_system,
                    rank_profile, verify_maximal_ideal_avoidance, verify_radical_avoidance)

EXIT = {PASS: 0, FAIL: 1, UNDETERMINED: 2}
ERROR_EXIT = 3


@dataclass
class RunConfig:
    group: str
    action: str
    paths: list = dc_field(default_factory=list)
    fmt: str = "text"
    seed: int = 0
    budget: Budget = Budget()
    output: str | None = None


@dataclass
class Report:
    command: list
    result: dict
    lines: list
    exit_code: int = 0

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return dumps({"command": self.command, "exit": self.exit_code, "result": self.result}) + "\n"
        return "\n".join(self.lines) + "\n"


# --------------------------------------------------------------------------
# rendering


def fmt_vector(a: Algebra, v) -> str:
    names = a.basis_names()
    out = ""
    for name, x in zip(names, v):
        if not x:
            continue
        c = a.field.fmt(x)
        neg = a.field.characteristic == 0 and c.startswith("-")
        mag = c[1:] if neg else c
        term = name if mag == "1" else f"{mag}*{name}"
        if not out:
            out = ("-" if neg else "") + term
        else:
            out += (" - " if neg else " + ") + term
    return out or "0"


def fmt_space(a: Algebra, s) -> list[str]:
    return [fmt_vector(a, v) for v in s.basis]


def _space_doc(a: Algebra, s) -> dict:
    return {"dim": s.dim, "basis": fmt_space(a, s)}


def _space_line(a: Algebra, s) -> str:
    return "[" + ", ".join(fmt_space(a, s)) + "]"


def _report_lines(rep: VerificationReport) -> list[str]:
    lines = [f"{rep.property}: {rep.status}"]
    if rep.witnesses:
        lines.append("witness: " + ", ".join(f"{k}={_plain(v)}" for k, v in rep.witnesses.items()))
    if rep.narrative:
        lines.append(rep.narrative)
    for d in rep.details:
        lines.append("  " + " ".join(f"{k}={_plain(v)}" for k, v in d.items()))
    return lines


def _plain(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_plain(x) for x in v) + "]"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _from_verification(cmd, rep: VerificationReport, extra: dict | None = None) -> Report:
    result = rep.to_dict()
    if extra:
        result.update(extra)
    return Report(cmd, result, _report_lines(rep), EXIT[rep.status])


def _tower_summary(ls: LocalSystem) -> tuple[dict, list[str]]:
    nodes = [{"id": a, "label": alg.label, "dim": alg.dim} for a, alg in ls.nodes]
    lines = [f"node {n['id']}: {n['label']} (dim {n['dim']})" for n in nodes]
    return {"label": ls.label, "nodes": nodes}, lines


# --------------------------------------------------------------------------
# algebra commands


ALGEBRA_ACTIONS = ("check", "radical", "levi", "components", "core", "onepr", "rank", "simple")


def cmd_algebra(cfg: RunConfig) -> Report:
    cmd = ["algebra", cfg.action, Path(cfg.paths[0]).name]
    a = load_algebra(cfg.paths[0], cfg.budget.max_dim)
    assoc = check_associativity(a)
    if cfg.action == "check":
        if assoc.ok:
            return Report(cmd, {"status": PASS, "dim": a.dim}, [f"associative: pass (dim {a.dim})"])
        i, j, k, l = assoc.violation
        names = a.basis_names()
        triple = [names[i], names[j], names[k]]
        return Report(cmd, {"status": FAIL, "triple": triple, "coordinate": names[l],
                            "lhs": a.field.fmt(assoc.lhs), "rhs": a.field.fmt(assoc.rhs)},
                      [f"associative: fail", f"witness: ({triple[0]} {triple[1]}) {triple[2]} differs from "
                       f"{triple[0]} ({triple[1]} {triple[2]}) at {names[l]}: "
                       f"{a.field.fmt(assoc.lhs)} vs {a.field.fmt(assoc.rhs)}"], 1)
    if not assoc.ok:
        raise LocsysError("algebra is not associative (run 'algebra check' for the witness)")
    if cfg.action == "radical":
        r = radical(a)
        return Report(cmd, {"radical": _space_doc(a, r)}, [f"radical (dim {r.dim}): {_space_line(a, r)}"])
    if cfg.action == "levi":
        sp = wedderburn_malcev(a)
        return Report(cmd, {"levi": _space_doc(a, sp.levi), "radical": _space_doc(a, sp.radical)},
                      [f"levi (dim {sp.levi.dim}): {_space_line(a, sp.levi)}",
                       f"radical (dim {sp.radical.dim}): {_space_line(a, sp.radical)}"])
    if cfg.action == "components":
        comps = simple_components(a)
        docs, lines = [], []
        for t, c in enumerate(comps.components):
            rank = comps.ranks[t]
            docs.append({"index": t, "rank": rank, **_space_doc(a, c)})
            lines.append(f"component {t}: dim {c.dim}, rank {rank}: {_space_line(a, c)}")
        return Report(cmd, {"components": docs}, lines or ["no components (zero algebra)"])
    if cfg.action == "core":
        c = perfect_core(a)
        return Report(cmd, {"core": _space_doc(a, c)}, [f"perfect core (dim {c.dim}): {_space_line(a, c)}"])
    if cfg.action == "onepr":
        p = one_perfect_radical(a, cfg.seed)
        if p.is_full():
            text = "whole algebra (1-perfect)"
        elif p.is_zero():
            text = "0"
        else:
            text = _space_line(a, p)
        return Report(cmd, {"one_perfect_radical": _space_doc(a, p), "one_perfect": p.is_full()},
                      [f"1-perfect radical (dim {p.dim}): {text}"])
    if cfg.action == "rank":
        r = algebra_rank(a)
        return Report(cmd, {"rank": r}, [str(r)])
    if cfg.action == "simple":
        s = is_simple(a)
        return Report(cmd, {"simple": s}, [f"simple: {'true' if s else 'false'}"])
    raise LocsysError(f"unknown algebra action {cfg.action!r}")


# --------------------------------------------------------------------------
# tower commands


TOWER_ACTIONS = ("check", "build-diagonal", "perfect-core", "ideal-subsystem", "conical", "is-conical", "profile")


def _parse_sig(s: str) -> DiagonalSignature:
    try:
        k, z = (int(x) for x in s.split(","))
    except ValueError:
        raise LocsysError(f"signature {s!r} is not k,z") from None
    return DiagonalSignature(k, z)


def _parse_vector(a: Algebra, s: str) -> tuple:
    names = a.basis_names()
    if s in names:
        return a.field.unit(a.dim, names.index(s))
    parts = s.split(",")
    if len(parts) != a.dim:
        raise LocsysError(f"vector {s!r}: expected a basis name or {a.dim} comma-separated coordinates")
    try:
        return tuple(a.field.parse(x) for x in parts)
    except (ValueError, ZeroDivisionError):
        raise LocsysError(f"vector {s!r}: bad coordinate") from None


def _emit_tower(cfg: RunConfig, cmd, ls: LocalSystem) -> Report:
    rep = check_local_system(ls)
    summary, lines = _tower_summary(ls)
    if cfg.output:
        Path(cfg.output).write_text(dump_tower(ls), encoding="utf-8")
        lines.append(f"wrote {Path(cfg.output).name}")
    lines.append(f"local-system: {rep.status}")
    return Report(cmd, {**summary, "check": rep.status}, lines, EXIT[rep.status])


def cmd_tower(cfg: RunConfig, args) -> Report:
    if cfg.action == "build-diagonal":
        if args.n1 is None:
            raise LocsysError("build-diagonal needs --n1")
        sigs = [_parse_sig(s) for s in args.sig or []]
        field = Field.from_name(args.field)
        cmd = ["tower", "build-diagonal", f"n1={args.n1}", "sigs=" + ";".join(args.sig or []), field.name]
        ls = build_diagonal_tower(args.n1, sigs, field, cfg.budget)
        return _emit_tower(cfg, cmd, ls)
    if not cfg.paths:
        raise LocsysError(f"tower {cfg.action} needs a tower file")
    cmd = ["tower", cfg.action, Path(cfg.paths[0]).name]
    ls = load_tower(cfg.paths[0], cfg.budget)
    if cfg.action == "check":
        rep = check_local_system(ls)
        summary, _ = _tower_summary(ls)
        return _from_verification(cmd, rep, {"nodes": summary["nodes"]})
    _precheck(ls)
    if cfg.action == "perfect-core":
        return _emit_tower(cfg, cmd, perfect_core_system(ls))
    if cfg.action == "ideal-subsystem":
        node = args.node or ls.ids[0]
        if not args.vector:
            raise LocsysError("ideal-subsystem needs at least one --vector")
        vecs = [_parse_vector(ls.algebra(node), v) for v in args.vector]
        cmd += [f"node={node}"] + [f"vector={v}" for v in args.vector]
        return _emit_tower(cfg, cmd, ideal_subsystem(ls, node, vecs))
    if cfg.action == "conical":
        node = args.node or ls.ids[0]
        cmd += [f"node={node}", f"component={args.component}"]
        return _emit_tower(cfg, cmd, conical_from_perfect(ls, node, args.component))
    if cfg.action == "is-conical":
        return _from_verification(cmd, is_conical(ls))
    if cfg.action == "profile":
        prof = rank_profile(ls)
        return Report(cmd, {"ranks": [{"node": a, "rank": r} for a, r in prof]},
                      [f"node {a}: rank {r}" for a, r in prof])
    raise LocsysError(f"unknown tower action {cfg.action!r}")


def _precheck(ls: LocalSystem):
    rep = check_local_system(ls)
    if not rep.ok:
        raise LocsysError(f"input is not a local system: {rep.narrative}")


# --------------------------------------------------------------------------
# verify


PROPERTIES = ("radical-avoidance", "maximal-ideal-avoidance", "not-residually-nilpotent", "one-perfect", "conical")


def cmd_verify(cfg: RunConfig, args) -> Report:
    cmd = ["verify", cfg.action, Path(cfg.paths[0]).name]
    ls = load_tower(cfg.paths[0], cfg.budget)
    _precheck(ls)
    if cfg.action in ("radical-avoidance", "maximal-ideal-avoidance"):
        node = args.node or ls.ids[0]
        ls.algebra(node)
        cmd.append(f"node={node}")
        fn = verify_radical_avoidance if cfg.action == "radical-avoidance" else verify_maximal_ideal_avoidance
        return _from_verification(cmd, fn(ls, node))
    if cfg.action == "not-residually-nilpotent":
        return _from_verification(cmd, check_not_residually_nilpotent(ls))
    if cfg.action == "one-perfect":
        return _from_verification(cmd, one_perfect_profile(ls, cfg.seed))
    if cfg.action == "conical":
        if args.node:
            ls = conical_from_perfect(ls, args.node, args.component)
            cmd += [f"built-from={args.node}", f"component={args.component}"]
        return _from_verification(cmd, is_conical(ls))
    raise LocsysError(f"unknown property {cfg.action!r}")


def cmd_fixtures(cfg: RunConfig) -> Report:
    out = Path(cfg.paths[0])
    try:
        out.mkdir(parents=True, exist_ok=True)
        files = corpus()
        for name, text in files.items():
            (out / name).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise LocsysError(f"cannot write corpus: {exc.strerror}") from None
    names = list(files)
    return Report(["fixtures"], {"files": names}, [f"wrote {len(names)} files"] + names)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-dim", type=int, default=Budget().max_dim)
    common.add_argument("--max-size", type=int, default=Budget().max_matrix_size,
                        help="largest matrix node size for diagonal towers")
    common.add_argument("-o", "--output")

    p = argparse.ArgumentParser(prog="locsys", description="Finite-dimensional algebras and local systems.")
    sub = p.add_subparsers(dest="group", required=True)

    pa = sub.add_parser("algebra", parents=[common], help="structure of one algebra")
    pa.add_argument("action", choices=ALGEBRA_ACTIONS)
    pa.add_argument("file")

    pt = sub.add_parser("tower", parents=[common], help="local-system operations")
    pt.add_argument("action", choices=TOWER_ACTIONS)
    pt.add_argument("file", nargs="?")
    pt.add_argument("--n1", type=int)
    pt.add_argument("--sig", action="append", help="k,z (repeatable)")
    pt.add_argument("--field", default="Q")
    pt.add_argument("--node")
    pt.add_argument("--component", type=int, default=0)
    pt.add_argument("--vector", action="append", help="basis name or comma-separated coordinates")

    pv = sub.add_parser("verify", parents=[common], help="property verifiers on a tower")
    pv.add_argument("property", choices=PROPERTIES)
    pv.add_argument("file")
    pv.add_argument("--node")
    pv.add_argument("--component", type=int, default=0)

    pf = sub.add_parser("fixtures", parents=[common], help="write the fixture corpus")
    pf.add_argument("dir")
    return p


def run(argv=None) -> tuple[int, str, str]:
    """Returns (exit code, stdout text, stderr text)."""
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else ERROR_EXIT), "", ""
    action = getattr(args, "action", None) or getattr(args, "property", None) or ""
    paths = [x for x in (getattr(args, "file", None), getattr(args, "dir", None)) if x]
    cfg = RunConfig(args.group, action, paths, args.format, args.seed,
                    Budget(args.max_size, args.max_dim), args.output)
    try:
        if cfg.group == "algebra":
            rep = cmd_algebra(cfg)
        elif cfg.group == "tower":
            rep = cmd_tower(cfg, args)
        elif cfg.group == "verify":
            rep = cmd_verify(cfg, args)
        else:
            rep = cmd_fixtures(cfg)
    except VerificationFailed as exc:
        rep = _from_verification([cfg.group, cfg.action], exc.report)
    except (LocsysError, ValueError) as exc:
        return ERROR_EXIT, "", f"error: {exc}\n"
    text = rep.render(cfg.fmt)
    if cfg.output and cfg.group in ("algebra", "verify"):
        Path(cfg.output).write_text(text, encoding="utf-8")
        return rep.exit_code, "", ""
    return rep.exit_code, text, ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
