"""Command-line front end: ``tqftlab VERB ACTION [inputs] [options]``.

Exit codes: 0 pass, 1 verification failure (or another workbench error),
2 parse/format/type errors in inputs.  Output is deterministic for a given
``--seed``; JSON output uses sorted keys.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Callable, Sequence

from . import io
from .anomaly import (
    build_1d_model,
    euler_anomaly,
    modular_defect,
    modular_defect_float,
    reduce_boundary,
    semion,
    toric_code,
    verify_anomalous_theory,
    verify_anomaly,
    verify_modular_data,
)
from .character2 import Cocycle, from_cocycle, holonomy_table, verify_cocycle, verify_two_character
from .cobordism.cob1 import from_word
from .cobordism.dsl import parse_word, serialize_word
from .cobordism.evaluate import FROBENIUS_RELATIONS, BoundaryData, eval_1d_data, eval_closed_2d
from .errors import ParseError, WordTypeError, WorkbenchError
from .frobenius import genus_invariant, verify_frobenius
from .group import catalog, conjugacy_classes, group_from_spec, verify_crossed_module, verify_group
from .linalg import format_matrix
from .projrep import to_fixed_point, verify_fixed_point, verify_projrep
from .samples import random_boundary_data, sample_tables
from .scalar import Scalar, conductor_limit
from .verdict import Verdict

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Report:
    """Collects lines (text) or a payload (JSON) and prints them at the end."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.payload: dict = {}
        self.ok = True

    def verdict(self, v: Verdict, key: str = "verdict") -> None:
        self.ok = self.ok and v.ok
        self.payload[key] = v.to_json()
        if v.ok:
            self.lines.append(v.message)
        else:
            self.lines.append(f"FAIL: {v.message}")
            if v.witness is not None:
                self.lines.append("witness: " + ", ".join(str(x) for x in v.witness))
            if v.total:
                self.lines.append(f"checked: {v.checked}/{v.total}")

    def value(self, key: str, text: str, data=None) -> None:
        self.lines.append(text)
        self.payload[key] = text if data is None else data

    def emit(self, out) -> None:
        if self.fmt == "json":
            out.write(json.dumps(self.payload, sort_keys=True, indent=2) + "\n")
        else:
            for line in self.lines:
                out.write(line + "\n")


def _load(kind: str, path: str):
    """Read a JSON document and build the object; any malformation is a ParseError."""
    doc = io.load_json(path)
    try:
        return getattr(io, kind)(doc)
    except (ParseError, WordTypeError):
        raise
    except (ValueError, TypeError, KeyError, IndexError, AttributeError) as exc:
        raise ParseError(f"{path}: malformed {kind} document: {exc}") from None


def _matrix_text(m) -> str:
    if len(m) == 1 and len(m[0]) == 1:
        return str(m[0][0])
    return "\n".join("[" + ", ".join(r) + "]" for r in format_matrix(m))


def _scalar_arg(text: str) -> Scalar:
    try:
        return Scalar(text)
    except ParseError as exc:
        raise ParseError(f"bad scalar {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# verbs


def _group(a, rep: _Report) -> None:
    if a.action == "catalog":
        gs = catalog(a.max_order)
        rep.value("groups", "\n".join(f"{g.label} (order {g.order})" for g in gs), [[g.label, g.order] for g in gs])
        return
    g = _load("group", a.file)
    if a.action == "verify":
        rep.verdict(verify_group(g))
    else:
        classes = conjugacy_classes(g)
        rep.value(
            "classes",
            "\n".join("{" + ", ".join(g.names[x] for x in c) + "}" for c in classes),
            [[g.names[x] for x in c] for c in classes],
        )


def _cocycle(a, rep: _Report) -> None:
    if a.action == "verify":
        rep.verdict(verify_cocycle(_load("cocycle", a.file)))
        return
    g = group_from_spec(a.group)
    rnd = random.Random(a.seed)
    tables = [Cocycle.from_exponents(g, t, a.order) for t in sample_tables(g, a.count, rnd, order=a.order)]
    n_coc = agree = 0
    for alpha in tables:
        is_coc = bool(verify_cocycle(alpha))
        n_coc += is_coc
        agree += is_coc == bool(verify_two_character(from_cocycle(alpha)))
    n = len(tables)
    msg = f"{n_coc}/{n} sampled tables are cocycles; 2-character check agrees on {agree}/{n}"
    rep.verdict(Verdict.passed(msg, n) if agree == n else Verdict.failed(msg, None, agree, n))


def _character(a, rep: _Report) -> None:
    c = _load("character", a.file)
    if a.action == "verify":
        if c.holonomy is not None:
            vx = verify_crossed_module(c.group)
            if not vx:
                rep.verdict(vx)
                return
        rep.verdict(verify_two_character(c))
        return
    table, trivial = holonomy_table(c)
    A, G = c.group.fiber, c.base
    lines = [f"hol({A.names[x]}, {G.names[g]}) = {table[x][g]}" for x in range(A.order) for g in range(G.order)]
    lines.append("holonomy is trivial" if trivial else "holonomy is nontrivial in this trivialization")
    rep.value(
        "holonomy",
        "\n".join(lines),
        {"table": [[str(x) for x in r] for r in table], "trivial": trivial},
    )


def _projrep(a, rep: _Report) -> None:
    r = _load("projrep", a.file)
    if a.action == "verify":
        rep.verdict(verify_projrep(r))
        return
    v = verify_projrep(r)
    if not v:
        rep.verdict(v)
        return
    rep.verdict(verify_fixed_point(to_fixed_point(r)))


def _frob(a, rep: _Report) -> None:
    alg = _load("frobenius", a.file)
    if a.action == "verify":
        rep.verdict(verify_frobenius(alg))
    elif a.action == "genus":
        val = genus_invariant(a.genus, alg)
        rep.value("value", str(val))
    else:
        n = len(FROBENIUS_RELATIONS)
        for k, (name, lhs, rhs) in enumerate(FROBENIUS_RELATIONS):
            if eval_closed_2d(parse_word(lhs, 2), alg) != eval_closed_2d(parse_word(rhs, 2), alg):
                rep.verdict(Verdict.failed(f"relation {name} fails: {lhs} != {rhs}", (name,), k + 1, n))
                return
        rep.verdict(Verdict.passed(f"all {n} Frobenius relations hold ({n}/{n} word pairs)", n))


def _boundary_arg(a) -> BoundaryData:
    if a.boundary:
        bc = _load("boundary", a.boundary)
    else:
        bc = BoundaryData.standard(a.vdim)
    bc.check()
    return bc


def _cob(a, rep: _Report) -> None:
    dim = {"1": 1, "2": 2, "2c": "2c"}[a.dim]
    if a.action == "eval" and dim == 2 and not a.algebra:
        raise ParseError("cob eval --dim 2 needs --algebra FILE")
    alg = _load("frobenius", a.algebra) if a.action == "eval" and dim == 2 else None
    w = parse_word(a.word, dim)
    if a.action == "parse":
        rep.value("word", serialize_word(w))
        rep.value("signature", w.signature())
    elif a.action == "normal-form":
        if dim == 2:
            raise WordTypeError("normal forms are computed for 1d words")
        rep.value("normal_form", from_word(w).describe())
    elif dim == 2:
        m = eval_closed_2d(w, alg)
        rep.value("value", _matrix_text(m), io.matrix_to_json(m))
    else:
        m = eval_1d_data(w, _boundary_arg(a))
        rep.value("value", _matrix_text(m), io.matrix_to_json(m))


def _workers(a) -> int:
    return max(1, os.cpu_count() or 1) if a.parallel else 1


def _anomaly(a, rep: _Report) -> None:
    workers = _workers(a)
    if a.action == "verify":
        doc = io.load_json(a.file)
        if "maps" in doc:
            z = _load("theory", a.file)
            v = verify_anomaly(z.anomaly, workers)
            rep.verdict(v, "anomaly")
            if v:
                rep.verdict(verify_anomalous_theory(z, workers), "theory")
        else:
            rep.verdict(verify_anomaly(_load("anomaly", a.file), workers))
        return
    model = build_1d_model(a.points, a.circles, a.intervals)
    lam = _scalar_arg(a.lam)
    if a.action == "reduce":
        z = reduce_boundary(lam, _boundary_arg(a), model)
        rep.verdict(verify_anomaly(z.anomaly, workers), "anomaly")
        rep.verdict(verify_anomalous_theory(z, workers), "theory")
        if a.output:
            with open(a.output, "w", encoding="utf-8") as fh:
                json.dump(io.theory_to_json(z), fh, sort_keys=True)
                fh.write("\n")
        return
    rnd = random.Random(a.seed)
    rep.verdict(verify_anomaly(euler_anomaly(model, lam), workers), "anomaly")
    for k in range(a.count):
        bc = random_boundary_data(rnd)
        v = verify_anomalous_theory(reduce_boundary(lam, bc, model), workers)
        if not v:
            rep.verdict(v, "theory")
            rep.value("failed_table", f"failed on boundary table {k + 1}/{a.count}", io.boundary_to_json(bc))
            return
    n = a.count
    rep.verdict(Verdict.passed(f"reduction verified on {n}/{n} random boundary tables", n), "theory")


def _modular(a, rep: _Report) -> None:
    if a.builtin:
        m = {"toric": toric_code, "semion": semion}[a.builtin]()
    elif a.file:
        m = _load("modular", a.file)
    else:
        raise ParseError("modular defect needs a FILE or --builtin")
    v = verify_modular_data(m)
    if not v:
        rep.verdict(v)
        return
    if a.float:
        z = modular_defect_float(m, a.relator)
        rep.value("defect", f"{z.real:.12f}{z.imag:+.12f}j", [round(z.real, 12), round(z.imag, 12)])
    else:
        rep.value("defect", str(modular_defect(m, a.relator)))


VERBS: dict[str, Callable] = {
    "group": _group,
    "cocycle": _cocycle,
    "character": _character,
    "projrep": _projrep,
    "frob": _frob,
    "cob": _cob,
    "anomaly": _anomaly,
    "modular": _modular,
}


# ---------------------------------------------------------------------------
# argument parsing

_COMMON_DEFAULTS = {"seed": 0, "conductor_cap": 120, "format": "text", "parallel": False}


def _common(p: argparse.ArgumentParser, default) -> None:
    def d(key):
        return _COMMON_DEFAULTS[key] if default else argparse.SUPPRESS

    p.add_argument("--seed", type=int, default=d("seed"), help="seed for sampled sweeps (default 0)")
    p.add_argument("--conductor-cap", type=int, default=d("conductor_cap"), help="largest cyclotomic conductor")
    p.add_argument("--format", choices=["text", "json"], default=d("format"))
    p.add_argument("--parallel", action="store_true", default=d("parallel"), help="fan out pure checks")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="tqftlab", description="Exact checks for small TQFT data.")
    _common(top, True)
    verbs = top.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def action(verb_parser, name: str, help_: str):
        p = verb_parser.add_parser(name, help=help_)
        _common(p, False)
        return p

    g = verbs.add_parser("group", help="finite groups").add_subparsers(dest="action", required=True)
    action(g, "verify", "group axioms").add_argument("file")
    action(g, "classes", "conjugacy classes").add_argument("file")
    action(g, "catalog", "list catalog groups").add_argument("--max-order", type=int, default=8)

    c = verbs.add_parser("cocycle", help="2-cocycles").add_subparsers(dest="action", required=True)
    action(c, "verify", "cocycle and unit conditions").add_argument("file")
    p = action(c, "sweep", "sampled tables: cocycle check vs 2-character check")
    p.add_argument("group", help="catalog expression, e.g. 'cyclic(4)'")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--order", type=int, default=4, help="values are order-th roots of unity")

    ch = verbs.add_parser("character", help="2-characters").add_subparsers(dest="action", required=True)
    action(ch, "verify", "associativity (and holonomy compatibility)").add_argument("file")
    action(ch, "holonomy", "holonomy table over a crossed module").add_argument("file")

    pr = verbs.add_parser("projrep", help="projective representations").add_subparsers(dest="action", required=True)
    action(pr, "verify", "projective relation").add_argument("file")
    action(pr, "fixed-point", "convert to a homotopy fixed point and verify").add_argument("file")

    f = verbs.add_parser("frob", help="Frobenius algebras").add_subparsers(dest="action", required=True)
    action(f, "verify", "Frobenius axioms").add_argument("file")
    p = action(f, "genus", "closed genus-g invariant")
    p.add_argument("file")
    p.add_argument("--genus", type=int, required=True)
    action(f, "relations", "the seven relation word pairs").add_argument("file")

    cb = verbs.add_parser("cob", help="cobordism words").add_subparsers(dest="action", required=True)
    for name, help_ in (("eval", "evaluate a word"), ("parse", "typecheck and normalize"), ("normal-form", "1d normal form")):
        p = action(cb, name, help_)
        p.add_argument("word")
        p.add_argument("--dim", choices=["1", "2", "2c"], default="2")
        if name == "eval":
            p.add_argument("--algebra", help="Frobenius algebra file (2d)")
            p.add_argument("--boundary", help="boundary data file (1d)")
            p.add_argument("--vdim", type=int, default=1, help="dim V with standard data (1d)")

    an = verbs.add_parser("anomaly", help="anomalies and anomalous theories").add_subparsers(dest="action", required=True)
    action(an, "verify", "anomaly coherence, then anom1/anom2").add_argument("file")
    for name, help_ in (("reduce", "reduce one boundary table"), ("sweep", "reduce random boundary tables")):
        p = action(an, name, help_)
        p.add_argument("--lam", default="1", help="Euler parameter, a scalar literal")
        p.add_argument("--points", type=int, default=1)
        p.add_argument("--circles", type=int, default=1)
        p.add_argument("--intervals", type=int, default=1)
        if name == "reduce":
            p.add_argument("--boundary")
            p.add_argument("--vdim", type=int, default=1)
            p.add_argument("--output", help="write the reduced theory as JSON")
        else:
            p.add_argument("--count", type=int, default=20)

    md = verbs.add_parser("modular", help="modular data").add_subparsers(dest="action", required=True)
    p = action(md, "defect", "scalar by which a relator fails")
    p.add_argument("file", nargs="?")
    p.add_argument("--builtin", choices=["toric", "semion"])
    p.add_argument("--relator", default="(S T)^3 S^-2")
    p.add_argument("--float", action="store_true", help="floating-point oracle instead of exact")
    return top


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)
    for k, v in _COMMON_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    rep = _Report(args.format)
    try:
        with conductor_limit(args.conductor_cap):
            VERBS[args.verb](args, rep)
    except (ParseError, WordTypeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except WorkbenchError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FAIL
    rep.emit(out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())
