"""The ``.qvr`` text format and the structured (JSON) output format.

Grammar, one statement per line::

    quiver <name>
    vertex <id> [<id> ...]
    arrow <id> <source> <target> [deg=<int>]
    rel <first> <second>        # first-then-second lies in I

Ids use the characters ``A-Za-z0-9_#*.``. A comment starts with a ``#`` at
the beginning of a line or after whitespace, so ids may contain ``#``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, fields, is_dataclass
from fractions import Fraction
from functools import singledispatch
from typing import Any, Dict, List, Tuple

from .blossom import Blossoming, Orbit
from .constructions import RepetitionQuiver, SheetElement
from .invariants import AGTable, Check, HochschildProfile, Report
from .quiver import Arrow, BoundQuiver, Path, ThreadSummary, ValidationReport, Violation
from .realization import DualReport, SemisimpleAlgebra, VElement

ID = re.compile(r"[A-Za-z0-9_#*.]+\Z")
DEG = re.compile(r"deg=(-?\d+)\Z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class QvrDocument:
    text: str
    quiver: BoundQuiver
    positions: Dict[str, Tuple[int, int]]


def _tokens(line: str) -> List[Tuple[str, int]]:
    out = []
    for m in re.finditer(r"\S+", line):
        if m.group().startswith("#"):
            break
        out.append((m.group(), m.start() + 1))
    return out


def parse_document(text: str) -> QvrDocument:
    name = None
    vertices: List[str] = []
    arrows: List[Arrow] = []
    degrees: Dict[str, int] = {}
    relations: List[Tuple[str, str]] = []
    positions: Dict[str, Tuple[int, int]] = {}
    arrow_at: Dict[str, Arrow] = {}

    def check_id(tok: str, lineno: int, col: int) -> None:
        if not ID.match(tok):
            raise ParseError(f"invalid id {tok!r}", lineno, col)

    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        (kw, kcol), args = toks[0], toks[1:]
        if kw == "quiver":
            if len(args) != 1:
                raise ParseError("expected: quiver <name>", lineno, kcol)
            if name is not None:
                raise ParseError("duplicate quiver statement", lineno, kcol)
            check_id(*args[0], lineno)
            name = args[0][0]
        elif kw == "vertex":
            if not args:
                raise ParseError("expected at least one vertex id", lineno, kcol)
            for tok, col in args:
                check_id(tok, lineno, col)
                if tok in positions:
                    raise ParseError(f"duplicate id {tok!r}", lineno, col)
                positions[tok] = (lineno, col)
                vertices.append(tok)
        elif kw == "arrow":
            if len(args) not in (3, 4):
                raise ParseError("expected: arrow <id> <source> <target> [deg=<int>]", lineno, kcol)
            (aid, acol), (src, scol), (tgt, tcol) = args[:3]
            check_id(aid, lineno, acol)
            if aid in positions:
                raise ParseError(f"duplicate id {aid!r}", lineno, acol)
            for v, col in ((src, scol), (tgt, tcol)):
                if v not in vertices:
                    raise ParseError(f"unknown vertex {v!r}", lineno, col)
            if len(args) == 4:
                m = DEG.match(args[3][0])
                if not m:
                    raise ParseError(f"expected deg=<int>, got {args[3][0]!r}", lineno, args[3][1])
                degrees[aid] = int(m.group(1))
            positions[aid] = (lineno, acol)
            arrow_at[aid] = Arrow(aid, src, tgt)
            arrows.append(arrow_at[aid])
        elif kw == "rel":
            if len(args) != 2:
                raise ParseError("expected: rel <arrow> <arrow>", lineno, kcol)
            (x, xcol), (y, ycol) = args
            for a, col in ((x, xcol), (y, ycol)):
                if a not in arrow_at:
                    raise ParseError(f"unknown arrow {a!r}", lineno, col)
            if arrow_at[x].target != arrow_at[y].source:
                raise ParseError(f"non-composable relation: t({x}) != s({y})", lineno, ycol)
            if (x, y) in relations:
                raise ParseError(f"duplicate relation {x} {y}", lineno, kcol)
            relations.append((x, y))
        else:
            raise ParseError(f"unknown statement {kw!r}", lineno, kcol)
    if name is None:
        raise ParseError("missing quiver statement", 1, 1)
    bq = BoundQuiver(name, tuple(vertices), tuple(arrows), frozenset(relations),
                     tuple(degrees.items()) if degrees else None)
    return QvrDocument(text, bq, positions)


def parse_qvr(text: str) -> BoundQuiver:
    return parse_document(text).quiver


def quiver_text(bq: BoundQuiver) -> str:
    lines = [f"quiver {bq.name}", "vertex " + " ".join(bq.vertices)]
    for a in bq.arrows:
        deg = f" deg={bq.deg(a.id)}" if bq.degrees is not None else ""
        lines.append(f"arrow {a.id} {a.source} {a.target}{deg}")
    order = {a.id: i for i, a in enumerate(bq.arrows)}
    for x, y in sorted(bq.relations, key=lambda r: (order[r[0]], order[r[1]])):
        lines.append(f"rel {x} {y}")
    return "\n".join(lines) + "\n"


# structured trees ----------------------------------------------------------------


def _num(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


@singledispatch
def to_tree(value) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return _num(value)
    if isinstance(value, dict):
        return {str(k): to_tree(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_tree(v) for v in value]
    if is_dataclass(value):
        out = {f.name: to_tree(getattr(value, f.name)) for f in fields(value)}
        out["type"] = type(value).__name__
        if isinstance(getattr(type(value), "passed", None), property):
            out["passed"] = value.passed
        return out
    raise TypeError(f"cannot serialize {type(value).__name__}")


@to_tree.register
def _(value: Path):
    return {"source": value.source, "target": value.target, "arrows": list(value.arrows)}


@to_tree.register
def _(bq: BoundQuiver):
    order = {a.id: i for i, a in enumerate(bq.arrows)}
    tree = {
        "type": "BoundQuiver",
        "name": bq.name,
        "vertices": list(bq.vertices),
        "arrows": [[a.id, a.source, a.target] for a in bq.arrows],
        "relations": [list(r) for r in sorted(bq.relations, key=lambda r: (order[r[0]], order[r[1]]))],
    }
    if bq.degrees is not None:
        tree["degrees"] = [[a, d] for a, d in bq.degrees]
    return tree


@to_tree.register
def _(table: AGTable):
    return {"type": "AGTable", "graded": table.graded, "entries": [list(t) for t in table.triples()]}


@to_tree.register
def _(rep: RepetitionQuiver):
    return {"type": "RepetitionQuiver", "base": rep.base.name, "k": rep.k,
            "w": list(rep.w), "quiver": to_tree(rep.quiver)}


@to_tree.register
def _(b: Blossoming):
    return {"type": "Blossoming", "base": b.base.name, "blossomed": to_tree(b.blossomed),
            "threads": [to_tree(p) for p in b.wp], "phi": list(b.phi),
            "delta": [to_tree(p) for p in b.delta]}


@to_tree.register
def _(va: SemisimpleAlgebra):
    return {"type": "SemisimpleAlgebra", "total_dim": va.total_dim,
            "blocks": [{"kind": b.kind, "id": b.name, "size": b.size} for b in va.blocks]}


@to_tree.register
def _(x: VElement):
    return {"type": "VElement",
            "terms": [[b, u, v, str(c.numerator), str(c.denominator)] for (b, u, v), c in sorted(x.items())]}


@to_tree.register
def _(x: SheetElement):
    return {"type": "SheetElement", "label": str(x)}


def emit(value, format: str = "text") -> str:
    if format == "structured":
        return json.dumps(to_tree(value), sort_keys=True, indent=1) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    return render_text(value)


def read_structured(text: str) -> Any:
    return json.loads(text)


def quiver_from_tree(tree: Dict) -> BoundQuiver:
    if tree.get("type") != "BoundQuiver":
        raise ValueError("not a BoundQuiver tree")
    degrees = tree.get("degrees")
    return BoundQuiver(tree["name"], tuple(tree["vertices"]),
                       tuple(Arrow(*a) for a in tree["arrows"]),
                       frozenset(tuple(r) for r in tree["relations"]),
                       None if degrees is None else tuple((a, d) for a, d in degrees))


def table_from_tree(tree: Dict) -> AGTable:
    if tree.get("type") != "AGTable":
        raise ValueError("not an AGTable tree")
    return AGTable.from_counts({(q, l): c for q, l, c in tree["entries"]}, tree["graded"])


# human readable text ---------------------------------------------------------------


@singledispatch
def render_text(value) -> str:
    if isinstance(value, dict):
        return "".join(f"{k}: {_fmt(v)}\n" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return "".join(f"{_fmt(v)}\n" for v in value)
    return f"{_fmt(value)}\n"


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(_num(v))
    if isinstance(v, Path):
        return str(v)
    return str(v)


@render_text.register
def _(bq: BoundQuiver):
    return quiver_text(bq)


@render_text.register
def _(table: AGTable):
    head = "q\tl\tcount\n" if not table.graded else "q\tl(graded)\tcount\n"
    return head + "".join(f"{q}\t{l}\t{c}\n" for q, l, c in table.triples())


@render_text.register
def _(report: Report):
    lines = [f"{report.name}: {'PASS' if report.passed else 'FAIL'}"]
    for c in report.checks:
        lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}" + (f"  {c.detail}" if c.detail else ""))
    return "\n".join(lines) + "\n"


@render_text.register
def _(report: ValidationReport):
    lines = [f"{report.mode}: {'PASS' if report.passed else 'FAIL'}",
             f"vertices={report.n_vertices} arrows={report.n_arrows} d={report.d} connected={report.connected}"]
    lines += [f"  {v.tag}: {v.message}" for v in report.violations]
    return "\n".join(lines) + "\n"


@render_text.register
def _(s: ThreadSummary):
    def row(title, items):
        return f"{title}: " + (", ".join(str(x) for x in items) if items else "-")
    return "\n".join([
        row("maximal paths", s.maximal_paths), row("trivial threads", s.trivial),
        row("maximal antipaths", s.antipaths), row("oriented cycles", s.oriented_cycles),
        row("anticycles", s.anticycles)]) + "\n"


@render_text.register
def _(b: Blossoming):
    lines = [f"d = {b.d}", "p\tthread\tPhi(p)\tdelta"]
    lines += [f"{p}\t{b.wp[p - 1]}\t{b.phi[p - 1]}\t{b.delta[p - 1]}" for p in range(1, b.d + 1)]
    return "\n".join(lines) + "\n\n" + quiver_text(b.blossomed)


@render_text.register
def _(rep: RepetitionQuiver):
    return quiver_text(rep.quiver)


@render_text.register
def _(h: HochschildProfile):
    return f"char={h.char} chi={h.chi}\n" + "".join(f"HH^{n}\t{d}\n" for n, d in enumerate(h.dims))


@render_text.register
def _(va: SemisimpleAlgebra):
    lines = [f"total_dim = {va.total_dim}"]
    lines += [f"  {b.kind}\t{b.name}\t{b.size}x{b.size}" for b in va.blocks]
    return "\n".join(lines) + "\n"


@render_text.register
def _(d: DualReport):
    lines = [f"dim Cok eta = {d.dim}",
             f"coefficients in {{0,1,-1}}: {d.unit_coefficients}",
             f"almost standard: {d.almost_standard}",
             f"V/N equals DA: {d.quotient_is_DA}",
             f"restrictive (char 0): {d.restrictive}",
             "junction coefficients:"]
    lines += [f"  {side}: {th} on {xi}: {_num(c)}" for side, th, xi, c in d.junction_coefficients]
    lines += [f"  failure: {f}" for f in d.failures]
    return "\n".join(lines) + "\n"
