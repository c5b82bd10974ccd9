"""Bound quivers with quadratic monomial relations, paths, and thread data.

Composition is left to right: a path ``a1 a2 ... al`` needs ``t(ai) = s(ai+1)``,
and a relation pair ``(a, b)`` means the length-2 path a-then-b lies in I.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True, order=True)
class Path:
    """A path from ``source`` to ``target``; ``arrows == ()`` is the trivial path."""

    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return "e_" + self.source
        return "·".join(self.arrows)

    def sort_key(self):
        # maximal paths before trivial threads, each lexicographically
        return (1, (self.source,)) if not self.arrows else (0, self.arrows)


@dataclass(frozen=True)
class BoundQuiver:
    name: str
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    relations: frozenset = frozenset()
    degrees: Optional[Tuple[Tuple[str, int], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "relations", frozenset(tuple(r) for r in self.relations))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"duplicate vertex id in {self.name}")
        ids = [a.id for a in arrows]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate arrow id in {self.name}")
        vs = set(self.vertices)
        for a in arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.id} has an unknown endpoint")
        known = set(ids)
        for r in self.relations:
            if len(r) != 2 or r[0] not in known or r[1] not in known:
                raise ValueError(f"relation {r} refers to unknown arrows")
        if self.degrees is not None:
            given = dict(self.degrees)
            extra = set(given) - known
            if extra:
                raise ValueError(f"degrees given for unknown arrows {sorted(extra)}")
            full = tuple((a, int(given.get(a, 0))) for a in ids)
            object.__setattr__(self, "degrees", full)

    # lookups -------------------------------------------------------------

    @cached_property
    def arrow_map(self) -> Dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def _deg(self) -> Dict[str, int]:
        return dict(self.degrees) if self.degrees is not None else {}

    def source(self, arrow: str) -> str:
        return self.arrow_map[arrow].source

    def target(self, arrow: str) -> str:
        return self.arrow_map[arrow].target

    def deg(self, arrow: str) -> int:
        return self._deg.get(arrow, 0)

    @cached_property
    def out_arrows(self) -> Dict[str, List[str]]:
        out: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a.id)
        return out

    @cached_property
    def in_arrows(self) -> Dict[str, List[str]]:
        inc: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a.id)
        return inc

    def din(self, v: str) -> int:
        return len(self.in_arrows[v])

    def dout(self, v: str) -> int:
        return len(self.out_arrows[v])

    @property
    def d(self) -> int:
        return 2 * len(self.vertices) - len(self.arrows)

    @property
    def chi(self) -> int:
        return len(self.vertices) - len(self.arrows)

    @cached_property
    def _succ(self) -> Tuple[Dict[str, str], Dict[str, str]]:
        perm: Dict[str, str] = {}
        forb: Dict[str, str] = {}
        for a in self.arrows:
            for b in self.out_arrows[a.target]:
                table = forb if (a.id, b) in self.relations else perm
                table.setdefault(a.id, b)
        return perm, forb

    @cached_property
    def _pred(self) -> Tuple[Dict[str, str], Dict[str, str]]:
        perm, forb = self._succ
        return {b: a for a, b in perm.items()}, {b: a for a, b in forb.items()}

    def permitted_successor(self, arrow: str) -> Optional[str]:
        return self._succ[0].get(arrow)

    def forbidden_successor(self, arrow: str) -> Optional[str]:
        return self._succ[1].get(arrow)

    def permitted_predecessor(self, arrow: str) -> Optional[str]:
        return self._pred[0].get(arrow)

    def forbidden_predecessor(self, arrow: str) -> Optional[str]:
        return self._pred[1].get(arrow)

    # construction helpers --------------------------------------------------

    def path(self, *arrows: str) -> Path:
        """Build a composable arrow sequence (it may still lie in I)."""
        if not arrows:
            raise ValueError("use trivial() for the empty path")
        for a, b in zip(arrows, arrows[1:]):
            if self.target(a) != self.source(b):
                raise ValueError(f"{a} and {b} are not composable")
        return Path(self.source(arrows[0]), self.target(arrows[-1]), tuple(arrows))

    def trivial(self, v: str) -> Path:
        if v not in self.in_arrows:
            raise ValueError(f"unknown vertex {v}")
        return Path(v, v)

    def is_path_in_A(self, p: Path) -> bool:
        return all(pair not in self.relations for pair in zip(p.arrows, p.arrows[1:]))

    def is_antipath(self, p: Path) -> bool:
        return all(pair in self.relations for pair in zip(p.arrows, p.arrows[1:]))

    def with_degrees(self, degrees: Optional[Mapping[str, int]]) -> "BoundQuiver":
        degs = None if degrees is None else tuple(degrees.items())
        return BoundQuiver(self.name, self.vertices, self.arrows, self.relations, degs)

    def renamed(self, name: str) -> "BoundQuiver":
        return BoundQuiver(name, self.vertices, self.arrows, self.relations, self.degrees)

    def with_arrow_order(self, order: Sequence[str]) -> "BoundQuiver":
        arrows = tuple(self.arrow_map[a] for a in order)
        return BoundQuiver(self.name, self.vertices, arrows, self.relations, self.degrees)


def make_quiver(name: str, vertices: Iterable[str], arrows: Iterable[Tuple[str, str, str]],
                relations: Iterable[Tuple[str, str]] = (),
                degrees: Optional[Mapping[str, int]] = None) -> BoundQuiver:
    degs = None if degrees is None else tuple(degrees.items())
    return BoundQuiver(name, tuple(vertices), tuple(Arrow(*a) for a in arrows),
                       frozenset(relations), degs)


# validation ------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    tag: str
    items: Tuple[str, ...]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    mode: str
    violations: Tuple[Violation, ...]
    n_vertices: int
    n_arrows: int
    d: int
    connected: bool

    @property
    def passed(self) -> bool:
        return not self.violations


def is_connected(bq: BoundQuiver) -> bool:
    if not bq.vertices:
        return True
    adj: Dict[str, set] = {v: set() for v in bq.vertices}
    for a in bq.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = {bq.vertices[0]}
    stack = [bq.vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(bq.vertices)


def validate(bq: BoundQuiver, mode: str = "gentle") -> ValidationReport:
    if mode not in ("gentle", "locally-gentle"):
        raise ValueError(f"unknown mode {mode!r}")
    if not bq.arrows:
        raise ValueError("a bound quiver needs at least one arrow")
    found: List[Violation] = []
    for a, b in sorted(bq.relations):
        if bq.target(a) != bq.source(b):
            found.append(Violation("relation-not-composable", (a, b),
                                   f"t({a})={bq.target(a)} differs from s({b})={bq.source(b)}"))
    for v in bq.vertices:
        if bq.din(v) > 2:
            found.append(Violation("in-degree", (v,), f"din({v})={bq.din(v)} exceeds 2"))
        if bq.dout(v) > 2:
            found.append(Violation("out-degree", (v,), f"dout({v})={bq.dout(v)} exceeds 2"))
    for a in bq.arrows:
        outs = bq.out_arrows[a.target]
        ins = bq.in_arrows[a.source]
        checks = [
            ("permitted-successor", [b for b in outs if (a.id, b) not in bq.relations]),
            ("forbidden-successor", [b for b in outs if (a.id, b) in bq.relations]),
            ("permitted-predecessor", [b for b in ins if (b, a.id) not in bq.relations]),
            ("forbidden-predecessor", [b for b in ins if (b, a.id) in bq.relations]),
        ]
        for tag, hits in checks:
            if len(hits) > 1:
                found.append(Violation(tag, (a.id, *hits), f"{a.id} has {len(hits)} candidates"))
    connected = is_connected(bq)
    if not connected:
        found.append(Violation("disconnected", (), "underlying graph is not connected"))
    if mode == "gentle" and not found:
        for cyc in cycles(bq)["oriented"]:
            found.append(Violation("oriented-cycle", cyc.arrows, f"oriented cycle {cyc}"))
    return ValidationReport(mode, tuple(found), len(bq.vertices), len(bq.arrows), bq.d, connected)


def require(bq: BoundQuiver, mode: str = "gentle") -> None:
    report = validate(bq, mode)
    if not report.passed:
        first = report.violations[0]
        raise ValueError(f"{bq.name} is not {mode}: {first.tag} ({first.message})")


# paths -----------------------------------------------------------------------


def compose(bq: BoundQuiver, p: Path, q: Path) -> Optional[Path]:
    """Product p·q in A, or None for zero."""
    if p.target != q.source:
        return None
    if p.is_trivial:
        return q
    if q.is_trivial:
        return p
    if (p.arrows[-1], q.arrows[0]) in bq.relations:
        return None
    if not (bq.is_path_in_A(p) and bq.is_path_in_A(q)):
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


def degree(bq: BoundQuiver, p: Path, kind: str = "deg") -> int:
    total = sum(bq.deg(a) for a in p.arrows)
    if kind == "deg":
        return total
    if kind == "degbar":
        if not bq.is_antipath(p):
            raise ValueError(f"degbar needs an antipath, got {p}")
        return len(p) - total if p.arrows else 0
    raise ValueError(f"unknown degree kind {kind!r}")


def _min_rotation(seq: Tuple[str, ...]) -> Tuple[str, ...]:
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def _chains_and_cycles(bq: BoundQuiver, succ: Mapping[str, str], pred: Mapping[str, str]):
    chains: List[Tuple[str, ...]] = []
    seen = set()
    for a in bq.arrows:
        if a.id in pred:
            continue
        chain = [a.id]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        seen.update(chain)
        chains.append(tuple(chain))
    loops = set()
    for a in bq.arrows:
        if a.id in seen:
            continue
        cyc = [a.id]
        while succ[cyc[-1]] != a.id:
            cyc.append(succ[cyc[-1]])
        seen.update(cyc)
        loops.add(_min_rotation(tuple(cyc)))
    return sorted(chains), sorted(loops)


def cycles(bq: BoundQuiver) -> Dict[str, List[Path]]:
    perm, forb = bq._succ
    pperm, pforb = bq._pred
    _, oriented = _chains_and_cycles(bq, perm, pperm)
    _, anti = _chains_and_cycles(bq, forb, pforb)
    return {"oriented": [bq.path(*c) for c in oriented], "anti": [bq.path(*c) for c in anti]}


@dataclass(frozen=True)
class ThreadSummary:
    maximal_paths: Tuple[Path, ...]
    trivial: Tuple[str, ...]
    antipaths: Tuple[Path, ...]
    oriented_cycles: Tuple[Path, ...]
    anticycles: Tuple[Path, ...]

    @property
    def permitted(self) -> Tuple[Path, ...]:
        """M_A followed by the trivial threads, in label order."""
        return self.maximal_paths + tuple(Path(v, v) for v in self.trivial)


def trivial_thread_vertices(bq: BoundQuiver) -> List[str]:
    out = []
    for v in bq.vertices:
        ins, outs = bq.in_arrows[v], bq.out_arrows[v]
        if len(ins) <= 1 and len(outs) <= 1 and not any(
                (b, g) in bq.relations for b in ins for g in outs):
            out.append(v)
    return sorted(out)


def threads(bq: BoundQuiver) -> ThreadSummary:
    perm, forb = bq._succ
    pperm, pforb = bq._pred
    mpaths, oriented = _chains_and_cycles(bq, perm, pperm)
    apaths, anti = _chains_and_cycles(bq, forb, pforb)
    return ThreadSummary(
        tuple(bq.path(*c) for c in mpaths),
        tuple(trivial_thread_vertices(bq)),
        tuple(bq.path(*c) for c in apaths),
        tuple(bq.path(*c) for c in oriented),
        tuple(bq.path(*c) for c in anti),
    )


def path_basis(bq: BoundQuiver) -> List[Path]:
    require(bq, "gentle")
    basis = [Path(v, v) for v in bq.vertices]
    for rho in threads(bq).maximal_paths:
        n = len(rho)
        for i in range(n):
            for j in range(i + 1, n + 1):
                basis.append(bq.path(*rho.arrows[i:j]))
    return basis
