"""Repetition, welding, APR reflection, isomorphism, sheet bases, random quivers."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .blossom import Blossoming, blossom
from .quiver import (Arrow, BoundQuiver, Path, compose, degree, path_basis, require,
                     threads, validate)


# repetition -------------------------------------------------------------------


def connecting_arrow_id(thread: Path, i: int) -> str:
    if thread.is_trivial:
        return f"iota_{thread.source}#{i}"
    return ".".join(thread.arrows) + f"*#{i}"


def natural_w(bq: BoundQuiver, b: Blossoming) -> List[int]:
    return [0 if p.is_trivial else -degree(bq, p) for p in b.wp]


@dataclass(frozen=True)
class RepetitionQuiver:
    base: BoundQuiver
    k: int
    quiver: BoundQuiver
    blossoming: Blossoming
    w: Tuple[int, ...]

    def lifted_thread(self, p: int) -> Path:
        """The permitted thread of A^(k) running through label p on every sheet."""
        thread = self.blossoming.wp[p - 1]
        arrows: List[str] = []
        for i in range(1, self.k + 1):
            arrows.extend(f"{a}#{i}" for a in thread.arrows)
            if i < self.k:
                arrows.append(connecting_arrow_id(thread, i))
        return Path(f"{thread.source}#1", f"{thread.target}#{self.k}", tuple(arrows))


def repeat(bq: BoundQuiver, k: int, w: Optional[Sequence[int]] = None) -> RepetitionQuiver:
    if k < 1:
        raise ValueError("k must be positive")
    b = blossom(bq)
    d = b.d
    if d == 0:
        raise ValueError("no permitted thread: the repetition is undefined")
    if w is None:
        w = natural_w(bq, b)
    w = tuple(int(x) for x in w)
    if len(w) != d:
        raise ValueError(f"w needs {d} entries, got {len(w)}")
    bl = b.blossomed
    original = [a.id for a in bq.arrows]

    vertices = [f"{v}#{i}" for i in range(1, k + 1) for v in bq.vertices]
    arrows = [Arrow(f"{a.id}#{i}", f"{a.source}#{i}", f"{a.target}#{i}")
              for i in range(1, k + 1) for a in bq.arrows]
    conn = {}
    for i in range(1, k):
        for p, thread in enumerate(b.wp, start=1):
            name = connecting_arrow_id(thread, i)
            conn[(p, i)] = name
            arrows.append(Arrow(name, f"{thread.target}#{i}", f"{thread.source}#{i + 1}"))

    rel = set()
    for i in range(1, k + 1):
        rel.update((f"{x}#{i}", f"{y}#{i}") for x, y in bq.relations)
    for i in range(1, k):
        for p in range(1, d + 1):
            tau, sigma = b.tau[p - 1], b.sigma[p - 1]
            for x in original:
                if (x, tau) in bl.relations:
                    rel.add((f"{x}#{i}", conn[(p, i)]))
                if (sigma, x) in bl.relations:
                    rel.add((conn[(p, i)], f"{x}#{i + 1}"))
            if i + 1 < k:
                for p2 in range(1, d + 1):
                    if (sigma, b.tau[p2 - 1]) in bl.relations:
                        rel.add((conn[(p, i)], conn[(p2, i + 1)]))

    degrees = None
    if bq.degrees is not None or any(w):
        degrees = {f"{a}#{i}": bq.deg(a) for i in range(1, k + 1) for a in original}
        degrees.update({name: w[p - 1] for (p, i), name in conn.items()})
        degrees = tuple(degrees.items())
    quiver = BoundQuiver(f"{bq.name}.rep{k}", vertices, arrows, frozenset(rel), degrees)
    return RepetitionQuiver(bq, k, quiver, b, w)


# welding ----------------------------------------------------------------------


def _suffixed(bq: BoundQuiver, tag: str) -> BoundQuiver:
    return BoundQuiver(
        bq.name, [f"{v}#{tag}" for v in bq.vertices],
        [Arrow(f"{a.id}#{tag}", f"{a.source}#{tag}", f"{a.target}#{tag}") for a in bq.arrows],
        frozenset((f"{x}#{tag}", f"{y}#{tag}") for x, y in bq.relations),
        None if bq.degrees is None else tuple((f"{a}#{tag}", g) for a, g in bq.degrees))


def _suffix_path(p: Path, tag: str) -> Path:
    return Path(f"{p.source}#{tag}", f"{p.target}#{tag}", tuple(f"{a}#{tag}" for a in p.arrows))


def weld_labeled(a: BoundQuiver, b: BoundQuiver, s: Optional[Sequence[int]] = None,
                 a_order: Optional[Sequence[Path]] = None,
                 b_order: Optional[Sequence[Path]] = None) -> Tuple[BoundQuiver, List[Path]]:
    """Weld ``a`` and ``b`` along ``s``; also return the induced thread order."""
    ba, bb = blossom(a, a_order), blossom(b, b_order)
    d = ba.d
    if d != bb.d:
        raise ValueError(f"welding needs equal d, got {d} and {bb.d}")
    if d == 0:
        raise ValueError("welding needs d > 0")
    s = list(range(1, d + 1)) if s is None else [int(x) for x in s]
    if sorted(s) != list(range(1, d + 1)):
        raise ValueError(f"{s} is not a permutation of 1..{d}")

    ids_a = set(a.vertices) | {x.id for x in a.arrows}
    ids_b = set(b.vertices) | {x.id for x in b.arrows}
    wa, wb = list(ba.wp), list(bb.wp)
    if ids_a & ids_b:
        a, b = _suffixed(a, "1"), _suffixed(b, "2")
        wa = [_suffix_path(p, "1") for p in wa]
        wb = [_suffix_path(p, "2") for p in wb]
        ren_a = {x: f"{x}#1" for x in ids_a}
        ren_b = {x: f"{x}#2" for x in ids_b}
    else:
        ren_a = {x: x for x in ids_a}
        ren_b = {x: x for x in ids_b}
    taken = set(a.vertices) | set(b.vertices) | {x.id for x in a.arrows + b.arrows}
    n = 1
    while any(f"varpi{'' if n == 1 else '.' + str(n)}#{p}" in taken for p in range(1, d + 1)):
        n += 1
    stem = "varpi" if n == 1 else f"varpi.{n}"

    arrows = list(a.arrows) + list(b.arrows)
    rel = set(a.relations) | set(b.relations)
    order = []
    inv_a = {v: k for k, v in ren_a.items()}
    inv_b = {v: k for k, v in ren_b.items()}
    for p in range(1, d + 1):
        q = s[p - 1]
        name = f"{stem}#{p}"
        left, right = wa[p - 1], wb[q - 1]
        arrows.append(Arrow(name, left.target, right.source))
        for x in a.arrows:
            if (inv_a[x.id], ba.tau[p - 1]) in ba.blossomed.relations:
                rel.add((x.id, name))
        for y in b.arrows:
            if (bb.sigma[q - 1], inv_b[y.id]) in bb.blossomed.relations:
                rel.add((name, y.id))
        order.append(Path(left.source, right.target, left.arrows + (name,) + right.arrows))
    degrees = None
    if a.degrees is not None or b.degrees is not None:
        degrees = {x.id: a.deg(x.id) for x in a.arrows}
        degrees.update({y.id: b.deg(y.id) for y in b.arrows})
        degrees = tuple(degrees.items())
    quiver = BoundQuiver(f"{a.name}.weld.{b.name}", list(a.vertices) + list(b.vertices),
                         arrows, frozenset(rel), degrees)
    return quiver, order


def weld(a: BoundQuiver, b: BoundQuiver, s: Optional[Sequence[int]] = None) -> BoundQuiver:
    return weld_labeled(a, b, s)[0]


def iterated_weld(bq: BoundQuiver, k: int) -> BoundQuiver:
    """A^(k) built as ((A o A) o ...) o A with labels carried along."""
    if k < 1:
        raise ValueError("k must be positive")
    base_order = list(blossom(bq).wp)
    current, order = bq, base_order
    for _ in range(k - 1):
        current, order = weld_labeled(current, bq, None, order, base_order)
    return current


# APR reflection ---------------------------------------------------------------


def _beta(bq: BoundQuiver, x: str, alpha: str) -> Optional[str]:
    for b in bq.in_arrows[x]:
        if (b, alpha) not in bq.relations:
            return b
    return None


def reflection_failure(bq: BoundQuiver, x: str) -> Optional[str]:
    """None if (r1) and (r2) hold at x, otherwise a diagnostic."""
    if x not in bq.out_arrows:
        return f"unknown vertex {x}"
    loops = [a for a in bq.out_arrows[x] if bq.target(a) == x]
    if loops:
        return f"(r1) fails: loop {loops[0]} at {x}"
    for a in bq.out_arrows[x]:
        if _beta(bq, x, a) is None:
            return f"(r2) fails: no arrow beta into {x} with beta·{a} outside I"
    return None


def apr_reflect(bq: BoundQuiver, x: str) -> BoundQuiver:
    """Generalized APR reflection at x. Arrow ids are kept (lambda' is named lambda)."""
    require(bq, "gentle")
    problem = reflection_failure(bq, x)
    if problem:
        raise ValueError(problem)

    return _reflect_unchecked(bq, x)


def check_reflection_condition(bq: BoundQuiver, x: str) -> bool:
    if any(bq.target(a) == x for a in bq.out_arrows[x]):
        return False
    if bq.din(x) != 2 or bq.dout(x) != 2:
        return False
    return all(bq.forbidden_predecessor(b) is not None for b in bq.in_arrows[x])


def apr_transport(bq: BoundQuiver, x: str) -> List[Path]:
    """Transport every blossomed maximal path through the reflection at x.

    Returns the paths sigma'_p c(xi_1)...c(xi_r) tau'_p in the reflection of
    the blossomed quiver, ordered by label.
    """
    if not check_reflection_condition(bq, x):
        raise ValueError(f"the reflection condition fails at {x}")
    b = blossom(bq)
    bl = b.blossomed
    a1, a2 = sorted(bq.out_arrows[x])
    beta = {}
    for al in (a1, a2):
        beta[al] = bl.permitted_predecessor(al)
    gamma = {beta[al]: bl.forbidden_predecessor(beta[al]) for al in (a1, a2)}
    # beta_i is the permitted predecessor of alpha_i; gamma_i precedes beta_i forbiddenly
    pairs = {beta[a1]: a1, beta[a2]: a2}
    gam_of = {gamma[beta[a1]]: beta[a1], gamma[beta[a2]]: beta[a2]}

    def c_pair(bi: str, ai: str) -> Tuple[str, ...]:
        if ai in gam_of:
            return (ai, gam_of[ai])
        return (ai,)

    reflected = apr_reflect_blossomed(bl, x)
    out = []
    for p in range(1, b.d + 1):
        word: List[str] = [b.sigma[p - 1]]
        arrows = list(b.wp[p - 1].arrows)
        j = 0
        while j < len(arrows):
            lam = arrows[j]
            if lam in pairs and j + 1 < len(arrows) and arrows[j + 1] == pairs[lam]:
                word.extend(c_pair(lam, pairs[lam]))
                j += 2
                continue
            if lam in gam_of and lam not in (a1, a2):
                word.extend((lam, gam_of[lam]))
            else:
                word.append(lam)
            j += 1
        word.append(b.tau[p - 1])
        out.append(reflected.path(*word))
    return out


def apr_reflect_blossomed(blossomed: BoundQuiver, x: str) -> BoundQuiver:
    """Reflect a blossomed quiver at an original vertex (it is locally gentle, not gentle)."""
    problem = reflection_failure(blossomed, x)
    if problem:
        raise ValueError(problem)
    return _reflect_unchecked(blossomed, x)


def _reflect_unchecked(bq: BoundQuiver, x: str) -> BoundQuiver:
    def retarget(lam: str) -> bool:
        return any(bq.source(b) == bq.target(lam) and (lam, b) in bq.relations
                   for b in bq.in_arrows[x])

    new_arrows = []
    for lam in bq.arrows:
        if lam.target == x:
            src, tgt = x, lam.source
        else:
            src = bq.source(_beta(bq, x, lam.id)) if lam.source == x else lam.source
            tgt = x if retarget(lam.id) else lam.target
        new_arrows.append(Arrow(lam.id, src, tgt))
    rel = set()
    for lam, kap in bq.relations:
        if bq.target(kap) != x and bq.target(lam) != x:
            rel.add((lam, kap))
    for alpha in bq.out_arrows[x]:
        rel.add((_beta(bq, x, alpha), alpha))
    for lam in bq.arrows:
        hits = [b for b in bq.in_arrows[x]
                if bq.source(b) == lam.target and (lam.id, b) in bq.relations]
        for kap in bq.in_arrows[x]:
            if any(b != kap for b in hits):
                rel.add((lam.id, kap))
    return BoundQuiver(f"{bq.name}.apr.{x}", bq.vertices, new_arrows, frozenset(rel), bq.degrees)


# isomorphism ------------------------------------------------------------------


class SearchBudgetExceeded(RuntimeError):
    pass


def _arrow_signature(bq: BoundQuiver, a: Arrow):
    return (
        a.source == a.target,
        bq.permitted_successor(a.id) is not None,
        bq.forbidden_successor(a.id) is not None,
        bq.permitted_predecessor(a.id) is not None,
        bq.forbidden_predecessor(a.id) is not None,
        bq.din(a.source), bq.dout(a.source), bq.din(a.target), bq.dout(a.target),
    )


def iso(a: BoundQuiver, b: BoundQuiver, budget: int = 10 ** 7,
        with_degrees: bool = False) -> Optional[Dict[str, Dict[str, str]]]:
    """Find a bound-quiver isomorphism a -> b, or None.

    Returns ``{"vertices": {...}, "arrows": {...}}``. Raises
    SearchBudgetExceeded when more than ``budget`` search nodes are visited.
    """
    if (len(a.vertices), len(a.arrows), len(a.relations)) != \
            (len(b.vertices), len(b.arrows), len(b.relations)):
        return None
    sig_a = {x.id: _arrow_signature(a, x) for x in a.arrows}
    sig_b = {y.id: _arrow_signature(b, y) for y in b.arrows}
    if with_degrees:
        sig_a = {k: v + (a.deg(k),) for k, v in sig_a.items()}
        sig_b = {k: v + (b.deg(k),) for k, v in sig_b.items()}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None
    vsig = lambda q, v: (q.din(v), q.dout(v))
    if sorted(vsig(a, v) for v in a.vertices) != sorted(vsig(b, v) for v in b.vertices):
        return None

    # visit arrows so that each one touches an already visited vertex when possible
    order: List[str] = []
    seen_v: set = set()
    remaining = [x.id for x in a.arrows]
    while remaining:
        pick = next((x for x in remaining
                     if a.source(x) in seen_v or a.target(x) in seen_v), remaining[0])
        remaining.remove(pick)
        order.append(pick)
        seen_v.update((a.source(pick), a.target(pick)))

    vmap: Dict[str, str] = {}
    vused: Dict[str, str] = {}
    amap: Dict[str, str] = {}
    aused: set = set()
    nodes = [0]

    def consistent(x: str, y: str) -> bool:
        for u, w in ((a.source(x), b.source(y)), (a.target(x), b.target(y))):
            if vmap.get(u, w) != w or vused.get(w, u) != u:
                return False
        if a.source(x) == a.target(x) and b.source(y) != b.target(y):
            return False
        for z, zz in amap.items():
            for p, q in (((x, z), (y, zz)), ((z, x), (zz, y))):
                if (p in a.relations) != (q in b.relations):
                    return False
        if (x, x) in a.relations and (y, y) not in b.relations:
            return False
        if (y, y) in b.relations and (x, x) not in a.relations:
            return False
        return True

    def candidates(x: str) -> List[str]:
        s, t = a.source(x), a.target(x)
        if s in vmap:
            pool = b.out_arrows[vmap[s]]
        elif t in vmap:
            pool = b.in_arrows[vmap[t]]
        else:
            pool = [y.id for y in b.arrows]
        return [y for y in pool if y not in aused and sig_b[y] == sig_a[x]]

    def search(i: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise SearchBudgetExceeded(f"isomorphism search exceeded {budget} nodes")
        if i == len(order):
            return True
        x = order[i]
        for y in candidates(x):
            if not consistent(x, y):
                continue
            added = []
            for u, w in ((a.source(x), b.source(y)), (a.target(x), b.target(y))):
                if u not in vmap:
                    vmap[u], vused[w] = w, u
                    added.append((u, w))
            amap[x] = y
            aused.add(y)
            if search(i + 1):
                return True
            del amap[x]
            aused.discard(y)
            for u, w in added:
                del vmap[u], vused[w]
        return False

    if not search(0):
        return None
    # isolated vertices cannot occur in connected quivers, but pair them anyway
    rest_a = [v for v in a.vertices if v not in vmap]
    rest_b = [v for v in b.vertices if v not in vused]
    vmap.update(zip(rest_a, rest_b))
    return {"vertices": dict(vmap), "arrows": dict(amap)}


# sheet bases ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SheetElement:
    """A basis element of 1^[i] A^(k) 1^[j].

    kind ``diag``: ``path`` on sheet i (= j); kind ``window``: the window
    (u, v) of the maximal path ``path``; kind ``iota``: iota_a with a the
    vertex of the trivial ``path``.
    """

    kind: str
    i: int
    j: int
    path: Path
    u: int = 0
    v: int = 0

    def to_path(self, bq: BoundQuiver) -> Path:
        """Realize the element as a path in the repetition (ids as in repeat)."""
        i, j, rho = self.i, self.j, self.path
        if self.kind == "diag":
            return _suffix_path(rho, str(i))
        if self.kind == "iota":
            a = rho.source
            arrows = tuple(connecting_arrow_id(rho, m) for m in range(i, j))
            return Path(f"{a}#{i}", f"{a}#{j}", arrows)
        verts = [rho.source] + [bq.target(x) for x in rho.arrows]
        arrows = [f"{x}#{i}" for x in rho.arrows[self.u:]]
        for m in range(i, j):
            arrows.append(connecting_arrow_id(rho, m))
            if m + 1 < j:
                arrows.extend(f"{x}#{m + 1}" for x in rho.arrows)
        arrows.extend(f"{x}#{j}" for x in rho.arrows[:self.v])
        return Path(f"{verts[self.u]}#{i}", f"{verts[self.v]}#{j}", tuple(arrows))

    def __str__(self) -> str:
        if self.kind == "diag":
            return f"{self.path}^[{self.i}]"
        if self.kind == "iota":
            return f"iota_{self.path.source}^[{self.i},{self.j}]"
        return f"({self.path})_[{self.u},{self.v}]^[{self.i},{self.j}]"


def sheet_basis(bq: BoundQuiver, k: int, i: int, j: int) -> List[SheetElement]:
    if not (1 <= i <= k and 1 <= j <= k):
        raise ValueError(f"sheet indices must lie in 1..{k}")
    if i > j:
        return []
    if i == j:
        return [SheetElement("diag", i, i, p) for p in path_basis(bq)]
    summary = threads(bq)
    out = []
    for rho in summary.maximal_paths:
        n = len(rho)
        out.extend(SheetElement("window", i, j, rho, u, v)
                   for u in range(n + 1) for v in range(n + 1))
    out.extend(SheetElement("iota", i, j, Path(a, a)) for a in summary.trivial)
    return out


# random gentle quivers --------------------------------------------------------


class GenerationFailed(RuntimeError):
    pass


def _random_graph(rng: random.Random, n: int, m: int):
    dout = [0] * n
    din = [0] * n
    edges = []
    for j in range(1, n):
        options = []
        for u in range(j):
            if dout[u] < 2:
                options.append((u, j))
            if din[u] < 2:
                options.append((j, u))
        s, t = rng.choice(options)
        edges.append((s, t))
        dout[s] += 1
        din[t] += 1
    while len(edges) < m:
        srcs = [u for u in range(n) if dout[u] < 2]
        tgts = [v for v in range(n) if din[v] < 2]
        if not srcs or not tgts:
            return None
        s, t = rng.choice(srcs), rng.choice(tgts)
        edges.append((s, t))
        dout[s] += 1
        din[t] += 1
    rng.shuffle(edges)
    return edges


def _random_relations(rng: random.Random, n: int, edges) -> set:
    rel = set()
    for v in range(n):
        ins = [e for e, (s, t) in enumerate(edges) if t == v]
        outs = [e for e, (s, t) in enumerate(edges) if s == v]
        if len(ins) == 2 and len(outs) == 2:
            if rng.random() < 0.5:
                rel.update({(ins[0], outs[0]), (ins[1], outs[1])})
            else:
                rel.update({(ins[0], outs[1]), (ins[1], outs[0])})
        elif len(ins) == 1 and len(outs) == 2:
            rel.add((ins[0], rng.choice(outs)))
        elif len(ins) == 2 and len(outs) == 1:
            rel.add((rng.choice(ins), outs[0]))
        elif len(ins) == 1 and len(outs) == 1 and rng.random() < 0.5:
            rel.add((ins[0], outs[0]))
    return rel


def random_gentle(n_vertices: int, n_arrows: int, seed: int, max_tries: int = 2000) -> BoundQuiver:
    """A random connected gentle bound quiver, deterministic in ``seed``."""
    n, m = n_vertices, n_arrows
    if m < 1 or n < 1:
        raise ValueError("need at least one vertex and one arrow")
    # with 2n arrows every arrow has a permitted successor, so some cycle is permitted
    if m < n - 1 or m >= 2 * n:
        raise ValueError(f"no connected gentle quiver has {n} vertices and {m} arrows")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = _random_graph(rng, n, m)
        if edges is None:
            continue
        for _ in range(20):
            rel = _random_relations(rng, n, edges)
            bq = BoundQuiver(
                f"rand_{n}_{m}_{seed}", [f"v{i}" for i in range(n)],
                [Arrow(f"a{e}", f"v{s}", f"v{t}") for e, (s, t) in enumerate(edges)],
                frozenset((f"a{x}", f"a{y}") for x, y in rel))
            if validate(bq, "gentle").passed:
                return bq
    raise GenerationFailed(f"no gentle quiver found for n={n}, m={m}, seed={seed}")
