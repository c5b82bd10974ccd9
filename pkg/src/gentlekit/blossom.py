"""Blossoming, the permutation Phi and AG-orbits."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .quiver import Arrow, BoundQuiver, Path, degree, require, threads


@dataclass(frozen=True)
class Blossoming:
    """The blossomed quiver with labels p = 1..d (stored 0-based in the lists).

    ``sigma[p]`` ends at the start of ``wp[p]``; ``tau[p]`` leaves its end.
    ``phi[p]`` is the label of the source where the antipath ending at
    ``t#p`` starts; its interior is ``delta[p]``.
    """

    base: BoundQuiver
    blossomed: BoundQuiver
    sources: Tuple[str, ...]
    sinks: Tuple[str, ...]
    sigma: Tuple[str, ...]
    tau: Tuple[str, ...]
    wp: Tuple[Path, ...]
    phi: Tuple[int, ...]
    delta: Tuple[Path, ...]

    @property
    def d(self) -> int:
        return len(self.wp)

    def label_of(self, thread: Path) -> int:
        return self.wp.index(thread) + 1


@dataclass(frozen=True)
class Orbit:
    indices: Tuple[int, ...]
    deltas: Tuple[Path, ...]
    type_ungraded: Tuple[int, int]
    type_graded: Optional[Tuple[int, int]] = None


def _matching(ins: Sequence[str], outs: Sequence[str], rel: frozenset,
              original: set) -> List[Tuple[str, str]]:
    """Permitted pairing at a vertex with two in- and two out-arrows."""
    options = [[(ins[0], outs[0]), (ins[1], outs[1])],
               [(ins[0], outs[1]), (ins[1], outs[0])]]
    for option in options:
        ok = True
        for g in ins:
            for a in outs:
                if g in original and a in original:
                    permitted = (g, a) not in rel
                    if permitted != ((g, a) in option):
                        ok = False
        if ok:
            return option
    raise ValueError("relations at a vertex are not locally gentle")


def blossom(bq: BoundQuiver, order: Optional[Sequence[Path]] = None) -> Blossoming:
    """Blossom ``bq``; labels follow ``order`` (default: canonical thread order)."""
    require(bq, "locally-gentle")
    original = {a.id for a in bq.arrows}
    arrows = list(bq.arrows)
    vertices = list(bq.vertices)
    extra_rel = set()
    new_sources: List[str] = []
    new_sinks: List[str] = []
    counter = 0
    for v in bq.vertices:
        ins = sorted(bq.in_arrows[v])
        outs = sorted(bq.out_arrows[v])
        for _ in range(2 - len(ins)):
            counter += 1
            s, a = f"__src{counter}", f"__sig{counter}"
            vertices.append(s)
            arrows.append(Arrow(a, s, v))
            new_sources.append(a)
            ins.append(a)
        for _ in range(2 - len(outs)):
            counter += 1
            t, a = f"__snk{counter}", f"__tau{counter}"
            vertices.append(t)
            arrows.append(Arrow(a, v, t))
            new_sinks.append(a)
            outs.append(a)
        permitted = _matching(ins, outs, bq.relations, original)
        for g in ins:
            for a in outs:
                if (g, a) not in permitted and not (g in original and a in original):
                    extra_rel.add((g, a))
    tmp = BoundQuiver(bq.name + ".blossom", vertices, arrows, bq.relations | extra_rel, bq.degrees)

    # maximal paths of the blossomed quiver run from a new source to a new sink
    found: Dict[Path, Tuple[str, str]] = {}
    for sig in new_sources:
        chain = [sig]
        while tmp.permitted_successor(chain[-1]) is not None:
            chain.append(tmp.permitted_successor(chain[-1]))
        inner = tuple(chain[1:-1])
        start = tmp.target(sig)
        thread = Path(start, tmp.source(chain[-1]), inner)
        found[thread] = (sig, chain[-1])
    summary = threads(bq)
    expected = list(summary.permitted)
    if set(found) != set(expected):
        raise AssertionError("blossom paths disagree with the thread summary")
    if order is None:
        order = expected
    else:
        order = list(order)
        if sorted(order) != sorted(expected):
            raise ValueError("label order must list every permitted thread once")

    d = len(order)
    vmap = {v: v for v in bq.vertices}
    amap = {a: a for a in original}
    for p, thread in enumerate(order, start=1):
        sig, tau = found[thread]
        vmap[tmp.source(sig)] = f"s#{p}"
        vmap[tmp.target(tau)] = f"t#{p}"
        amap[sig] = f"sigma#{p}"
        amap[tau] = f"tau#{p}"
    blossomed = BoundQuiver(
        bq.name + ".blossom",
        [vmap[v] for v in vertices],
        [Arrow(amap[a.id], vmap[a.source], vmap[a.target]) for a in arrows],
        frozenset((amap[a], amap[b]) for a, b in tmp.relations),
        None if bq.degrees is None else tuple((amap[a], dg) for a, dg in tmp.degrees),
    )

    label_of_sigma = {f"sigma#{p}": p for p in range(1, d + 1)}
    phi: List[int] = []
    delta: List[Path] = []
    for p in range(1, d + 1):
        chain = [f"tau#{p}"]
        while blossomed.forbidden_predecessor(chain[-1]) is not None:
            chain.append(blossomed.forbidden_predecessor(chain[-1]))
        chain.reverse()
        phi.append(label_of_sigma[chain[0]])
        inner = tuple(chain[1:-1])
        end = blossomed.source(f"tau#{p}")
        start = blossomed.target(chain[0])
        delta.append(Path(start, end, inner))

    return Blossoming(
        base=bq,
        blossomed=blossomed,
        sources=tuple(f"s#{p}" for p in range(1, d + 1)),
        sinks=tuple(f"t#{p}" for p in range(1, d + 1)),
        sigma=tuple(f"sigma#{p}" for p in range(1, d + 1)),
        tau=tuple(f"tau#{p}" for p in range(1, d + 1)),
        wp=tuple(order),
        phi=tuple(phi),
        delta=tuple(delta),
    )


def ag_structure(bq: BoundQuiver, blossoming: Optional[Blossoming] = None) -> List[Orbit]:
    b = blossoming or blossom(bq)
    graded = bq.degrees is not None
    orbits = []
    seen = set()
    for start in range(1, b.d + 1):
        if start in seen:
            continue
        idx = [start]
        while b.phi[idx[-1] - 1] != start:
            idx.append(b.phi[idx[-1] - 1])
        seen.update(idx)
        deltas = tuple(b.delta[p - 1] for p in idx)
        q, l = len(idx), sum(len(x) for x in deltas)
        gtype = None
        if graded:
            lg = sum(degree(bq, b.wp[p - 1]) + degree(bq, b.delta[p - 1], "degbar") for p in idx)
            gtype = (q, lg)
        orbits.append(Orbit(tuple(idx), deltas, (q, l), gtype))
    return orbits
