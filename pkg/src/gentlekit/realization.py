"""The semisimple algebra V(A), the map eta, the triangular model of A^(k),
and the cokernel of eta as an almost standard dual.

A basis element of V(A) is a label ``(b, u, v)``: the (u, v) matrix unit of
block ``b``. Scalar blocks (trivial threads) only have the label ``(b, 0, 0)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .constructions import repeat, sheet_basis
from .invariants import Check, Report
from .linalg import Quotient, add_into, sparse_rank
from .quiver import BoundQuiver, Path, compose, path_basis, require, threads

Label = Tuple[int, int, int]


class VElement(dict):
    """Sparse element of V(A): label -> Fraction, zero entries omitted."""

    def __mul__(self, other: "VElement") -> "VElement":
        by_row: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}
        for (b, u, v), c in other.items():
            by_row.setdefault((b, u), []).append((v, c))
        out = VElement()
        for (b, u, v), c in self.items():
            for w, c2 in by_row.get((b, v), ()):
                add_into(out, {(b, u, w): c * c2})
        return out

    def __add__(self, other: Mapping) -> "VElement":
        return add_into(VElement(self), other)

    def __sub__(self, other: Mapping) -> "VElement":
        return add_into(VElement(self), other, -1)


@dataclass(frozen=True)
class Block:
    kind: str  # "matrix" or "scalar"
    thread: Path
    size: int

    @property
    def name(self) -> str:
        if self.kind == "scalar":
            return f"e_{self.thread.source}"
        return ".".join(self.thread.arrows)


@dataclass(frozen=True)
class SemisimpleAlgebra:
    base: BoundQuiver
    blocks: Tuple[Block, ...]

    @property
    def total_dim(self) -> int:
        return sum(b.size ** 2 for b in self.blocks)

    def basis(self) -> List[Label]:
        return [(i, u, v) for i, b in enumerate(self.blocks)
                for u in range(b.size) for v in range(b.size)]

    def one(self) -> VElement:
        return VElement({(i, u, u): Fraction(1) for i, b in enumerate(self.blocks)
                         for u in range(b.size)})

    def label_name(self, label: Label) -> str:
        b, u, v = label
        block = self.blocks[b]
        if block.kind == "scalar":
            return f"frak_e_{block.thread.source}"
        return f"({block.name})_{{{u},{v}}}"

    def vertex_at(self, b: int, u: int) -> str:
        block = self.blocks[b]
        if u == 0:
            return block.thread.source
        return self.base.target(block.thread.arrows[u - 1])


def build_va(bq: BoundQuiver) -> SemisimpleAlgebra:
    require(bq, "gentle")
    summary = threads(bq)
    blocks = [Block("matrix", rho, len(rho) + 1) for rho in summary.maximal_paths]
    blocks += [Block("scalar", Path(a, a), 1) for a in summary.trivial]
    return SemisimpleAlgebra(bq, tuple(blocks))


def _positions(va: SemisimpleAlgebra):
    arrow_pos: Dict[str, Tuple[int, int]] = {}
    vertex_pos: Dict[str, List[Tuple[int, int]]] = {}
    for b, block in enumerate(va.blocks):
        if block.kind == "scalar":
            vertex_pos.setdefault(block.thread.source, []).append((b, 0))
            continue
        for u in range(block.size):
            vertex_pos.setdefault(va.vertex_at(b, u), []).append((b, u))
        for u, a in enumerate(block.thread.arrows, start=1):
            arrow_pos[a] = (b, u)
    return arrow_pos, vertex_pos


def eta(bq: BoundQuiver, p: Path, va: Optional[SemisimpleAlgebra] = None) -> VElement:
    va = va or build_va(bq)
    arrow_pos, vertex_pos = _positions(va)
    if p.is_trivial:
        return VElement({(b, u, u): Fraction(1) for b, u in vertex_pos[p.source]})
    if not bq.is_path_in_A(p):
        return VElement()
    b, u = arrow_pos[p.arrows[0]]
    return VElement({(b, u - 1, u - 1 + len(p)): Fraction(1)})


class _Eta:
    """Cached eta for repeated use."""

    def __init__(self, bq: BoundQuiver, va: SemisimpleAlgebra):
        self.bq, self.va = bq, va
        self.arrow_pos, self.vertex_pos = _positions(va)

    def __call__(self, p: Optional[Path]) -> VElement:
        if p is None:
            return VElement()
        if p.is_trivial:
            return VElement({(b, u, u): Fraction(1) for b, u in self.vertex_pos[p.source]})
        if not self.bq.is_path_in_A(p):
            return VElement()
        b, u = self.arrow_pos[p.arrows[0]]
        return VElement({(b, u - 1, u - 1 + len(p)): Fraction(1)})

    def of(self, element: Mapping[Path, Fraction]) -> VElement:
        out = VElement()
        for p, c in element.items():
            add_into(out, self(p), c)
        return out


def verify_eta(bq: BoundQuiver) -> Report:
    va = build_va(bq)
    eta_ = _Eta(bq, va)
    basis = path_basis(bq)
    checks = [Check("dim V = 2 dim A", va.total_dim == 2 * len(basis),
                    f"{va.total_dim} vs 2*{len(basis)}")]
    bad = None
    for x in basis:
        ex = eta_(x)
        for y in basis:
            if ex * eta_(y) != eta_(compose(bq, x, y)):
                bad = (x, y)
                break
        if bad:
            break
    checks.append(Check("multiplicative", bad is None,
                        "" if bad is None else f"fails on {bad[0]} * {bad[1]}"))
    units = []
    ok_split = True
    for a in bq.vertices:
        img = eta_(Path(a, a))
        if len(img) != 2 or any(c != 1 or l[1] != l[2] for l, c in img.items()):
            ok_split = False
        units.extend(img)
    ok_split = ok_split and len(set(units)) == 2 * len(bq.vertices)
    total = VElement()
    for a in bq.vertices:
        add_into(total, eta_(Path(a, a)))
    checks.append(Check("idempotent split", ok_split, "each e_a maps to two distinct diagonal units"))
    checks.append(Check("unit", total == va.one(), "sum of eta(e_a) is 1"))
    rank = sparse_rank([eta_(p) for p in basis])
    checks.append(Check("rank", rank == len(basis), f"rank {rank} vs dim A {len(basis)}"))
    return Report(f"verify_eta({bq.name})", tuple(checks))


# upper triangular model ----------------------------------------------------------


def _amul(bq: BoundQuiver, x: Mapping[Path, Fraction], y: Mapping[Path, Fraction]) -> Dict[Path, Fraction]:
    out: Dict[Path, Fraction] = {}
    for p, c in x.items():
        for q, d in y.items():
            r = compose(bq, p, q)
            if r is not None:
                add_into(out, {r: c * d})
    return out


@dataclass
class UTAlgebra:
    """k x k upper triangular matrices: A on the diagonal, V(A) above it.

    Elements are dicts ``(i, j) -> component`` where diagonal components are
    dicts Path -> Fraction and off-diagonal ones are VElements.
    """

    bq: BoundQuiver
    k: int
    va: SemisimpleAlgebra
    eta: _Eta = field(repr=False)

    @property
    def dim(self) -> int:
        dim_a = len(path_basis(self.bq))
        return self.k * dim_a + self.k * (self.k - 1) // 2 * self.va.total_dim

    def mul(self, x: Mapping, y: Mapping) -> Dict:
        out: Dict = {}
        for (i, m), xc in x.items():
            for (m2, j), yc in y.items():
                if m != m2:
                    continue
                if i == m == j:
                    term = _amul(self.bq, xc, yc)
                elif i == m:
                    term = self.eta.of(xc) * yc
                elif m == j:
                    term = xc * self.eta.of(yc)
                else:
                    term = xc * yc
                if term:
                    add_into(out.setdefault((i, j), {} if i == j else VElement()), term)
                    if not out[(i, j)]:
                        del out[(i, j)]
        return out


def build_ut(bq: BoundQuiver, k: int) -> UTAlgebra:
    if k < 1:
        raise ValueError("k must be positive")
    va = build_va(bq)
    return UTAlgebra(bq, k, va, _Eta(bq, va))


def _psi(ut: UTAlgebra, element) -> Dict:
    if element.kind == "diag":
        return {(element.i, element.i): {element.path: Fraction(1)}}
    block = next(b for b, blk in enumerate(ut.va.blocks) if blk.thread == element.path)
    u, v = (element.u, element.v) if element.kind == "window" else (0, 0)
    return {(element.i, element.j): VElement({(block, u, v): Fraction(1)})}


def ut_check(bq: BoundQuiver, k: int) -> Report:
    ut = build_ut(bq, k)
    rep = repeat(bq, k).quiver
    labels = [e for i in range(1, k + 1) for j in range(1, k + 1) for e in sheet_basis(bq, k, i, j)]
    paths = [e.to_path(bq) for e in labels]
    dim_a = len(path_basis(bq))
    rep_basis = path_basis(rep)
    checks = [
        Check("dimension", len(labels) == k * k * dim_a == ut.dim,
              f"{len(labels)} labels, k^2 dim A = {k * k * dim_a}, UT dim {ut.dim}"),
        Check("sheet basis = path basis", set(paths) == set(rep_basis) and len(set(paths)) == len(paths),
              f"{len(set(paths))} sheet paths vs {len(rep_basis)} basis paths of A^({k})"),
    ]
    by_path = dict(zip(paths, labels))
    images = [_psi(ut, e) for e in labels]
    bad = None
    for x, px, ix in zip(labels, paths, images):
        for y, py, iy in zip(labels, paths, images):
            prod = compose(rep, px, py)
            want = {} if prod is None else _psi(ut, by_path[prod])
            if ut.mul(ix, iy) != want:
                bad = (x, y)
                break
        if bad:
            break
    checks.append(Check("psi multiplicative", bad is None,
                        "" if bad is None else f"fails on {bad[0]} * {bad[1]}"))
    return Report(f"ut_check({bq.name}, k={k})", tuple(checks))


# cokernel of eta ---------------------------------------------------------------------


@dataclass(frozen=True)
class DualReport:
    dim: int
    dagger: Tuple[str, ...]
    dagger_reps: Tuple[str, ...]
    left: Tuple[Tuple[str, str, Tuple[Tuple[str, Fraction], ...]], ...]
    right: Tuple[Tuple[str, str, Tuple[Tuple[str, Fraction], ...]], ...]
    junction_coefficients: Tuple[Tuple[str, str, str, Fraction], ...]
    unit_coefficients: bool
    almost_standard: bool
    quotient_is_DA: bool
    restrictive: bool
    failures: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.unit_coefficients and self.almost_standard and self.quotient_is_DA


def _dagger_data(bq: BoundQuiver, va: SemisimpleAlgebra):
    """Dagger basis paths and their representatives in V(A)."""
    paths: List[Path] = []
    reps: List[VElement] = []
    first_unit: Dict[str, Label] = {}
    for b, block in enumerate(va.blocks):
        for u in range(block.size):
            first_unit.setdefault(va.vertex_at(b, u), (b, u, u))
        if block.kind == "scalar":
            continue
        arrows = block.thread.arrows
        for u in range(block.size):
            for v in range(u + 1, block.size):
                paths.append(bq.path(*arrows[u:v]))
                reps.append(VElement({(b, v, u): Fraction(1)}))
    for a in bq.vertices:
        paths.append(Path(a, a))
        reps.append(VElement({first_unit[a]: Fraction(1)}))
    return paths, reps


def _da_left(theta: Path, xi: Path) -> Optional[Path]:
    """theta . xi^* in DA is omega^* when xi = omega theta."""
    if theta.is_trivial:
        return xi if xi.target == theta.source else None
    n = len(theta)
    if len(xi) >= n and xi.arrows[len(xi) - n:] == theta.arrows:
        return Path(xi.source, theta.source, xi.arrows[:len(xi) - n])
    return None


def _da_right(theta: Path, xi: Path) -> Optional[Path]:
    """xi^* . theta in DA is omega^* when xi = theta omega."""
    if theta.is_trivial:
        return xi if xi.source == theta.source else None
    n = len(theta)
    if len(xi) >= n and xi.arrows[:n] == theta.arrows:
        return Path(theta.target, xi.target, xi.arrows[n:])
    return None


def _actions(bq, basis, eta_, quotient, reps):
    """Action coefficients: (side, theta index, xi index) -> {omega index: coeff}."""
    table = {}
    for t, theta in enumerate(basis):
        et = eta_(theta)
        for r, rep in enumerate(reps):
            for side, vec in (("left", et * rep), ("right", rep * et)):
                coords = quotient.coordinates(vec)
                table[(side, t, r)] = {w: c for w, c in enumerate(coords) if c}
    return table


def _restrictive(constraints) -> bool:
    """Can dagger elements be rescaled so each constraint lambda_w = c lambda_x holds?"""
    parent: Dict[int, int] = {}
    ratio: Dict[int, Fraction] = {}

    def find(x):
        if parent.setdefault(x, x) == x:
            ratio.setdefault(x, Fraction(1))
            return x, ratio[x]
        root, r = find(parent[x])
        parent[x] = root
        ratio[x] = ratio[x] * r
        return root, ratio[x]

    for x, w, c in constraints:
        if c == 0:
            return False
        rx, fx = find(x)
        rw, fw = find(w)
        if rx == rw:
            if fw != c * fx:
                return False
        else:
            parent[rw] = rx
            ratio[rw] = c * fx / fw
    return True


def cokernel_dual(bq: BoundQuiver) -> DualReport:
    va = build_va(bq)
    eta_ = _Eta(bq, va)
    basis = path_basis(bq)
    dpaths, reps = _dagger_data(bq, va)
    failures: List[str] = []
    quotient = Quotient([eta_(p) for p in basis], reps)
    table = _actions(bq, basis, eta_, quotient, reps)
    index = {p: i for i, p in enumerate(dpaths)}

    unit = all(c in (1, -1) for coeffs in table.values() for c in coeffs.values())
    if not unit:
        failures.append("an action coefficient lies outside {0, 1, -1}")

    junctions = []
    constraints = []
    almost = True
    for (side, t, r), coeffs in sorted(table.items()):
        theta, xi = basis[t], dpaths[r]
        predicted = (_da_left if side == "left" else _da_right)(theta, xi)
        if predicted is None:
            if coeffs:
                almost = False
                failures.append(f"{side} action of {theta} on {xi}^dagger should vanish")
            continue
        w = index[predicted]
        if set(coeffs) != {w}:
            almost = False
            failures.append(f"{side} action of {theta} on {xi}^dagger is not a multiple of {predicted}^dagger")
            continue
        c = coeffs[w]
        if not theta.is_trivial:
            constraints.append((r, w, c))
        if predicted.is_trivial and not xi.is_trivial:
            junctions.append((side, str(theta), str(xi), c))
            if c not in (1, -1):
                almost = False
        elif c != 1:
            almost = False
            failures.append(f"{side} action of {theta} on {xi}^dagger has coefficient {c}")

    quotient_ok, why = _check_quotient(bq, va, eta_, basis, dpaths)
    if not quotient_ok:
        failures.append(why)

    def serial(side):
        rows = []
        for (s, t, r), coeffs in sorted(table.items()):
            if s != side or len(basis[t]) != 1 or not coeffs:
                continue
            rows.append((str(basis[t]), str(dpaths[r]),
                         tuple((str(dpaths[w]), c) for w, c in sorted(coeffs.items()))))
        return tuple(rows)

    return DualReport(
        dim=len(dpaths),
        dagger=tuple(str(p) for p in dpaths),
        dagger_reps=tuple(va.label_name(next(iter(r))) for r in reps),
        left=serial("left"),
        right=serial("right"),
        junction_coefficients=tuple(junctions),
        unit_coefficients=unit,
        almost_standard=almost and unit,
        quotient_is_DA=quotient_ok,
        restrictive=_restrictive(constraints),
        failures=tuple(failures),
    )


def _check_quotient(bq, va, eta_, basis, dpaths) -> Tuple[bool, str]:
    """V(A)/N against DA, where N = strictly upper units + (u_a - v_a)."""
    n_basis: List[VElement] = []
    for b, block in enumerate(va.blocks):
        for u in range(block.size):
            for v in range(u + 1, block.size):
                n_basis.append(VElement({(b, u, v): Fraction(1)}))
    for a in bq.vertices:
        units = sorted(eta_(Path(a, a)))
        n_basis.append(VElement({units[0]: Fraction(1), units[1]: Fraction(-1)}))
    _, reps = _dagger_data(bq, va)
    quotient = Quotient(n_basis, reps)
    for theta in basis:
        et = eta_(theta)
        for n in n_basis:
            for vec in (et * n, n * et):
                if not quotient.contains(vec):
                    return False, f"N is not stable under {theta}"
    index = {p: i for i, p in enumerate(dpaths)}
    for theta in basis:
        et = eta_(theta)
        for r, rep in enumerate(reps):
            for side, vec, rule in (("left", et * rep, _da_left), ("right", rep * et, _da_right)):
                coords = quotient.coordinates(vec)
                got = {w: c for w, c in enumerate(coords) if c}
                predicted = rule(theta, dpaths[r])
                want = {} if predicted is None else {index[predicted]: Fraction(1)}
                if got != want:
                    return False, f"V/N {side} action of {theta} on {dpaths[r]}^* differs from DA"
    return True, ""


def check_conditions(bq: BoundQuiver, char: int = 0) -> Dict[str, bool]:
    require(bq, "gentle")
    max_length = True
    for rho in threads(bq).maximal_paths:
        for a in bq.out_arrows[rho.source]:
            if bq.target(a) == rho.target and rho.arrows != (a,):
                max_length = False
    restrictive = True if char == 2 else cokernel_dual(bq).restrictive
    return {"max_length": max_length, "restrictive": restrictive}
