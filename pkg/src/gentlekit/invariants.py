"""AG invariants, Ladkani's Hochschild dimensions, repetition and Moebius formulas."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .blossom import ag_structure, blossom
from .quiver import BoundQuiver, cycles, degree, require, threads


@dataclass(frozen=True)
class AGTable:
    """Sparse map (q, l) -> count; zero counts are dropped."""

    entries: Tuple[Tuple[Tuple[int, int], int], ...]
    graded: bool = False

    @classmethod
    def from_counts(cls, counts: Mapping[Tuple[int, int], int], graded: bool = False) -> "AGTable":
        return cls(tuple(sorted((k, int(v)) for k, v in counts.items() if v)), graded)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return dict(self.entries).get(tuple(key), 0)

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.entries)

    def triples(self) -> List[Tuple[int, int, int]]:
        return [(q, l, c) for (q, l), c in self.entries]

    def orbit_part(self) -> Dict[Tuple[int, int], int]:
        return {k: c for k, c in self.entries if k[0] >= 1}


@dataclass(frozen=True)
class HochschildProfile:
    char: int
    dims: Tuple[int, ...]
    chi: int


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    name: str
    checks: Tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]


# number theory -----------------------------------------------------------------


def divisors(n: int) -> List[int]:
    return [c for c in range(1, n + 1) if n % c == 0]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs a positive integer")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# phi ---------------------------------------------------------------------------


def phi(bq: BoundQuiver) -> AGTable:
    require(bq, "gentle")
    counts: Counter = Counter()
    for cyc in cycles(bq)["anti"]:
        counts[(0, len(cyc))] += 1
    for orb in ag_structure(bq.with_degrees(None)):
        counts[orb.type_ungraded] += 1
    return AGTable.from_counts(counts)


def phi_graded(bq: BoundQuiver) -> AGTable:
    require(bq, "locally-gentle")
    graded = bq if bq.degrees is not None else bq.with_degrees({})
    counts: Counter = Counter()
    cyc = cycles(graded)
    for c in cyc["oriented"]:
        counts[(0, degree(graded, c))] += 1
    for c in cyc["anti"]:
        counts[(0, degree(graded, c, "degbar"))] += 1
    if graded.d > 0:
        for orb in ag_structure(graded):
            counts[orb.type_graded] += 1
    return AGTable.from_counts(counts, graded=True)


def euler_sum(table: AGTable) -> int:
    return sum(c * (q - l) for (q, l), c in table.entries)


def hochschild_dims(table: AGTable, chi: int, char: int = 0, n_max: int = 8) -> HochschildProfile:
    if table.graded:
        raise ValueError("Hochschild formulas take an ungraded table")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    f = table.__getitem__
    dims = [1 + f((1, 0))]
    if n_max >= 1:
        dims.append(1 - chi + f((1, 1)) + (f((0, 1)) if char == 2 else 0))
    for n in range(2, n_max + 1):
        if char == 2:
            a, b = 1, 1
        else:
            a, b = (1, 0) if n % 2 == 0 else (0, 1)
        value = f((1, n))
        if a:
            value += sum(f((0, c)) for c in divisors(n))
        if b:
            value += sum(f((0, c)) for c in divisors(n - 1))
        dims.append(value)
    return HochschildProfile(char, tuple(dims), chi)


def repetition_preimages(n: int, m: int, k: int) -> List[Tuple[int, int]]:
    """S_(k)(n, m): the (q, l) whose orbits produce orbits of type (n, m) in A^(k)."""
    out = []
    for q in divisors(n * k):
        if lcm(q, k) != n * k:
            continue
        num = (m - n * (k - 1)) * q
        if num >= 0 and num % (n * k) == 0:
            out.append((q, num // (n * k)))
    return out


def phi_repetition(table: AGTable, k: int) -> AGTable:
    if k < 1:
        raise ValueError("k must be positive")
    if table.graded:
        raise ValueError("repetition formula takes an ungraded table")
    counts: Counter = Counter()
    for (q, l), c in table.entries:
        if q == 0:
            counts[(0, l)] += k * c
            continue
        big = lcm(q, k)
        counts[(big // k, (big // q) * l + (big // k) * (k - 1))] += gcd(q, k) * c
    return AGTable.from_counts(counts)


def _gcd0(q: int, l: int) -> int:
    return q if l == 0 else gcd(q, l)


def phi_mobius_recover(tables: Mapping[int, AGTable], q: int, l: int) -> Fraction:
    total = Fraction(0)
    for c in divisors(_gcd0(q, l)):
        k = q // c
        if k not in tables:
            raise KeyError(f"missing table for A^({k})")
        total += mobius(c) * tables[k][(1, (q + l) // c - 1)]
    return total / q


def phi_via_hochschild(bq: BoundQuiver, q: int, l: int, char: int = 0) -> Fraction:
    from .constructions import repeat

    require(bq, "gentle")
    if cycles(bq)["anti"]:
        raise ValueError(f"{bq.name} has an anticycle; the Hochschild formulas do not apply")
    if q < 1 or l < 0:
        raise ValueError("need q >= 1 and l >= 0")
    cache: Dict[int, HochschildProfile] = {}

    def hh(k: int, n: int) -> int:
        if k not in cache:
            rep = repeat(bq, k).quiver
            cache[k] = hochschild_dims(phi(rep), rep.chi, char, max(n, 1))
        prof = cache[k]
        if n >= len(prof.dims):
            rep = repeat(bq, k).quiver
            prof = cache[k] = hochschild_dims(phi(rep), rep.chi, char, n)
        return prof.dims[n]

    d = _gcd0(q, l)
    total = Fraction(0)
    for c in divisors(d):
        total += mobius(c) * hh(q // c, (q + l) // c - 1)
    total /= q
    if l > 0 and q == l:
        total += Fraction(mobius(q), q) * (bq.chi - 1)
    elif l == 0:
        total -= Fraction(mobius(q), q)
        if q % 2 == 0:
            total -= Fraction(mobius(q // 2), q) * (len(bq.arrows) + 1)
    return total


# consistency suite ------------------------------------------------------------


def _table_diff(a: AGTable, b: AGTable) -> str:
    da, db = a.as_dict(), b.as_dict()
    keys = sorted(set(da) | set(db))
    bad = [(k, da.get(k, 0), db.get(k, 0)) for k in keys if da.get(k, 0) != db.get(k, 0)]
    return "" if not bad else f"first mismatch at {bad[0][0]}: {bad[0][1]} vs {bad[0][2]}"


def _cycle_lengths(bq: BoundQuiver, kind: str) -> Counter:
    return Counter(len(c) for c in cycles(bq)[kind])


def consistency_suite(bq: BoundQuiver, k_max: int = 3) -> Report:
    from .constructions import repeat

    require(bq, "gentle")
    checks: List[Check] = []
    base = phi(bq)
    checks.append(Check("euler[k=1]", 2 * bq.chi == euler_sum(base),
                        f"2chi={2 * bq.chi} sum={euler_sum(base)}"))
    summary = threads(bq)
    checks.append(Check("thread-count", len(summary.permitted) == bq.d,
                        f"|M|+|T|={len(summary.permitted)} d={bq.d}"))

    reps = {1: bq}
    tables = {1: base}
    for k in range(1, k_max + 1):
        rep = repeat(bq, k).quiver
        reps[k] = rep
        direct = phi(rep)
        tables[k] = direct
        formula = phi_repetition(base, k)
        checks.append(Check(f"euler[k={k}]", 2 * rep.chi == euler_sum(direct),
                            f"2chi={2 * rep.chi} sum={euler_sum(direct)}"))
        checks.append(Check(f"repetition[k={k}]", formula == direct, _table_diff(formula, direct)))
        for kind in ("anti", "oriented"):
            want = Counter({n: k * c for n, c in _cycle_lengths(bq, kind).items()})
            got = _cycle_lengths(rep, kind)
            checks.append(Check(f"{kind}cycles[k={k}]", want == got, f"{dict(got)} vs {dict(want)}"))
        rs = threads(rep)
        t_formula = 2 * len(rep.vertices) - sum(len(p) + 1 for p in rs.maximal_paths)
        checks.append(Check(f"trivial-threads[k={k}]", t_formula == len(rs.trivial),
                            f"{t_formula} vs {len(rs.trivial)}"))

    for (q, l), count in base.entries:
        if q == 0:
            continue
        need = {q // c for c in divisors(_gcd0(q, l))}
        for k in need:
            if k not in tables:
                tables[k] = phi(repeat(bq, k).quiver)
        value = phi_mobius_recover(tables, q, l)
        checks.append(Check(f"mobius[{q},{l}]", value == count, f"{value} vs {count}"))

    graded_base = bq if bq.degrees is not None else bq.with_degrees({})
    for label, w in (("natural", None), ("label", list(range(1, bq.d + 1)))):
        g = phi_graded(graded_base)
        sizes = [orb.type_ungraded[0] for orb in ag_structure(graded_base)]
        for k in range(1, k_max + 1):
            rep = repeat(graded_base, k, w).quiver
            gk = phi_graded(rep)
            want0 = {key: k * c for key, c in g.entries if key[0] == 0}
            got0 = {key: c for key, c in gk.entries if key[0] == 0}
            checks.append(Check(f"graded-cycles[{label},k={k}]", want0 == got0, f"{got0} vs {want0}"))
            if all(gcd(k, s) == 1 for s in sizes):
                want = {(q, q * (k - 1) + k * n): c for (q, n), c in g.entries if q >= 1}
                got = gk.orbit_part()
                checks.append(Check(f"graded-transport[{label},k={k}]", want == got,
                                    f"{got} vs {want}"))
    return Report(f"consistency({bq.name}, k_max={k_max})", tuple(checks))
