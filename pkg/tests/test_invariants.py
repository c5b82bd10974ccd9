import random
from collections import Counter
from fractions import Fraction

import pytest

from conftest import corpus
from gentlekit.constructions import repeat
from gentlekit.invariants import (AGTable, consistency_suite, divisors, euler_sum, hochschild_dims,
                                  lcm, mobius, phi, phi_graded, phi_mobius_recover,
                                  phi_repetition, phi_via_hochschild, repetition_preimages)
from gentlekit.quiver import make_quiver, threads, validate
import oracles


def hereditary(n: int, cyclic: bool, seed: int):
    """Relation-free quiver on a line or an unoriented cycle."""
    rng = random.Random(seed)
    while True:
        edges = [(i, i + 1) for i in range(n - 1)] + ([(n - 1, 0)] if cyclic else [])
        flips = [rng.random() < 0.5 for _ in edges]
        if cyclic and len(set(flips)) == 1:
            continue
        arrows = [(f"x{i}", f"v{t}", f"v{s}") if f else (f"x{i}", f"v{s}", f"v{t}")
                  for i, ((s, t), f) in enumerate(zip(edges, flips))]
        return make_quiver(f"h{n}{'c' if cyclic else 'l'}{seed}", [f"v{i}" for i in range(n)], arrows)


HEREDITARY = [hereditary(n, False, s) for n in range(2, 9) for s in range(3)] + \
             [hereditary(n, True, s) for n in range(2, 9) for s in range(3)]


def tables_up_to(bq, k_max):
    return {k: phi(repeat(bq, k).quiver) for k in range(1, k_max + 1)}


class TestPhi:
    def test_ex1(self, ex1):
        assert phi(ex1).as_dict() == {(0, 3): 1, (2, 2): 1, (3, 2): 1}

    def test_a2(self, a2):
        assert phi(a2).as_dict() == {(3, 1): 1}

    def test_kr(self, kr):
        # two fixed points of Phi, each with a one-arrow antipath; the
        # Hochschild check below (Happel) confirms HH^1 = 3
        assert phi(kr).as_dict() == {(1, 1): 2}

    def test_ex2(self, ex2):
        assert phi(ex2).as_dict() == {(8, 6): 1}

    def test_requires_gentle(self):
        bq = make_quiver("loop", "vw", [("x", "v", "w"), ("y", "w", "v")])
        with pytest.raises(ValueError):
            phi(bq)

    def test_drops_degrees(self, ex1):
        assert phi(ex1.with_degrees({"al": 7})) == phi(ex1)

    def test_table_access(self):
        t = AGTable.from_counts({(2, 1): 3, (0, 4): 0})
        assert t.entries == (((2, 1), 3),) and t[(2, 1)] == 3 and t[(9, 9)] == 0
        assert t.triples() == [(2, 1, 3)]

    @pytest.mark.parametrize("bq", corpus(200), ids=lambda q: q.name)
    def test_euler_identity(self, bq):
        assert euler_sum(phi(bq)) == 2 * bq.chi
        assert sum(c * q for (q, _), c in phi(bq).entries) == bq.d


class TestGraded:
    def test_degree_zero_equals_ungraded(self, fixture_quiver):
        g = phi_graded(fixture_quiver.with_degrees({}))
        assert g.entries == phi(fixture_quiver).entries and g.graded

    def test_a2_telescopes(self, a2):
        assert phi_graded(a2.with_degrees({"al": 5})).as_dict() == {(3, 1): 1}

    def test_ex1_degree_one(self, ex1):
        table = phi_graded(ex1.with_degrees({a.id: 1 for a in ex1.arrows}))
        assert table.as_dict() == {(0, 0): 1, (2, 3): 1, (3, 4): 1}

    def test_oriented_cycles_in_locally_gentle(self):
        bq = make_quiver("loop", "vw", [("x", "v", "w"), ("y", "w", "v")], degrees={"x": 2, "y": 3})
        # two orbits of the cycle's complement plus the cycle itself
        table = phi_graded(bq)
        assert table[(0, 5)] == 1

    def test_lengths_still_sum_to_d(self, fixture_quiver):
        rng = random.Random(3)
        bq = fixture_quiver.with_degrees({a.id: rng.randint(-2, 2) for a in fixture_quiver.arrows})
        assert sum(c * q for (q, _), c in phi_graded(bq).entries) == bq.d


class TestHochschild:
    def test_ex1(self, ex1):
        assert hochschild_dims(phi(ex1), -1, 0, 7).dims == (1, 2, 0, 0, 0, 0, 1, 1)

    def test_ex1_char2(self, ex1):
        assert hochschild_dims(phi(ex1), -1, 2, 3).dims == (1, 2, 0, 1)

    def test_kr(self, kr):
        assert hochschild_dims(phi(kr), 0, 0, 1).dims == (1, 3)

    def test_rejects_graded(self, ex1):
        with pytest.raises(ValueError):
            hochschild_dims(phi_graded(ex1), -1)

    @pytest.mark.parametrize("bq", HEREDITARY + [q for q in corpus(200) if not q.relations],
                             ids=lambda q: q.name)
    def test_hh1_against_happel(self, bq):
        assert validate(bq).passed
        profile = hochschild_dims(phi(bq), bq.chi, 0, 1)
        assert profile.dims == (1, oracles.happel_hh1(bq))


class TestNumberTheory:
    def test_mobius(self):
        assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
        assert all(mobius(n) == oracles.mobius_by_sum(n) for n in range(1, 200))
        with pytest.raises(ValueError):
            mobius(0)

    def test_divisors_lcm(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert lcm(4, 6) == 12


class TestRepetitionFormula:
    def test_ex1_k3(self, ex1):
        assert phi_repetition(phi(ex1), 3).as_dict() == {(0, 3): 3, (1, 4): 3, (2, 10): 1}

    def test_a2_k2(self, a2):
        assert phi_repetition(phi(a2), 2).as_dict() == {(3, 5): 1}

    def test_identity_at_k1(self, fixture_quiver):
        t = phi(fixture_quiver)
        assert phi_repetition(t, 1) == t

    def test_bad_k(self, a2):
        with pytest.raises(ValueError):
            phi_repetition(phi(a2), 0)

    @pytest.mark.parametrize("k", range(1, 6))
    def test_preimages_against_brute_force(self, k):
        for n in range(1, 8):
            for m in range(0, 25):
                assert sorted(repetition_preimages(n, m, k)) == oracles.brute_preimages(n, m, k)

    @pytest.mark.parametrize("k", range(1, 6))
    def test_forward_map_matches_pieces(self, k):
        t = AGTable.from_counts({(q, l): 1 for q in range(0, 7) for l in range(0, 6)})
        want = Counter()
        for (q, l), c in t.entries:
            for piece in oracles.orbit_pieces(q, l, k):
                want[piece] += c
        assert phi_repetition(t, k).as_dict() == dict(want)


class TestMobiusRecovery:
    def test_every_entry_of_fixtures(self, fixture_quiver):
        base = phi(fixture_quiver)
        q_max = max(q for (q, _), _ in base.entries)
        tables = tables_up_to(fixture_quiver, q_max)
        for (q, l), count in base.entries:
            if q:
                assert phi_mobius_recover(tables, q, l) == count

    def test_kr_22(self, kr):
        tables = tables_up_to(kr, 2)
        assert tables[2][(1, 3)] == 2
        assert phi_mobius_recover(tables, 2, 2) == 0 == phi(kr)[(2, 2)]

    def test_zero_entries(self, ex1):
        tables = tables_up_to(ex1, 4)
        for q in range(1, 5):
            for l in range(0, 6):
                assert phi_mobius_recover(tables, q, l) == phi(ex1)[(q, l)]

    def test_missing_table(self, a2):
        with pytest.raises(KeyError):
            phi_mobius_recover({1: phi(a2)}, 3, 1)


class TestViaHochschild:
    def test_a2(self, a2):
        assert phi_via_hochschild(a2, 3, 1, 0) == 1

    def test_kr(self, kr):
        assert phi_via_hochschild(kr, 2, 2, 0) == 0
        assert phi_via_hochschild(kr, 1, 1, 0) == 2

    def test_refuses_anticycles(self, ex1):
        with pytest.raises(ValueError, match="anticycle"):
            phi_via_hochschild(ex1, 2, 2)

    def test_exact_fraction(self, a2):
        assert isinstance(phi_via_hochschild(a2, 2, 1), Fraction)

    @pytest.mark.parametrize("bq", [q for q in corpus(40, max_n=6) if not threads(q).anticycles],
                             ids=lambda q: q.name)
    def test_matches_phi_on_small_grid(self, bq):
        base = phi(bq)
        for q in range(1, 4):
            for l in range(0, 4):
                assert phi_via_hochschild(bq, q, l) == base[(q, l)], (q, l)


class TestConsistencySuite:
    def test_ex1(self, ex1):
        report = consistency_suite(ex1, 3)
        assert report.passed
        euler3 = next(c for c in report.checks if c.name == "euler[k=3]")
        assert euler3.detail == "2chi=-26 sum=-26"

    @pytest.mark.parametrize("name,k", [("A2", 4), ("KR", 2), ("EX2", 2)])
    def test_fixtures(self, name, k):
        from gentlekit.fixtures import load
        assert consistency_suite(load(name), k).passed

    @pytest.mark.parametrize("bq", corpus(25, max_n=8), ids=lambda q: q.name)
    def test_corpus(self, bq):
        report = consistency_suite(bq, 3)
        assert report.passed, report.failures()
