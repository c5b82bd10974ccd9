import itertools
import random
from collections import Counter

import pytest

from conftest import corpus
from gentlekit.blossom import ag_structure, blossom
from gentlekit.quiver import make_quiver, threads, validate
import oracles

# Phi and the deltas of EX1 as printed for the hand-labelled example
PAPER_PHI = (4, 1, 5, 2, 3)
PAPER_DELTA = ("th", "e_a", "e_g", "al", "ze·ka")


def cycle_type(perm):
    seen, sizes = set(), []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        n, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x - 1]
            n += 1
        sizes.append(n)
    return sorted(sizes)


class TestBlossom:
    def test_ex1_matches_printed_labels_up_to_relabeling(self, ex1):
        b = blossom(ex1)
        ours = [str(x) for x in b.delta]
        hits = []
        for pi in itertools.permutations(range(1, 6)):
            # pi sends our label to the printed one
            if all(PAPER_DELTA[pi[p] - 1] == ours[p] for p in range(5)) and all(
                    PAPER_PHI[pi[p] - 1] == pi[b.phi[p] - 1] for p in range(5)):
                hits.append(pi)
        assert len(hits) == 1

    def test_ex1_deltas(self, ex1):
        assert sorted(str(x) for x in blossom(ex1).delta) == sorted(PAPER_DELTA)

    def test_a2(self, a2):
        b = blossom(a2)
        assert b.d == 3
        assert cycle_type(b.phi) == [3]
        assert sorted(str(x) for x in b.delta) == ["al", "e_a", "e_b"]

    def test_blossomed_shape(self, fixture_quiver):
        bq = fixture_quiver
        b = blossom(bq)
        bl = b.blossomed
        assert len(bl.vertices) == len(bq.vertices) + 2 * bq.d
        assert len(bl.arrows) == len(bq.arrows) + 2 * bq.d
        assert all(bl.din(v) == 2 and bl.dout(v) == 2 for v in bq.vertices)
        assert validate(bl).passed
        assert b.sigma == tuple(f"sigma#{p}" for p in range(1, bq.d + 1))
        assert all(bl.target(f"sigma#{p}") == b.wp[p - 1].source for p in range(1, bq.d + 1))
        assert all(bl.source(f"tau#{p}") == b.wp[p - 1].target for p in range(1, bq.d + 1))

    def test_labels_follow_thread_order(self, ex1):
        b = blossom(ex1)
        assert b.wp == threads(ex1).permitted
        assert b.label_of(ex1.path("la")) == 3

    def test_custom_order_conjugates_phi(self, ex1):
        base = blossom(ex1)
        order = list(reversed(base.wp))
        b = blossom(ex1, order)
        new_label = {t: i + 1 for i, t in enumerate(order)}
        for p in range(1, 6):
            thread = base.wp[p - 1]
            image = base.wp[base.phi[p - 1] - 1]
            assert b.phi[new_label[thread] - 1] == new_label[image]

    def test_bad_order(self, ex1):
        with pytest.raises(ValueError):
            blossom(ex1, list(blossom(ex1).wp)[:-1])

    def test_requires_locally_gentle(self):
        bq = make_quiver("fork", "abc", [("x", "a", "b"), ("y", "b", "c"), ("z", "b", "c")])
        with pytest.raises(ValueError):
            blossom(bq)


class TestAGStructure:
    def test_ex1(self, ex1):
        assert sorted(o.type_ungraded for o in ag_structure(ex1)) == [(2, 2), (3, 2)]

    def test_a2(self, a2):
        assert [o.type_ungraded for o in ag_structure(a2)] == [(3, 1)]

    def test_kr_phi_is_identity(self, kr):
        # each maximal path is its own image: the antipath ending at t#p
        # consists of the other arrow alone
        b = blossom(kr)
        assert b.phi == (1, 2)
        assert [o.type_ungraded for o in ag_structure(kr)] == [(1, 1), (1, 1)]

    def test_graded_types_only_with_degrees(self, ex1):
        assert all(o.type_graded is None for o in ag_structure(ex1))
        graded = ex1.with_degrees({a.id: 0 for a in ex1.arrows})
        assert [o.type_graded for o in ag_structure(graded)] == [o.type_ungraded for o in ag_structure(ex1)]

    def test_orbits_partition_labels(self, fixture_quiver):
        orbits = ag_structure(fixture_quiver)
        assert sorted(i for o in orbits for i in o.indices) == list(range(1, fixture_quiver.d + 1))

    @pytest.mark.parametrize("bq", corpus(80), ids=lambda q: q.name)
    def test_types_against_independent_blossoming(self, bq):
        ours = Counter(o.type_ungraded for o in ag_structure(bq))
        ours.update((0, len(c)) for c in threads(bq).anticycles)
        rng = random.Random(bq.name)
        for _ in range(3):
            assert oracles.random_orbit_types(bq, rng) == ours

    @pytest.mark.parametrize("bq", corpus(40), ids=lambda q: q.name)
    def test_graded_types_against_independent_blossoming(self, bq):
        rng = random.Random(bq.name)
        graded = bq.with_degrees({a.id: rng.randint(-3, 3) for a in bq.arrows})
        ours = Counter(o.type_graded for o in ag_structure(graded))
        theirs = oracles.random_orbit_types(graded, rng, graded=True)
        assert Counter({t: c for t, c in theirs.items() if t[0] > 0}) == ours
