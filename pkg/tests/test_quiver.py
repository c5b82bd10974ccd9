import pytest

from conftest import corpus
from gentlekit.quiver import (BoundQuiver, Path, compose, cycles, degree, make_quiver,
                              path_basis, threads, trivial_thread_vertices, validate)
import oracles


def tags(report):
    return sorted({v.tag for v in report.violations})


class TestValidate:
    def test_ex1_gentle(self, ex1):
        report = validate(ex1, "gentle")
        assert report.passed and report.d == 5 and report.connected

    def test_a2_gentle(self, a2):
        report = validate(a2)
        assert report.passed and report.d == 3

    def test_non_composable_relation(self, kr):
        bad = BoundQuiver("KR", kr.vertices, kr.arrows, {("al", "al")})
        assert tags(validate(bad)) == ["relation-not-composable"]

    def test_degree_bounds(self):
        bq = make_quiver("star", "abcd", [("x", "a", "d"), ("y", "b", "d"), ("z", "c", "d")])
        assert "in-degree" in tags(validate(bq))
        bq = make_quiver("star", "abcd", [("x", "d", "a"), ("y", "d", "b"), ("z", "d", "c")])
        assert "out-degree" in tags(validate(bq))

    def test_two_permitted_successors(self):
        bq = make_quiver("fork", "abc", [("x", "a", "b"), ("y", "b", "c"), ("z", "b", "c")])
        assert tags(validate(bq, "locally-gentle")) == ["permitted-successor"]

    def test_two_forbidden_successors(self):
        bq = make_quiver("fork", "abc", [("x", "a", "b"), ("y", "b", "c"), ("z", "b", "c")],
                         [("x", "y"), ("x", "z")])
        assert tags(validate(bq, "locally-gentle")) == ["forbidden-successor"]

    def test_predecessor_conditions(self):
        bq = make_quiver("join", "abc", [("x", "a", "b"), ("y", "a", "b"), ("z", "b", "c")])
        assert tags(validate(bq, "locally-gentle")) == ["permitted-predecessor"]
        bq = make_quiver("join", "abc", [("x", "a", "b"), ("y", "a", "b"), ("z", "b", "c")],
                         [("x", "z"), ("y", "z")])
        assert tags(validate(bq, "locally-gentle")) == ["forbidden-predecessor"]

    def test_disconnected(self):
        bq = make_quiver("two", "abcd", [("x", "a", "b"), ("y", "c", "d")])
        report = validate(bq)
        assert tags(report) == ["disconnected"] and not report.connected

    def test_oriented_cycle_only_matters_for_gentle(self):
        bq = make_quiver("loop", "vw", [("x", "v", "w"), ("y", "w", "v")])
        assert validate(bq, "locally-gentle").passed
        assert tags(validate(bq, "gentle")) == ["oriented-cycle"]

    def test_no_arrows_rejected(self):
        with pytest.raises(ValueError):
            validate(BoundQuiver("pt", ("a",), ()))

    def test_unknown_mode(self, a2):
        with pytest.raises(ValueError):
            validate(a2, "tame")


class TestConstruction:
    def test_duplicate_ids(self):
        with pytest.raises(ValueError):
            make_quiver("q", "aa", [])
        with pytest.raises(ValueError):
            make_quiver("q", "ab", [("x", "a", "b"), ("x", "a", "b")])

    def test_unknown_endpoint(self):
        with pytest.raises(ValueError):
            make_quiver("q", "ab", [("x", "a", "c")])

    def test_relation_on_unknown_arrow(self):
        with pytest.raises(ValueError):
            make_quiver("q", "ab", [("x", "a", "b")], [("x", "y")])

    def test_degrees_filled_in_arrow_order(self, ex1):
        bq = ex1.with_degrees({"ka": 2})
        assert bq.degrees[0] == ("al", 0) and dict(bq.degrees)["ka"] == 2
        assert bq.deg("ka") == 2 and ex1.deg("ka") == 0

    def test_path_must_compose(self, ex1):
        with pytest.raises(ValueError):
            ex1.path("al", "ga")

    def test_counts(self, ex1):
        assert (ex1.d, ex1.chi) == (5, -1)


class TestCompose:
    def test_zero(self, ex1):
        assert compose(ex1, ex1.path("be"), ex1.path("ga")) is None

    def test_nonzero(self, ex1):
        assert compose(ex1, ex1.path("al"), ex1.path("be")) == ex1.path("al", "be")

    def test_identity(self, a2):
        assert compose(a2, a2.trivial("a"), a2.path("al")) == a2.path("al")
        assert compose(a2, a2.path("al"), a2.trivial("b")) == a2.path("al")

    def test_not_composable(self, a2):
        assert compose(a2, a2.trivial("b"), a2.path("al")) is None


class TestSuccessors:
    def test_ex1(self, ex1):
        assert ex1.permitted_successor("al") == "be"
        assert ex1.forbidden_successor("ze") == "ka"
        assert ex1.permitted_successor("ka") is None
        assert ex1.forbidden_predecessor("la") == "ga"
        assert ex1.permitted_predecessor("be") == "al"


class TestCycles:
    def test_ex1(self, ex1):
        found = cycles(ex1)
        assert found["oriented"] == []
        assert [p.arrows for p in found["anti"]] == [("be", "ga", "la")]

    def test_a2(self, a2):
        assert cycles(a2) == {"oriented": [], "anti": []}

    def test_two_cycle(self):
        bq = make_quiver("loop", "vw", [("x", "v", "w"), ("y", "w", "v")])
        found = cycles(bq)
        assert [p.arrows for p in found["oriented"]] == [("x", "y")] and found["anti"] == []

    def test_rotation_canonical(self):
        bq = make_quiver("loop", "vw", [("y", "v", "w"), ("x", "w", "v")])
        assert [p.arrows for p in cycles(bq)["oriented"]] == [("x", "y")]


class TestThreads:
    def test_ex1(self, ex1):
        s = threads(ex1)
        assert [p.arrows for p in s.maximal_paths] == [("al", "be", "ze"), ("ga", "th", "ka"), ("la",)]
        assert s.trivial == ("a", "g")
        assert {p.arrows for p in s.antipaths} == {("al",), ("th",), ("ze", "ka")}
        assert [str(p) for p in s.permitted] == ["al·be·ze", "ga·th·ka", "la", "e_a", "e_g"]

    def test_a2(self, a2):
        s = threads(a2)
        assert [p.arrows for p in s.maximal_paths] == [("al",)]
        assert s.trivial == ("a", "b")
        assert [p.arrows for p in s.antipaths] == [("al",)]

    def test_kr(self, kr):
        s = threads(kr)
        assert [p.arrows for p in s.maximal_paths] == [("al",), ("be",)]
        assert s.trivial == ()
        assert {p.arrows for p in s.antipaths} == {("al",), ("be",)}

    def test_trivial_vertices(self, ex1, ex2):
        assert trivial_thread_vertices(ex1) == ["a", "g"]
        assert trivial_thread_vertices(ex2) == ["a1", "a2", "c1", "c2"]

    def test_permitted_count_is_d(self, fixture_quiver):
        assert len(threads(fixture_quiver).permitted) == fixture_quiver.d

    @pytest.mark.parametrize("bq", corpus(60), ids=lambda q: q.name)
    def test_maximal_paths_against_enumeration(self, bq):
        assert {p.arrows for p in threads(bq).maximal_paths} == oracles.maximal_words(bq)
        assert len(threads(bq).permitted) == bq.d


class TestPathBasis:
    def test_sizes(self, ex1, a2, kr):
        assert (len(path_basis(ex1)), len(path_basis(a2)), len(path_basis(kr))) == (19, 3, 4)

    def test_ex1_composition(self, ex1):
        basis = path_basis(ex1)
        assert sum(1 for p in basis if p.is_trivial) == 6
        assert all(ex1.is_path_in_A(p) for p in basis)
        assert len(set(basis)) == 19

    def test_requires_gentle(self):
        bq = make_quiver("loop", "vw", [("x", "v", "w"), ("y", "w", "v")])
        with pytest.raises(ValueError):
            path_basis(bq)

    @pytest.mark.parametrize("bq", corpus(60), ids=lambda q: q.name)
    def test_against_enumeration(self, bq):
        assert len(path_basis(bq)) == oracles.basis_size(bq)


class TestDegree:
    def test_values(self, a2, ex1):
        graded = a2.with_degrees({"al": 5})
        assert degree(graded, graded.path("al"), "deg") == 5
        assert degree(graded, graded.path("al"), "degbar") == -4
        assert degree(ex1, ex1.path("be", "ga", "la"), "degbar") == 3
        assert degree(ex1, ex1.trivial("a"), "degbar") == 0


def test_path_str():
    assert str(Path("a", "a")) == "e_a"
    assert str(Path("a", "c", ("x", "y"))) == "x·y"
    assert len(Path("a", "c", ("x", "y"))) == 2
