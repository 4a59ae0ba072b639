import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from eulercat import builders
from eulercat.catcore import FinCategory, InvalidCategory, adjacency, identity_functor, reorder
from eulercat.constructions import coproduct
from eulercat.randgen import random_category
from eulercat.ratmat import RatMatrix, identity, inverse, ones, rank, transpose
from eulercat.weights import (MissingCoweighting, MissingWeighting, PreconditionFailed,
                              check_sls, chi, chi_adjunction_transport, chi_report,
                              coweighting, matrix_report, weighting)

M = RatMatrix.from_rows
C1 = builders.constant_composition([[3, 2], [3, 2]], ["a", "b"])
C2, INC, COL = builders.add_isomorphic_copies(C1, {"b2": "b"})
PBC = builders.poset(["a", "b", "c"], [("a", "b"), ("a", "c")])


def solvable(m, rhs):
    """Elimination oracle: is m x = rhs consistent?"""
    aug = M([list(m.row(i)) + [rhs[i]] for i in range(m.rows)])
    return rank(aug) == rank(m)


class TestChi:
    def test_ex1(self):
        assert chi(C1) == Fraction(5, 13)

    def test_ex2(self):
        assert chi(C2) == Fraction(7, 17)

    def test_trivial(self):
        assert chi(builders.terminal()) == 1
        for n in range(1, 6):
            assert chi(builders.discrete(n)) == n
        assert chi(builders.empty()) == 0

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_groups(self, k):
        assert chi(builders.cyclic_group(k)) == Fraction(1, k)

    def test_symmetric_group(self):
        assert chi(builders.symmetric_group(3)) == Fraction(1, 6)

    def test_union_of_groups(self):
        c = coproduct(builders.cyclic_group(2), coproduct(builders.cyclic_group(3), builders.discrete(2)))
        assert chi(c) == Fraction(1, 2) + Fraction(1, 3) + 2

    def test_invalid(self):
        bad = FinCategory(["a"], [("i", "a", "a")], {"a": "i"}, {})
        with pytest.raises(InvalidCategory):
            chi(bad)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_permutation_invariance(self, seed):
        rng = random.Random(seed)
        c = random_category(rng, 4, 3)
        order = list(c.objects)
        rng.shuffle(order)
        assert chi(reorder(c, order)) == chi(c)


class TestWeightings:
    def test_ex1(self):
        assert weighting(M([[3, 2], [3, 2]])) is not None
        assert coweighting(M([[3, 2], [3, 2]])) is None

    def test_identity(self):
        assert weighting(identity(3)) == ones(3)
        assert coweighting(identity(2)) == M([[1, 1]])

    def test_transpose_of_ex1(self):
        m = M([[3, 3], [2, 2]])
        assert weighting(m) is None
        assert not solvable(m, [1, 1])
        assert coweighting(m) is not None

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            weighting(M([[1, 2]]))
        with pytest.raises(ValueError):
            coweighting(M([[1, 2]]))

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 5).flatmap(lambda n: st.lists(
        st.lists(st.integers(-2, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_existence_matches_elimination(self, rows):
        m = M(rows)
        one = [1] * m.rows
        w = weighting(m)
        assert (w is not None) == solvable(m, one)
        if w is not None:
            assert m @ w == ones(m.rows)
        v = coweighting(m)
        assert (v is not None) == solvable(transpose(m), one)
        if v is not None:
            assert v @ m == transpose(ones(m.rows))


class TestReport:
    def test_c1(self):
        r = chi_report(C1)
        assert (r.chi, r.has_weighting, r.has_coweighting, r.lein_defined) == (Fraction(5, 13), True, False, False)
        assert r.to_json()["chi"] == "5/13"
        assert r.to_json()["coweighting"] is None

    def test_poset(self):
        r = chi_report(PBC)
        assert r.chi == 1 and r.lein_defined
        assert r.weighting == M([[-1], [1], [1]])
        assert r.to_json()["weighting"] == ["-1", "1", "1"]

    def test_discrete(self):
        r = chi_report(builders.discrete(2))
        assert r.chi == 2 and r.lein_defined

    def test_invariants(self):
        rng = random.Random(5)
        for _ in range(40):
            r = chi_report(random_category(rng, 4, 3))
            assert r.lein_defined == (r.has_weighting and r.has_coweighting)
            assert (r.weighting is not None) == r.has_weighting
            if r.lein_defined:
                assert sum(r.weighting.entries) == r.chi == sum(r.coweighting.entries)


class TestSls:
    def test_identity(self):
        assert check_sls(identity(3))

    def test_poset(self):
        assert check_sls(M([[1, 1, 1], [0, 1, 0], [0, 0, 1]]))

    def test_missing(self):
        with pytest.raises(MissingCoweighting):
            check_sls(M([[3, 2], [3, 2]]))
        with pytest.raises(MissingWeighting):
            check_sls(M([[3, 3], [2, 2]]))

    def test_invertible_against_elimination(self):
        rng = random.Random(9)
        checked = 0
        while checked < 30:
            c = random_category(rng, 4, 3)
            a = adjacency(c)
            if rank(a) != a.rows:
                continue
            inv = inverse(a)
            w, v = inv @ ones(a.rows), transpose(ones(a.rows)) @ inv
            assert sum(w.entries) == sum(v.entries) == chi(c)
            assert check_sls(a)
            checked += 1

    def test_sympy_oracle(self):
        m = M([[1, 1, 1], [0, 1, 0], [0, 0, 1]])
        sm = sympy.Matrix([[1, 1, 1], [0, 1, 0], [0, 0, 1]])
        assert (sympy.ones(1, 3) * sm.pinv() * sympy.ones(3, 1))[0] == matrix_report(m).chi


class TestAdjunctionTransport:
    def test_identity_on_terminal(self):
        t = builders.terminal()
        i = identity_functor(t)
        assert chi_adjunction_transport(t, t, i, i)

    def test_initial_object(self):
        t = builders.terminal()
        bang = builders.terminal_functor(PBC, t)
        bottom = builders.point_functor(PBC, "a", t)
        assert chi_adjunction_transport(t, PBC, bottom, bang)
        assert chi(t) == chi(PBC) == 1

    def test_terminal_object(self):
        p = builders.poset(["a", "b", "t"], [("a", "t"), ("b", "t")])
        t = builders.terminal()
        bang = builders.terminal_functor(p, t)
        top = builders.point_functor(p, "t", t)
        assert chi_adjunction_transport(p, t, bang, top)

    def test_ex2_equivalence_fails_precondition(self):
        with pytest.raises(PreconditionFailed, match="coweighting"):
            chi_adjunction_transport(C1, C2, INC, COL)
        assert chi(C1) != chi(C2)

    def test_not_an_adjunction(self):
        t = builders.terminal()
        bang = builders.terminal_functor(PBC, t)
        bottom = builders.point_functor(PBC, "a", t)
        with pytest.raises(PreconditionFailed, match="hom counts"):
            chi_adjunction_transport(PBC, t, bang, bottom)

    def test_wrong_categories(self):
        t = builders.terminal()
        with pytest.raises(PreconditionFailed):
            chi_adjunction_transport(PBC, t, identity_functor(t), identity_functor(t))
