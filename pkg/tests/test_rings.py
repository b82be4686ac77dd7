"""Exact-arithmetic layer: polynomial rings and truncated power series."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from svtab.rings import MARKERS, InexactDivision, MultiPoly, QPoly, TSeries

qpolys = st.builds(QPoly, st.lists(st.integers(-9, 9), max_size=6))
monomials = st.tuples(
    st.tuples(*(st.integers(0, 3) for _ in MARKERS)), st.integers(-5, 5)
)
multipolys = st.builds(
    lambda terms: sum(
        (MultiPoly({exp: c}) for exp, c in terms), MultiPoly.zero()
    ),
    st.lists(monomials, max_size=4),
)


class TestQPoly:
    def test_trailing_zeros_trimmed(self):
        assert QPoly([1, 2, 0, 0]) == QPoly([1, 2])
        assert QPoly([0, 0]) == QPoly.zero()
        assert QPoly([7]).coeffs == (7,)

    @given(qpolys, qpolys, qpolys)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + QPoly.zero() == a
        assert a * QPoly.one() == a

    @given(qpolys, qpolys)
    def test_divexact_inverts_multiplication(self, a, b):
        if b == QPoly.zero():
            return
        assert (a * b).divexact(b) == a

    def test_divexact_failures(self):
        with pytest.raises(InexactDivision):
            QPoly([1]).divexact(QPoly([0, 1]))
        with pytest.raises(InexactDivision):
            QPoly([1, 1]).divexact(QPoly([2]))
        with pytest.raises(ZeroDivisionError):
            QPoly([1]).divexact(QPoly.zero())

    def test_monomial_and_evaluation(self):
        p = QPoly.monomial(3, 2)
        assert p.coeffs == (0, 0, 0, 2)
        assert p(10) == 2000
        assert (QPoly([3, 2]))(1) == 5
        assert QPoly([1, 1, 1]).coeff(2) == 1 and QPoly([1]).coeff(5) == 0

    def test_str_low_to_high_degree(self):
        assert str(QPoly([3, 2])) == "2*q + 3"
        assert str(QPoly.zero()) == "0"


class TestMultiPoly:
    @given(multipolys, multipolys, multipolys)
    @settings(max_examples=60)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a * MultiPoly.one() == a

    def test_from_word_multiplies_generators(self):
        w = MultiPoly.from_word("UuDd")
        assert w == MultiPoly.gen("U") * MultiPoly.gen("u") * MultiPoly.gen(
            "D"
        ) * MultiPoly.gen("d")
        assert w.at_ones() == 1
        assert w.weighted_exponent_sum("U") == 1

    def test_counting_specializations(self):
        p = MultiPoly.from_word("UUD") * 3 + MultiPoly.from_word("ud")
        assert p.at_ones() == 4
        # U-count weighted by coefficients: 3 paths with two U's each
        assert p.weighted_exponent_sum("U") == 6
        assert p.weighted_exponent_sum("d") == 1

    def test_swap_exchanges_markers(self):
        p = MultiPoly.from_word("Uud")
        assert p.swap("u", "d") == MultiPoly.from_word("Udu")
        assert p.swap("u", "d").swap("u", "d") == p

    def test_sorted_terms_deterministic(self):
        p = MultiPoly.gen("U") + MultiPoly.gen("d") * 2
        assert p.sorted_terms() == [((0, 0, 0, 1), 2), ((1, 0, 0, 0), 1)]

    def test_divexact_monomial(self):
        p = MultiPoly.from_word("UUDD") * 4
        q = p.divexact_monomial(2, (1, 1, 0, 0))
        assert q == MultiPoly.from_word("UD") * 2
        with pytest.raises(InexactDivision):
            MultiPoly.gen("U").divexact_monomial(1, (0, 1, 0, 0))


class TestTSeries:
    def test_int_coefficients_are_lifted(self):
        s = TSeries(QPoly, 3, [1, 2])
        assert s.coeff(0) == QPoly.one()
        assert s.coeff(1) == QPoly([2])
        assert s.coeff(3) == QPoly.zero()
        with pytest.raises(AssertionError):
            s.coeff(4)

    def test_multiplication_truncates(self):
        s = TSeries(QPoly, 2, [1, 1, 1])
        assert (s * s).coeff(2) == QPoly([3])
        with pytest.raises(AssertionError):
            s + TSeries(QPoly, 3, [1])

    def test_shifts(self):
        s = TSeries(QPoly, 4, [0, 0, 1, 5])
        down = s.shift_down(2)
        assert down.coeff(0) == QPoly.one() and down.coeff(1) == QPoly([5])
        assert s.shift_up(1).coeff(3) == QPoly.one()
        with pytest.raises(InexactDivision):
            TSeries(QPoly, 4, [1]).shift_down(1)

    def test_inverse(self):
        s = TSeries(QPoly, 6, [1, QPoly([0, 1]), 3])
        assert s * s.inverse() == TSeries(QPoly, 6, [1])
        with pytest.raises(InexactDivision):
            TSeries(QPoly, 4, [2]).inverse()

    @given(st.lists(st.integers(-4, 4), min_size=0, max_size=5))
    def test_sqrt_of_a_square(self, tail):
        s = TSeries(QPoly, 8, [1] + tail)
        assert (s * s).sqrt() == s

    def test_sqrt_failures(self):
        with pytest.raises(InexactDivision):
            TSeries(QPoly, 4, [QPoly([0, 1])]).sqrt()
        with pytest.raises(InexactDivision):
            TSeries(QPoly, 4, [1, 1]).sqrt()  # 1 + t is not a square over ints

    def test_divexact_int(self):
        s = TSeries(QPoly, 3, [2, 4])
        assert s.divexact_int(2) == TSeries(QPoly, 3, [1, 2])
        with pytest.raises(InexactDivision):
            TSeries(QPoly, 2, [1]).divexact_int(2)

    def test_works_over_the_marker_ring(self):
        u = MultiPoly.gen("u")
        s = TSeries(MultiPoly, 5, [1, u])
        inv = (TSeries(MultiPoly, 5, [1, u * (-1)])).inverse()
        # geometric series in u*t
        u2, u3, u4 = u * u, u * u * u, u * u * u * u
        assert inv.coeff(3) == u3
        expect = TSeries(MultiPoly, 5, [1, u * 2, u2 * 2, u3 * 2, u4 * 2, u4 * u * 2])
        assert s * inv == expect
