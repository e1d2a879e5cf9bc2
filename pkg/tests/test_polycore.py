"""Tests for exact polynomial arithmetic, factor structure and roots."""

from fractions import Fraction

import numpy as np
import pytest

from data.samples import random_real_rooted, random_trivial
from polycore import (
    DomainError,
    GaussianRational,
    ParseError,
    Polynomial,
    centroid_data,
    count_real_roots,
    derive,
    format_polynomial,
    is_real_rooted,
    is_trivial,
    parse_nodes,
    parse_polynomial,
    power_sums,
    root_multiset,
    squarefree_decompose,
)
from polycore.roots import certified_roots


def P(text: str) -> Polynomial:
    return parse_polynomial(text)


@pytest.fixture
def rational_corpus():
    """200 seeded monic polynomials with rational roots, n <= 10."""
    rng = np.random.default_rng(20240501)
    return [random_real_rooted(rng, n_max=10) for _ in range(200)]


class TestGaussianRational:
    """Tests for exact Q(i) arithmetic."""

    def test_field_operations(self):
        a = GaussianRational(1, 2)
        b = GaussianRational(Fraction(1, 2), -1)
        assert a * b / b == a
        assert (a + b) - b == a
        assert a * a.conjugate() == GaussianRational(5)

    def test_mixes_with_ints_and_fractions(self):
        a = GaussianRational(Fraction(3, 4))
        assert a + 1 == Fraction(7, 4)
        assert 2 * a == GaussianRational(Fraction(3, 2))
        assert 1 / a == Fraction(4, 3)

    def test_exact_square_roots(self):
        assert GaussianRational(Fraction(9, 4)).sqrt_exact() == Fraction(3, 2)
        assert GaussianRational(-4).sqrt_exact() == GaussianRational(0, 2)
        assert GaussianRational(3, 4).sqrt_exact() == GaussianRational(2, 1)
        assert GaussianRational(2).sqrt_exact() is None

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(1) / GaussianRational(0)


class TestParsing:
    """Tests for the polynomial and node text formats."""

    def test_expression_form(self):
        p = P("x^4 - 3*x^2 + 2*x")
        assert p.coefficients == tuple(GaussianRational(c) for c in (1, 0, -3, 2, 0))

    def test_coefficient_list_form(self):
        p = P("poly:[1, -8, 24, -32, 16]")
        assert p == Polynomial.from_roots([(2, 4)])

    def test_descriptive_prefix_is_ignored(self):
        assert P("(coefficients) poly:[1,-8,24,-32,16]").degree == 4

    def test_rational_and_gaussian_coefficients(self):
        p = P("poly:[1, 1/2, (0,1)]")
        assert p.coefficients[1] == Fraction(1, 2)
        assert p.coefficients[2] == GaussianRational(0, 1)

    @pytest.mark.parametrize(
        "text",
        ["x^3 - x", "x^4 - 3*x^2 + 2*x", "-1/2*x^2 + 7/3", "x", "poly:[1, (0,1), -2]", "0"],
    )
    def test_round_trip(self, text):
        p = P(text)
        canonical = format_polynomial(p)
        assert P(canonical) == p
        assert format_polynomial(P(canonical)) == canonical

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            P("x^2 + * 3")
        assert info.value.position == 6

    def test_zero_denominator(self):
        with pytest.raises(ParseError, match="Zero denominator"):
            P("1/0*x")

    def test_nodes(self):
        assert parse_nodes("nodes:[0, 1, 5/2]") == (0, 1, Fraction(5, 2))
        assert parse_nodes("nodes:[(0,1), (2,-1)]") == (GaussianRational(0, 1), GaussianRational(2, -1))


class TestDerive:
    """Tests for exact differentiation."""

    def test_examples(self):
        assert derive(P("x^3 - x"), 1) == P("3*x^2 - 1")
        assert derive(P("x^4 - 3*x^2 + 2*x"), 2) == P("12*x^2 - 6")
        p = P("x^5 + 2*x - 7")
        assert derive(p, 0) == p

    def test_order_too_large(self):
        with pytest.raises(DomainError, match="exceeds degree"):
            derive(P("x^2"), 3)

    def test_composition(self, rational_corpus):
        for p, _ in rational_corpus[:50]:
            for a in range(p.degree + 1):
                for b in range(p.degree - a + 1):
                    assert derive(derive(p, a), b) == derive(p, a + b)


class TestSquarefree:
    """Tests for Yun's decomposition."""

    def test_examples(self):
        assert squarefree_decompose(P("x^3 - x^2")) == [(P("x - 1"), 1), (P("x"), 2)]
        assert squarefree_decompose(P("x^4 - 8*x^3 + 24*x^2 - 32*x + 16")) == [(P("x - 2"), 4)]
        p = Polynomial.from_roots([0, (1, 2), -2])
        assert squarefree_decompose(p) == [(P("x^2 + 2*x"), 1), (P("x - 1"), 2)]

    def test_reproduces_input(self, rational_corpus):
        for p, spec in rational_corpus:
            product = Polynomial.constant(1)
            total = 0
            for factor, mult in squarefree_decompose(p):
                product = product * factor ** mult
                total += mult * factor.degree
            assert product == p
            assert total == p.degree


class TestRootMultiset:
    """Tests for exact and certified roots."""

    def test_examples(self):
        rm = root_multiset(P("x^3 - x"))
        assert [(e.root, e.multiplicity) for e in rm.entries] == [(-1, 1), (0, 1), (1, 1)]
        rm = root_multiset(P("x^4 - 3*x^2 + 2*x"))
        assert [(e.root, e.multiplicity) for e in rm.entries] == [(-2, 1), (0, 1), (1, 2)]
        rm = root_multiset(Polynomial.from_roots([(2, 4)]))
        assert rm.k == 1 and rm.r == 4 and rm.entries[0].root == 2

    def test_multiplicities_sum_to_degree(self, rational_corpus):
        for p, spec in rational_corpus:
            rm = root_multiset(p)
            assert sum(rm.multiplicities) == p.degree
            assert rm.is_exact
            assert [(e.root, e.multiplicity) for e in rm.entries] == [(GaussianRational(r), m) for r, m in spec]

    def test_irrational_roots_are_certified(self):
        p = P("x^5 - 3*x + 1")
        rm = root_multiset(p)
        assert rm.k == 5
        assert sum(1 for e in rm.entries if e.is_real) == count_real_roots(p)
        for e in rm.entries:
            assert not e.is_exact
            assert np.isfinite(e.error_radius)

    def test_residual_within_certified_radius(self):
        for text in ["x^5 - 3*x + 1", "x^4 + x + 1", "x^6 - 2", "poly:[1, (0,1), 3, -1]"]:
            q = P(text)
            for approx in certified_roots(q):
                value = complex(approx.value)
                residual = abs(complex(q.monic().evaluate(value)))
                slope = abs(complex(q.monic().derive(1).evaluate(value)))
                assert residual <= approx.error_radius * slope / q.degree + 1e-12

    def test_quadratic_splits_exactly(self):
        rm = root_multiset(P("4*x^2 - 9"))
        assert [e.root for e in rm.entries] == [Fraction(-3, 2), Fraction(3, 2)]
        rm = root_multiset(P("x^2 + 1"))
        assert rm.is_exact and not rm.is_real

    def test_degree_zero_rejected(self):
        with pytest.raises(DomainError):
            root_multiset(P("5"))


class TestPowerSums:
    """Tests for Newton-identity power sums."""

    def test_examples(self):
        assert power_sums(P("x^3 - x"), 2).p == (3, 0, 2)
        b = Fraction(5, 3)
        assert power_sums(Polynomial.from_roots([(b, 6)]), 1)[1] == 6 * b
        assert power_sums(P("x^3 - x^2"), 2)[2] == 1

    def test_match_explicit_root_sums(self, rational_corpus):
        for p, spec in rational_corpus:
            sums = power_sums(p, 2 * p.degree + 1)
            for t in range(sums.t_max + 1):
                explicit = sum(m * Fraction(r) ** t for r, m in spec)
                assert sums[t] == explicit

    def test_centered_sums(self):
        p = Polynomial.from_roots([0, (1, 2), -2])
        sums = power_sums(p, 2)
        z = Fraction(1, 3)
        assert sums.centered(z, 2) == (0 - z) ** 2 + 2 * (1 - z) ** 2 + (-2 - z) ** 2


class TestCentroidData:
    """Tests for the centroid and penultimate gap."""

    def test_examples(self):
        data = centroid_data(P("x^3 - x"))
        assert data.z_n1 == 0 and data.gap_squared == Fraction(1, 3)
        assert not data.is_exact
        data = centroid_data(P("x^3 - x^2"))
        assert data.z_n1 == Fraction(1, 3) and data.gap_squared == Fraction(1, 9)
        assert data.z_n2 == Fraction(2, 3) and data.mirror_root == 0

    def test_trivial(self):
        data = centroid_data(Polynomial.from_roots([(Fraction(-7, 2), 5)]))
        assert data.z_n1 == Fraction(-7, 2) and data.gap_squared == 0

    def test_mirror_symmetry(self, rational_corpus):
        for p, _ in rational_corpus:
            if p.degree < 2:
                continue
            data = centroid_data(p)
            if data.is_exact:
                assert data.z_n2 + data.mirror_root == 2 * data.z_n1
            else:
                total = data.z_n2.value + data.mirror_root.value
                assert abs(total - 2 * complex(data.z_n1)) < 1e-9 * (1 + abs(total))

    def test_degree_one_rejected(self):
        with pytest.raises(DomainError):
            centroid_data(P("x - 1"))


class TestTriviality:
    """Tests for the divisibility criterion."""

    def test_examples(self):
        assert is_trivial(Polynomial.from_roots([(2, 4)]))
        assert not is_trivial(P("x^3 - x"))
        assert not is_trivial(P("x^4 - 3*x^2 + 2*x"))

    def test_matches_single_entry(self, rational_corpus):
        rng = np.random.default_rng(7)
        trivials = [random_trivial(rng)[0] for _ in range(50)]
        for p in [p for p, _ in rational_corpus] + trivials:
            assert is_trivial(p) == (root_multiset(p).k == 1)


class TestRealRootedness:
    """Tests for the exact Sturm gate."""

    def test_counts(self):
        assert count_real_roots(P("x^3 - x")) == 3
        assert count_real_roots(P("x^2 + 1")) == 0
        assert count_real_roots(Polynomial.from_roots([(1, 3), (2, 2)])) == 2

    def test_is_real_rooted(self):
        assert is_real_rooted(P("x^4 - 3*x^2 + 2*x"))
        assert not is_real_rooted(P("x^3 - 1"))
        assert not is_real_rooted(P("poly:[1, (0,1)]"))
