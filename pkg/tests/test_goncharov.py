"""Tests for the Abel-Goncharov constructions and their upper bounds."""

from fractions import Fraction

import numpy as np
import pytest

from data.samples import random_nodes
from goncharov import (
    CONSTRUCTIONS,
    GeneticConstruction,
    build_genetic,
    build_interpolation,
    build_recursion,
    derivative_at_node,
    derivative_genetic,
    genetic_index_tuples,
    goncharov_bound,
    scale_nodes,
    sharp_bound,
)
from polycore import DomainError, GaussianRational, Polynomial, ResourceError, parse_polynomial

BUILDERS = [build_interpolation, build_recursion, build_genetic]


def P(text: str) -> Polynomial:
    return parse_polynomial(text, variable="z")


def node_corpus(n: int, samples: int = 100, gaussian: bool = False):
    rng = np.random.default_rng(1000 + n)
    return [random_nodes(rng, n, gaussian=gaussian) for _ in range(samples)]


class TestConstructions:
    """Tests for the three independent constructions."""

    @pytest.mark.parametrize("build", BUILDERS)
    def test_single_node(self, build):
        assert build([Fraction(5, 2)]).polynomial == P("z - 5/2")

    @pytest.mark.parametrize("build", BUILDERS)
    def test_repeated_node_gives_power(self, build):
        b = Fraction(-3, 2)
        result = build([b] * 4)
        assert result.polynomial == Polynomial.from_roots([(b, 4)])

    @pytest.mark.parametrize("build", BUILDERS)
    def test_two_nodes(self, build):
        assert build([0, 1]).polynomial == P("z^2 - 2z")

    @pytest.mark.parametrize("build", BUILDERS)
    def test_three_nodes(self, build):
        result = build("nodes:[0, 1, 2]")
        assert result.polynomial == P("z^3 - 6z^2 + 9z")
        assert result.polynomial.is_monic

    def test_result_is_tagged(self):
        assert build_recursion([0, 1]).construction == "recursion"
        assert set(CONSTRUCTIONS) == {"interpolation", "recursion", "genetic"}

    def test_float_nodes_rejected(self):
        for build in BUILDERS:
            with pytest.raises(DomainError, match="exact nodes"):
                build([0.5, 1.0])

    def test_empty_nodes_rejected(self):
        with pytest.raises(DomainError):
            build_interpolation([])

    def test_gaussian_nodes(self):
        nodes = [GaussianRational(0, 1), GaussianRational(1, -1), 2]
        polys = {build(nodes).polynomial for build in BUILDERS}
        assert len(polys) == 1

    @pytest.mark.parametrize("n", range(1, 7))
    def test_oracle_equivalence(self, n):
        """Interpolation, recursion and genetic sum agree coefficientwise."""
        for nodes in node_corpus(n):
            g = build_interpolation(nodes).polynomial
            assert build_recursion(nodes).polynomial == g
            assert build_genetic(nodes).polynomial == g

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [7, 8])
    def test_oracle_equivalence_large(self, n):
        for nodes in node_corpus(n):
            g = build_interpolation(nodes).polynomial
            assert build_recursion(nodes).polynomial == g
            assert build_genetic(nodes).polynomial == g

    @pytest.mark.parametrize("n", [3, 5])
    def test_oracle_equivalence_gaussian(self, n):
        for nodes in node_corpus(n, samples=20, gaussian=True):
            g = build_recursion(nodes).polynomial
            assert build_genetic(nodes).polynomial == g

    @pytest.mark.parametrize("n", range(1, 7))
    def test_defining_property(self, n):
        """G^(m)(z_m) = 0 for every m."""
        for nodes in node_corpus(n, samples=30):
            g = build_recursion(nodes).polynomial
            for m, z_m in enumerate(nodes):
                assert g.derive(m).evaluate(z_m).is_zero


class TestGeneticSums:
    """Tests for the index-tuple enumeration and derivative sums."""

    def test_tuple_counts_are_catalan(self):
        counts = [sum(1 for _ in genetic_index_tuples(length)) for length in range(6)]
        assert counts == [1, 2, 5, 14, 42, 132]

    def test_tuples_respect_ranges(self):
        for tup in genetic_index_tuples(4):
            previous = 0
            for j in tup:
                assert 0 <= j <= 1 + previous
                previous = j

    def test_derivative_examples(self):
        nodes = [0, 1, 2]
        assert derivative_genetic(nodes, 0) == P("z^3 - 6z^2 + 9z")
        assert derivative_genetic(nodes, 1) == P("3z^2 - 12z + 9")
        d2 = derivative_genetic(nodes, 2)
        assert d2 == P("6z - 12")
        assert d2.evaluate(2).is_zero

    @pytest.mark.parametrize("n", range(1, 7))
    def test_derivative_matches_derive(self, n):
        for nodes in node_corpus(n, samples=25):
            g = build_genetic(nodes).polynomial
            for m in range(n):
                assert derivative_genetic(nodes, m) == g.derive(m)

    def test_derivative_order_out_of_range(self):
        with pytest.raises(DomainError, match="outside"):
            derivative_genetic([0, 1], 2)

    def test_node_values_examples(self):
        nodes = [0, 1, 2]
        assert derivative_at_node(nodes, 1, 1) == -6
        assert derivative_at_node(nodes, 0, 1) == 9
        assert derivative_at_node(nodes, 0, 2) == -12
        assert derivative_at_node(nodes, 1, 2) == 6

    def test_top_derivative_is_factorial(self):
        assert derivative_at_node([0, 1, 2, 3], 1, 3) == 24

    def test_repeated_nodes_values_vanish(self):
        b = Fraction(7, 3)
        n = 5
        for m in range(n):
            for s in range(1, n - m):
                assert derivative_at_node([b] * n, m, s).is_zero

    @pytest.mark.parametrize("n", range(2, 7))
    def test_node_values_match_direct_evaluation(self, n):
        for nodes in node_corpus(n, samples=20):
            g = build_recursion(nodes).polynomial
            for m in range(n):
                for s in range(1, n - m + 1):
                    expected = g.derive(s + m).evaluate(nodes[m])
                    assert derivative_at_node(nodes, m, s) == expected

    def test_node_value_index_errors(self):
        with pytest.raises(DomainError, match="Offset"):
            derivative_at_node([0, 1, 2], 1, 3)
        with pytest.raises(DomainError, match="Node index"):
            derivative_at_node([0, 1, 2], 3, 1)

    def test_budget_exceeded(self):
        with pytest.raises(ResourceError, match="degree cap 3") as info:
            build_genetic([0, 1, 2, 3], max_degree=3)
        assert info.value.cap == 3

    def test_budget_override(self):
        construction = GeneticConstruction(max_degree=4)
        assert construction.construct([0, 1, 2, 3]).polynomial == build_recursion([0, 1, 2, 3]).polynomial

    def test_default_cap(self):
        with pytest.raises(ResourceError):
            sharp_bound(list(range(13)), 0)


class TestBounds:
    """Tests for the classical and sharp upper bounds."""

    def test_goncharov_examples(self):
        assert goncharov_bound([0, 1], 2) == pytest.approx(9)
        assert goncharov_bound([0, 1, 2], 0) == pytest.approx(8)
        assert goncharov_bound([Fraction(3, 2)] * 3, Fraction(3, 2)) == 0

    def test_sharp_examples(self):
        b = Fraction(3, 2)
        assert sharp_bound([b] * 3, b) == 0
        assert 0 <= sharp_bound([0, 1], 2) <= goncharov_bound([0, 1], 2)
        assert sharp_bound([0, 1], 2) == pytest.approx(8)
        assert sharp_bound([0, 1, 2], 0) <= 8

    @pytest.mark.parametrize(
        "nodes, z",
        [([1, 1, 1], 3), ([-2], -1), ([Fraction(1, 3)], Fraction(-5, 7)), ([0.5, 0.5], 2.25)],
    )
    def test_sharp_never_exceeds_classical_when_equal(self, nodes, z):
        """Equal nodes or a single node make the two bounds coincide."""
        sharp = sharp_bound(nodes, z)
        classical = goncharov_bound(nodes, z)
        assert sharp <= classical
        assert sharp == pytest.approx(classical)

    def test_single_node_sweep(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            node, z = rng.normal(scale=4, size=2)
            assert sharp_bound([float(node)], float(z)) <= goncharov_bound([float(node)], float(z))

    def test_sharp_is_strictly_smaller(self):
        assert sharp_bound([0, 1, 2], 3) == pytest.approx(108)
        assert goncharov_bound([0, 1, 2], 3) == pytest.approx(125)

    def test_float_nodes_accepted(self):
        assert goncharov_bound([0.0, 1.0], 2.0) == pytest.approx(9)
        assert sharp_bound([0.0, 1.0], 2.0) == pytest.approx(8)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_sandwich(self, n):
        """|G(z)| <= sharp <= classical at random points."""
        rng = np.random.default_rng(77 + n)
        strict = 0
        for nodes in node_corpus(n, samples=20, gaussian=True):
            g = build_recursion(nodes).polynomial
            for _ in range(50):
                z = complex(rng.normal(scale=3), rng.normal(scale=3))
                value = abs(g.evaluate(z))
                sharp = sharp_bound(nodes, z)
                classical = goncharov_bound(nodes, z)
                assert value <= sharp * (1 + 1e-12) + 1e-12
                assert sharp <= classical
                strict += sharp < classical * (1 - 1e-9)
        if n >= 2:
            assert strict > 0


class TestHomogeneity:
    """Tests for scale_nodes and the degree-n homogeneity of G_n."""

    def test_identity_scale(self):
        nodes = [0, Fraction(1, 3), 2]
        assert list(scale_nodes(nodes, 1)) == [GaussianRational.of(z) for z in nodes]

    def test_two_nodes_doubled(self):
        scaled = scale_nodes([0, 1], 2)
        assert list(scaled) == [0, 2]
        assert build_recursion(scaled).polynomial == P("z^2 - 4z")

    def test_repeated_nodes(self):
        scaled = scale_nodes([Fraction(1, 2)] * 3, -4)
        assert build_genetic(scaled).polynomial == Polynomial.from_roots([(-2, 3)])

    def test_zero_scale_rejected(self):
        with pytest.raises(DomainError, match="nonzero"):
            scale_nodes([0, 1], 0)

    @pytest.mark.parametrize("alpha", [Fraction(2, 3), -3, GaussianRational(1, 1)])
    def test_homogeneity(self, alpha):
        for nodes in node_corpus(4, samples=20):
            g = build_interpolation(nodes).polynomial
            assert build_interpolation(scale_nodes(nodes, alpha)).polynomial == g.rescale(alpha)
