"""Tests for CA certificates, filters, the residual objective and the search."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from casearch import (
    CA_CANDIDATE,
    NOT_CA,
    TRIVIAL,
    BatchedLevenbergMarquardt,
    BatchedObjective,
    CandidateStats,
    MultiplicityPattern,
    SearchConfig,
    all_assignments,
    assignment_residual,
    assignment_terms,
    brute_force_minimum,
    candidate_stats,
    certify_ca,
    compositions,
    corollary7_window,
    evaluate_filters,
    feasible_assignments,
    maximal_chain_check,
    normalize_unit_disc,
    pattern_admissible,
    prune_inequalities,
    search,
    shared_gap_family,
    shared_root_counts,
    validate_assignment,
    verify_residual,
)
from casearch.filters import DistinctRootFilter, default_pattern_filters
from casearch.filters.candidate import (
    DistanceRatioFilter,
    FarthestRootFilter,
    PenultimateCountFilter,
    SpanFilter,
    WindowSharedFilter,
)
from casearch.search import CANDIDATES, INFEASIBLE, NO_CANDIDATE, REPORTING
from data.samples import random_rational, random_real_rooted
from polycore import DomainError, GaussianRational, Polynomial, parse_polynomial


def P(text: str) -> Polynomial:
    return parse_polynomial(text)


@pytest.fixture
def quartic():
    """x(x-1)^2(x+2)."""
    return P("x^4 - 3x^2 + 2x")


@pytest.fixture
def trivial_quartic():
    return P("x^4 - 8x^3 + 24x^2 - 32x + 16")


def make_stats(**overrides) -> CandidateStats:
    """Synthetic statistics that pass every filter unless overridden."""
    values = dict(
        n=6, k=5, r=2, r0=1, r1=1, r2=None, r_star=1, r_low=1,
        D=1.0, d=0.5, span=1.5, gap=0.2,
        D_m={2: 0.5, 3: 0.4, 4: 0.3},
        l={0: 4, 1: 3, 2: 1, 3: 1, 4: 1, 5: 0},
        all_shared={},
    )
    values.update(overrides)
    return CandidateStats(**values)


def small_config(degree: int, **overrides) -> SearchConfig:
    values = dict(multistarts=4, max_iterations=25)
    values.update(overrides)
    return SearchConfig(degree=degree, **values)


class TestCertify:
    """Tests for the exact per-order certificate."""

    def test_trivial(self, trivial_quartic):
        cert = certify_ca(trivial_quartic)
        assert cert.verdict == TRIVIAL
        assert cert.missing_orders == []

    def test_cubic_misses_first_order(self):
        cert = certify_ca(P("x^3 - x"))
        assert cert.verdict == NOT_CA
        assert cert.missing_orders == [1]
        assert cert.evidence[1].witness == P("x")

    def test_quartic_misses_second_order(self, quartic):
        cert = certify_ca(quartic)
        assert cert.verdict == NOT_CA
        assert cert.missing_orders == [2]
        assert cert.evidence[0].witness == P("x - 1")

    def test_shared_gap_family_misses_only_first_order(self):
        p = shared_gap_family(1, 1, 1)
        assert p == P("x^4 - 6x^2 + 5x")
        assert certify_ca(p).missing_orders == [1]

    @pytest.mark.parametrize("params", [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 3, 2)])
    def test_family_shares_top_two_orders(self, params):
        p = shared_gap_family(*params)
        cert = certify_ca(p)
        n = p.degree
        shared = {e.order: e.shared for e in cert.evidence}
        assert shared[n - 1] and shared[n - 2]
        assert DistinctRootFilter().rejects(MultiplicityPattern.of([1, 1, 1, 1])) is False

    def test_degree_zero_rejected(self):
        with pytest.raises(DomainError, match="certify_ca"):
            certify_ca(Polynomial.constant(3))

    def test_to_dict(self, quartic):
        data = certify_ca(quartic).to_dict()
        assert data["verdict"] == NOT_CA
        assert [e["shared"] for e in data["evidence"]] == [True, False, True]
        json.dumps(data)


class TestInvariance:
    """certify_ca is unchanged by scaling and translation of the roots."""

    def test_scaling_and_translation(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            p, _ = random_real_rooted(rng, n_max=6, n_min=2)
            alpha = random_rational(rng) or Fraction(1, 3)
            shift = random_rational(rng)
            verdict = certify_ca(p).verdict
            assert certify_ca(p.rescale(alpha)).verdict == verdict
            assert certify_ca(p.shift(shift)).verdict == verdict

    def test_complex_scaling(self, quartic):
        alpha = GaussianRational(Fraction(1, 2), Fraction(3))
        assert certify_ca(quartic.rescale(alpha)).verdict == NOT_CA

    def test_unit_disc_normalization_keeps_verdict(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            p, _ = random_real_rooted(rng, n_max=6, n_min=2)
            scaled, alpha, _ = normalize_unit_disc(p)
            assert alpha > 0
            assert certify_ca(scaled).verdict == certify_ca(p).verdict


class TestNormalizeUnitDisc:
    """Tests for the rational scaling into the unit disc."""

    def test_trivial_quartic(self, trivial_quartic):
        scaled, alpha, roots = normalize_unit_disc(trivial_quartic)
        assert alpha == Fraction(1, 4)
        assert scaled == Polynomial.from_roots([(Fraction(1, 2), 4)])
        assert roots == [GaussianRational.of(Fraction(1, 2))]

    def test_already_inside(self):
        _, alpha, roots = normalize_unit_disc(Polynomial.from_roots([0, Fraction(1, 2), Fraction(-1, 2)]))
        assert alpha == 1
        assert max(abs(complex(z)) for z in roots) < 1

    def test_boundary_roots_are_scaled(self):
        _, alpha, roots = normalize_unit_disc(P("x^3 - x"))
        assert alpha == Fraction(1, 2)
        assert max(abs(complex(z)) for z in roots) == 0.5

    def test_all_zero_roots(self):
        scaled, alpha, _ = normalize_unit_disc(P("x^3"))
        assert alpha == 1
        assert scaled == P("x^3")

    def test_supplied_common_roots(self, quartic):
        _, alpha, roots = normalize_unit_disc(quartic, common_roots=[1])
        assert alpha == Fraction(1, 2)
        assert roots == [GaussianRational.of(Fraction(1, 2))]

    def test_irrational_roots(self):
        _, alpha, roots = normalize_unit_disc(P("x^2 - 2"))
        assert alpha == Fraction(1, 4)
        assert all(abs(complex(getattr(z, "value", z))) < 1 for z in roots)


class TestMaximalChain:
    """Tests for chains of common roots x_nu of f and f^(nu)."""

    def test_trivial_chain_is_stationary(self, trivial_quartic):
        report = maximal_chain_check(trivial_quartic, [2, 2, 2, 2])
        assert report.verdict == "stationary"
        assert report.sign_condition and report.stationary and report.real_rooted
        assert all(report.maximal)

    def test_partial_chain_sign_condition(self, quartic):
        report = maximal_chain_check(quartic, [1, 1])
        assert report.verdict == "partial"
        assert report.sign_condition is True
        assert report.non_increasing is True

    def test_not_a_common_root_is_gated(self, quartic):
        report = maximal_chain_check(quartic, [0, 0])
        assert report.verdict == "gated"
        assert report.hypothesis_ok is False
        assert "f^(1)" in report.note

    def test_complex_point_is_gated(self, quartic):
        report = maximal_chain_check(quartic, [GaussianRational(0, 1)])
        assert report.verdict == "gated"

    def test_chain_too_long(self):
        with pytest.raises(DomainError, match="exceeds degree"):
            maximal_chain_check(P("x^2"), [0, 0, 0])

    def test_no_contradiction_on_random_chains(self):
        """A full chain can only exist for trivial polynomials; it must come out stationary."""
        rng = np.random.default_rng(3)
        for _ in range(20):
            b = random_rational(rng)
            n = int(rng.integers(2, 6))
            p = Polynomial.from_roots([(b, n)])
            assert maximal_chain_check(p, [b] * n).verdict == "stationary"


class TestSharedRootCounts:
    """Tests for the l(m) bookkeeping."""

    def test_quartic(self, quartic):
        counts = shared_root_counts(quartic)
        assert counts.centroid_is_root
        assert counts.l[0] == 2
        assert counts.l[1] == 1
        assert counts.l[2] == 0
        assert counts.l[3] == 0
        assert counts.zero_pairs == [2]

    def test_cubic_centroid_excluded(self):
        counts = shared_root_counts(P("x^3 - x"))
        assert counts.l[2] == 0
        assert counts.l[0] == 2

    def test_counts_bounded(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            p, roots = random_real_rooted(rng, n_max=7, n_min=2)
            counts = shared_root_counts(p)
            for m, value in counts.l.items():
                assert 0 <= value <= p.degree - m + (0 if counts.centroid_is_root else 1)

    def test_trivial_reported(self, trivial_quartic):
        counts = shared_root_counts(trivial_quartic)
        assert counts.k == 1
        assert counts.to_dict()["l"]["0"] == 0


class TestPatterns:
    """Tests for compositions, pattern filters and the window."""

    def test_compositions_order(self):
        assert [p.multiplicities for p in compositions(3)] == [(3,), (1, 2), (2, 1), (1, 1, 1)]

    @pytest.mark.parametrize("n", [1, 4, 7])
    def test_composition_count(self, n):
        assert len(list(compositions(n))) == 2 ** (n - 1)

    def test_bad_degree(self):
        with pytest.raises(DomainError):
            list(compositions(0))

    def test_two_roots_rejected(self):
        assert pattern_admissible((3, 3)) == (False, "Corollary 11")

    def test_five_roots_pass(self):
        assert pattern_admissible((2, 2, 1, 1, 1)) == (True, None)

    def test_trivial_class(self):
        assert pattern_admissible((4,)) == (False, "trivial class")

    def test_multiplicity_cap(self):
        assert pattern_admissible((1, 5)) == (False, "Corollary 3")

    def test_four_roots_toggle(self):
        assert pattern_admissible((1, 1, 1, 1)) == (True, None)
        filters = default_pattern_filters(trust_four_roots=True)
        assert pattern_admissible((1, 1, 1, 1), filters) == (False, "Corollary 11")

    def test_empty_window(self):
        assert corollary7_window((3, 3, 2, 2, 2)) == []

    def test_window_needs_double_roots(self):
        assert corollary7_window((1, 2, 2, 2, 2, 2, 2, 2, 2)) == []
        assert corollary7_window((2,) * 9) == [2, 3, 4]

    def test_pattern_validation(self):
        with pytest.raises(DomainError, match="positive"):
            MultiplicityPattern((2, 0))


class TestCandidateFilters:
    """Tests for the necessary conditions on candidate statistics."""

    def test_neutral_stats_pass(self):
        assert prune_inequalities(make_stats()) == (False, None)

    def test_span_filter(self):
        stats = make_stats(r_star=3, span=2.0)
        assert SpanFilter().rejects(stats) is True
        assert prune_inequalities(stats) == (True, "Proposition 3")

    def test_farthest_root_filter(self):
        stats = make_stats(r2=1, gap=1.0, D=0.4, d=0.3, D_m={2: 0.3})
        assert FarthestRootFilter().rejects(stats) is True
        assert FarthestRootFilter().rejects(make_stats(r2=1)) is False
        assert FarthestRootFilter().rejects(make_stats()) is None

    def test_distance_ratio_filter(self):
        stats = make_stats(n=17, k=16, r=2, r0=2, d=1.0, D=1.0)
        assert stats.window == [2, 3]
        assert DistanceRatioFilter().rejects(stats) is True
        assert DistanceRatioFilter().rejects(make_stats(n=17, k=16, r=2, r0=2, d=0.5, D=1.0)) is False
        assert DistanceRatioFilter().rejects(make_stats()) is None

    def test_window_shared_filter(self):
        assert WindowSharedFilter().rejects(make_stats(n=13, r=2, r0=2, all_shared={2: True})) is True
        assert WindowSharedFilter().rejects(make_stats(n=13, r=2, r0=2, all_shared={2: False})) is False
        assert WindowSharedFilter().rejects(make_stats()) is None

    def test_penultimate_count_filter(self):
        assert PenultimateCountFilter().rejects(make_stats(span=2.0)) is False
        stats = make_stats(r_star=2, span=2.0, l={0: 4, 1: 3, 2: 1, 3: 1, 4: 3, 5: 0})
        assert PenultimateCountFilter().rejects(stats) is True

    def test_consecutive_zero_counts(self):
        stats = make_stats(l={0: 4, 1: 3, 2: 0, 3: 0, 4: 1, 5: 0})
        assert prune_inequalities(stats) == (True, "Lemma 11")

    def test_missing_centroid_skips_count_filters(self):
        verdicts = evaluate_filters(make_stats(r1=None))
        for citation in ("Lemma 11", "Proposition 3", "Proposition 4", "Eq. (43)", "Eq. (45)"):
            assert verdicts[citation] is None

    def test_stats_from_quartic(self, quartic):
        stats = CandidateStats.from_roots((1, 1, 2), (-2.0, 0.0, 1.0))
        assert stats.r1 == 1
        assert stats.D == pytest.approx(2.0)
        assert stats.d == pytest.approx(1.0)
        assert stats.r_star == 1 and stats.r_low == 2
        assert stats.span == pytest.approx(3.0)
        assert stats.gap == pytest.approx(math.sqrt(0.5))
        assert stats.r2 is None
        assert stats.l[0] == 2 and stats.l[1] == 1 and stats.l[2] == 0
        assert stats.D_m[2] == pytest.approx(math.sqrt(0.5))
        assert stats.all_shared[2] is False
        exact = candidate_stats(quartic)
        assert exact.l == stats.l
        assert exact.D == pytest.approx(stats.D)

    def test_stats_from_family(self):
        stats = candidate_stats(shared_gap_family(1, 1, 1))
        assert stats.r1 == 1
        assert stats.r2 == 1
        assert stats.gap == pytest.approx(1.0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="roots"):
            CandidateStats.from_roots((1, 2), (0.0, 1.0, 2.0))


class TestAssignments:
    """Tests for feasible assignment enumeration."""

    @pytest.mark.parametrize("pattern", [(1, 1), (2, 1), (1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 1, 1), (1, 2, 2, 1)])
    def test_infeasible_patterns(self, pattern):
        assert list(feasible_assignments(pattern)) == []

    def test_alternating_assignments(self):
        found = set(feasible_assignments((2, 1, 1, 2)))
        assert found == {(0, 1, 2, 1, 2), (0, 2, 1, 2, 1)}
        for assignment in found:
            validate_assignment((2, 1, 1, 2), assignment)

    def test_complex_mode(self):
        assert list(feasible_assignments((2, 1), complex_roots=True)) == [(0, 1)]
        assert list(feasible_assignments((1, 1), complex_roots=True)) == []

    def test_all_assignments_count(self):
        assert len(list(all_assignments((2, 1, 1, 2)))) == 4 ** 4

    def test_validation_errors(self):
        with pytest.raises(DomainError, match="entries"):
            validate_assignment((2, 1, 1, 2), (0, 1))
        with pytest.raises(DomainError, match="cannot be a root"):
            validate_assignment((2, 1, 1, 2), (0, 0, 1, 2, 1))
        with pytest.raises(DomainError, match="simple"):
            validate_assignment((2, 1, 1, 2), (0, 1, 1, 2, 1))


class TestResidual:
    """Tests for the CA residual."""

    def test_cubic_example(self):
        assert assignment_residual((2, 1), (0.0, 1.0), (0, 0), strict=False) == pytest.approx(4.0)

    def test_cubic_example_rejected_when_strict(self):
        with pytest.raises(DomainError):
            assignment_residual((2, 1), (0.0, 1.0), (0, 0))

    def test_quartic_witness_term(self):
        terms = assignment_terms((1, 1, 2), (-2.0, 0.0, 1.0), (2, 1, 1))
        assert terms[0] == 0.0
        assert assignment_residual((1, 1, 2), (-2.0, 0.0, 1.0), (2, 1, 1), strict=False) == pytest.approx(36.0)

    def test_roots_must_increase(self):
        with pytest.raises(DomainError, match="increasing"):
            assignment_residual((1, 1), (1.0, 0.0), (0,), strict=False)

    def test_limit_near_trivial_class(self):
        values = [assignment_residual((1, 1), (0.0, eps), (0,), strict=False) for eps in (1e-1, 1e-2, 1e-3)]
        assert values == pytest.approx([1e-2, 1e-4, 1e-6])

    def test_high_precision_agrees(self):
        lam = (0.0, 0.3, 0.7, 1.0)
        value = assignment_residual((2, 1, 1, 2), lam, (0, 1, 2, 1, 2))
        assert verify_residual((2, 1, 1, 2), lam, (0, 1, 2, 1, 2)) == pytest.approx(value, rel=1e-9)

    def test_batched_matches_direct(self):
        pattern = MultiplicityPattern.of((2, 1, 1, 2))
        objective = BatchedObjective(pattern)
        x = objective.starts(np.random.default_rng(0), 3)
        rows = np.array([[0, 1, 2, 1, 2]] * 3)
        values = objective(x, rows)
        lam = objective.roots(x)
        for i in range(3):
            direct = assignment_terms(pattern, lam[i], rows[i]) / objective.norms
            assert values[i] == pytest.approx(direct)
            assert lam[i][0] == 0.0 and lam[i][-1] == 1.0
            assert np.all(np.diff(lam[i]) > 0)

    def test_parameter_round_trip(self):
        objective = BatchedObjective((1, 2, 1, 1))
        lam = np.array([[0.0, 0.25, 0.6, 1.0]])
        assert objective.roots(objective.parameters(lam)) == pytest.approx(lam)


class TestOptimizer:
    """Tests for the batched Levenberg-Marquardt solver."""

    def test_solves_independent_rows(self):
        def residuals(x, rows):
            return np.stack([x[:, 0] ** 2 - rows[:, 0], x[:, 0] * x[:, 1] - 1.0], axis=1)

        rows = np.array([[2.0], [9.0], [4.0]])
        result = BatchedLevenbergMarquardt(max_iterations=100).minimize(residuals, np.ones((3, 2)), rows)
        assert result.cost == pytest.approx(np.zeros(3), abs=1e-20)
        assert np.abs(result.x[:, 0]) == pytest.approx(np.sqrt(rows[:, 0]), rel=1e-8)

    def test_no_parameters(self):
        result = BatchedLevenbergMarquardt().minimize(lambda x, rows: rows, np.zeros((2, 0)), np.ones((2, 1)))
        assert list(result.cost) == [1.0, 1.0]


class TestSearch:
    """Tests for the pattern search and its report."""

    def test_degree_three(self):
        report = search(SearchConfig(degree=3))
        assert report.verdict == NO_CANDIDATE
        assert report.exit_code == 0
        assert len(report.records) == 4
        assert all(not r.searched for r in report.records)

    def test_degree_four(self):
        report = search(SearchConfig(degree=4, seed=7))
        assert report.verdict == NO_CANDIDATE
        assert report.exit_code == 0
        pruned = {str(r.pattern): r.pruned_by for r in report.records}
        assert pruned["(1,1,1,1)"] == INFEASIBLE
        assert pruned["(2,2)"] == "Corollary 11"

    def test_degree_five_without_filters(self):
        report = search(small_config(5, use_pattern_filters=False))
        assert report.verdict == NO_CANDIDATE
        searched = [r for r in report.records if r.searched]
        assert searched
        for record in searched:
            assert record.best_residual > 1e-16
            assert len(record.minimizer_roots) == record.pattern.k

    def test_degree_one_is_trivial(self):
        report = search(SearchConfig(degree=1))
        assert [r.pruned_by for r in report.records] == ["trivial class"]
        assert report.exit_code == 0

    def test_reporting_mode(self):
        report = search(small_config(5, theta=math.inf, use_pattern_filters=False))
        assert report.verdict == REPORTING
        assert report.candidates == []
        assert report.exit_code == 0
        assert all(r.best_residual is not None for r in report.records if r.searched)
        assert json.loads(report.to_json())["config"]["theta"] == "inf"

    def test_verification_pass(self):
        report = search(small_config(5, theta=1e3, use_pattern_filters=False))
        for record in report.records:
            if record.searched and record.best_residual < 1e3:
                assert record.verified_residual == pytest.approx(record.best_residual, rel=1e-6)
                assert record.filter_verdicts or not record.candidate
        assert report.exit_code == (2 if report.candidates else 0)
        assert report.verdict == (CANDIDATES if report.candidates else NO_CANDIDATE)

    def test_deterministic(self):
        first = search(small_config(5, seed=7, use_pattern_filters=False)).to_json()
        second = search(small_config(5, seed=7, use_pattern_filters=False)).to_json()
        assert first == second

    def test_threads_do_not_change_report(self):
        single = search(small_config(5, seed=2, use_pattern_filters=False)).to_json()
        pooled = search(small_config(5, seed=2, use_pattern_filters=False, threads=3)).to_json()
        assert single == pooled

    def test_budget_marks_incomplete(self):
        report = search(small_config(5, use_pattern_filters=False, assignment_budget=1))
        assert not report.complete
        assert report.exit_code == 1

    def test_complex_mode(self):
        report = search(small_config(4, complex_roots=True))
        assert report.verdict == NO_CANDIDATE
        assert any(r.searched for r in report.records)

    def test_tabular_summary(self):
        report = search(small_config(5, use_pattern_filters=False))
        df = report.to_dataframe()
        assert len(df) == 16
        summary = report.summarize()
        assert summary["patterns"] == 16
        assert summary["pruned"] + summary["searched"] == 16
        assert summary["candidates"] == 0

    @pytest.mark.parametrize(
        "overrides, message",
        [
            ({"degree": 0}, "Degree"),
            ({"degree": 3, "theta": 0.0}, "theta"),
            ({"degree": 6, "complex_roots": True}, "capped"),
            ({"degree": 3, "multistarts": 0}, "multistart"),
        ],
    )
    def test_config_validation(self, overrides, message):
        with pytest.raises(DomainError, match=message):
            SearchConfig(**overrides)

    @pytest.mark.slow
    @pytest.mark.parametrize("degree", [6, 7])
    def test_no_candidate_up_to_seven(self, degree):
        report = search(SearchConfig(degree=degree, seed=1))
        assert report.verdict == NO_CANDIDATE
        assert report.exit_code == 0


class TestBruteForceOracle:
    """Every pruned pattern at n <= 5 has no zero-residual witness under any map."""

    @pytest.mark.parametrize("degree", [3, 4, 5])
    def test_pruned_patterns_confirmed(self, degree):
        config = small_config(degree)
        report = search(config)
        for record in report.records:
            if record.pattern.is_trivial or record.searched:
                continue
            oracle = brute_force_minimum(record.pattern, config)
            assert oracle.assignments == record.pattern.k ** (degree - record.pattern.r)
            assert oracle.best_residual > config.theta, str(record.pattern)

    def test_oracle_not_worse_than_search(self):
        config = small_config(5, use_pattern_filters=False)
        for record in search(config).records:
            if record.searched:
                oracle = brute_force_minimum(record.pattern, config)
                assert oracle.best_residual <= record.best_residual * (1 + 1e-6)

    def test_trivial_pattern_rejected(self):
        with pytest.raises(DomainError, match="trivial"):
            brute_force_minimum((3,), small_config(3))
