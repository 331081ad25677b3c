"""Bound formulas: frozen values, cross-validation against the defining
constructions, ordering invariants."""

import random
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

import pytest

from chordalbounds import (
    DomainError,
    build_graph,
    chordal_lower,
    chordal_upper,
    classical_bonferroni,
    clique_sieve_sum,
    complete_graph,
    counterexample_family,
    counterexample_graph,
    cycle_graph,
    edgeless_graph,
    from_outcomes,
    generalized_lower,
    hunter_lower_tree,
    hunter_upper_tree,
    intersection_prob,
    kwerel2_lower,
    kwerel_lower,
    kwerel_upper,
    path_event_system,
    path_graph,
    path_lower,
    seneta_lower,
    seneta_upper,
    tree_graph,
    union_prob_exact,
)
from chordalbounds.poly import P, Polynomial
from chordalbounds.reliability import BRIDGE_PATH_ORDER, bridge_network
from chordalbounds.values import RATIONAL

from helpers import random_chordal_graph, random_rational_system, random_real_system

EQ_EXACT = Polynomial((0, 0, 2, 2, -5, 2))
EQ_TREE = Polynomial((0, 0, 1, 1, -1, 0, Fraction(-1, 2)))
EQ_PATH_AVG = Polynomial((0, 0, 1, 1, Fraction(-5, 4), 0, Fraction(-1, 4)))
EQ_DEPTH1 = Polynomial((0, 0, 2, 2, -5, 0, -1))


def bridge_system():
    return path_event_system(bridge_network(), paths=BRIDGE_PATH_ORDER)


def identical_events_system(n, q=Fraction(2, 5)):
    return from_outcomes([q, 1 - q], [[0]] * n, backend=RATIONAL)


def join_pair_graph(n, j, k):
    """Complete graph on {j, k} joined to isolated vertices elsewhere."""
    edges = set()
    if j != k:
        edges.add((min(j, k), max(j, k)))
    for i in range(n):
        if i not in (j, k):
            edges.add((min(i, j), max(i, j)))
            edges.add((min(i, k), max(i, k)))
    return build_graph(n, sorted(edges))


def join_set_graph(n, members):
    """Complete graph on `members` joined to isolated vertices elsewhere."""
    members = sorted(members)
    edges = list(combinations(members, 2))
    others = [i for i in range(n) if i not in set(members)]
    edges += [(min(i, m), max(i, m)) for i in others for m in members]
    return build_graph(n, sorted(set(edges)))


class TestClassicalBonferroni:
    def test_bridge_depth1_lower(self):
        assert classical_bonferroni(bridge_system(), 1, "lower").value == EQ_DEPTH1

    def test_full_depth_is_exact(self):
        # lower includes every subset once 2r >= n; upper needs 2r - 1 >= n
        rng = random.Random(31)
        for _ in range(20):
            sys_ = random_real_system(rng, rng.randint(1, 5), max_outcomes=32)
            n = sys_.event_count
            exact = union_prob_exact(sys_)
            lower = classical_bonferroni(sys_, (n + 1) // 2, "lower").value
            upper = classical_bonferroni(sys_, n // 2 + 1, "upper").value
            assert lower == pytest.approx(exact, abs=1e-9)
            assert upper == pytest.approx(exact, abs=1e-9)

    def test_single_event_upper(self):
        sys_ = from_outcomes([0.3, 0.7], [[0]])
        report = classical_bonferroni(sys_, 1, "upper")
        assert report.value == pytest.approx(0.3)
        assert report.direction == "upper" and report.truncation == 1

    def test_invalid_arguments(self):
        sys_ = from_outcomes([1.0], [[0]])
        with pytest.raises(DomainError):
            classical_bonferroni(sys_, 0, "lower")
        with pytest.raises(DomainError):
            classical_bonferroni(sys_, 1, "sideways")


class TestChordalUpper:
    def test_edgeless_is_union_bound(self):
        rng = random.Random(37)
        for _ in range(10):
            n = rng.randint(1, 5)
            sys_ = random_real_system(rng, n, max_outcomes=32)
            expected = sum(intersection_prob(sys_, (v,)) for v in range(n))
            assert chordal_upper(sys_, edgeless_graph(n)).value == pytest.approx(expected)

    def test_complete_is_exact(self):
        rng = random.Random(41)
        for _ in range(10):
            n = rng.randint(1, 6)
            sys_ = random_real_system(rng, n, max_outcomes=32)
            value = chordal_upper(sys_, complete_graph(n)).value
            assert value == pytest.approx(union_prob_exact(sys_), abs=1e-9)

    def test_tree_is_hunter_bracket(self):
        rng = random.Random(43)
        sys_ = random_real_system(rng, 4, max_outcomes=32)
        tree = tree_graph(4, [(0, 1), (1, 2), (1, 3)])
        assert chordal_upper(sys_, tree).value == pytest.approx(
            hunter_upper_tree(sys_, tree).value
        )

    def test_non_chordal_rejected_without_override(self):
        sys_ = from_outcomes([1.0], [[0]] * 4)
        with pytest.raises(DomainError, match="not chordal"):
            chordal_upper(sys_, cycle_graph(4))
        chordal_upper(sys_, cycle_graph(4), unchecked=True)

    def test_vertex_event_mismatch(self):
        sys_ = from_outcomes([1.0], [[0]])
        with pytest.raises(DomainError):
            chordal_upper(sys_, path_graph(3))


class TestChordalLower:
    def test_complete_is_exact(self):
        rng = random.Random(47)
        for _ in range(10):
            n = rng.randint(1, 6)
            sys_ = random_real_system(rng, n, max_outcomes=32)
            report = chordal_lower(sys_, complete_graph(n))
            assert report.alpha_used == 1
            assert report.value == pytest.approx(union_prob_exact(sys_), abs=1e-9)

    def test_counterexample_override_gives_four_thirds(self):
        sys_ = from_outcomes([Fraction(1)], [[0]] * 8, backend=RATIONAL)
        report = chordal_lower(sys_, counterexample_graph(), unchecked=True)
        assert report.value == Fraction(4, 3)

    def test_family_override_values(self):
        for k in (3, 5):
            g = counterexample_family(k)
            sys_ = from_outcomes([Fraction(1)], [[0]] * g.vertex_count, backend=RATIONAL)
            report = chordal_lower(sys_, g, unchecked=True)
            assert report.value == Fraction(1 + 2**k, 3)

    def test_two_independent_events_on_an_edge(self):
        sys_ = bernoulli_product_half()
        report = chordal_lower(sys_, complete_graph(2))
        assert report.value == pytest.approx(0.75)

    def test_non_negative_untruncated(self):
        rng = random.Random(53)
        for _ in range(60):
            n = rng.randint(1, 7)
            g = random_chordal_graph(rng, n)
            sys_ = random_real_system(rng, n, max_outcomes=64)
            assert chordal_lower(sys_, g).value >= -1e-9

    def test_sharpened_dominates_and_stays_valid(self):
        rng = random.Random(59)
        for _ in range(60):
            n = rng.randint(1, 7)
            g = random_chordal_graph(rng, n)
            sys_ = random_real_system(rng, n, max_outcomes=64)
            plain = chordal_lower(sys_, g).value
            sharp = chordal_lower(sys_, g, sharpened=True).value
            assert sharp >= plain - 1e-9
            assert sharp <= union_prob_exact(sys_) + 1e-9


def bernoulli_product_half():
    from chordalbounds import bernoulli_product

    return bernoulli_product([0.5, 0.5], [[0], [1]])


class TestHunterTree:
    def test_bridge_demo_path_order(self):
        assert hunter_lower_tree(bridge_system(), path_graph(4)).value == EQ_TREE

    def test_star_formula(self):
        rng = random.Random(61)
        n = 5
        sys_ = random_real_system(rng, n, max_outcomes=32)
        star = build_graph(n, [(0, i) for i in range(1, n)])
        bracket = sum(intersection_prob(sys_, (v,)) for v in range(n)) - sum(
            intersection_prob(sys_, (0, i)) for i in range(1, n)
        )
        report = hunter_lower_tree(sys_, star)
        assert report.alpha_used == n - 1
        assert report.value == pytest.approx(bracket / (n - 1))

    def test_matches_chordal_lower_on_random_trees(self):
        rng = random.Random(67)
        for _ in range(40):
            n = rng.randint(1, 8)
            edges = [(rng.randrange(v), v) for v in range(1, n)]
            tree = tree_graph(n, edges)
            sys_ = random_real_system(rng, n, max_outcomes=32)
            assert hunter_lower_tree(sys_, tree).value == pytest.approx(
                chordal_lower(sys_, tree).value, abs=1e-12
            )

    def test_rejects_non_tree(self):
        sys_ = from_outcomes([1.0], [[0]] * 3)
        with pytest.raises(DomainError, match="not a tree"):
            hunter_lower_tree(sys_, cycle_graph(3))
        with pytest.raises(DomainError, match="not a tree"):
            hunter_upper_tree(sys_, edgeless_graph(3))


class TestPathLower:
    def test_matches_hunter_on_the_path(self):
        sys_ = bridge_system()
        assert path_lower(sys_, (0, 1, 2, 3)).value == hunter_lower_tree(
            sys_, path_graph(4)
        ).value

    def test_single_event(self):
        sys_ = from_outcomes([0.3, 0.7], [[0]])
        assert path_lower(sys_, (0,)).value == pytest.approx(0.3)

    def test_two_independent_halves(self):
        assert path_lower(bernoulli_product_half(), (0, 1)).value == pytest.approx(0.75)

    def test_rejects_non_permutation(self):
        sys_ = from_outcomes([1.0], [[0]] * 3)
        with pytest.raises(DomainError):
            path_lower(sys_, (0, 1, 1))


class TestKwerel:
    def test_bridge_lower_value(self):
        assert kwerel_lower(bridge_system()).value == EQ_PATH_AVG

    def test_single_event(self):
        sys_ = from_outcomes([0.3, 0.7], [[0]])
        assert kwerel_lower(sys_).value == pytest.approx(0.3)
        assert kwerel_upper(sys_).value == pytest.approx(0.3)

    def test_lower_is_mean_of_path_bounds(self):
        rng = random.Random(71)
        for _ in range(10):
            n = rng.randint(2, 5)
            sys_ = random_rational_system(rng, n)
            orders = [p for p in permutations(range(n)) if p[0] < p[-1]]
            mean = sum(path_lower(sys_, o).value for o in orders) / len(orders)
            assert kwerel_lower(sys_).value == mean

    def test_upper_identical_events_collapse(self):
        q = Fraction(2, 5)
        sys_ = identical_events_system(4, q)
        assert kwerel_upper(sys_).value == q

    def test_upper_bridge_value(self):
        expected = Polynomial((0, 0, 2, 2, Fraction(-5, 2), 0, Fraction(-1, 2)))
        assert kwerel_upper(bridge_system()).value == expected


class TestSeneta:
    def test_equal_indices_reduce_to_star_denominator(self):
        rng = random.Random(73)
        n = 4
        sys_ = random_rational_system(rng, n)
        j = 2
        report = seneta_lower(sys_, j, j)
        assert report.alpha_used == n - 1
        bracket = sum(intersection_prob(sys_, (v,)) for v in range(n)) - sum(
            intersection_prob(sys_, (i, j)) for i in range(n) if i != j
        )
        assert report.value == bracket / (n - 1)

    def test_matches_chordal_lower_on_join_graph(self):
        rng = random.Random(79)
        for _ in range(8):
            n = rng.randint(3, 6)
            sys_ = random_rational_system(rng, n)
            for j in range(n):
                for k in range(n):
                    expected = chordal_lower(sys_, join_pair_graph(n, j, k)).value
                    assert seneta_lower(sys_, j, k).value == expected

    def test_identical_events_three(self):
        q = Fraction(1, 3)
        sys_ = identical_events_system(3, q)
        assert seneta_lower(sys_, 0, 1).value == q

    def test_too_few_events(self):
        sys_ = from_outcomes([1.0], [[0]] * 2)
        with pytest.raises(DomainError):
            seneta_lower(sys_, 0, 1)
        seneta_lower(sys_, 0, 0)  # delta = 1 only needs n > 1

    def test_upper_is_bracket(self):
        rng = random.Random(83)
        n = 4
        sys_ = random_rational_system(rng, n)
        assert seneta_upper(sys_, 0, 1).value == seneta_lower(sys_, 0, 1).value * (n - 2)


class TestKwerel2:
    def test_mean_of_seneta_over_ordered_pairs(self):
        rng = random.Random(89)
        for _ in range(8):
            n = rng.randint(3, 6)
            sys_ = random_rational_system(rng, n)
            values = [
                seneta_lower(sys_, j, k).value
                for j in range(n)
                for k in range(n)
                if j != k
            ]
            assert kwerel2_lower(sys_).value == sum(values) / len(values)

    def test_equals_generalized_order_two(self):
        rng = random.Random(97)
        for _ in range(8):
            n = rng.randint(3, 6)
            sys_ = random_rational_system(rng, n)
            assert kwerel2_lower(sys_).value == generalized_lower(sys_, 2).value

    def test_identical_events_three(self):
        q = Fraction(1, 4)
        assert kwerel2_lower(identical_events_system(3, q)).value == q

    def test_needs_three_events(self):
        sys_ = from_outcomes([1.0], [[0]] * 2)
        with pytest.raises(DomainError):
            kwerel2_lower(sys_)


class TestGeneralizedLower:
    def test_order_zero_is_singleton_average(self):
        rng = random.Random(101)
        n = 5
        sys_ = random_rational_system(rng, n)
        expected = sum(intersection_prob(sys_, (v,)) for v in range(n)) / n
        assert generalized_lower(sys_, 0).value == expected

    def test_matches_average_over_join_graphs(self):
        rng = random.Random(103)
        for _ in range(5):
            n = rng.randint(2, 6)
            sys_ = random_rational_system(rng, n)
            for m in range(n):
                values = [
                    chordal_lower(sys_, join_set_graph(n, members)).value
                    for members in combinations(range(n), m)
                ]
                mean = sum(values) / comb(n, m)
                assert generalized_lower(sys_, m).value == mean

    def test_order_out_of_range(self):
        sys_ = from_outcomes([1.0], [[0]] * 3)
        with pytest.raises(DomainError):
            generalized_lower(sys_, 3)
        with pytest.raises(DomainError):
            generalized_lower(sys_, -1)


class TestOrderingInvariants:
    def test_truncation_monotonicity_of_raw_sums(self):
        rng = random.Random(107)
        for _ in range(40):
            n = rng.randint(1, 7)
            g = random_chordal_graph(rng, n)
            sys_ = random_real_system(rng, n, max_outcomes=64)
            full = clique_sieve_sum(sys_, g)
            for r in range(1, n + 1):
                truncated = clique_sieve_sum(sys_, g, size_cap=2 * r)
                assert full >= truncated - 1e-9

    def test_truncated_bounds_stabilize(self):
        rng = random.Random(109)
        for _ in range(20):
            n = rng.randint(1, 6)
            g = random_chordal_graph(rng, n)
            sys_ = random_real_system(rng, n, max_outcomes=32)
            r_low = (n + 1) // 2      # size cap 2r >= n
            r_up = n // 2 + 1         # size cap 2r - 1 >= n
            assert chordal_upper(sys_, g, r=r_up).value == chordal_upper(sys_, g).value
            assert chordal_lower(sys_, g, r=r_low).value == chordal_lower(sys_, g).value

    def test_complete_graph_truncations_match_classical(self):
        rng = random.Random(113)
        for _ in range(15):
            n = rng.randint(1, 6)
            sys_ = random_real_system(rng, n, max_outcomes=32)
            g = complete_graph(n)
            for r in range(1, (n + 1) // 2 + 1):
                assert chordal_upper(sys_, g, r=r).value == pytest.approx(
                    classical_bonferroni(sys_, r, "upper").value, abs=1e-12
                )
                assert chordal_lower(sys_, g, r=r).value == pytest.approx(
                    classical_bonferroni(sys_, r, "lower").value, abs=1e-12
                )

    def test_sandwich_sample(self):
        rng = random.Random(127)
        for _ in range(60):
            n = rng.randint(1, 7)
            g = random_chordal_graph(rng, n)
            sys_ = random_real_system(rng, n, max_outcomes=64)
            exact = union_prob_exact(sys_)
            upper_full = chordal_upper(sys_, g).value
            lower_full = chordal_lower(sys_, g).value
            assert lower_full <= exact + 1e-9
            assert exact <= upper_full + 1e-9
            for r in range(1, (n + 1) // 2 + 1):
                assert chordal_lower(sys_, g, r=r).value <= lower_full + 1e-9
                assert upper_full <= chordal_upper(sys_, g, r=r).value + 1e-9
