"""Voting rules: polar comparison family, composition, extremes, interiors."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarline.generators import gen_random
from polarline.model import Election, derive_profile, make_metric
from polarline.ordering import AlternativeOrder, majority_order, pareto_dominated
from polarline.rules import (
    CommitteeSizeMismatch,
    CommitteeSizeTooLarge,
    at_least_share_threshold,
    below_share_threshold,
    compose,
    distortion_bound,
    interior_committee,
    k_extremes,
    polar_general,
    polar_k2,
    polar_k3,
    rule_by_id,
    top_of_majority,
    within_sqrt2_bound,
)


def unanimous(ranking, n, k):
    return Election(n, tuple(sorted(ranking)), k, (tuple(ranking),) * n)


def k2_paired_blocks_profile(n1=5, n2=7):
    rankings = (("a'", "b'", "a", "b"),) * n1 + (("a", "b", "a'", "b'"),) * n2
    return Election(n1 + n2, ("a", "a'", "b", "b'"), 2, rankings)


def test_share_threshold_exact_comparisons():
    # n/(1+sqrt(2)) for n=12 is about 4.97
    assert below_share_threshold(4, 12)
    assert not below_share_threshold(5, 12)
    assert at_least_share_threshold(5, 12)
    assert not at_least_share_threshold(4, 12)
    assert below_share_threshold(0, 12)


def test_share_threshold_convergent_boundary():
    # continued-fraction convergents of sqrt(2) land one integer unit away
    # from the threshold: 169 vs 408/(1+sqrt(2)) = 168.9996...
    assert not below_share_threshold(169, 169 + 239)
    assert below_share_threshold(168, 169 + 239)
    assert not below_share_threshold(985, 985 + 1393)
    assert below_share_threshold(984, 985 + 1393)


def test_polar_k2_unanimous():
    e = unanimous(("a", "b", "c"), 5, 2)
    assert polar_k2(e) == {"a", "b"}


def test_polar_k2_paired_blocks_selects_opposite_pair():
    # 5 voters rank the -1 pair first, 7 the +1 pair; the far-side flank of
    # the winner has 5 > 12/(1+sqrt(2)) supporters while the runner-up has 0
    e = k2_paired_blocks_profile()
    assert polar_k2(e) == {"a", "a'"}


def test_polar_k2_weighted_keeps_top_two():
    # 3 voters at 0.1, 2 at -0.9; flank support 2 <= 5/(1+sqrt(2))
    pos = [Fraction(1, 10)] * 3 + [Fraction(-9, 10)] * 2
    d = make_metric(pos, {"a": 0, "b": 1, "c": -1})
    e = derive_profile(d, 2)
    maj = majority_order(e)
    assert maj.sequence[:2] == ("a", "b")
    assert polar_k2(e) == {"a", "b"}


def test_polar_k2_wrong_k():
    with pytest.raises(CommitteeSizeMismatch):
        polar_k2(unanimous(("a", "b"), 2, 1))


def k3_fixture(counts=(4, 3, 3)):
    # c at -2, a at 0, b1 at 1, b2 at 3; voter blocks at 0.2, 2.5, -1.5
    w1, w2, w3 = counts
    pos = [Fraction(1, 5)] * w1 + [Fraction(5, 2)] * w2 + [Fraction(-3, 2)] * w3
    d = make_metric(pos, {"c": -2, "a": 0, "b1": 1, "b2": 3})
    return derive_profile(d, 3), d


def test_polar_k3_prefers_far_side_when_supported():
    e, _ = k3_fixture((4, 3, 3))
    maj = majority_order(e)
    assert maj.sequence == ("a", "b1", "c", "b2")
    assert maj.margin("c", "b2") == 7  # 7 >= 2n/5 = 4
    assert polar_k3(e) == {"a", "b1", "c"}


def test_polar_k3_keeps_near_side_when_unsupported():
    e, _ = k3_fixture((2, 7, 1))
    assert polar_k3(e) == {"a", "b1", "b2"}


def test_polar_k3_unanimous_missing_flank():
    e = unanimous(("a", "b", "c"), 4, 3)
    assert polar_k3(e) == {"a", "b", "c"}


def test_compose_two_disjoint_pairs():
    e, _ = gen_random(9, 8, 4, seed=7)
    committee = compose(e, [(polar_k2, 2, 2)])
    assert len(committee) == 4
    first = polar_k2(e.with_committee_size(2))
    assert first <= committee


def test_compose_single_phase_is_plain_rule():
    e, _ = gen_random(9, 6, 3, seed=11)
    assert compose(e, [(polar_k3, 3, 1)]) == polar_k3(e)


def test_compose_phase_order_and_disjointness():
    e, _ = gen_random(13, 9, 7, seed=3)
    committee = compose(e, [(polar_k2, 2, 2), (polar_k3, 3, 1)])
    assert len(committee) == 7
    pair1 = polar_k2(e.with_committee_size(2))
    assert pair1 <= committee


def test_polar_general_dispatch():
    for k, phases in ((1, 1), (2, 2), (3, 3)):
        e, _ = gen_random(7, 6, k, seed=5)
        assert len(polar_general(e)) == k
    e, _ = gen_random(10, 9, 6, seed=5)
    assert len(polar_general(e)) == 6
    e, _ = gen_random(10, 9, 5, seed=6)
    assert len(polar_general(e)) == 5


def test_polar_general_k1_is_majority_top():
    e, _ = gen_random(9, 5, 1, seed=21)
    assert polar_general(e) == {majority_order(e).sequence[0]}
    assert top_of_majority(e) == polar_general(e)


def test_k_extremes_basic():
    order = AlternativeOrder(("a", "b", "c"))
    assert k_extremes(order, 2) == {"a", "c"}
    assert k_extremes(order, 3) == {"a", "b", "c"}


def test_k_extremes_floor_ceil_split():
    order = AlternativeOrder(("a", "b", "c", "d", "e"))
    assert k_extremes(order, 3) == {"a", "d", "e"}


def test_interior_committee_window():
    order = AlternativeOrder(("a", "b", "c", "d"))
    rankings = (("b", "c", "a", "d"),) * 3
    e = Election(3, ("a", "b", "c", "d"), 2, rankings)
    maj = majority_order(e, order)
    assert interior_committee(order, maj, 2) == {"b", "c"}


def test_interior_committee_too_large():
    order = AlternativeOrder(("a", "b", "c"))
    rankings = (("b", "a", "c"),) * 3
    e = Election(3, ("a", "b", "c"), 2, rankings)
    maj = majority_order(e, order)
    with pytest.raises(CommitteeSizeTooLarge):
        interior_committee(order, maj, 2)


def test_rule_registry_roundtrip():
    e, _ = gen_random(9, 6, 2, seed=2)
    assert rule_by_id("polar-k2")(e) == polar_k2(e)
    with pytest.raises(KeyError):
        rule_by_id("borda")


def test_compose_rejects_bad_phase_sizes():
    e, _ = gen_random(5, 6, 5, seed=4)
    with pytest.raises(CommitteeSizeMismatch):
        compose(e, [(polar_k2, 2, 2)])  # 4 != 5


def test_k_extremes_insufficient():
    from polarline.rules import InsufficientAlternatives

    with pytest.raises(InsufficientAlternatives):
        k_extremes(AlternativeOrder(("a", "b")), 3)


def test_distortion_bound_table():
    sqrt2 = Fraction(1), Fraction(1)
    assert distortion_bound(2) == sqrt2
    assert distortion_bound(4) == sqrt2
    assert distortion_bound(3) == (Fraction(7, 3), Fraction(0))
    assert distortion_bound(6) == (Fraction(7, 3), Fraction(0))
    p, q = distortion_bound(5)
    assert (p, q) == (Fraction(7, 3) - Fraction(8, 15), Fraction(2, 5))


def test_within_sqrt2_bound_comparisons():
    one_plus_sqrt2 = (Fraction(1), Fraction(1))
    assert within_sqrt2_bound(Fraction(12, 5), one_plus_sqrt2)  # 2.4 < 2.4142
    assert not within_sqrt2_bound(Fraction(17, 7), one_plus_sqrt2)  # 2.4285
    assert not within_sqrt2_bound(Fraction(5, 2), one_plus_sqrt2)
    assert within_sqrt2_bound(Fraction(7, 3), (Fraction(7, 3), Fraction(0)))
    assert not within_sqrt2_bound(Fraction(7, 3) + 1, (Fraction(7, 3), Fraction(0)))


def test_polar_k2_meets_bound_on_tight_family():
    # on the paired-block family the rule must pick the split pair: the pure
    # right pair already exceeds 1+sqrt(2) under the first metric
    from polarline.costs import Objective
    from polarline.distortion import distortion_fixed
    from polarline.generators import gen_lb_k2

    for n1, n2 in ((169, 239), (985, 1393)):
        inst = gen_lb_k2(n1, n2)
        committee = polar_k2(inst.election)
        assert committee == {"a", "a'"}
        for d in (inst.d1, inst.d2):
            ratio = distortion_fixed(inst.election, d, committee, Objective.UTILITARIAN).ratio
            assert within_sqrt2_bound(ratio, distortion_bound(2))


def test_polar_k3_meets_bound_on_small_k_family():
    # the equal-group family floors every committee at 7/3; the rule must
    # split across the blocks and achieve the floor exactly
    from polarline.costs import Objective
    from polarline.distortion import distortion_fixed
    from polarline.generators import gen_lb_small_k

    inst = gen_lb_small_k(3, 6, n=2)
    committee = polar_k3(inst.election)
    left = sum(1 for a in committee if a.startswith("a"))
    assert left in (1, 2)
    worst = max(
        distortion_fixed(inst.election, d, committee, Objective.UTILITARIAN).ratio
        for d in (inst.d1, inst.d2)
    )
    assert worst == Fraction(7, 3)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 25), st.integers(2, 8), st.integers(0, 99999))
def test_polar_k2_contains_majority_top(n, m, seed):
    e, _ = gen_random(n, m, 2, seed)
    committee = polar_k2(e)
    assert len(committee) == 2
    assert majority_order(e).sequence[0] in committee


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 25), st.integers(3, 9), st.integers(0, 99999))
def test_polar_k3_contains_top_two(n, m, seed):
    e, _ = gen_random(n, m, 3, seed)
    committee = polar_k3(e)
    assert len(committee) == 3
    maj = majority_order(e)
    head, second = maj.sequence[0], maj.sequence[1]
    assert head in committee
    # the literal runner-up yields only when a third alternative dominates it
    others = frozenset(a for a in e.alternatives if a != head)
    assert second in committee or second in pareto_dominated(e, others)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 20), st.integers(1, 9), st.integers(0, 99999))
def test_polar_general_size_and_membership(n, k, seed):
    m = min(k + 3, 12)
    e, _ = gen_random(n, m, k, seed)
    committee = polar_general(e)
    assert len(committee) == k
    assert committee <= set(e.alternatives)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 20), st.integers(2, 8), st.integers(0, 99999))
def test_rules_are_deterministic(n, m, seed):
    e, _ = gen_random(n, m, 2, seed)
    assert polar_k2(e) == polar_k2(e)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 15), st.integers(2, 7), st.integers(0, 99999))
def test_reversal_invariance(n, m, seed):
    # mirroring the embedding preserves all distances, hence the profile and
    # the committee
    e, d = gen_random(n, m, 2, seed)
    mirrored = derive_profile(d.reflect(), 2)
    assert mirrored == e
    assert polar_k2(mirrored) == polar_k2(e)
