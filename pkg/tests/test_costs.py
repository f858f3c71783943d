"""Exact cost evaluation."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from polarline.costs import (
    Objective,
    alternative_cost,
    extreme_voter_costs,
    social_cost,
    voter_cost,
)
from polarline.generators import gen_random
from polarline.model import make_metric


def test_voter_cost_coincident():
    d = make_metric([0], {"a": 0})
    assert voter_cost(d, {"a"}, 0) == 0


def test_voter_cost_sum():
    d = make_metric([0, 1], {"a": 0, "b": 2})
    assert voter_cost(d, {"a", "b"}, 0) == 2
    assert voter_cost(d, {"a", "b"}, 1) == 2


def test_social_cost_both_objectives():
    d = make_metric([0, 1], {"a": 0, "b": 2})
    assert social_cost(d, {"a", "b"}, Objective.UTILITARIAN) == 4
    assert social_cost(d, {"a", "b"}, Objective.EGALITARIAN) == 2


def test_k_extremes_observation_instance():
    # alternatives at -1, 0, +1 and voters at 0, +1: the extreme pair costs
    # twice the optimal pair under the egalitarian objective
    d = make_metric([0, 1], {"a": -1, "b": 0, "c": 1})
    assert social_cost(d, {"a", "c"}, Objective.EGALITARIAN) == 2
    assert social_cost(d, {"b", "c"}, Objective.EGALITARIAN) == 1


def test_alternative_cost_weighted_groups():
    pos = [Fraction(1, 10)] * 3 + [Fraction(-9, 10)] * 2
    d = make_metric(pos, {"a": 0, "b": 1})
    assert alternative_cost(d, "a") == Fraction(21, 10)
    assert alternative_cost(d, "b") == Fraction(65, 10)


def test_alternative_cost_single_voter_at_alternative():
    d = make_metric([5], {"a": 5})
    assert alternative_cost(d, "a") == 0


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(2, 6), st.integers(1, 4), st.integers(0, 9999))
def test_utilitarian_additivity(n, m, k, seed):
    e, d = gen_random(n, m, min(k, m), seed)
    committee = set(e.alternatives[: min(k, m)])
    total = social_cost(d, committee, Objective.UTILITARIAN)
    assert total == sum(alternative_cost(d, a) for a in committee)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10), st.integers(2, 5), st.integers(-50, 50), st.integers(0, 9999))
def test_translation_invariance(n, m, shift, seed):
    e, d = gen_random(n, m, 1, seed)
    moved = d.translate(shift)
    committee = set(e.alternatives[:2])
    for objective in Objective:
        assert social_cost(d, committee, objective) == social_cost(
            moved, committee, objective
        )


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 12), st.integers(2, 6), st.integers(0, 9999))
def test_same_side_of_median_monotone(n, m, seed):
    # on one side of the median voter, closer alternatives cost no more
    e, d = gen_random(n, m, 1, seed)
    median = sorted(d.voter_positions)[(n - 1) // 2]
    alts = sorted(e.alternatives, key=d.alt)
    left = [a for a in alts if d.alt(a) <= median]
    right = [a for a in alts if d.alt(a) >= median]
    for block in (list(reversed(left)), right):
        for near, far in zip(block, block[1:]):
            assert alternative_cost(d, near) <= alternative_cost(d, far)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 12), st.integers(4, 7), st.integers(0, 9999))
def test_egalitarian_extremes_equality(n, m, seed):
    # committees inside the voter range cost the most to an extreme voter
    e, d = gen_random(n, m, 1, seed)
    lo, hi = min(d.voter_positions), max(d.voter_positions)
    inside = [a for a in e.alternatives if lo <= d.alt(a) <= hi]
    if not inside:
        return
    committee = set(inside[:3])
    cost = social_cost(d, committee, Objective.EGALITARIAN)
    assert cost == max(extreme_voter_costs(d, committee))
