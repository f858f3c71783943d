"""Lower-bound instance families and the random generator."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarline.costs import Objective, social_cost
from polarline.distortion import distortion_fixed
from polarline.generators import (
    ParameterOutOfRange,
    gen_lb_k2,
    gen_lb_k_extremes,
    gen_lb_large_k,
    gen_lb_small_k,
    gen_random,
    sqrt_convergent,
)
from polarline.model import ConsistencyMode, check_consistency
from polarline.ordering import AlternativeOrder
from polarline.rules import k_extremes


def test_sqrt2_convergents():
    known = [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29), (99, 70), (239, 169), (577, 408), (1393, 985)]
    for depth, expected in enumerate(known):
        assert sqrt_convergent(2, 1, depth) == expected


def test_sqrt_convergent_perfect_square():
    assert sqrt_convergent(9, 4, 5) == (3, 2)


def test_sqrt_convergent_accuracy():
    p, q = sqrt_convergent(6, 4, 8)  # sqrt(3/2)
    assert abs(p * p * 2 - 3 * q * q) <= 2 * q  # p/q within ~1/q^2 of sqrt(3/2)


def test_k2_family_metrics_consistent():
    inst = gen_lb_k2(5, 7)
    assert inst.check()
    assert check_consistency(inst.election, inst.d1, ConsistencyMode.WEAK)
    assert not check_consistency(inst.election, inst.d1, ConsistencyMode.STRICT)


def test_k2_family_distortion_values():
    # under the shifted metric the right-pair optimum costs 2*n1, the left
    # pair 2*n1 + 4*n2, and the split committee 2*n1 + 2*n2
    inst = gen_lb_k2(5, 7)
    e, d2 = inst.election, inst.d2
    left_pair = distortion_fixed(e, d2, {"a'", "b'"}, Objective.UTILITARIAN)
    assert left_pair.ratio == Fraction(2 * 5 + 4 * 7, 2 * 5)  # 19/5
    split = distortion_fixed(e, d2, {"a", "a'"}, Objective.UTILITARIAN)
    assert split.ratio == Fraction(2 * 5 + 2 * 7, 2 * 5)  # 12/5


def test_k2_family_symmetric_unit_counts():
    inst = gen_lb_k2(1, 1)
    assert inst.check()


def min_max_distortion(inst, committees=None):
    e = inst.election
    if committees is None:
        committees = combinations(sorted(e.alternatives), e.k)
    worst = []
    for combo in committees:
        r1 = distortion_fixed(e, inst.d1, combo, Objective.UTILITARIAN).ratio
        r2 = distortion_fixed(e, inst.d2, combo, Objective.UTILITARIAN).ratio
        worst.append(max(r1, r2))
    return min(worst)


def test_k2_family_pins_threshold():
    # with the depth-6 convergent 239/169 every pair is at least 408/169 bad
    inst = gen_lb_k2(169, 239)
    assert min_max_distortion(inst) == Fraction(408, 169)


def test_small_k_odd_exact_values():
    inst = gen_lb_small_k(3, 6, n=2)
    assert inst.check()
    e = inst.election
    # r members from the left block give 1 + 2(k-r)/k under d1, 1 + 2r/k under d2
    by_r = {}
    for combo in combinations(sorted(e.alternatives), 3):
        r = sum(1 for a in combo if a.startswith("a"))
        d1 = distortion_fixed(e, inst.d1, combo, Objective.UTILITARIAN).ratio
        d2 = distortion_fixed(e, inst.d2, combo, Objective.UTILITARIAN).ratio
        assert d1 == 1 + Fraction(2 * (3 - r), 3)
        assert d2 == 1 + Fraction(2 * r, 3)
        by_r[r] = max(d1, d2)
    assert min(by_r.values()) == Fraction(7, 3)


def test_small_k_even_approaches_sqrt_bound():
    inst = gen_lb_small_k(4, 8, depth=8)
    assert inst.check()
    value = min_max_distortion(inst)
    # target 1 + sqrt(3/2) ~ 2.2247; the convergent keeps us within 0.01
    assert (value - 1) ** 2 >= Fraction(3, 2) - Fraction(1, 100)


def test_small_k_parameter_validation():
    with pytest.raises(ParameterOutOfRange):
        gen_lb_small_k(3, 4)
    with pytest.raises(ParameterOutOfRange):
        gen_lb_small_k(3, 6, n=3)


def test_large_k_per_committee_formula():
    inst = gen_lb_large_k(3, 4, 10)
    assert inst.check()
    e = inst.election
    for combo in combinations(sorted(e.alternatives), 3):
        r = sum(1 for a in combo if a.startswith("a"))
        d1 = distortion_fixed(e, inst.d1, combo, Objective.UTILITARIAN).ratio
        assert d1 == 1 + Fraction(2 * (2 - r), 5)
        d2 = distortion_fixed(e, inst.d2, combo, Objective.UTILITARIAN).ratio
        assert (d1 + d2) / 2 == Fraction(6, 5)


def test_large_k_full_committee_trivial():
    inst = gen_lb_large_k(4, 4, 6)
    assert min_max_distortion(inst) == 1


def test_k_extremes_family_ratio_two():
    for k in (2, 4, 6):
        e, d = gen_lb_k_extremes(k)
        assert check_consistency(e, d, ConsistencyMode.WEAK)
        order = AlternativeOrder(
            tuple(sorted(e.alternatives, key=lambda a: (d.alt(a), a)))
        )
        committee = k_extremes(order, k)
        assert social_cost(d, committee, Objective.EGALITARIAN) == k
        fd = distortion_fixed(e, d, committee, Objective.EGALITARIAN)
        assert fd.ratio == 2


def test_k_extremes_observation_layout():
    e, d = gen_lb_k_extremes(2)
    assert d.alt("a1") == -1 and d.alt("b1") == 0 and d.alt("c1") == 1
    assert d.voter_positions == (0, 1)


def test_gen_random_deterministic():
    a = gen_random(6, 4, 2, seed=123)
    b = gen_random(6, 4, 2, seed=123)
    assert a == b
    c = gen_random(6, 4, 2, seed=124)
    assert c != a


def test_gen_random_strictly_consistent():
    e, d = gen_random(9, 5, 2, seed=77)
    assert check_consistency(e, d, ConsistencyMode.STRICT)


def test_gen_random_single_voter_sorts_by_distance():
    e, d = gen_random(1, 5, 1, seed=3)
    x = d.voter_positions[0]
    expected = tuple(sorted(e.alternatives, key=lambda a: abs(x - d.alt(a))))
    assert e.rankings[0] == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 60), st.integers(1, 60), st.integers(0, 8))
def test_two_metric_instances_always_weakly_consistent(n1, n2, depth):
    assert gen_lb_k2(n1, n2).check()
    assert gen_lb_small_k(4, 8, depth=depth).check()
