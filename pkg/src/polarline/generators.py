"""Worst-case instance families and random line instances.

Each lower-bound family fixes one preference profile and two metrics
consistent with it; any rule must do badly on one of the two.  Irrational
group-size ratios (sqrt(2), sqrt(k/(k+2))) are realized by integer voter
counts taken from continued-fraction convergents, degrading the certified
bound by O(1/n).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from string import ascii_lowercase

from .model import (
    ConsistencyMode,
    Election,
    LineMetric,
    check_consistency,
    derive_profile,
    make_metric,
)

FAMILIES = ("k2-tight", "small-k", "large-k", "k-extremes-egal", "random")


class ParameterOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class TwoMetricInstance:
    election: Election
    d1: LineMetric
    d2: LineMetric

    def check(self) -> bool:
        return check_consistency(
            self.election, self.d1, ConsistencyMode.WEAK
        ) and check_consistency(self.election, self.d2, ConsistencyMode.WEAK)


def sqrt_convergent(num: int, den: int, depth: int) -> tuple[int, int]:
    """Continued-fraction convergent p/q of sqrt(num/den) after `depth`
    partial quotients beyond the integer part.  Exact integer arithmetic."""
    if num <= 0 or den <= 0:
        raise ParameterOutOfRange("radicand must be positive")
    big_n = num * den  # sqrt(num/den) = sqrt(num*den)/den
    s = isqrt(big_n)
    if s * s == big_n:
        frac = Fraction(s, den)
        return frac.numerator, frac.denominator
    terms = []
    p, q = 0, den
    for _ in range(depth + 1):
        a = (p + s) // q
        terms.append(a)
        p = a * q - p
        q = (big_n - p * p) // q
    h_prev, h = 1, terms[0]
    k_prev, k = 0, 1
    for a in terms[1:]:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return h, k


def _block_ids(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(count))


def _block_rankings(first: tuple[str, ...], second: tuple[str, ...]) -> tuple[str, ...]:
    return first + second


def gen_lb_k2(n1: int, n2: int) -> TwoMetricInstance:
    """Four alternatives paired on -1/+1; n2/n1 should approximate sqrt(2).

    The n1 voters rank the left pair first, the n2 voters the right pair.
    Metric d1 puts the small group at -1 and the large at 0; d2 shifts both
    one stop to the right.  Every size-2 committee is costly under one of the
    two metrics, pinning the 1+sqrt(2) bound."""
    if n1 < 1 or n2 < 1:
        raise ParameterOutOfRange("group sizes must be positive")
    alternatives = ("a", "a'", "b", "b'")
    ranking_x = ("a'", "b'", "a", "b")
    ranking_y = ("a", "b", "a'", "b'")
    rankings = (ranking_x,) * n1 + (ranking_y,) * n2
    e = Election(n1 + n2, alternatives, 2, rankings)
    alt_pos = {"a": 1, "b": 1, "a'": -1, "b'": -1}
    d1 = make_metric((-1,) * n1 + (0,) * n2, alt_pos)
    d2 = make_metric((0,) * n1 + (1,) * n2, alt_pos)
    return TwoMetricInstance(e, d1, d2)


def gen_lb_small_k(
    k: int, m: int, n: int | None = None, depth: int = 8
) -> TwoMetricInstance:
    """Two blocks of alternatives at -1/+1 for committee sizes k <= m/2.

    Odd k uses equal groups (ratio 1); even k uses integer counts from the
    depth-th convergent of sqrt((k+2)/k)."""
    if k < 1 or 2 * k > m:
        raise ParameterOutOfRange("need 1 <= k <= m/2")
    if k % 2 == 1:
        n = 2 if n is None else n
        if n % 2 != 0:
            raise ParameterOutOfRange("odd k needs an even voter count")
        n1 = n2 = n // 2
    else:
        n1, n2 = sqrt_convergent(k + 2, k, depth)
    left = _block_ids("a", m - m // 2)
    right = _block_ids("b", m // 2)
    rankings = (_block_rankings(left, right),) * n1 + (_block_rankings(right, left),) * n2
    e = Election(n1 + n2, left + right, k, rankings)
    alt_pos = {a: -1 for a in left} | {b: 1 for b in right}
    d1 = make_metric((-1,) * n1 + (0,) * n2, alt_pos)
    d2 = make_metric((0,) * n1 + (1,) * n2, alt_pos)
    return TwoMetricInstance(e, d1, d2)


def gen_lb_large_k(k: int, m: int, n: int) -> TwoMetricInstance:
    """Equal blocks of m/2 alternatives at -1/+1 for k >= m/2; equal voter
    groups.  The average of the two distortions is at least
    1 + (m-k)/(3k-m) for every committee."""
    if m % 2 != 0 or n % 2 != 0:
        raise ParameterOutOfRange("m and n must be even")
    if not m // 2 <= k <= m:
        raise ParameterOutOfRange("need m/2 <= k <= m")
    half = n // 2
    left = _block_ids("a", m // 2)
    right = _block_ids("b", m // 2)
    rankings = (_block_rankings(left, right),) * half + (_block_rankings(right, left),) * half
    e = Election(n, left + right, k, rankings)
    alt_pos = {a: -1 for a in left} | {b: 1 for b in right}
    d1 = make_metric((-1,) * half + (0,) * half, alt_pos)
    d2 = make_metric((0,) * half + (1,) * half, alt_pos)
    return TwoMetricInstance(e, d1, d2)


def gen_lb_k_extremes(k: int) -> tuple[Election, LineMetric]:
    """ceil(k/2) alternatives at each of -1, 0, +1 with voters at 0 and +1.

    Selecting the extremes doubles the egalitarian cost of the committee that
    pairs the middle block with the right block."""
    if k < 2:
        raise ParameterOutOfRange("need k >= 2")
    half = (k + 1) // 2
    left = _block_ids("a", half)
    middle = _block_ids("b", half)
    right = _block_ids("c", half)
    # voter at 0: middle first, then the two distance-1 blocks in id order
    ranking_v1 = middle + left + right
    ranking_v2 = right + middle + left
    e = Election(2, left + middle + right, k, (ranking_v1, ranking_v2))
    alt_pos = {a: -1 for a in left} | {b: 0 for b in middle} | {c: 1 for c in right}
    d = make_metric((0, 1), alt_pos)
    return e, d


def _alt_names(m: int) -> tuple[str, ...]:
    if m <= len(ascii_lowercase):
        return tuple(ascii_lowercase[:m])
    return tuple(f"x{i + 1}" for i in range(m))


def gen_random(n: int, m: int, k: int, seed: int) -> tuple[Election, LineMetric]:
    """Random integer positions with no voter at any alternative-pair
    midpoint, so the derived profile is strictly consistent."""
    if n < 1 or m < 1 or not 1 <= k <= m:
        raise ParameterOutOfRange("need n, m >= 1 and 1 <= k <= m")
    rng = random.Random(seed)
    span = 8 * (n + m)
    alt_positions = rng.sample(range(span), m)
    forbidden = {za + zb for za in alt_positions for zb in alt_positions if za != zb}
    voters = []
    for _ in range(n):
        x = rng.randrange(span)
        while 2 * x in forbidden:
            x = rng.randrange(span)
        voters.append(x)
    d = make_metric(voters, dict(zip(_alt_names(m), alt_positions)))
    return derive_profile(d, k), d
