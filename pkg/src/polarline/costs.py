"""Exact cost evaluation under a fixed line metric.

A voter's cost for a committee is the sum of distances to all its members.
The social cost aggregates per-voter costs either by summing (utilitarian) or
by taking the maximum (egalitarian).  Everything here is an exact rational.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable

from .model import LineMetric, MissingPosition, Scalar


class Objective(Enum):
    UTILITARIAN = "utilitarian-additive"
    EGALITARIAN = "egalitarian-additive"


def voter_cost(d: LineMetric, committee: Iterable[str], i: int) -> Scalar:
    """Sum of |x_i - x_a| over committee members a."""
    x = d.voter(i)
    return sum((abs(x - d.alt(a)) for a in committee), Fraction(0))


def alternative_cost(d: LineMetric, a: str) -> Scalar:
    """Total distance from all voters to alternative a."""
    xa = d.alt(a)
    return sum(
        (abs(x - xa) * count for x, count in d.position_counts.items()), Fraction(0)
    )


def social_cost(d: LineMetric, committee: Iterable[str], objective: Objective) -> Scalar:
    members = tuple(committee)
    if not members:
        raise MissingPosition("empty committee has no social cost")
    counts = d.position_counts
    if objective is Objective.UTILITARIAN:
        # Additivity: summing per-alternative totals equals summing per-voter costs.
        return sum(
            (abs(x - d.alt(a)) * count for a in members for x, count in counts.items()),
            Fraction(0),
        )
    return max(
        sum((abs(x - d.alt(a)) for a in members), Fraction(0)) for x in counts
    )


def extreme_voter_costs(d: LineMetric, committee: Iterable[str]) -> tuple[Scalar, Scalar]:
    """Costs of the leftmost and rightmost voters (ties by index)."""
    members = tuple(committee)
    left = min(range(d.n), key=lambda i: (d.voter_positions[i], i))
    right = max(range(d.n), key=lambda i: (d.voter_positions[i], -i))
    return voter_cost(d, members, left), voter_cost(d, members, right)
