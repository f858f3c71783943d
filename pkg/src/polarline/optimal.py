"""Optimal committees under a fixed metric.

Utilitarian additive cost is separable (the cost of a committee is the sum of
its members' individual totals), so the optimum is just the k cheapest
alternatives.  The egalitarian objective has no such structure; an exhaustive
oracle covers both objectives at desk scale and doubles as the cross-check
for the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .costs import Objective, alternative_cost, social_cost
from .model import Committee, Election, LineMetric, Scalar


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OptResult:
    committee: Committee
    cost: Scalar
    method: str  # "fast" | "brute-force"


def optimal_utilitarian(e: Election, d: LineMetric) -> OptResult:
    """The k alternatives with smallest total voter distance; ties by id."""
    costs = sorted((alternative_cost(d, a), a) for a in e.alternatives)
    chosen = frozenset(a for _, a in costs[: e.k])
    total = sum((c for c, _ in costs[: e.k]), Fraction(0))
    return OptResult(chosen, total, "fast")


def optimal_bruteforce(
    e: Election, d: LineMetric, objective: Objective, max_alternatives: int = 20
) -> OptResult:
    """Exact minimizer by enumeration; lexicographic committee tie-break."""
    if e.m > max_alternatives:
        raise BudgetExceeded(f"m={e.m} exceeds brute-force cap {max_alternatives}")
    best_cost = None
    best: tuple[str, ...] | None = None
    if objective is Objective.UTILITARIAN:
        per_alt = {a: alternative_cost(d, a) for a in e.alternatives}
        dist_rows = None
        spots = 0
    else:
        per_alt = None
        spots_list = list(d.position_counts)  # egalitarian max: distinct positions
        spots = len(spots_list)
        dist_rows = {
            a: [abs(x - d.alt(a)) for x in spots_list] for a in e.alternatives
        }
    for combo in combinations(sorted(e.alternatives), e.k):
        if per_alt is not None:
            cost = sum((per_alt[a] for a in combo), Fraction(0))
        else:
            cost = max(
                sum((dist_rows[a][i] for a in combo), Fraction(0)) for i in range(spots)
            )
        if best_cost is None or cost < best_cost:
            best_cost, best = cost, combo
    assert best is not None and best_cost is not None
    return OptResult(frozenset(best), best_cost, "brute-force")


def optimal_committee(e: Election, d: LineMetric, objective: Objective) -> OptResult:
    if objective is Objective.UTILITARIAN:
        return optimal_utilitarian(e, d)
    return optimal_bruteforce(e, d, objective)


def recompute_cost(d: LineMetric, result: OptResult, objective: Objective) -> Scalar:
    return social_cost(d, result.committee, objective)
