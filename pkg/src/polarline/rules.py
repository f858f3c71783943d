"""Ordinal committee-selection rules for the line metric.

All rules read only the preference profile, never a metric.  The polar
comparison family seeds the committee with the leaders of the majority order
and then arbitrates between the flanking alternatives on opposite sides using
exact vote-share thresholds: n/(1+sqrt(2)) for two winners, 2n/5 for three.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .model import Committee, Election
from .ordering import (
    AlternativeOrder,
    MajorityOrder,
    NotLineRealizable,
    canonical,
    is_single_peaked,
    majority_order,
    margin_table,
    order_alternatives,
    order_subset,
    pareto_dominated,
)
from .simplex import feasible

RULE_IDS = (
    "polar-k2",
    "polar-k3",
    "polar-general",
    "k-extremes",
    "interior",
    "top-of-majority",
)


class CommitteeSizeMismatch(ValueError):
    pass


class InsufficientAlternatives(ValueError):
    pass


class CommitteeSizeTooLarge(ValueError):
    pass


@lru_cache(maxsize=512)
def _margins(e: Election) -> dict[tuple[str, str], int]:
    return margin_table(e)


def below_share_threshold(votes: int, n: int) -> bool:
    """votes <= n/(1+sqrt(2)), decided exactly over the integers.

    v <= n(sqrt(2)-1)  <=>  v^2 + 2nv <= n^2  (both sides nonnegative).
    """
    return votes * votes + 2 * n * votes <= n * n


def at_least_share_threshold(votes: int, n: int) -> bool:
    return votes * votes + 2 * n * votes >= n * n


def within_sqrt2_bound(ratio: Fraction, bound: tuple[Fraction, Fraction]) -> bool:
    """ratio <= p + q*sqrt(2) for bound = (p, q) with q >= 0, exactly."""
    p, q = bound
    t = ratio - p
    if t <= 0:
        return True
    if q == 0:
        return False
    return t * t <= 2 * q * q


def distortion_bound(k: int) -> tuple[Fraction, Fraction]:
    """Worst-case utilitarian bound of the general rule, as p + q*sqrt(2)."""
    if k == 1:
        return Fraction(3), Fraction(0)
    if k in (2, 4):
        return Fraction(1), Fraction(1)
    if k % 3 == 0:
        return Fraction(7, 3), Fraction(0)
    if k % 3 == 1:
        return Fraction(7, 3) - Fraction(16, 3 * k), Fraction(4, k)
    return Fraction(7, 3) - Fraction(8, 3 * k), Fraction(2, k)


def _restricted(ranking: Sequence[str], members: frozenset[str]) -> tuple[str, ...]:
    return tuple(a for a in ranking if a in members)


def _strict_embedding_feasible(e: Election, seq: Sequence[str]) -> bool:
    """Is there a strictly consistent embedding whose alternative order is
    exactly `seq` (restricted rankings)?  Homogeneous scaling lets every
    strict inequality demand margin >= 1."""
    idx = {a: j for j, a in enumerate(seq)}
    members = frozenset(seq)
    n_alt = len(seq)
    n_vars = n_alt + e.n  # alternative positions then voter positions
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def blank() -> list[Fraction]:
        return [Fraction(0)] * n_vars

    for j in range(n_alt - 1):
        row = blank()
        row[j] = Fraction(1)
        row[j + 1] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(-1))  # z_{j+1} - z_j >= 1
    for i, ranking in enumerate(e.rankings):
        restricted = _restricted(ranking, members)
        for u, v in zip(restricted, restricted[1:]):
            # voter strictly on u's side of the (u, v) midpoint
            row = blank()
            sign = Fraction(1) if idx[u] < idx[v] else Fraction(-1)
            row[n_alt + i] = 2 * sign
            row[idx[u]] -= sign
            row[idx[v]] -= sign
            rows.append(row)
            rhs.append(Fraction(-1))  # sign*(2y - z_u - z_v) <= -1
    return feasible(a_ub=rows, b_ub=rhs, n_vars=n_vars)


def _flank(e: Election, pool: frozenset[str], anchor: str, away: str) -> str | None:
    """Nearest member of `pool` to `anchor` on the side away from `away`.

    `away` is in the pool, `anchor` is not.  When the combined set is free of
    internal Pareto-domination, the combined positional order answers
    directly.  Otherwise the anchor's slot within the pool order is inferred:
    single-peakedness of every voter's ranking prunes slots, an exact
    strict-embedding feasibility check arbitrates what remains, and any
    residual ambiguity prefers slots adjacent to `away` (the anchor and the
    runner-up are adjacent whenever the profile is median-faithful).
    """
    if len(pool) == 1:
        return None
    table = _margins(e)
    combined = pool | {anchor}
    internally_free = all(
        table[(u, v)] < e.n for u in combined for v in combined if u != v
    )
    if internally_free:
        seq = order_subset(e, combined)
        i, j = seq.index(anchor), seq.index(away)
        flank_idx = i - (1 if j > i else -1)
        return seq[flank_idx] if 0 <= flank_idx < len(seq) else None

    sub = canonical(order_subset(e, pool))
    j = sub.index(away)

    def seq_for(slot: int) -> tuple[str, ...]:
        return sub[:slot] + (anchor,) + sub[slot:]

    slots = list(range(len(sub) + 1))
    sp_ok = [
        s
        for s in slots
        if all(is_single_peaked(_restricted(r, combined), seq_for(s)) for r in e.rankings)
    ]
    candidates = sp_ok or slots
    if len(candidates) > 1:
        lp_ok = [s for s in candidates if _strict_embedding_feasible(e, seq_for(s))]
        if lp_ok:
            candidates = lp_ok
    if len(candidates) > 1:
        adjacent = [s for s in candidates if s in (j, j + 1)]
        if adjacent:
            candidates = adjacent
    if not candidates:
        raise NotLineRealizable(f"no embedding places {anchor!r} in the pool order")
    seq = seq_for(candidates[0])
    i = seq.index(anchor)
    flank_idx = i - (1 if seq.index(away) > i else -1)
    return seq[flank_idx] if 0 <= flank_idx < len(seq) else None


def _filtered_pool(e: Election, removed: str) -> frozenset[str]:
    """A minus `removed`, minus everything Pareto-dominated within that set."""
    rest = frozenset(a for a in e.alternatives if a != removed)
    return rest - pareto_dominated(e, rest)


def top_of_majority(e: Election) -> Committee:
    if e.k != 1:
        raise CommitteeSizeMismatch(f"k={e.k}, expected 1")
    return frozenset(majority_order(e).top(1))


def _runner_up(maj: MajorityOrder, pool: frozenset[str]) -> str:
    """The majority order's second member.  A median voter's second-nearest
    is never dominated by anything but the leader, so in degenerate tie
    corners where the path's literal second got filtered, take the earliest
    surviving element instead."""
    return next(x for x in maj.sequence[1:] if x in pool)


def polar_k2(e: Election) -> Committee:
    if e.k != 2:
        raise CommitteeSizeMismatch(f"k={e.k}, expected 2")
    if e.m < 2:
        raise InsufficientAlternatives("need at least two alternatives")
    maj = majority_order(e)
    a = maj.sequence[0]
    pool = _filtered_pool(e, a)
    b = _runner_up(maj, pool)
    c = _flank(e, pool, anchor=a, away=b)
    if c is None:
        return frozenset((a, b))
    n = e.n
    if below_share_threshold(maj.margin(c, b), n):
        return frozenset((a, b))
    if at_least_share_threshold(maj.margin(b, a), n):
        return frozenset((a, b))
    return frozenset((a, c))


def polar_k3(e: Election) -> Committee:
    if e.k != 3:
        raise CommitteeSizeMismatch(f"k={e.k}, expected 3")
    if e.m < 3:
        raise InsufficientAlternatives("need at least three alternatives")
    maj = majority_order(e)
    a = maj.sequence[0]
    pool1 = _filtered_pool(e, a)
    b1 = _runner_up(maj, pool1)
    c = _flank(e, pool1, anchor=a, away=b1)
    b2 = _flank(e, _filtered_pool(e, b1), anchor=b1, away=a)
    if c is None and b2 is None:
        # both flanks unanimously dominated: fall back to the majority order
        filler = next(x for x in maj.sequence if x not in (a, b1))
        return frozenset((a, b1, filler))
    if c is None:
        return frozenset((a, b1, b2))
    if b2 is None:
        return frozenset((a, b1, c))
    if 5 * maj.margin(c, b2) >= 2 * e.n:
        return frozenset((a, b1, c))
    return frozenset((a, b1, b2))


RulePhase = tuple[Callable[[Election], Committee], int, int]  # (rule, size, reps)


def compose(e: Election, phases: Sequence[RulePhase]) -> Committee:
    """Run each phase rule repeatedly, removing winners between runs.

    Phases must be ordered with the higher-distortion rule first; the total
    committee size must match e.k.
    """
    if sum(size * reps for _, size, reps in phases) != e.k:
        raise CommitteeSizeMismatch("phase sizes do not add up to k")
    if e.m < e.k:
        raise InsufficientAlternatives(f"m={e.m} < k={e.k}")
    selected: list[str] = []
    for rule, size, reps in phases:
        for _ in range(reps):
            chosen = frozenset(selected)
            sub = e.restrict(a for a in e.alternatives if a not in chosen)
            sub = sub.with_committee_size(size)
            winners = rule(sub)
            selected.extend(sorted(winners))
    return frozenset(selected)


def polar_general(e: Election) -> Committee:
    k = e.k
    if e.m < k:
        raise InsufficientAlternatives(f"m={e.m} < k={k}")
    if k == 1:
        return top_of_majority(e)
    if k == 2:
        return polar_k2(e)
    if k == 3:
        return polar_k3(e)
    if k == 4:
        return compose(e, [(polar_k2, 2, 2)])
    if k % 3 == 0:
        return compose(e, [(polar_k3, 3, k // 3)])
    if k % 3 == 1:
        return compose(e, [(polar_k2, 2, 2), (polar_k3, 3, (k - 4) // 3)])
    return compose(e, [(polar_k2, 2, 1), (polar_k3, 3, (k - 2) // 3)])


def k_extremes(order: AlternativeOrder, k: int) -> Committee:
    """Leftmost floor(k/2) and rightmost ceil(k/2) alternatives."""
    seq = order.sequence
    if len(seq) < k:
        raise InsufficientAlternatives(f"order has {len(seq)} < k={k} alternatives")
    left = seq[: k // 2]
    right = seq[len(seq) - (k - k // 2) :]
    return frozenset(left) | frozenset(right)


def interior_committee(order: AlternativeOrder, majority: MajorityOrder, k: int) -> Committee:
    """A size-k contiguous window of the order excluding both endpoints,
    favoring windows that contain the majority-order leader and whose members
    rank early in the majority order."""
    seq = order.sequence
    if k >= len(seq) - 1:
        raise CommitteeSizeTooLarge(f"k={k} leaves no interior committee (m={len(seq)})")
    interior = seq[1:-1]
    rank = {a: i for i, a in enumerate(majority.sequence)}
    top = majority.sequence[0]
    best = None
    for start in range(len(interior) - k + 1):
        window = interior[start : start + k]
        key = (0 if top in window else 1, sum(rank[a] for a in window), start)
        if best is None or key < best[0]:
            best = (key, window)
    assert best is not None
    return frozenset(best[1])


def rule_by_id(rule_id: str) -> Callable[[Election], Committee]:
    """CLI-facing dispatch.  Order-based rules are wrapped so that every rule
    maps an election to a committee."""
    if rule_id == "polar-k2":
        return polar_k2
    if rule_id == "polar-k3":
        return polar_k3
    if rule_id == "polar-general":
        return polar_general
    if rule_id == "top-of-majority":
        return top_of_majority
    if rule_id == "k-extremes":
        return lambda e: k_extremes(order_alternatives(e), e.k)
    if rule_id == "interior":
        return lambda e: interior_committee(
            order_alternatives(e), majority_order(e), e.k
        )
    raise KeyError(f"unknown rule {rule_id!r}; known: {', '.join(RULE_IDS)}")
