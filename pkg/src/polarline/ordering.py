"""Line-structure recovery from ordinal data.

Given only strict rankings, the positional order of the alternatives that are
not Pareto-dominated is determined up to a reversal.  This module recovers
that order, builds the pairwise-majority table and the majority order (a
Hamiltonian path of the tie-broken majority tournament, which on line
instances coincides with a median voter's ranking).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .model import Election


class UnknownAlternative(KeyError):
    pass


class NotLineRealizable(ValueError):
    """The profile's structure contradicts every embedding on a line."""


@dataclass(frozen=True)
class AlternativeOrder:
    """Left-to-right positional order, canonicalized so that the
    lexicographically smaller endpoint comes first."""

    sequence: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.sequence)

    def __contains__(self, a: str) -> bool:
        return a in self.sequence

    def index(self, a: str) -> int:
        return self.sequence.index(a)

    def reversed(self) -> "AlternativeOrder":
        return AlternativeOrder(tuple(reversed(self.sequence)))


@dataclass(frozen=True)
class MajorityOrder:
    """Alternatives from most to least preferred by a median voter, plus the
    full pairwise-margin table |V_{a>b}|."""

    sequence: tuple[str, ...]
    margins: Mapping[tuple[str, str], int] = field(hash=False)

    def top(self, count: int = 1) -> tuple[str, ...]:
        return self.sequence[:count]

    def margin(self, a: str, b: str) -> int:
        return self.margins[(a, b)]


def pairwise_margin(e: Election, a: str, b: str) -> int:
    """|V_{a>b}|: how many voters rank a above b."""
    if a == b or a not in e.alternatives or b not in e.alternatives:
        raise UnknownAlternative(f"({a!r}, {b!r})")
    count = 0
    for ranking in e.rankings:
        if ranking.index(a) < ranking.index(b):
            count += 1
    return count


def margin_table(e: Election) -> dict[tuple[str, str], int]:
    table: dict[tuple[str, str], int] = {}
    for ranking in e.rankings:
        rank = {a: i for i, a in enumerate(ranking)}
        for i, a in enumerate(e.alternatives):
            for b in e.alternatives[i + 1 :]:
                if rank[a] < rank[b]:
                    table[(a, b)] = table.get((a, b), 0) + 1
                else:
                    table[(b, a)] = table.get((b, a), 0) + 1
    for i, a in enumerate(e.alternatives):
        for b in e.alternatives[i + 1 :]:
            table.setdefault((a, b), 0)
            table.setdefault((b, a), 0)
    return table


def preferrers(e: Election, a: str, b: str) -> frozenset[int]:
    """The voter set V_{a>b}."""
    return frozenset(
        i for i, ranking in enumerate(e.rankings) if ranking.index(a) < ranking.index(b)
    )


def pareto_dominated(e: Election, within: Iterable[str]) -> frozenset[str]:
    """Alternatives of A dominated by some member of `within`: every voter
    prefers the dominator."""
    dominators = [a for a in within if a in set(e.alternatives)]
    table = margin_table(e)
    dominated = set()
    for b in e.alternatives:
        for a in dominators:
            if a != b and table[(a, b)] == e.n:
                dominated.add(b)
                break
    return frozenset(dominated)


def _restricted(ranking: Sequence[str], subset: frozenset[str]) -> tuple[str, ...]:
    return tuple(a for a in ranking if a in subset)


def order_subset(e: Election, subset: Iterable[str]) -> tuple[str, ...]:
    """Positional order (up to reversal, canonicalized) of a set of
    alternatives none of which Pareto-dominates another.

    Partition the set around an arbitrary pair using the subset-containment
    structure of V_{a>b}, then read each side's order off a voter whose
    restricted top choice lies on the *other* side: such a voter sits beyond
    the whole side and their ranking lists it by distance.
    """
    alts = sorted(set(subset))
    if len(alts) <= 1:
        return tuple(alts)
    if len(alts) == 2:
        return tuple(alts)

    subset_f = frozenset(alts)
    a, b = alts[0], alts[1]
    v_ab = preferrers(e, a, b)
    if not v_ab:
        # b unanimously beats a: domination inside the subset
        raise NotLineRealizable(f"{b!r} Pareto-dominates {a!r} inside the ordered set")
    right = [c for c in alts if c != a and v_ab <= preferrers(e, a, c)]
    left = [c for c in alts if c == a or c not in right]

    voter_left = voter_right = None
    for i, ranking in enumerate(e.rankings):
        top = _restricted(ranking, subset_f)[0]
        if voter_left is None and top in left:
            voter_left = i
        if voter_right is None and top in right:
            voter_right = i
        if voter_left is not None and voter_right is not None:
            break
    if voter_left is None or voter_right is None:
        raise NotLineRealizable("one side of the partition is nobody's top choice")

    # The left-top voter lies beyond L, so it ranks R in positional order;
    # symmetrically the right-top voter ranks L from nearest to farthest.
    right_order = _restricted(e.rankings[voter_left], frozenset(right))
    left_order = _restricted(e.rankings[voter_right], frozenset(left))
    return tuple(reversed(left_order)) + right_order


def canonical(sequence: Sequence[str]) -> tuple[str, ...]:
    seq = tuple(sequence)
    if len(seq) > 1 and seq[0] > seq[-1]:
        seq = tuple(reversed(seq))
    return seq


def order_alternatives(e: Election) -> AlternativeOrder:
    """Positional order of the non-Pareto-dominated alternatives."""
    dominated = pareto_dominated(e, e.alternatives)
    keep = [a for a in e.alternatives if a not in dominated]
    return AlternativeOrder(canonical(order_subset(e, keep)))


def infer_slot(e: Election, seq: Sequence[str], x: str) -> int | None:
    """The unique gap of `seq` that can hold alternative x while keeping every
    voter's ranking single-peaked on seq + x; None when that is ambiguous."""
    feasible = []
    for slot in range(len(seq) + 1):
        candidate = tuple(seq[:slot]) + (x,) + tuple(seq[slot:])
        if all(is_single_peaked(r, candidate) for r in e.rankings):
            feasible.append(slot)
            if len(feasible) > 1:
                return None
    return feasible[0] if feasible else None


def majority_order(e: Election, order: AlternativeOrder | None = None) -> MajorityOrder:
    """A ranking consistent with a median voter's preferences.

    Built as a Hamiltonian path of the majority tournament by insertion: each
    element defeats (or tie-break-beats) the next.  Exact pairwise ties are
    broken toward the alternative that comes earlier in the positional order.
    Dominated alternatives carry no position, so their slot in the order is
    inferred from single-peakedness; only when that too is ambiguous does the
    tie fall back to the id, which keeps the tie-broken relation inside one
    median voter's distance order except in unresolvable corners.
    """
    if order is None:
        order = order_alternatives(e)
    table = margin_table(e)
    # ordered alternatives at even coordinates, inferred slots between them
    rank: dict[str, int] = {a: 2 * i for i, a in enumerate(order.sequence)}
    for x in e.alternatives:
        if x not in rank:
            slot = infer_slot(e, order.sequence, x)
            if slot is not None:
                rank[x] = 2 * slot - 1

    def beats(a: str, b: str) -> bool:
        twice = 2 * table[(a, b)]
        if twice != e.n:
            return twice > e.n
        ra, rb = rank.get(a), rank.get(b)
        if ra is not None and rb is not None and ra != rb:
            return ra < rb
        return a < b

    path: list[str] = []
    for alt in sorted(e.alternatives):
        for i, existing in enumerate(path):
            if beats(alt, existing):
                path.insert(i, alt)
                break
        else:
            path.append(alt)
    return MajorityOrder(tuple(path), table)


def is_single_peaked(ranking: Sequence[str], sequence: Sequence[str]) -> bool:
    """Whether `ranking` (restricted to `sequence`'s members) is single-peaked
    with respect to the positional order `sequence`: every prefix of the
    ranking must occupy a contiguous block of the sequence."""
    index = {a: i for i, a in enumerate(sequence)}
    lo = hi = None
    for a in ranking:
        if a not in index:
            continue
        i = index[a]
        if lo is None:
            lo = hi = i
        elif i == lo - 1:
            lo = i
        elif i == hi + 1:
            hi = i
        else:
            return False
    return True
