"""Core data model: elections, line metrics, and metric-profile consistency.

All positions, distances and costs are exact rationals (`fractions.Fraction`).
Voters are identified by their index 0..n-1; alternatives by opaque string
ids.  Every type here is immutable after construction and every operation is
pure, so values can be shared freely across threads.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

Scalar = Fraction

Committee = frozenset  # frozenset[str], size k


class ModelError(ValueError):
    """Base class for data-model violations."""


class DuplicateAlternativeInRanking(ModelError):
    pass


class RankingSizeMismatch(ModelError):
    pass


class CommitteeSizeOutOfRange(ModelError):
    pass


class MissingPosition(ModelError):
    pass


class MidpointTie(ModelError):
    """A voter is equidistant from two alternatives, so no strict ranking exists."""


class ConsistencyMode(Enum):
    # Strict demands d(i,a) < d(i,b) whenever a is ranked above b; Weak only
    # demands <=, which admits voters sitting exactly on pair midpoints.
    STRICT = "strict"
    WEAK = "weak"


def as_scalar(value) -> Scalar:
    """Coerce ints, strings like '3/7', and Fractions to an exact Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Election:
    """An election: n voters, alternative ids, committee size k, strict rankings."""

    n: int
    alternatives: tuple[str, ...]
    k: int
    rankings: tuple[tuple[str, ...], ...]

    @property
    def m(self) -> int:
        return len(self.alternatives)

    def with_committee_size(self, k: int) -> "Election":
        return Election(self.n, self.alternatives, k, self.rankings)

    def restrict(self, keep: Iterable[str]) -> "Election":
        """Sub-election on a subset of alternatives (rankings filtered, k kept)."""
        keep_set = frozenset(keep)
        alts = tuple(a for a in self.alternatives if a in keep_set)
        rankings = tuple(
            tuple(a for a in ranking if a in keep_set) for ranking in self.rankings
        )
        return Election(self.n, alts, self.k, rankings)


@dataclass(frozen=True)
class LineMetric:
    """Positions of voters (by index) and alternatives (by id) on the real line."""

    voter_positions: tuple[Scalar, ...]
    alternative_positions: Mapping[str, Scalar] = field(hash=False)

    @property
    def n(self) -> int:
        return len(self.voter_positions)

    @cached_property
    def position_counts(self) -> Counter:
        """Voter multiplicity per distinct position; block instances repeat
        one position thousandfold, so cost sums group by it."""
        return Counter(self.voter_positions)

    def voter(self, i: int) -> Scalar:
        try:
            return self.voter_positions[i]
        except IndexError:
            raise MissingPosition(f"no position for voter {i}") from None

    def alt(self, a: str) -> Scalar:
        try:
            return self.alternative_positions[a]
        except KeyError:
            raise MissingPosition(f"no position for alternative {a!r}") from None

    def distance(self, i: int, a: str) -> Scalar:
        return abs(self.voter(i) - self.alt(a))

    def covers(self, e: Election) -> bool:
        return self.n >= e.n and all(a in self.alternative_positions for a in e.alternatives)

    def translate(self, delta) -> "LineMetric":
        delta = as_scalar(delta)
        return LineMetric(
            tuple(x + delta for x in self.voter_positions),
            {a: x + delta for a, x in self.alternative_positions.items()},
        )

    def reflect(self) -> "LineMetric":
        """Mirror the embedding.  Distances, hence costs, are unchanged."""
        return LineMetric(
            tuple(-x for x in self.voter_positions),
            {a: -x for a, x in self.alternative_positions.items()},
        )

    def scale(self, factor) -> "LineMetric":
        factor = as_scalar(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return LineMetric(
            tuple(x * factor for x in self.voter_positions),
            {a: x * factor for a, x in self.alternative_positions.items()},
        )


def make_metric(voter_positions: Iterable, alternative_positions: Mapping[str, object]) -> LineMetric:
    """Build a LineMetric, coercing all positions to exact Scalars.

    Alternatives are allowed to share a position: the lower-bound instance
    families place several alternatives on one point and rely on Weak
    consistency.  Operations that need pairwise-distinct alternatives check
    that themselves (see `distinct_alternative_positions`).
    """
    return LineMetric(
        tuple(as_scalar(x) for x in voter_positions),
        {a: as_scalar(x) for a, x in alternative_positions.items()},
    )


def distinct_alternative_positions(d: LineMetric) -> bool:
    positions = list(d.alternative_positions.values())
    return len(set(positions)) == len(positions)


def validate_election(e: Election) -> None:
    """Raise unless all Election invariants hold."""
    if not 1 <= e.k <= e.m:
        raise CommitteeSizeOutOfRange(f"k={e.k} not in 1..{e.m}")
    if len(e.rankings) != e.n:
        raise RankingSizeMismatch(f"expected {e.n} rankings, got {len(e.rankings)}")
    if len(set(e.alternatives)) != e.m:
        raise DuplicateAlternativeInRanking("alternative ids are not distinct")
    alt_set = frozenset(e.alternatives)
    for i, ranking in enumerate(e.rankings):
        if len(set(ranking)) != len(ranking):
            raise DuplicateAlternativeInRanking(f"voter {i} ranks an alternative twice")
        if len(ranking) != e.m or set(ranking) != alt_set:
            raise RankingSizeMismatch(f"voter {i}'s ranking is not a permutation of A")


def check_consistency(e: Election, d: LineMetric, mode: ConsistencyMode) -> bool:
    """True iff every ranked pair satisfies the mode's distance comparison.

    Consecutive pairs suffice: the point-to-point comparisons are transitive.
    """
    if not d.covers(e):
        raise MissingPosition("metric does not cover every voter and alternative")
    seen: set[tuple[Scalar, tuple[str, ...]]] = set()
    for i, ranking in enumerate(e.rankings):
        x = d.voter(i)
        if (x, ranking) in seen:  # block instances repeat voters verbatim
            continue
        seen.add((x, ranking))
        prev = abs(x - d.alt(ranking[0]))
        for a in ranking[1:]:
            cur = abs(x - d.alt(a))
            if prev > cur or (mode is ConsistencyMode.STRICT and prev == cur):
                return False
            prev = cur
    return True


def derive_profile(d: LineMetric, k: int) -> Election:
    """The unique strict profile consistent with `d` (inverse of consistency).

    Voter count and alternatives are read off the metric.  Raises MidpointTie
    when some voter is equidistant from two alternatives, since then no strict
    ranking exists.
    """
    alternatives = tuple(sorted(d.alternative_positions))
    rankings = []
    for i in range(d.n):
        x = d.voter_positions[i]
        by_distance = sorted(alternatives, key=lambda a: (abs(x - d.alt(a)), a))
        for a, b in zip(by_distance, by_distance[1:]):
            if abs(x - d.alt(a)) == abs(x - d.alt(b)):
                raise MidpointTie(f"voter {i} is equidistant from {a!r} and {b!r}")
        rankings.append(tuple(by_distance))
    return Election(d.n, alternatives, k, tuple(rankings))
