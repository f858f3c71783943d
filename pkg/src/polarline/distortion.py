"""Distortion: fixed-metric ratios, the focal-point voter-moving transform,
and worst-case (adversarial) distortion over all consistent line metrics.

Exact adversarial search enumerates, per orientation of the recovered
alternative order, every assignment of voters to gaps of that order.  Within
one assignment every |y - z| term has a fixed sign, so maximizing the chosen
committee's cost subject to a candidate optimum's cost being 1 is a linear
program over the n+m positions, solved in exact rational arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .costs import Objective, social_cost
from .model import Committee, Election, LineMetric, Scalar, make_metric
from .optimal import BudgetExceeded, optimal_bruteforce, optimal_utilitarian
from .ordering import NotLineRealizable, order_alternatives, pareto_dominated
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)


class PreconditionViolated(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class UnsupportedObjective(ValueError):
    pass


@dataclass(frozen=True)
class FixedDistortion:
    ratio: Fraction | float  # math.inf when the optimum has zero cost
    committee: Committee
    optimal_committee: Committee
    objective: Objective
    chosen_cost: Scalar
    optimal_cost: Scalar


def distortion_fixed(
    e: Election, d: LineMetric, committee: Iterable[str], objective: Objective
) -> FixedDistortion:
    members = frozenset(committee)
    if objective is Objective.UTILITARIAN:
        opt = optimal_utilitarian(e, d)
    else:
        opt = optimal_bruteforce(e, d, objective)
    chosen_cost = social_cost(d, members, objective)
    if opt.cost == 0:
        ratio: Fraction | float = ONE if chosen_cost == 0 else math.inf
    else:
        ratio = chosen_cost / opt.cost
    return FixedDistortion(ratio, members, opt.committee, objective, chosen_cost, opt.cost)


def ratio_bound(e: Election, a: str, b: str) -> Fraction | float:
    """2n/|V_{a>b}| - 1: how much costlier a can be than b, given a's support."""
    from .ordering import pairwise_margin

    margin = pairwise_margin(e, a, b)
    if margin == 0:
        return math.inf
    return Fraction(2 * e.n, margin) - 1


# ---------------------------------------------------------------------------
# Focal point and voter moving
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FocalQuery:
    """Two consecutive committees and a ratio threshold tau > 1."""

    s1: Committee  # committee whose exclusive members sit on the right
    s2: Committee  # committee whose exclusive members sit on the left
    tau: Scalar


@dataclass(frozen=True)
class FocalComputation:
    position: Scalar
    shared: tuple[str, ...]  # intersection, by ascending position
    left_only: tuple[str, ...]  # s2 exclusive, ascending
    right_only: tuple[str, ...]  # s1 exclusive, descending
    r: int
    j_star: int
    i_star: int | None
    tau_hat: Scalar | float | None


@dataclass(frozen=True)
class MoveConstraints:
    """Obstacles (position, cumulative voter count), non-decreasing in both."""

    steps: tuple[tuple[Scalar, int], ...] = ()

    def validate(self) -> None:
        prev_pos, prev_count = None, 0
        for pos, count in self.steps:
            if count < prev_count or (prev_pos is not None and pos < prev_pos):
                raise PreconditionViolated("obstacle steps must be non-decreasing")
            prev_pos, prev_count = pos, count


def _alignment(s1: Committee, s2: Committee, d: LineMetric) -> int:
    """+1 if s2's exclusive members sit left of the shared block and s1's sit
    right (the canonical layout), -1 for the mirror image."""
    shared = s1 & s2
    left = s2 - shared
    right = s1 - shared
    if not left or not right:
        return 1
    lo_l = min(d.alt(a) for a in left)
    hi_l = max(d.alt(a) for a in left)
    lo_r = min(d.alt(a) for a in right)
    hi_r = max(d.alt(a) for a in right)
    if shared:
        lo_c = min(d.alt(a) for a in shared)
        hi_c = max(d.alt(a) for a in shared)
        if hi_l <= lo_c and hi_c <= lo_r:
            return 1
        if hi_r <= lo_c and hi_c <= lo_l:
            return -1
    else:
        if hi_l <= lo_r:
            return 1
        if hi_r <= lo_l:
            return -1
    raise PreconditionViolated("committees are not consecutive on this metric")


def focal_point_detail(q: FocalQuery, d: LineMetric) -> FocalComputation:
    if len(q.s1) != len(q.s2):
        raise PreconditionViolated("committees must have equal size")
    if q.tau <= 1:
        raise PreconditionViolated("tau must exceed 1")
    if _alignment(q.s1, q.s2, d) < 0:
        mirrored = focal_point_detail(q, d.reflect())
        return FocalComputation(
            -mirrored.position,
            mirrored.shared,
            mirrored.left_only,
            mirrored.right_only,
            mirrored.r,
            mirrored.j_star,
            mirrored.i_star,
            mirrored.tau_hat,
        )

    k = len(q.s1)
    tau = q.tau
    shared = q.s1 & q.s2
    cs = tuple(sorted(shared, key=lambda a: (d.alt(a), a)))
    left = tuple(sorted(q.s2 - shared, key=lambda a: (d.alt(a), a)))
    right = tuple(sorted(q.s1 - shared, key=lambda a: (-d.alt(a), a)))
    t = len(cs)
    r = t - k // 2
    j_star = math.ceil(Fraction(k) * (tau - 1) / (2 * tau))

    def b_position(j: int) -> Scalar:
        if not 1 <= j <= len(right):
            raise IndexOutOfRange(f"b_{j} does not exist ({len(right)} candidates)")
        return d.alt(right[j - 1])

    # The shared-member branch exists only when the intersection spans more
    # than half the committee: offset rho = t - ceil(k/2) >= 0.  (For even k
    # that equals r; for odd k it is r - 1, and r = 0 belongs to the
    # moving-right case.)
    rho = t - math.ceil(Fraction(k, 2))
    if rho < 0:
        return FocalComputation(b_position(j_star), cs, left, right, r, j_star, None, None)

    if k % 2 == 0:
        i_star = math.floor(Fraction(k - 2 * rho) / (2 * (tau - 1)))
        tau_hat: Scalar | float = math.inf if rho == 0 else Fraction(k, 2 * rho)
    else:
        i_star = math.floor((k - 2 * rho - tau) / (2 * (tau - 1)))
        tau_hat = Fraction(k, 2 * rho + 1)
    if tau <= tau_hat:
        return FocalComputation(b_position(j_star), cs, left, right, r, j_star, i_star, tau_hat)
    idx = math.ceil(Fraction(k, 2)) + i_star
    if not 1 <= idx <= t:
        raise IndexOutOfRange(f"c_{idx} does not exist ({t} shared members)")
    return FocalComputation(d.alt(cs[idx - 1]), cs, left, right, r, j_star, i_star, tau_hat)


def focal_point(q: FocalQuery, d: LineMetric) -> Scalar:
    return focal_point_detail(q, d).position


def move_voters(
    e: Election,
    d: LineMetric,
    s1: Committee,
    s2: Committee,
    tau: Scalar,
    constraints: MoveConstraints,
) -> LineMetric:
    """Collapse voters onto the obstacle positions and the focal point.

    Exactly r_i - r_{i-1} voters stop at obstacle x_i (taken from the left),
    everyone else moves to the focal point.  The cost ratio SC(s2)/SC(s1)
    provably stays above tau; callers should verify, not assume.
    """
    constraints.validate()
    sc2 = social_cost(d, s2, Objective.UTILITARIAN)
    sc1 = social_cost(d, s1, Objective.UTILITARIAN)
    if sc1 == 0 or sc2 / sc1 <= tau:
        raise PreconditionViolated("cost ratio does not exceed tau")
    if _alignment(s1, s2, d) < 0:
        raise PreconditionViolated(
            "mirrored layout: reflect the metric before moving voters"
        )
    x_star = focal_point(FocalQuery(s1, s2, tau), d)

    by_position = sorted(range(d.n), key=lambda i: (d.voter_positions[i], i))
    new_positions = list(d.voter_positions)
    taken = 0
    for pos, cumulative in constraints.steps:
        if pos > x_star:
            raise PreconditionViolated("obstacles must not pass the focal point")
        available = sum(1 for i in by_position if d.voter_positions[i] <= pos)
        if available < cumulative:
            raise PreconditionViolated(
                f"fewer than {cumulative} voters lie left of {pos}"
            )
        for i in by_position[taken:cumulative]:
            new_positions[i] = pos
        taken = max(taken, cumulative)
    for i in by_position[taken:]:
        new_positions[i] = x_star
    return LineMetric(tuple(new_positions), dict(d.alternative_positions))


# ---------------------------------------------------------------------------
# Adversarial distortion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdversarialResult:
    ratio: Fraction | float
    witness: LineMetric | None
    mode: str  # "exact" | "sample"


@dataclass(frozen=True)
class ExactCaps:
    max_voters: int = 5
    max_alternatives: int = 6


def _compatible_gaps(ranking: Sequence[str], seq: Sequence[str]) -> list[int]:
    """Gaps g (0..m) where the ranking can be read as a two-sided merge of
    the alternatives left of the gap (descending) and right of it (ascending)."""
    index = {a: i for i, a in enumerate(seq)}
    m = len(seq)
    gaps = []
    for g in range(m + 1):
        lo, hi = g - 1, g
        ok = True
        for a in ranking:
            i = index[a]
            if i == lo:
                lo -= 1
            elif i == hi:
                hi += 1
            else:
                ok = False
                break
        if ok:
            gaps.append(g)
    return gaps


def _pattern_rows(
    e: Election, seq: Sequence[str], gaps: Sequence[int], strict: bool
) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Homogeneous constraints for one (orientation, gap assignment) pattern.

    Variables: alternative positions by seq index, then voter positions.
    In strict form, chain and consistency rows demand margin >= 1 (any
    strictly consistent embedding scales to satisfy this)."""
    m, n = len(seq), e.n
    idx = {a: j for j, a in enumerate(seq)}
    tight = Fraction(-1) if strict else ZERO
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def blank() -> list[Fraction]:
        return [ZERO] * (m + n)

    for j in range(m - 1):
        row = blank()
        row[j] = ONE
        row[j + 1] = -ONE
        rows.append(row)
        rhs.append(tight)
    for i, g in enumerate(gaps):
        if g >= 1:
            row = blank()
            row[g - 1] = ONE
            row[m + i] = -ONE
            rows.append(row)
            rhs.append(ZERO)
        if g <= m - 1:
            row = blank()
            row[g] = -ONE
            row[m + i] = ONE
            rows.append(row)
            rhs.append(ZERO)
    for i, ranking in enumerate(e.rankings):
        for u, v in zip(ranking, ranking[1:]):
            sign = ONE if idx[u] < idx[v] else -ONE
            row = blank()
            row[m + i] = 2 * sign
            row[idx[u]] -= sign
            row[idx[v]] -= sign
            rows.append(row)
            rhs.append(tight)
    return rows, rhs


def _cost_vector(
    e: Election, seq: Sequence[str], gaps: Sequence[int], members: Iterable[str]
) -> list[Fraction]:
    """Linear coefficients of the committee's utilitarian cost: within a gap
    pattern each |y_i - z_a| resolves to a signed difference."""
    m, n = len(seq), e.n
    idx = {a: j for j, a in enumerate(seq)}
    coef = [ZERO] * (m + n)
    for i, g in enumerate(gaps):
        for a in members:
            j = idx[a]
            if j <= g - 1:  # alternative left of the voter
                coef[m + i] += ONE
                coef[j] -= ONE
            else:
                coef[m + i] -= ONE
                coef[j] += ONE
    return coef


def _metric_from(seq: Sequence[str], x: Sequence[Fraction], n: int) -> LineMetric:
    m = len(seq)
    return make_metric(tuple(x[m : m + n]), {a: x[j] for j, a in enumerate(seq)})


def _candidate_sequences(e: Election) -> list[tuple[str, ...]]:
    """Every alternative order any consistent embedding can realize: the two
    orientations of the recovered non-dominated order, with each dominated
    alternative inserted at every possible slot.  Impossible placements are
    discarded later by the strict-feasibility filter."""
    dominated = pareto_dominated(e, e.alternatives)
    base = order_alternatives(e).sequence
    sequences: list[tuple[str, ...]] = []
    for orient in (base, tuple(reversed(base))):
        partial = [orient]
        for a in sorted(dominated):
            partial = [s[:i] + (a,) + s[i:] for s in partial for i in range(len(s) + 1)]
        sequences.extend(partial)
    seen: set[tuple[str, ...]] = set()
    unique = []
    for s in sequences:
        if s not in seen:
            seen.add(s)
            unique.append(s)
    return unique


def _exact_adversarial(
    e: Election, committee: Committee, caps: ExactCaps
) -> AdversarialResult:
    if e.n > caps.max_voters or e.m > caps.max_alternatives:
        raise BudgetExceeded(
            f"exact mode capped at n<={caps.max_voters}, m<={caps.max_alternatives}"
        )
    best_ratio: Fraction | float | None = None
    best_witness: LineMetric | None = None
    found_pattern = False

    for seq in _candidate_sequences(e):
        per_voter = [_compatible_gaps(r, seq) for r in e.rankings]
        if any(not g for g in per_voter):
            continue
        for gaps in product(*per_voter):
            strict_rows, strict_rhs = _pattern_rows(e, seq, gaps, strict=True)
            if solve_lp([ZERO] * (e.m + e.n), strict_rows, strict_rhs).status == INFEASIBLE:
                continue
            found_pattern = True
            rows, rhs = _pattern_rows(e, seq, gaps, strict=False)
            chosen_vec = _cost_vector(e, seq, gaps, committee)
            for other in combinations(sorted(e.alternatives), e.k):
                norm_vec = _cost_vector(e, seq, gaps, other)
                result = solve_lp(
                    chosen_vec, rows, rhs, a_eq=[norm_vec], b_eq=[ONE], maximize=True
                )
                if result.status == INFEASIBLE:
                    continue  # the candidate optimum has zero cost on this cone
                if result.status == UNBOUNDED:
                    ray = solve_lp(
                        [ZERO] * (e.m + e.n),
                        rows + [norm_vec, [-v for v in norm_vec]],
                        rhs + [ZERO, ZERO],
                        a_eq=[chosen_vec],
                        b_eq=[ONE],
                    )
                    witness = (
                        _metric_from(seq, ray.x, e.n) if ray.status == OPTIMAL else None
                    )
                    return AdversarialResult(math.inf, witness, "exact")
                assert result.status == OPTIMAL
                if best_ratio is None or result.value > best_ratio:
                    best_ratio = result.value
                    best_witness = _metric_from(seq, result.x, e.n)
    if not found_pattern or best_ratio is None:
        raise NotLineRealizable("no strictly consistent embedding exists")
    return AdversarialResult(best_ratio, best_witness, "exact")


def _sample_adversarial(
    e: Election, committee: Committee, objective: Objective, budget: int, seed: int
) -> AdversarialResult:
    rng = random.Random(seed)
    base = order_alternatives(e).sequence
    extra = [a for a in e.alternatives if a not in base]
    best_ratio: Fraction | float | None = None
    best_witness: LineMetric | None = None
    for _ in range(budget):
        seq = list(base if rng.random() < 0.5 else reversed(base))
        for a in extra:  # dominated alternatives get random slots
            seq.insert(rng.randint(0, len(seq)), a)
        span = 4 * len(seq)
        placed = sorted(rng.sample(range(0, 4 * span), len(seq)))
        alt_pos = {a: Fraction(p) for a, p in zip(seq, placed)}
        voters = []
        ok = True
        for ranking in e.rankings:
            lo = Fraction(placed[0] - span)
            hi = Fraction(placed[-1] + span)
            for u, v in zip(ranking, ranking[1:]):
                mid = (alt_pos[u] + alt_pos[v]) / 2
                if alt_pos[u] < alt_pos[v]:
                    hi = min(hi, mid)
                elif alt_pos[u] > alt_pos[v]:
                    lo = max(lo, mid)
                else:
                    ok = False  # equal positions cannot be drawn here
                    break
            if not ok or lo > hi:
                ok = False
                break
            voters.append(lo + (hi - lo) * Fraction(rng.randint(0, 16), 16))
        if not ok:
            continue
        d = make_metric(voters, alt_pos)
        fixed = distortion_fixed(e, d, committee, objective)
        if fixed.optimal_cost == 0:
            continue
        if best_ratio is None or fixed.ratio > best_ratio:
            best_ratio, best_witness = fixed.ratio, d
    if best_ratio is None:
        raise NotLineRealizable("sampling found no consistent embedding")
    return AdversarialResult(best_ratio, best_witness, "sample")


def adversarial_distortion(
    e: Election,
    committee: Iterable[str],
    objective: Objective = Objective.UTILITARIAN,
    mode: str = "exact",
    budget: int = 200,
    seed: int = 0,
    caps: ExactCaps = ExactCaps(),
) -> AdversarialResult:
    """Supremum (exact) or certified lower bound (sample) of the distortion of
    a fixed committee over all metrics consistent with the profile."""
    members = frozenset(committee)
    if mode == "exact":
        if objective is not Objective.UTILITARIAN:
            raise UnsupportedObjective("exact mode supports the utilitarian objective only")
        return _exact_adversarial(e, members, caps)
    if mode == "sample":
        return _sample_adversarial(e, members, objective, budget, seed)
    raise ValueError(f"unknown mode {mode!r}")
