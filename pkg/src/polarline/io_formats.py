"""File formats and report emission.

Profile files: first line `n m k`, second line the m alternative ids, then
grouped ranking lines `count: id id ... id` whose counts sum to n.  Metric
files: one `voter <index> <position>` or `alt <id> <position>` record per
line, positions written as exact rationals `p/q` or integers.  Reports are
JSON documents carrying exact values as strings plus advisory decimals.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping

from .costs import Objective, social_cost
from .model import Election, LineMetric, Scalar, make_metric, validate_election


class ProfileSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CountMismatch(ValueError):
    pass


class UnknownAlternative(ValueError):
    pass


class MetricSyntaxError(ValueError):
    pass


def format_scalar(x: Scalar | float) -> str:
    if x == math.inf:
        return "inf"
    frac = Fraction(x)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def decimal_truncate(x: Scalar | float, significant: int = 12) -> str:
    """Decimal rendering truncated (not rounded) to `significant` digits."""
    if x == math.inf:
        return "inf"
    frac = Fraction(x)
    if frac == 0:
        return "0"
    sign = "-" if frac < 0 else ""
    frac = abs(frac)
    exp = 0
    while 10**exp > frac:
        exp -= 1
    while 10 ** (exp + 1) <= frac:
        exp += 1
    shift = significant - 1 - exp
    if shift >= 0:
        scaled = frac.numerator * 10**shift // frac.denominator
    else:
        scaled = frac.numerator // (frac.denominator * 10**-shift)
    digits = str(scaled)
    point = exp + 1
    if point <= 0:
        text = "0." + "0" * (-point) + digits
    elif point >= len(digits):
        text = digits + "0" * (point - len(digits))
    else:
        text = digits[:point] + "." + digits[point:]
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return sign + text


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


def parse_profile(text: str) -> Election:
    lines = text.splitlines()
    meaningful = [
        (i + 1, line.strip()) for i, line in enumerate(lines) if line.strip()
    ]
    if len(meaningful) < 3:
        raise ProfileSyntaxError(len(lines), "expected header, alternatives, rankings")
    header_no, header = meaningful[0]
    parts = header.split()
    if len(parts) != 3:
        raise ProfileSyntaxError(header_no, "header must be `n m k`")
    try:
        n, m, k = (int(p) for p in parts)
    except ValueError:
        raise ProfileSyntaxError(header_no, "header fields must be integers") from None
    alt_no, alt_line = meaningful[1]
    alternatives = tuple(alt_line.split())
    if len(alternatives) != m:
        raise ProfileSyntaxError(alt_no, f"expected {m} alternative ids")
    known = set(alternatives)
    rankings: list[tuple[str, ...]] = []
    for line_no, line in meaningful[2:]:
        if ":" not in line:
            raise ProfileSyntaxError(line_no, "ranking lines look like `count: id id ...`")
        count_part, ranking_part = line.split(":", 1)
        try:
            count = int(count_part.strip())
        except ValueError:
            raise ProfileSyntaxError(line_no, "count must be an integer") from None
        if count < 1:
            raise ProfileSyntaxError(line_no, "count must be positive")
        ranking = tuple(ranking_part.split())
        for a in ranking:
            if a not in known:
                raise UnknownAlternative(f"line {line_no}: {a!r} not declared")
        rankings.extend([ranking] * count)
    if len(rankings) != n:
        raise CountMismatch(f"ranking counts sum to {len(rankings)}, expected {n}")
    e = Election(n, alternatives, k, tuple(rankings))
    validate_election(e)
    return e


def serialize_profile(e: Election) -> str:
    lines = [f"{e.n} {e.m} {e.k}", " ".join(e.alternatives)]
    run_start = 0
    for i in range(1, e.n + 1):
        if i == e.n or e.rankings[i] != e.rankings[run_start]:
            lines.append(f"{i - run_start}: " + " ".join(e.rankings[run_start]))
            run_start = i
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


def parse_metric(text: str) -> LineMetric:
    voters: dict[int, Fraction] = {}
    alts: dict[str, Fraction] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("voter", "alt"):
            raise MetricSyntaxError(f"line {line_no}: expected `voter i pos` or `alt id pos`")
        try:
            position = Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise MetricSyntaxError(f"line {line_no}: bad position {parts[2]!r}") from None
        if parts[0] == "voter":
            try:
                index = int(parts[1])
            except ValueError:
                raise MetricSyntaxError(f"line {line_no}: bad voter index") from None
            if index in voters:
                raise MetricSyntaxError(f"line {line_no}: duplicate voter {index}")
            voters[index] = position
        else:
            if parts[1] in alts:
                raise MetricSyntaxError(f"line {line_no}: duplicate alternative {parts[1]!r}")
            alts[parts[1]] = position
    if sorted(voters) != list(range(len(voters))):
        raise MetricSyntaxError("voter indices must be exactly 0..n-1")
    return make_metric([voters[i] for i in range(len(voters))], alts)


def serialize_metric(d: LineMetric) -> str:
    lines = [f"voter {i} {format_scalar(x)}" for i, x in enumerate(d.voter_positions)]
    lines += [
        f"alt {a} {format_scalar(x)}"
        for a, x in sorted(d.alternative_positions.items())
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def scalar_entry(x: Scalar | float) -> dict[str, str]:
    return {"exact": format_scalar(x), "decimal": decimal_truncate(x)}


def build_report(
    *,
    rule: str | None,
    k: int,
    committee: Iterable[str],
    objective: Objective | None = None,
    chosen_cost: Scalar | None = None,
    optimal_cost: Scalar | None = None,
    ratio: Scalar | float | None = None,
    bound: tuple[Fraction, Fraction] | None = None,
    passed: bool | None = None,
    witness_path: str | None = None,
    election: Election | None = None,
    metric: LineMetric | None = None,
) -> dict:
    """Assemble a report; any stated ratio is re-verified against an
    independent cost recomputation when the election and metric are given."""
    if (
        ratio is not None
        and ratio != math.inf
        and election is not None
        and metric is not None
        and objective is not None
        and optimal_cost
    ):
        again = social_cost(metric, committee, objective)
        if Fraction(again, optimal_cost) != ratio:
            raise AssertionError("report ratio failed recomputation")
    report: dict = {"rule": rule, "k": k, "committee": sorted(committee)}
    if objective is not None:
        report["objective"] = objective.value
    if chosen_cost is not None:
        report["cost"] = scalar_entry(chosen_cost)
    if optimal_cost is not None:
        report["optimal_cost"] = scalar_entry(optimal_cost)
    if ratio is not None:
        report["ratio"] = scalar_entry(ratio)
    if bound is not None:
        p, q = bound
        report["bound"] = {
            "exact": f"{format_scalar(p)} + {format_scalar(q)}*sqrt(2)",
            "decimal": f"{float(p) + float(q) * math.sqrt(2):.12g}",
        }
    if passed is not None:
        report["pass"] = passed
    if witness_path is not None:
        report["witness"] = witness_path
    return report


def dump_report(report: Mapping, json_mode: bool) -> str:
    if json_mode:
        return json.dumps(report, indent=2, sort_keys=True)
    lines = []
    for key, value in report.items():
        if isinstance(value, dict) and "exact" in value:
            lines.append(f"{key}: {value['exact']} ({value['decimal']})")
        elif isinstance(value, list):
            lines.append(f"{key}: {' '.join(str(v) for v in value)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)
