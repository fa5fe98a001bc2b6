"""Evaluation metrics: the Runnable@k estimator, state similarity, and
benchmark aggregation.

Runnable@k is the exact rational 1 - C(n-c, k) / C(n, k): the probability
that a uniformly random k-subset of the n samples contains at least one of
the c passing ones. Averages stay rational internally and are rendered to
two decimals only at the reporting boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from tlabench.errors import DomainError, EmptyOracleError
from tlabench.values import State, StateSet


def runnable_at_k(n: int, c: int, k: int) -> Fraction:
    if not 1 <= k <= n:
        raise DomainError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    if not 0 <= c <= n:
        raise DomainError(f"c must satisfy 0 <= c <= n, got c={c}, n={n}")
    return 1 - Fraction(comb(n - c, k), comb(n, k))


@dataclass(frozen=True)
class SimilarityParams:
    theta: Fraction = Fraction(1)
    aux_vars: frozenset[str] = frozenset({"pc"})

    def __post_init__(self):
        if not 0 <= self.theta <= 1:
            raise DomainError(f"theta must lie in [0, 1], got {self.theta}")


def states_similar(s_o: State, s_g: State, p: SimilarityParams) -> bool:
    """Sufficient similarity: the fraction of the generated state's bindings
    (auxiliaries removed) whose value appears anywhere in the oracle state
    reaches the threshold. Variable names are ignored; only values match."""
    core = [(v, val) for v, val in s_g.bindings if v not in p.aux_vars]
    if not core:
        return True
    oracle_values = set(s_o.values())
    matching = sum(1 for _, val in core if val in oracle_values)
    return Fraction(matching, len(core)) >= p.theta


def state_similarity(oracle: StateSet, generated: StateSet, p: SimilarityParams) -> Fraction:
    """Fraction of oracle states with a sufficiently similar generated partner."""
    if not oracle:
        raise EmptyOracleError("oracle state set is empty")
    hit = sum(1 for s_o in oracle if any(states_similar(s_o, s_g, p) for s_g in generated))
    return Fraction(hit, len(oracle))


@dataclass(frozen=True)
class TrialStats:
    n: int
    c: int
    fixes: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.c <= self.n:
            raise DomainError(f"need 0 <= c <= n, got c={self.c}, n={self.n}")
        if len(self.fixes) != self.n:
            raise DomainError(f"need one fix count per sample: {len(self.fixes)} != {self.n}")


@dataclass(frozen=True)
class BenchmarkSummary:
    runnable: dict[int, Fraction]      # k -> mean Runnable@k over problems
    avg_similarity: Fraction | None    # over problems with a scored passing sample
    avg_fixes: Fraction                # over all samples, failures at the cap
    problem_count: int
    scored_count: int                  # problems contributing to avg_similarity

    def to_json(self) -> dict:
        return {
            "runnable": {str(k): str(v) for k, v in self.runnable.items()},
            "avg_similarity": None if self.avg_similarity is None else str(self.avg_similarity),
            "avg_fixes": str(self.avg_fixes),
            "problem_count": self.problem_count,
            "scored_count": self.scored_count,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BenchmarkSummary":
        return cls(
            runnable={int(k): Fraction(v) for k, v in data["runnable"].items()},
            avg_similarity=None if data["avg_similarity"] is None else Fraction(data["avg_similarity"]),
            avg_fixes=Fraction(data["avg_fixes"]),
            problem_count=data["problem_count"],
            scored_count=data["scored_count"],
        )


@dataclass(frozen=True)
class ProblemRow:
    stats: TrialStats
    similarity: Fraction | None = None


def aggregate(rows: list[ProblemRow], ks: tuple[int, ...] = (1, 2, 3)) -> BenchmarkSummary:
    if not rows:
        raise DomainError("aggregate needs at least one problem row")
    runnable: dict[int, Fraction] = {}
    for k in ks:
        vals = [runnable_at_k(r.stats.n, r.stats.c, k) for r in rows if k <= r.stats.n]
        if vals:
            runnable[k] = sum(vals, Fraction(0)) / len(vals)
    sims = [r.similarity for r in rows if r.similarity is not None and r.stats.c > 0]
    avg_similarity = sum(sims, Fraction(0)) / len(sims) if sims else None
    all_fixes = [f for r in rows for f in r.stats.fixes]
    avg_fixes = Fraction(sum(all_fixes), len(all_fixes)) if all_fixes else Fraction(0)
    return BenchmarkSummary(
        runnable=runnable,
        avg_similarity=avg_similarity,
        avg_fixes=avg_fixes,
        problem_count=len(rows),
        scored_count=len(sims),
    )


def render_fraction(x: Fraction | None, percent: bool = False) -> str:
    """Two-decimal rendering at the reporting boundary."""
    if x is None:
        return "-"
    scaled = x * 100 if percent else x
    return f"{float(scaled):.2f}"
