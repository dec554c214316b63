"""Equilibrium checks of encoded games along their witness family."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..encoders.witness import DomainError, EncodingWitness, replay_witness
from ..game import Game, format_number, indifference_residuals

__all__ = [
    "PointResult",
    "VerificationReport",
    "check_points",
    "grid_completeness",
    "cluster_points",
    "grid_clusters",
]


@dataclass(frozen=True)
class PointResult:
    point: tuple
    max_residual: object
    interior: tuple[tuple[bool, ...], ...]
    passed: bool
    note: str = ""

    def to_line(self) -> str:
        coords = " ".join(format_number(x) for x in self.point)
        if self.note:
            return f"point {coords}: {self.note} fail"
        verdict = "pass" if self.passed else "fail"
        interior = "interior" if all(all(r) for r in self.interior) else "boundary"
        return f"point {coords}: max_residual={format_number(self.max_residual)} {interior} {verdict}"


@dataclass(frozen=True)
class VerificationReport:
    results: tuple[PointResult, ...]
    tol: object

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def num_passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def num_failed(self) -> int:
        return len(self.results) - self.num_passed

    def to_text(self) -> str:
        lines = [r.to_line() for r in self.results]
        lines.append(
            f"summary: {self.num_passed} passed, {self.num_failed} failed, tol={format_number(self.tol)}"
        )
        return "\n".join(lines) + "\n"


def _check_one(game: Game, witness: EncodingWitness, point, tol) -> PointResult:
    point = tuple(point)
    try:
        profile = replay_witness(witness, point)
    except DomainError as exc:
        return PointResult(point, None, (), False, f"outside domain ({exc})")
    report = indifference_residuals(game, profile)
    worst = report.max_abs
    interior = profile.interior_flags()
    passed = worst <= tol and all(all(r) for r in interior)
    return PointResult(point, worst, interior, bool(passed))


def check_points(
    game: Game, witness: EncodingWitness, points: Sequence[Sequence], tol=0
) -> VerificationReport:
    """Replay the witness at each point and test the indifference conditions.

    Rational points with ``tol == 0`` are checked in exact arithmetic; float
    points give float residuals.
    """
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    if witness.strategy_counts != game.strategy_counts:
        raise ValueError("witness does not belong to this game")
    results = []
    for point in points:
        if len(point) != witness.n:
            raise ValueError(f"point {tuple(point)} has {len(point)} coordinates, expected {witness.n}")
        results.append(_check_one(game, witness, point, tol))
    return VerificationReport(tuple(results), tol)


def grid_completeness(
    game: Game,
    witness: EncodingWitness,
    axis: int = 0,
    grid: int = 201,
    tol: float = 1e-9,
    base_point: Sequence | None = None,
) -> list[float]:
    """Grid values along ``axis`` whose replayed profile passes at ``tol``.

    The grid is ``k / (grid - 1)`` for ``k = 0 .. grid-1`` in float mode;
    points outside the open domain are skipped.  Other coordinates stay at
    ``base_point`` (needed when the witness takes more than one input).
    """
    if grid < 2:
        raise ValueError("grid needs at least two points")
    if base_point is None:
        if witness.n != 1:
            raise ValueError("multi-input witness needs a base point for the other axes")
        base_point = [0.0]
    base = [float(x) for x in base_point]
    passing = []
    for k in range(grid):
        t = k / (grid - 1)
        point = list(base)
        point[axis] = t
        result = _check_one(game, witness, point, tol)
        if result.passed:
            passing.append(t)
    return passing


def cluster_points(values: Sequence[float], radius: float) -> list[list[float]]:
    """Group sorted values whose consecutive gaps are at most ``radius``."""
    clusters: list[list[float]] = []
    for v in sorted(values):
        if clusters and v - clusters[-1][-1] <= radius * (1 + 1e-12):
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return clusters


def grid_clusters(game, witness, grid: int = 2001, tol: float = 1e-9, radius_steps: int = 2, **kw):
    """Passing grid points grouped into clusters ``radius_steps`` grid steps wide."""
    hits = grid_completeness(game, witness, grid=grid, tol=tol, **kw)
    return cluster_points(hits, radius_steps / (grid - 1))
