"""Assign equations to players so no player's own variable occurs in its equation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

__all__ = ["EquationAssignment", "MatchingError", "assign_equations"]


class MatchingError(ValueError):
    """No perfect admissible matching exists."""


@dataclass(frozen=True)
class EquationAssignment:
    """``equation_of[k]`` is the index of the equation owned by player ``k``."""

    equation_of: tuple[int, ...]
    owners: tuple[Hashable, ...]

    def owner_of(self, eq: int) -> int:
        return self.equation_of.index(eq)

    def is_valid(self, equation_vars: Sequence[set]) -> bool:
        if sorted(self.equation_of) != list(range(len(equation_vars))):
            return False
        return all(
            owner not in equation_vars[eq] for owner, eq in zip(self.owners, self.equation_of)
        )


def assign_equations(equation_vars: Sequence[set], owners: Sequence[Hashable]) -> EquationAssignment:
    """Perfect matching of players to equations by augmenting paths.

    ``equation_vars[e]`` is the set of variables occurring in equation ``e``
    and ``owners[k]`` is player ``k``'s variable.  Players and equations are
    visited in index order, so the result is deterministic.
    """
    if len(equation_vars) != len(owners):
        raise MatchingError(f"{len(equation_vars)} equations for {len(owners)} players")
    owners = tuple(owners)
    allowed = [
        [e for e, vs in enumerate(equation_vars) if owner not in vs] for owner in owners
    ]
    player_of: dict[int, int] = {}

    def augment(k: int, seen: set[int]) -> bool:
        for e in allowed[k]:
            if e in seen:
                continue
            seen.add(e)
            if e not in player_of or augment(player_of[e], seen):
                player_of[e] = k
                return True
        return False

    for k in range(len(owners)):
        if not augment(k, set()):
            raise MatchingError(f"no admissible equation left for player {owners[k]!r}")
    equation_of = [0] * len(owners)
    for e, k in player_of.items():
        equation_of[k] = e
    return EquationAssignment(tuple(equation_of), owners)
