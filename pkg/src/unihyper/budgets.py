"""Default desk-scale budgets.

Every budget can be overridden per call. The environment variable
``UNIHYPER_BUDGET_SCALE`` multiplies all defaults (useful for bigger runs).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import BudgetExceeded


def _scale() -> float:
    try:
        return float(os.environ.get("UNIHYPER_BUDGET_SCALE", "1"))
    except ValueError:
        return 1.0


@dataclass(frozen=True)
class Budgets:
    candidate_subsets: int = 1 << 22   # edge-subset enumeration
    rsets: int = 2_000_000             # C(n, r) scans in expand / clique search
    vertices: int = 20_000             # product graph vertex count
    search_nodes: int = 2_000_000      # backtracking nodes per search
    local_search_steps: int = 200_000  # annealing moves
    retries: int = 10_000              # randomized generator attempts

    def scaled(self, factor: float) -> "Budgets":
        return Budgets(*(max(1, int(v * factor)) for v in
                         (self.candidate_subsets, self.rsets, self.vertices,
                          self.search_nodes, self.local_search_steps, self.retries)))


def default_budgets() -> Budgets:
    s = _scale()
    return Budgets() if s == 1.0 else Budgets().scaled(s)


DEFAULT = default_budgets()


def check(name: str, needed: int | float, limit: int | float) -> None:
    if needed > limit:
        raise BudgetExceeded(name, needed, limit)


__all__ = ["Budgets", "DEFAULT", "default_budgets", "check", "replace"]
