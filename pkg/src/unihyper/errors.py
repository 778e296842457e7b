"""Exception types shared across the package."""

from __future__ import annotations


class BudgetExceeded(RuntimeError):
    """A desk-scale budget would be exceeded.

    ``budget`` names the exhausted budget, ``estimate`` is the size that was
    requested (candidate count, vertex count, search nodes, ...).
    """

    def __init__(self, budget: str, estimate: int | float, limit: int | float):
        self.budget = budget
        self.estimate = estimate
        self.limit = limit
        super().__init__(f"{budget} budget exceeded: needed {estimate}, limit {limit}")


class GenerationFailure(RuntimeError):
    """Randomized generation gave up after a bounded number of attempts."""

    def __init__(self, what: str, attempts: int, detail: str = ""):
        self.what = what
        self.attempts = attempts
        msg = f"failed to generate {what} after {attempts} attempts"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class SearchExhausted(RuntimeError):
    """A search ran out of budget before finding a witness.

    This is not a proof of nonexistence. ``stage`` names the pipeline step.
    """

    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        super().__init__(f"search budget exhausted in {stage}" + (f": {detail}" if detail else ""))


class OpenCase(ValueError):
    """Parameter combination for which no construction is implemented."""
