"""Global elementary-term budget guarding the heavyweight direct paths.

One knob for the whole library: exceeding it raises, it never truncates.
The FFPROG_BUDGET environment variable overrides the default; an explicit
set_budget() overrides both (pass None to fall back again).
"""

import os

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**9
ENV_VAR = "FFPROG_BUDGET"

_override: int | None = None


def set_budget(value: int | None) -> None:
    global _override
    if value is not None and value <= 0:
        raise ValueError("budget must be positive")
    _override = value


def get_budget() -> int:
    if _override is not None:
        return _override
    raw = os.environ.get(ENV_VAR)
    if raw is not None:
        return int(raw)
    return DEFAULT_BUDGET


def charge(terms: int, what: str) -> None:
    """Raise BudgetExceeded if `terms` elementary operations exceed the budget."""
    limit = get_budget()
    if terms > limit:
        raise BudgetExceeded(f"{what} needs ~{terms} elementary terms, budget is {limit}")
