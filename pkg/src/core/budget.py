"""
Check budgets for exhaustive searches.
"""
import logging
import threading
from typing import Optional

from config.settings import BUDGET_CONFIG
from .errors import BudgetExceededError

logger = logging.getLogger(__name__)


class CheckBudget:
    """Thread-safe counter of elementary checks with a hard limit."""

    def __init__(self, limit: Optional[int] = None, label: str = "checks"):
        self.limit = BUDGET_CONFIG["max_checks"] if limit is None else int(limit)
        self.label = label
        self.used = 0
        self._lock = threading.Lock()

    def spend(self, amount: int = 1) -> None:
        """Charge ``amount`` checks, raising once the limit is passed."""
        with self._lock:
            self.used += amount
            if self.used > self.limit:
                logger.info(f"Budget exhausted: {self.used} {self.label} > {self.limit}")
                raise BudgetExceededError(
                    f"Budget of {self.limit} {self.label} exceeded",
                    details={"limit": self.limit, "used": self.used, "kind": self.label},
                )

    @property
    def remaining(self) -> int:
        return max(0, self.limit - self.used)


def ensure_budget(budget: Optional[CheckBudget]) -> CheckBudget:
    """Return ``budget`` or a fresh one built from the default limits."""
    return budget if budget is not None else CheckBudget()
