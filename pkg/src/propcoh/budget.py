"""Size budgets shared by the matrix, tower and bar-resolution code.

Defaults can be overridden through the ``PROPCOH_BUDGET`` environment
variable, either as a bare integer (the matrix entry cap) or as a comma
separated list of ``key=value`` pairs, e.g.::

    PROPCOH_BUDGET="max_matrix_entries=1000000,max_generators=48"
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "PROPCOH_BUDGET"


class BudgetExceeded(RuntimeError):
    """A computation would exceed the configured size budget."""


@dataclass(frozen=True)
class Budget:
    max_matrix_entries: int = 2**27
    max_generators: int = 64
    max_order_exponent: int = 40

    def check_entries(self, rows: int, cols: int, what: str = "matrix") -> None:
        if rows * cols > self.max_matrix_entries:
            raise BudgetExceeded(
                f"{what} of shape {rows}x{cols} exceeds the entry budget "
                f"{self.max_matrix_entries}"
            )

    def admits_level(self, ngens: int) -> bool:
        return ngens <= self.max_generators and ngens <= self.max_order_exponent


def parse_budget(text: str, base: Budget | None = None) -> Budget:
    base = base or Budget()
    text = text.strip()
    if not text:
        return base
    if text.isdigit():
        return replace(base, max_matrix_entries=int(text))
    names = {f.name for f in fields(Budget)}
    updates = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise ValueError(f"bad {ENV_VAR} entry {item!r}")
        updates[key] = int(value)
    return replace(base, **updates)


def default_budget() -> Budget:
    return parse_budget(os.environ.get(ENV_VAR, ""))
