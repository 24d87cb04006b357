"""Supplied local root numbers.

The formulas consume nothing analytic beyond signs epsilon(rho (x) r(n)).
Absolute values are never derived here: the paper only pins down ratios
(successive same-parity entries of a self-dual line differ by omega_rho(-1)),
so tables are caller-supplied data, validated against that ratio rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import Inventory
from .errors import InventoryError, MissingRootNumber


@dataclass(frozen=True)
class RootNumberTable:
    """Partial map (rho id, n >= 1) -> sign, standing for epsilon(rho (x) r(n)).

    Conventions: an empty product is +1 and an r(0) factor contributes +1.
    """

    entries: tuple[tuple[tuple[str, int], int], ...]

    def __post_init__(self) -> None:
        keys = [k for k, _ in self.entries]
        if len(set(keys)) != len(keys):
            raise InventoryError("duplicate (rho, n) entries in root table")
        for (rho, n), v in self.entries:
            if n < 1:
                raise InventoryError(f"root table entry ({rho}, {n}): n must be >= 1")
            if v not in (1, -1):
                raise InventoryError(f"root table entry ({rho}, {n}): sign must be +-1")

    @staticmethod
    def from_map(values: Mapping[tuple[str, int], int]) -> "RootNumberTable":
        return RootNumberTable(tuple(sorted(values.items())))

    @staticmethod
    def from_inventory(inventory: Inventory) -> "RootNumberTable":
        values: dict[tuple[str, int], int] = {}
        for lab in inventory:
            for n, v in lab.root_numbers:
                values[(lab.id, n)] = v
        return RootNumberTable.from_map(values)

    def get(self, rho: str, n: int) -> int:
        if n == 0:
            return 1
        if n < 0:
            n = -n
        for (r, m), v in self.entries:
            if r == rho and m == n:
                return v
        raise MissingRootNumber(rho, n)

    def has(self, rho: str, n: int) -> bool:
        if n <= 0:
            return True
        return any(r == rho and m == n for (r, m), _ in self.entries)


def validate_ratio_rule(table: RootNumberTable, inventory: Inventory) -> list[str]:
    """Check the ratio rule on every self-dual line; returns the violations.

    For n >= 3 with both (rho, n) and (rho, n-2) present the product of the
    two entries must equal omega_rho(-1).  (The squared Frobenius factor in
    the unramified-character case is +1, so the same rule covers every
    self-dual label.)  Ratios that would reach below n = 1 are not formed.
    """
    problems: list[str] = []
    for (rho, n), v in table.entries:
        if rho not in inventory:
            problems.append(f"({rho}, {n}): label not in inventory")
            continue
        lab = inventory[rho]
        if not lab.is_self_dual or n < 3 or not table.has(rho, n - 2):
            continue
        if v * table.get(rho, n - 2) != lab.omega_minus_one:
            problems.append(
                f"({rho}, {n})/({rho}, {n - 2}): ratio must be "
                f"omega({rho})(-1) = {lab.omega_minus_one:+d}"
            )
    return problems


def merge_tables(tables: Iterable[RootNumberTable]) -> RootNumberTable:
    values: dict[tuple[str, int], int] = {}
    for t in tables:
        for k, v in t.entries:
            if values.get(k, v) != v:
                raise InventoryError(f"conflicting root table entries for {k}")
            values[k] = v
    return RootNumberTable.from_map(values)
