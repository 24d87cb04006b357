"""Desk-scale corpora: the standard test inventory and parameter enumeration.

The standard inventory has three labels: the trivial character, a nontrivial
orthogonal character, and a two-dimensional symplectic label, all with
omega(-1) = +1 and all-plus root tables (valid for the ratio rule, and the
absolute values are free data anyway).
"""

from __future__ import annotations

from typing import Iterator

from .core import (
    AParameter,
    BlockKey,
    CuspidalLabel,
    GroupSide,
    Inventory,
    JordanBlock,
    SelfDualType,
    build_inventory,
    build_parameter,
    classify,
    is_good_parity_block,
)
from .roots import RootNumberTable

ROOT_TABLE_DEPTH = 25


def standard_inventory(root_depth: int = ROOT_TABLE_DEPTH) -> Inventory:
    def plus_table(parity: int) -> tuple[tuple[int, int], ...]:
        return tuple((n, 1) for n in range(1, root_depth + 1) if n % 2 == parity)

    return build_inventory(
        [
            CuspidalLabel(
                "triv", 1, "triv", SelfDualType.ORTHOGONAL,
                is_trivial=True, omega_minus_one=1, root_numbers=plus_table(0),
            ),
            CuspidalLabel(
                "chi", 1, "chi", SelfDualType.ORTHOGONAL,
                omega_minus_one=1, root_numbers=plus_table(0),
            ),
            CuspidalLabel(
                "rho2", 2, "rho2", SelfDualType.SYMPLECTIC,
                omega_minus_one=1, root_numbers=plus_table(1),
            ),
        ]
    )


def standard_roots(root_depth: int = ROOT_TABLE_DEPTH) -> RootNumberTable:
    return RootNumberTable.from_inventory(standard_inventory(root_depth))


def good_parity_block_keys(inventory: Inventory, max_dim: int) -> tuple[BlockKey, ...]:
    """All good-parity block shapes of dimension at most max_dim, sorted."""
    keys = []
    for lab in inventory:
        if not lab.is_self_dual:
            continue
        a = 1
        while lab.dim * a <= max_dim:
            b = 1
            while lab.dim * a * b <= max_dim:
                if is_good_parity_block(lab, a, b):
                    keys.append((lab.id, a, b))
                b += 1
            a += 1
    return tuple(sorted(keys))


def iter_good_parity(
    inventory: Inventory,
    max_dim: int,
    side: GroupSide = GroupSide.METAPLECTIC,
    include_empty: bool = True,
) -> Iterator[AParameter]:
    """All good-parity parameters of total dimension at most max_dim.

    Recursive block packing over the sorted shape list; deterministic order.
    """
    shapes = good_parity_block_keys(inventory, max_dim)
    dims = [inventory[r].dim * a * b for (r, a, b) in shapes]

    def rec(i: int, budget: int, acc: list[JordanBlock]) -> Iterator[AParameter]:
        yield build_parameter(inventory, list(acc), side)
        for j in range(i, len(shapes)):
            d = dims[j]
            r, a, b = shapes[j]
            mult = 1
            while mult * d <= budget:
                acc.append(JordanBlock(r, a, b, mult))
                yield from rec(j + 1, budget - mult * d, acc)
                acc.pop()
                mult += 1

    for psi in rec(0, max_dim, []):
        if psi.blocks or include_empty:
            yield psi


def iter_nonneg_ddr(inventory: Inventory, max_dim: int) -> Iterator[AParameter]:
    for psi in iter_good_parity(inventory, max_dim):
        if classify(psi).nonneg_ddr:
            yield psi


def iter_discrete_lparameters(
    inventory: Inventory, max_dim: int
) -> Iterator[AParameter]:
    """Multiplicity-free good-parity parameters with b = 1 throughout."""
    for psi in iter_good_parity(inventory, max_dim):
        cls = classify(psi)
        if cls.discrete and cls.tempered:
            yield psi
