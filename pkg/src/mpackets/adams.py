"""The theta shift on extended multi-segments and its packet compatibility.

For large even alpha the shift appends the long segment
[(alpha-1)/2, -(alpha-1)/2] on the trivial line (below everything), flips the
signs of the existing trivial-line segments, and lands on the odd-orthogonal
side.  The new segment's l is alpha/2 or alpha/2 - 1 according to the product
of the multiplicity pairing and the supplied root numbers, which is also the
value of the shifted representation at -1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import AParameter, Character, GroupSide, pair
from .errors import PreconditionError
from .halfint import HalfInteger
from .nonvanish import nonvanishing
from .packets import enumerate_all
from .roots import RootNumberTable
from .xms import (
    ExtendedMultiSegment,
    ExtendedSegment,
    build_xms,
    canonical,
    enhanced,
)


def eps_psi(psi: AParameter, table: RootNumberTable) -> int:
    """Root number of the diagonal restriction: over each block, the product
    of the entries at n = 2(B + k) + 1 for k = 0..b-1 (an r(0) factor is +1;
    factors below zero pair off by the symmetric convention |n|)."""
    out = 1
    for blk in psi.blocks:
        for _ in range(blk.mult):
            n = blk.B.twice + 1  # 2B + 1
            for _k in range(blk.b):
                out *= table.get(blk.rho, n)
                n += 2
    return out


def s0_pair(E: ExtendedMultiSegment) -> int:
    """Pairing of the enhanced character against the multiplicity sign vector
    (-1)**m(rho, a, b)."""
    psi, eps = enhanced(E)
    s0 = Character.from_map(
        {b.key: (-1 if b.mult % 2 else 1) for b in psi.blocks}
    )
    return pair(eps, s0)


@dataclass(frozen=True)
class AlphaShift:
    xms: ExtendedMultiSegment
    central_sign: int


def _trivial_id(E: ExtendedMultiSegment) -> str:
    for lab in E.inventory:
        if lab.is_trivial:
            return lab.id
    raise PreconditionError("inventory carries no trivial label")


def shift_alpha(
    E: ExtendedMultiSegment, alpha: int, table: RootNumberTable
) -> AlphaShift:
    """Shift a good-parity multi-segment by an even alpha >= 2n + 2."""
    if alpha % 2 != 0 or alpha < 2 * E.n + 2:
        raise PreconditionError(
            f"alpha = {alpha} must be even and at least 2n + 2 = {2 * E.n + 2}"
        )
    triv = _trivial_id(E)
    psi, _ = enhanced(E)
    sign = s0_pair(E) * eps_psi(psi, table)
    l_alpha = alpha // 2 if sign == -1 else alpha // 2 - 1
    long_seg = ExtendedSegment(
        HalfInteger(alpha - 1), HalfInteger(1 - alpha), l_alpha, 1
    )
    lines = {rho: segs for rho, segs in E.lines}
    lines[triv] = (long_seg,) + tuple(
        replace(s, eta=-s.eta) for s in E.line(triv)
    )
    return AlphaShift(
        xms=build_xms(E.inventory, lines, GroupSide.ODD_ORTHOGONAL),
        central_sign=sign,
    )


@dataclass(frozen=True)
class ShiftReport:
    parameter: AParameter
    alpha: int
    passed: bool
    checked_members: int
    violations: tuple[str, ...]


def packet_shift_check(
    psi: AParameter, alpha: int, table: RootNumberTable
) -> ShiftReport:
    """Shift every non-vanishing class over psi and verify, member by member:
    the block bookkeeping (one new (triv, 1, alpha) block), character
    agreement away from the trivial line, injectivity of the shift across the
    whole packet union, and preservation of non-vanishing."""
    violations: list[str] = []
    table_by_eps = enumerate_all(psi)
    triv = None
    for lab in psi.inventory:
        if lab.is_trivial:
            triv = lab.id
    if triv is None:
        raise PreconditionError("inventory carries no trivial label")

    images: dict[ExtendedMultiSegment, ExtendedMultiSegment] = {}
    checked = 0
    for eps, members in sorted(table_by_eps.items(), key=lambda kv: kv[0].values):
        for member in members:
            E = member.xms
            checked += 1
            shifted = shift_alpha(E, alpha, table)
            Ea = shifted.xms
            psi_a, eps_a = enhanced(Ea)

            expected = {b.key: b.mult for b in psi.blocks}
            expected[(triv, 1, alpha)] = expected.get((triv, 1, alpha), 0) + 1
            got = {b.key: b.mult for b in psi_a.blocks}
            if got != expected:
                violations.append(f"{E}: shifted blocks are {got}, want {expected}")
            if psi_a.dim != psi.dim + alpha:
                violations.append(f"{E}: dimension {psi_a.dim} != {psi.dim} + {alpha}")
            if psi_a.side is not GroupSide.ODD_ORTHOGONAL:
                violations.append(f"{E}: shift must land on the odd-orthogonal side")

            for key, v in eps.values:
                if key[0] != triv and eps_a(key) != v:
                    violations.append(
                        f"{E}: character moved on {key}: {eps_a(key)} != {v}"
                    )

            form = canonical(Ea)
            if form in images and images[form] != E:
                violations.append(
                    f"shift collides: {images[form]} and {E} both map to {form}"
                )
            images[form] = E

            if not nonvanishing(Ea):
                violations.append(f"{E}: shifted class fails the non-vanishing "
                                  "criterion")
    return ShiftReport(
        parameter=psi,
        alpha=alpha,
        passed=not violations,
        checked_members=checked,
        violations=tuple(violations),
    )
