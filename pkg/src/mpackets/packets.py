"""Packet enumeration, the degeneration/splitting consistency oracle, and
multiplicity diagnostics.

A packet member is a canonical extended multi-segment surviving the
non-vanishing criterion, tagged (in the general case) with the matrix shapes
of the GL factor.  Enumeration fixes the canonical admissible order, runs
over all (l, eta) assignments, and filters by the requested character.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator

from .core import (
    AParameter,
    BlockKey,
    Character,
    JordanBlock,
    TauBlockShape,
    all_characters,
    build_parameter,
    classify,
    decompose,
    tau_np_shape,
)
from .errors import ParameterError, PreconditionError
from .halfint import HalfInteger, neg_one_pow
from .nonvanish import nonvanishing
from .xms import (
    ExtendedMultiSegment,
    ExtendedSegment,
    build_xms,
    canonical,
    canonical_order,
    deform_minus,
    enhanced,
)


@dataclass(frozen=True)
class PacketMember:
    xms: ExtendedMultiSegment
    np_label: tuple[TauBlockShape, ...] = ()


def _sort_key(E: ExtendedMultiSegment):
    return tuple(
        (rho, tuple((s.A.twice, s.B.twice, s.l, s.eta) for s in segs))
        for rho, segs in E.lines
    )


def _segment_options(key: BlockKey) -> tuple[ExtendedSegment, ...]:
    """All canonical (l, eta) assignments of one block: eta is pinned to +1 at
    l = b/2 where it carries no information."""
    _, a, b = key
    A = HalfInteger(a + b - 2)
    B = HalfInteger(a - b)
    opts = []
    for l in range(b // 2 + 1):
        if 2 * l == b:
            opts.append(ExtendedSegment(A, B, l, 1))
        else:
            opts.append(ExtendedSegment(A, B, l, 1))
            opts.append(ExtendedSegment(A, B, l, -1))
    return tuple(opts)


def _equal_pair_ok(prev: ExtendedSegment, nxt: ExtendedSegment) -> bool:
    """Early pruning for adjacent equal intervals: l must agree, and eta must
    flip with the parity of A - B unless it is the free sign at l = b/2."""
    if prev.l != nxt.l:
        return False
    if 2 * prev.l == prev.b:
        return True
    return nxt.eta == neg_one_pow(prev.A - prev.B) * prev.eta


def _line_assignments(
    keys: tuple[BlockKey, ...]
) -> Iterator[tuple[ExtendedSegment, ...]]:
    options = [_segment_options(k) for k in keys]

    def rec(i: int, acc: list[ExtendedSegment]) -> Iterator[tuple[ExtendedSegment, ...]]:
        if i == len(keys):
            yield tuple(acc)
            return
        for s in options[i]:
            if i > 0 and keys[i] == keys[i - 1] and not _equal_pair_ok(acc[-1], s):
                continue
            acc.append(s)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def candidates(psi: AParameter) -> tuple[ExtendedMultiSegment, ...]:
    """Every canonical-order (l, eta) assignment over psi, vanishing or not.

    Equal adjacent blocks are pruned early by the equal-segment constraint;
    pruned assignments fail the criterion anyway.
    """
    if not classify(psi).good_parity:
        raise ParameterError("extended multi-segments refine good-parity "
                             "parameters only")
    order = canonical_order(psi)
    rhos = sorted(order)
    per_line = [tuple(_line_assignments(order[rho])) for rho in rhos]
    out = []
    for combo in itertools.product(*per_line):
        lines = dict(zip(rhos, combo))
        out.append(build_xms(psi.inventory, lines, psi.side))
    return tuple(sorted(out, key=_sort_key))


@functools.lru_cache(maxsize=None)
def enumerate_all(psi: AParameter) -> dict[Character, tuple[PacketMember, ...]]:
    """Members for every character: the non-vanishing canonical forms over
    psi, grouped by their enhanced character."""
    grouped: dict[Character, list[PacketMember]] = {
        eps: [] for eps in all_characters(psi)
    }
    for E in candidates(psi):
        _, eps_E = enhanced(E)
        if nonvanishing(E):
            grouped[eps_E].append(PacketMember(E))
    return {eps: tuple(members) for eps, members in grouped.items()}


def enumerate_packet(psi: AParameter, eps: Character) -> tuple[PacketMember, ...]:
    """Members of the packet slice attached to one character."""
    table = enumerate_all(psi)
    if eps not in table:
        raise ParameterError("character does not live on the parameter's classes")
    return table[eps]


def general(psi: AParameter) -> tuple[PacketMember, ...]:
    """Packet of an arbitrary parameter: good-parity members tagged with the
    GL-factor shapes of the non-good-parity part."""
    gp, np_blocks = decompose(psi)
    label = tau_np_shape(np_blocks)
    out: list[PacketMember] = []
    for eps in all_characters(gp):
        for m in enumerate_packet(gp, eps):
            out.append(PacketMember(m.xms, label))
    return tuple(out)


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PacketReport:
    parameter: AParameter
    total: int
    per_character: tuple[tuple[Character, int], ...]
    duplicate_forms: tuple[ExtendedMultiSegment, ...]
    empty_characters: tuple[Character, ...]

    @property
    def multiplicity_free(self) -> bool:
        return not self.duplicate_forms


def report(psi: AParameter) -> PacketReport:
    """Multiplicity diagnostics: canonical forms must be pairwise distinct
    across characters; characters receiving no member are surfaced (the
    multiplicity-two tempered phenomenon)."""
    table = enumerate_all(psi)
    seen: dict = {}
    dupes = []
    per_char = []
    empties = []
    total = 0
    for eps in all_characters(psi):
        members = table[eps]
        per_char.append((eps, len(members)))
        total += len(members)
        if not members:
            empties.append(eps)
        for m in members:
            if m.xms in seen:
                dupes.append(m.xms)
            seen[m.xms] = eps
    return PacketReport(
        parameter=psi,
        total=total,
        per_character=tuple(per_char),
        duplicate_forms=tuple(dupes),
        empty_characters=tuple(empties),
    )


# ---------------------------------------------------------------------------
# the recursion consistency oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DdrReport:
    parameter: AParameter
    character: Character
    block: BlockKey
    passed: bool
    details: tuple[str, ...]
    checked_members: int


def _forms(members: tuple[PacketMember, ...]) -> set[ExtendedMultiSegment]:
    return {m.xms for m in members}


def _split_segment(
    E: ExtendedMultiSegment, rho: str, pos: int
) -> ExtendedMultiSegment:
    """Replace the segment at ``pos`` (with l = 0) by the singleton segments
    ([C, C], 0, (-1)**(C - B) eta) for C = B..A, in ascending order."""
    segs = list(E.line(rho))
    s = segs.pop(pos)
    pieces = []
    C = s.B
    while C <= s.A:
        pieces.append(
            ExtendedSegment(C, C, 0, neg_one_pow(C - s.B) * s.eta)
        )
        C = C + 1
    segs[pos:pos] = pieces
    return E.with_line(rho, segs)


def ddr_check(psi: AParameter, eps: Character, block: BlockKey) -> DdrReport:
    """Cross-check the packet against the one-step recursion at a block.

    Members whose distinguished segment has l >= 1 must biject, via the
    shrinking deformation, with the packet of the parameter where (rho, A, B)
    degenerates to (rho, A-1, B+1) (the block disappears at A = B + 1, and
    when additionally the block's sign is -1 that side must be empty).
    Members with l = 0 and sign eta must biject, via splitting into
    singletons [C, C] with alternating signs, with the packet of the split
    parameter, for the eta compatible with the block's sign.
    """
    cls = classify(psi)
    if not cls.nonneg_ddr:
        raise PreconditionError("the recursion oracle needs a non-negative DDR")
    rho, a, b = block
    if psi.mult(block) != 1:
        raise PreconditionError(f"block {block} is not a block of the parameter")
    if b < 2:
        raise PreconditionError(f"block {block} needs A > B (b >= 2)")
    eta0 = eps(block)
    details: list[str] = []

    members = enumerate_packet(psi, eps)
    order = canonical_order(psi)[rho]
    pos = order.index(block)
    p1 = [m.xms for m in members if m.xms.line(rho)[pos].l >= 1]
    p0 = [m.xms for m in members if m.xms.line(rho)[pos].l == 0]

    # (i) the shrinking bijection
    if b == 2:
        if eta0 == -1:
            if p1:
                details.append(
                    f"expected no members with l >= 1 at {block} when its sign "
                    f"is -1; found {len(p1)}"
                )
        else:
            deg_blocks = [blk for blk in psi.blocks if blk.key != block]
            psi_deg = build_parameter(psi.inventory, deg_blocks, psi.side)
            eps_deg = eps.drop(block)
            _compare_bijection(
                "shrink", p1, lambda E: canonical(deform_minus(E, rho, pos)),
                _forms(enumerate_packet(psi_deg, eps_deg)), details,
            )
    else:
        deg_key = (rho, a, b - 2)
        deg_blocks = [blk for blk in psi.blocks if blk.key != block]
        deg_blocks.append(JordanBlock(rho, a, b - 2))
        psi_deg = build_parameter(psi.inventory, deg_blocks, psi.side)
        eps_deg = Character.from_map({**eps.drop(block).as_dict(), deg_key: eta0})
        _compare_bijection(
            "shrink", p1, lambda E: canonical(deform_minus(E, rho, pos)),
            _forms(enumerate_packet(psi_deg, eps_deg)), details,
        )

    # (ii) the splitting bijections, one per compatible sign
    for eta in (1, -1):
        expected_eta0 = (eta if b % 2 else 1) * neg_one_pow(b * (b - 1) // 2)
        side = [E for E in p0 if E.line(rho)[pos].eta == eta]
        if expected_eta0 != eta0:
            if side:
                details.append(
                    f"members with l = 0, eta = {eta:+d} at {block} exist but "
                    "that sign is incompatible with the block's sign"
                )
            continue
        split_blocks = [blk for blk in psi.blocks if blk.key != block]
        split_values = eps.drop(block).as_dict()
        B = JordanBlock(rho, a, b).B
        A = JordanBlock(rho, a, b).A
        C = B
        while C <= A:
            aa = C.twice + 1
            split_blocks.append(JordanBlock(rho, aa, 1))
            split_values[(rho, aa, 1)] = neg_one_pow(C - B) * eta
            C = C + 1
        psi_split = build_parameter(psi.inventory, split_blocks, psi.side)
        _compare_bijection(
            f"split(eta={eta:+d})", side,
            lambda E: canonical(_split_segment(E, rho, pos)),
            _forms(enumerate_packet(psi_split, Character.from_map(split_values))),
            details,
        )

    return DdrReport(
        parameter=psi,
        character=eps,
        block=block,
        passed=not details,
        details=tuple(details),
        checked_members=len(members),
    )


def _compare_bijection(tag, sources, mapping, expected_forms, details) -> None:
    mapped = [mapping(E) for E in sources]
    if len(set(mapped)) != len(mapped):
        details.append(f"{tag}: the deformation is not injective")
    got = set(mapped)
    for missing in sorted(expected_forms - got, key=_sort_key):
        details.append(f"{tag}: expected member not reached: {missing}")
    for extra in sorted(got - expected_forms, key=_sort_key):
        details.append(f"{tag}: mapped member is not in the target packet: {extra}")
