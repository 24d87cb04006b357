"""Extended segments and multi-segments.

An extended multi-segment refines a good-parity A-parameter: per self-dual
cuspidal line it carries an ordered list of records ([A, B]_rho, l, eta),
the order being admissible for coordinatewise (A, B) dominance (and a plain
B-order as soon as a negative B occurs).  This module provides construction
and validation, the map back to an enhanced parameter (psi_E, eps_E), the
equivalence relation and canonical form, translations and the two elementary
deformations, and the order-sensitive sign character mediating between the
two packet normalizations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterator, Mapping, Sequence, Union

from .core import (
    AParameter,
    BlockKey,
    Character,
    GroupSide,
    Inventory,
    JordanBlock,
    SelfDualType,
    build_parameter,
    classify,
)
from .errors import OrderError, ParameterError, PreconditionError, SegmentError
from .halfint import HalfInteger, neg_one_pow


@dataclass(frozen=True)
class ExtendedSegment:
    A: HalfInteger
    B: HalfInteger
    l: int
    eta: int

    def __post_init__(self) -> None:
        diff = self.A - self.B
        if diff.twice % 2 != 0 or diff < 0:
            raise SegmentError(f"segment needs A - B a non-negative integer, got {self}")
        if (self.A + self.B) < 0:
            raise SegmentError(f"segment needs A + B >= 0, got {self}")
        if not 0 <= 2 * self.l <= self.b:
            raise SegmentError(f"l = {self.l} is out of range 0 <= l <= b/2 = {self.b}/2")
        if self.eta not in (1, -1):
            raise SegmentError("eta must be +-1")

    @property
    def a(self) -> int:
        return (self.A + self.B).to_int() + 1

    @property
    def b(self) -> int:
        return (self.A - self.B).to_int() + 1

    @property
    def interval(self) -> tuple[HalfInteger, HalfInteger]:
        return (self.B, self.A)

    def __str__(self) -> str:
        return f"([{self.A},{self.B}], l={self.l}, eta={self.eta:+d})"


def segment(
    A: Union[HalfInteger, int], B: Union[HalfInteger, int], l: int, eta: int
) -> ExtendedSegment:
    return ExtendedSegment(HalfInteger.coerce(A), HalfInteger.coerce(B), l, eta)


Line = tuple[ExtendedSegment, ...]


@dataclass(frozen=True)
class ExtendedMultiSegment:
    inventory: Inventory
    lines: tuple[tuple[str, Line], ...] = ()
    side: GroupSide = GroupSide.METAPLECTIC

    def line(self, rho: str) -> Line:
        for r, segs in self.lines:
            if r == rho:
                return segs
        return ()

    @property
    def rho_ids(self) -> tuple[str, ...]:
        return tuple(r for r, _ in self.lines)

    def segments(self) -> Iterator[tuple[str, int, ExtendedSegment]]:
        for rho, segs in self.lines:
            for i, s in enumerate(segs):
                yield rho, i, s

    @property
    def dim(self) -> int:
        return sum(
            self.inventory[rho].dim * s.a * s.b for rho, _, s in self.segments()
        )

    @property
    def n(self) -> int:
        return self.dim // 2

    def with_line(self, rho: str, segs: Sequence[ExtendedSegment]) -> "ExtendedMultiSegment":
        """Replace one line and revalidate."""
        new = dict(self.lines)
        new[rho] = tuple(segs)
        return build_xms(self.inventory, new, self.side)

    def __str__(self) -> str:
        parts = []
        for rho, segs in self.lines:
            parts.append(f"{rho}: " + ", ".join(str(s) for s in segs))
        return "{" + "; ".join(parts) + "}"


def _check_line_order(rho: str, segs: Line) -> None:
    negative = any(s.B < 0 for s in segs)
    for p in range(len(segs)):
        for q in range(p + 1, len(segs)):
            if segs[p].A > segs[q].A and segs[p].B > segs[q].B:
                raise OrderError(
                    f"line {rho!r}: order not admissible, segment {p} dominates "
                    f"segment {q} in both coordinates"
                )
            if negative and segs[p].B > segs[q].B:
                raise OrderError(
                    f"line {rho!r}: with a negative B the order must be "
                    "non-decreasing in B"
                )


def build_xms(
    inventory: Inventory,
    lines: Mapping[str, Sequence[ExtendedSegment]],
    side: GroupSide = GroupSide.METAPLECTIC,
) -> ExtendedMultiSegment:
    """Validate the per-line segment lists as an extended multi-segment.

    Lines on non-self-dual labels must be empty; parities must match the
    label's duality type (A integral on symplectic lines, half-odd on
    orthogonal ones); the total dimension must be even.  The sign condition
    of the orthogonal-group theory is deliberately not imposed.
    """
    norm: list[tuple[str, Line]] = []
    for rho in sorted(lines):
        segs = tuple(lines[rho])
        if not segs:
            continue
        lab = inventory[rho]
        if not lab.is_self_dual:
            raise SegmentError(f"line {rho!r}: non-self-dual labels carry no segments")
        for s in segs:
            a_int = s.A.is_integer
            if lab.self_dual_type is SelfDualType.SYMPLECTIC and not a_int:
                raise SegmentError(
                    f"line {rho!r}: segment {s} has odd a+b on a symplectic label"
                )
            if lab.self_dual_type is SelfDualType.ORTHOGONAL and a_int:
                raise SegmentError(
                    f"line {rho!r}: segment {s} has even a+b on an orthogonal label"
                )
        _check_line_order(rho, segs)
        norm.append((rho, segs))
    out = ExtendedMultiSegment(inventory, tuple(norm), side)
    if out.dim % 2 != 0:
        raise SegmentError(f"total dimension {out.dim} is odd")
    return out


# ---------------------------------------------------------------------------
# the enhanced parameter
# ---------------------------------------------------------------------------


def enhanced(E: ExtendedMultiSegment) -> tuple[AParameter, Character]:
    """(psi_E, eps_E): the underlying parameter and its character.

    Each segment contributes the block (rho, a, b); the character value on a
    class is the product of (-1)**(floor(b/2) + l) * eta**b over the segments
    of that class.
    """
    blocks: dict[BlockKey, int] = {}
    signs: dict[BlockKey, int] = {}
    for rho, _, s in E.segments():
        key = (rho, s.a, s.b)
        blocks[key] = blocks.get(key, 0) + 1
        factor = neg_one_pow(s.b // 2 + s.l) * (s.eta if s.b % 2 else 1)
        signs[key] = signs.get(key, 1) * factor
    psi = build_parameter(
        E.inventory,
        [JordanBlock(r, a, b, m) for (r, a, b), m in blocks.items()],
        E.side,
    )
    return psi, Character.from_map(signs)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------


def canonical(E: ExtendedMultiSegment) -> ExtendedMultiSegment:
    """Normalize eta to +1 on every segment with l = b/2 (where eta is free)."""
    lines = {}
    for rho, segs in E.lines:
        lines[rho] = tuple(
            replace(s, eta=1) if 2 * s.l == s.b else s for s in segs
        )
    return build_xms(E.inventory, lines, E.side)


def equivalent(E: ExtendedMultiSegment, F: ExtendedMultiSegment) -> bool:
    """Segment-wise equality of canonical forms under the list orders."""
    return canonical(E) == canonical(F)


# ---------------------------------------------------------------------------
# translations
# ---------------------------------------------------------------------------


def shift(
    E: ExtendedMultiSegment, t: Mapping[str, Sequence[int]]
) -> ExtendedMultiSegment:
    """Per-segment translation onto a non-negative DDR supporting family.

    ``t[rho][i]`` is added to both ends of the i-th segment of the line; the
    shifted intervals must chain strictly, 0 <= B1 <= A1 < B2 <= A2 < ...,
    per line.  (l, eta) are untouched.
    """
    lines = {}
    for rho, segs in E.lines:
        offsets = tuple(t.get(rho, ()))
        if len(offsets) != len(segs):
            raise PreconditionError(
                f"line {rho!r}: need {len(segs)} offsets, got {len(offsets)}"
            )
        if any(o < 0 for o in offsets):
            raise PreconditionError(f"line {rho!r}: offsets must be non-negative")
        shifted = tuple(
            replace(s, A=s.A + o, B=s.B + o) for s, o in zip(segs, offsets)
        )
        prev_A = None
        for s in shifted:
            if s.B < 0:
                raise PreconditionError(
                    f"line {rho!r}: shifted family is not non-negative"
                )
            if prev_A is not None and not prev_A < s.B:
                raise PreconditionError(
                    f"line {rho!r}: shifted intervals do not chain strictly"
                )
            prev_A = s.A
        lines[rho] = shifted
    return build_xms(E.inventory, lines, E.side)


def translate(E: ExtendedMultiSegment, t: int) -> ExtendedMultiSegment:
    """Uniform translation by a single non-negative integer.

    This is the shift used to reduce the non-vanishing question to the
    non-negative case; it must make every B non-negative.
    """
    if t < 0:
        raise PreconditionError("translation amount must be non-negative")
    lines = {}
    for rho, segs in E.lines:
        shifted = tuple(replace(s, A=s.A + t, B=s.B + t) for s in segs)
        if any(s.B < 0 for s in shifted):
            raise PreconditionError(f"translation by {t} leaves a negative B")
        lines[rho] = shifted
    return build_xms(E.inventory, lines, E.side)


def minimal_translation(E: ExtendedMultiSegment) -> int:
    """Smallest integer t >= 0 with B + t >= 0 for every segment."""
    t = 0
    for _, _, s in E.segments():
        if s.B < 0:
            need = (-s.B).twice + 1 >> 1  # ceil of a half-integer
            t = max(t, need)
    return t


def is_nonnegative(E: ExtendedMultiSegment) -> bool:
    return all(s.B >= 0 for _, _, s in E.segments())


# ---------------------------------------------------------------------------
# elementary deformations
# ---------------------------------------------------------------------------


def deform_minus(E: ExtendedMultiSegment, rho: str, i: int) -> ExtendedMultiSegment:
    """Trade one unit of l for a shorter segment: ([A-1, B+1], l-1, eta).

    Needs l >= 1.  When b = 2 the replacement is zero-length and the segment
    is removed outright.
    """
    segs = list(E.line(rho))
    s = segs[i]
    if s.l < 1:
        raise PreconditionError(f"deform_minus needs l >= 1 at {rho}[{i}]")
    if s.b == 2:
        del segs[i]
    else:
        segs[i] = replace(s, A=s.A - 1, B=s.B + 1, l=s.l - 1)
    return E.with_line(rho, segs)


def deform_plus(E: ExtendedMultiSegment, rho: str, i: int) -> ExtendedMultiSegment:
    """Slide a segment down by one: ([A-1, B-1], l, eta).  Needs B > 0 and an
    admissible result (validation failures propagate)."""
    segs = list(E.line(rho))
    s = segs[i]
    if not s.B > 0:
        raise PreconditionError(f"deform_plus needs B > 0 at {rho}[{i}]")
    try:
        segs[i] = replace(s, A=s.A - 1, B=s.B - 1)
        return E.with_line(rho, segs)
    except (SegmentError, OrderError) as exc:
        raise PreconditionError(str(exc)) from exc


# ---------------------------------------------------------------------------
# the order-sensitive normalization character
# ---------------------------------------------------------------------------

Occurrence = tuple[str, int, int, int]  # (rho, a, b, occurrence index)
BlockOrder = Mapping[str, Sequence[BlockKey]]


@dataclass(frozen=True)
class AtoData:
    """The crossing pairs of a good-parity parameter and their sign character.

    Pairs are recorded at the level of multiset occurrences; the character's
    value on a class is (-1) to the number of pairs touching one occurrence
    of it.
    """

    pairs: tuple[tuple[Occurrence, Occurrence], ...]
    character: Character

    @property
    def count(self) -> int:
        return len(self.pairs)


def canonical_order(psi: AParameter) -> dict[str, tuple[BlockKey, ...]]:
    """Occurrences per line sorted by (B, A) ascending; the order used for
    all packet enumeration."""
    out: dict[str, tuple[BlockKey, ...]] = {}
    for rho in psi.rho_ids():
        occ: list[JordanBlock] = []
        for blk in psi.blocks_for(rho):
            occ.extend([blk] * blk.mult)
        occ.sort(key=lambda b: (b.B, b.A))
        out[rho] = tuple(b.key for b in occ)
    return out


def _check_block_order(psi: AParameter, order: BlockOrder) -> None:
    for rho in psi.rho_ids():
        occ = list(order.get(rho, ()))
        expected = sorted(
            itertools.chain.from_iterable([b.key] * b.mult for b in psi.blocks_for(rho))
        )
        if sorted(occ) != expected:
            raise OrderError(f"line {rho!r}: order does not list Jord_rho exactly")
        blocks = [JordanBlock(*key) for key in occ]
        negative = any(b.B < 0 for b in blocks)
        for p in range(len(blocks)):
            for q in range(p + 1, len(blocks)):
                if blocks[p].A > blocks[q].A and blocks[p].B > blocks[q].B:
                    raise OrderError(f"line {rho!r}: order is not admissible")
                if negative and blocks[p].B > blocks[q].B:
                    raise OrderError(
                        f"line {rho!r}: negative B forces a B-sorted order"
                    )


def ato_sign(psi: AParameter, order: BlockOrder) -> AtoData:
    """Enumerate the crossing pairs of Definition-style conditions: same line,
    opposite b-parities, the later block in the order has the smaller a, and
    the even-b member has the bigger b."""
    if not classify(psi).good_parity:
        raise ParameterError("the normalization character needs good parity")
    _check_block_order(psi, order)

    pairs: list[tuple[Occurrence, Occurrence]] = []
    touch: dict[BlockKey, int] = {b.key: 0 for b in psi.blocks}
    for rho in psi.rho_ids():
        occ = list(order.get(rho, ()))
        counter: dict[BlockKey, int] = {}
        tagged: list[Occurrence] = []
        for key in occ:
            k = counter.get(key, 0)
            counter[key] = k + 1
            tagged.append((key[0], key[1], key[2], k))
        for p in range(len(tagged)):
            for q in range(p + 1, len(tagged)):
                _, a1, b1, _ = tagged[p]
                _, a2, b2, _ = tagged[q]
                if (b1 - b2) % 2 == 0:
                    continue
                if not a1 > a2:
                    continue
                even_first = b1 % 2 == 0
                if even_first and not b1 > b2:
                    continue
                if not even_first and not b2 > b1:
                    continue
                pairs.append((tagged[p], tagged[q]))
                touch[(tagged[p][0], a1, b1)] += 1
                touch[(tagged[q][0], a2, b2)] += 1

    # per-class touch count divided by multiplicity = pairs per occurrence
    char: dict[BlockKey, int] = {}
    for blk in psi.blocks:
        per_occ = touch[blk.key] // blk.mult
        char[blk.key] = neg_one_pow(per_occ)
    return AtoData(pairs=tuple(pairs), character=Character.from_map(char))


def ato_convert(eps: Character, ato: AtoData) -> Character:
    """Translate between the two packet normalizations: pointwise product with
    the crossing character (an involution)."""
    return eps.times(ato.character)
