"""Cuspidal inventory, A-parameters, and component-group combinatorics.

A cuspidal representation enters the formulas only through a handful of
attributes (dimension, duality type, triviality, the sign of its central
character at -1, a table of root numbers), so it is modelled as an opaque
label.  An A-parameter is a multiset of Jordan blocks (rho, a, b) over such
an inventory; sign vectors and characters are plus/minus-one valued functions
on its good-parity block classes.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import CharacterError, InventoryError, ParameterError
from .halfint import HalfInteger

BlockKey = tuple[str, int, int]  # (rho id, a, b)


class SelfDualType(enum.Enum):
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"
    NONE = "none"


class GroupSide(enum.Enum):
    METAPLECTIC = "metaplectic"
    ODD_ORTHOGONAL = "odd-orthogonal"


# ---------------------------------------------------------------------------
# cuspidal labels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CuspidalLabel:
    """An irreducible unitary cuspidal GL-representation, as data.

    ``root_numbers`` is a partial table n -> sign standing for the local root
    numbers of rho tensored with the n-dimensional SL(2) representation.
    """

    id: str
    dim: int
    dual_id: str
    self_dual_type: SelfDualType
    is_trivial: bool = False
    omega_minus_one: int = 1
    root_numbers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise InventoryError(f"label {self.id!r}: dim must be positive")
        if self.omega_minus_one not in (1, -1):
            raise InventoryError(f"label {self.id!r}: omega_minus_one must be +-1")
        if (self.self_dual_type is SelfDualType.NONE) != (self.dual_id != self.id):
            raise InventoryError(
                f"label {self.id!r}: self_dual_type none iff dual_id differs from id"
            )
        if self.self_dual_type is SelfDualType.SYMPLECTIC and self.dim % 2 != 0:
            raise InventoryError(f"label {self.id!r}: symplectic labels have even dim")
        if self.is_trivial and not (
            self.dim == 1
            and self.self_dual_type is SelfDualType.ORTHOGONAL
            and self.omega_minus_one == 1
            and self.dual_id == self.id
        ):
            raise InventoryError(
                f"label {self.id!r}: a trivial label must be a 1-dimensional "
                "orthogonal self-dual character with omega(-1) = +1"
            )
        for n, v in self.root_numbers:
            if n < 1 or v not in (1, -1):
                raise InventoryError(
                    f"label {self.id!r}: root table entries need n >= 1 and sign +-1"
                )

    @property
    def is_self_dual(self) -> bool:
        return self.self_dual_type is not SelfDualType.NONE

    def root_number(self, n: int) -> Optional[int]:
        for m, v in self.root_numbers:
            if m == n:
                return v
        return None


@dataclass(frozen=True)
class Inventory:
    labels: tuple[CuspidalLabel, ...]

    def __getitem__(self, rho: str) -> CuspidalLabel:
        for lab in self.labels:
            if lab.id == rho:
                return lab
        raise InventoryError(f"unknown cuspidal id {rho!r}")

    def __contains__(self, rho: str) -> bool:
        return any(lab.id == rho for lab in self.labels)

    def __iter__(self):
        return iter(self.labels)

    def dual(self, rho: str) -> CuspidalLabel:
        return self[self[rho].dual_id]


def build_inventory(labels: Iterable[CuspidalLabel]) -> Inventory:
    """Validate a collection of labels as an inventory.

    Checks id uniqueness and that dual pairing is an involution matching the
    per-label invariants.
    """
    labels = tuple(labels)
    ids = [lab.id for lab in labels]
    if len(set(ids)) != len(ids):
        dup = sorted({i for i in ids if ids.count(i) > 1})
        raise InventoryError(f"duplicate cuspidal ids: {dup}")
    inv = Inventory(labels)
    for lab in labels:
        if lab.dual_id not in inv:
            raise InventoryError(
                f"label {lab.id!r}: dual id {lab.dual_id!r} not in inventory"
            )
        dual = inv[lab.dual_id]
        if dual.dual_id != lab.id:
            raise InventoryError(
                f"labels {lab.id!r}/{dual.id!r}: dual pairing is not an involution"
            )
        if dual.dim != lab.dim:
            raise InventoryError(
                f"labels {lab.id!r}/{dual.id!r}: dual labels must share a dimension"
            )
        if (dual.self_dual_type is SelfDualType.NONE) != (
            lab.self_dual_type is SelfDualType.NONE
        ):
            raise InventoryError(
                f"labels {lab.id!r}/{dual.id!r}: dual pairing mixes self-dual "
                "and non-self-dual labels"
            )
    return inv


# ---------------------------------------------------------------------------
# Jordan blocks and A-parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JordanBlock:
    """One summand rho (x) r(a) (x) r(b), with its multiplicity."""

    rho: str
    a: int
    b: int
    mult: int = 1

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1 or self.mult < 1:
            raise ParameterError(f"block {self.key}: a, b, mult must be positive")

    @property
    def key(self) -> BlockKey:
        return (self.rho, self.a, self.b)

    @property
    def A(self) -> HalfInteger:
        return HalfInteger(self.a + self.b - 2)

    @property
    def B(self) -> HalfInteger:
        return HalfInteger(self.a - self.b)

    def with_mult(self, mult: int) -> "JordanBlock":
        return JordanBlock(self.rho, self.a, self.b, mult)


def block_from_AB(rho: str, A: HalfInteger, B: HalfInteger, mult: int = 1) -> JordanBlock:
    a = (A + B).to_int() + 1
    b = (A - B).to_int() + 1
    return JordanBlock(rho, a, b, mult)


def is_good_parity_block(label: CuspidalLabel, a: int, b: int) -> bool:
    """Symplectic-type test: the block lands in the I+ part of (2.2)."""
    if label.self_dual_type is SelfDualType.SYMPLECTIC:
        return (a + b) % 2 == 0
    if label.self_dual_type is SelfDualType.ORTHOGONAL:
        return (a + b) % 2 == 1
    return False


@dataclass(frozen=True)
class AParameter:
    """A multiset of Jordan blocks over a fixed inventory."""

    inventory: Inventory
    blocks: tuple[JordanBlock, ...] = ()
    side: GroupSide = GroupSide.METAPLECTIC

    @property
    def dim(self) -> int:
        return sum(b.mult * self.inventory[b.rho].dim * b.a * b.b for b in self.blocks)

    @property
    def n(self) -> int:
        return self.dim // 2

    def mult(self, key: BlockKey) -> int:
        for b in self.blocks:
            if b.key == key:
                return b.mult
        return 0

    def blocks_for(self, rho: str) -> tuple[JordanBlock, ...]:
        return tuple(b for b in self.blocks if b.rho == rho)

    def rho_ids(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for b in self.blocks:
            seen.setdefault(b.rho, None)
        return tuple(sorted(seen))

    def occurrences(self) -> tuple[JordanBlock, ...]:
        """The multiset expanded: each block repeated ``mult`` times."""
        out: list[JordanBlock] = []
        for b in self.blocks:
            out.extend(b.with_mult(1) for _ in range(b.mult))
        return tuple(out)


def _normalize_blocks(blocks: Iterable[JordanBlock]) -> tuple[JordanBlock, ...]:
    merged: dict[BlockKey, int] = {}
    for b in blocks:
        merged[b.key] = merged.get(b.key, 0) + b.mult
    return tuple(
        JordanBlock(rho, a, b, m) for (rho, a, b), m in sorted(merged.items())
    )


def build_parameter(
    inventory: Inventory,
    blocks: Iterable[JordanBlock],
    side: GroupSide = GroupSide.METAPLECTIC,
) -> AParameter:
    """Validate a multiset of Jordan blocks as an A-parameter.

    Enforces: even total dimension; non-self-dual blocks occur in dual pairs
    of equal multiplicity; orthogonal-type (I-) blocks have even multiplicity
    (the Sp(m_i, C) factors of the centralizer need m_i even).
    """
    blocks = _normalize_blocks(blocks)
    for b in blocks:
        if b.rho not in inventory:
            raise ParameterError(f"block {b.key}: unknown cuspidal id {b.rho!r}")
    psi = AParameter(inventory, blocks, side)
    if psi.dim % 2 != 0:
        raise ParameterError(f"total dimension {psi.dim} is odd")
    for b in blocks:
        lab = inventory[b.rho]
        if not lab.is_self_dual:
            partner = (lab.dual_id, b.a, b.b)
            if psi.mult(partner) != b.mult:
                raise ParameterError(
                    f"block {b.key}: dual block {partner} must occur with "
                    "equal multiplicity"
                )
        elif not is_good_parity_block(lab, b.a, b.b) and b.mult % 2 != 0:
            raise ParameterError(
                f"block {b.key}: orthogonal-type block needs even multiplicity"
            )
    return psi


# ---------------------------------------------------------------------------
# sign vectors and characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """A plus/minus-one valued function on good-parity block classes.

    Used both for elements of the component group (sign vectors s) and for
    its characters (epsilon); the pairing below treats the two symmetrically.
    """

    values: tuple[tuple[BlockKey, int], ...]

    def __post_init__(self) -> None:
        keys = [k for k, _ in self.values]
        if len(set(keys)) != len(keys):
            raise CharacterError("duplicate block keys in character")
        if any(v not in (1, -1) for _, v in self.values):
            raise CharacterError("character values must be +-1")
        object.__setattr__(self, "values", tuple(sorted(self.values)))

    @staticmethod
    def from_map(values: Mapping[BlockKey, int]) -> "Character":
        return Character(tuple(values.items()))

    @property
    def domain(self) -> frozenset[BlockKey]:
        return frozenset(k for k, _ in self.values)

    def __call__(self, key: BlockKey) -> int:
        for k, v in self.values:
            if k == key:
                return v
        raise CharacterError(f"{key} is not in the character's domain")

    def as_dict(self) -> dict[BlockKey, int]:
        return dict(self.values)

    def restrict(self, keys: Iterable[BlockKey]) -> "Character":
        keys = set(keys)
        return Character(tuple((k, v) for k, v in self.values if k in keys))

    def times(self, other: "Character") -> "Character":
        if self.domain != other.domain:
            raise CharacterError("pointwise product needs equal domains")
        o = other.as_dict()
        return Character(tuple((k, v * o[k]) for k, v in self.values))

    def with_value(self, key: BlockKey, v: int) -> "Character":
        vals = dict(self.values)
        vals[key] = v
        return Character.from_map(vals)

    def drop(self, key: BlockKey) -> "Character":
        return Character(tuple((k, v) for k, v in self.values if k != key))


SignVector = Character
SignCharacter = Character

TRIVIAL_CHARACTER = Character(())


def trivial_character(psi: AParameter) -> Character:
    return Character.from_map({b.key: 1 for b in classify(psi).iplus})


def all_characters(psi: AParameter) -> tuple[Character, ...]:
    """Every character of the component group, in a deterministic order."""
    keys = sorted(b.key for b in classify(psi).iplus)
    out = []
    for signs in itertools.product((1, -1), repeat=len(keys)):
        out.append(Character.from_map(dict(zip(keys, signs))))
    return tuple(out)


def pair(eps: Character, s: Character) -> int:
    """The star-product pairing: each class contributes -1 iff both are -1."""
    if eps.domain != s.domain:
        raise CharacterError("pairing requires characters on the same parameter")
    sv = s.as_dict()
    out = 1
    for k, e in eps.values:
        if e == -1 and sv[k] == -1:
            out = -out
    return out


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    iplus: tuple[JordanBlock, ...]
    iminus: tuple[JordanBlock, ...]
    jpairs: tuple[tuple[JordanBlock, JordanBlock], ...]
    good_parity: bool
    discrete: bool
    tempered: bool
    nonneg_ddr: bool


def classify(psi: AParameter) -> Classification:
    """Partition the blocks into I+ / I- / dual pairs and compute the flags.

    discrete: good parity and multiplicity free.  tempered: trivial on the
    second SL(2), i.e. all b = 1.  nonneg_ddr: good parity and on each
    rho-line the [B, A] intervals chain as 0 <= B1 <= A1 < B2 <= A2 < ...
    """
    iplus: list[JordanBlock] = []
    iminus: list[JordanBlock] = []
    jpairs: list[tuple[JordanBlock, JordanBlock]] = []
    for b in psi.blocks:
        lab = psi.inventory[b.rho]
        if not lab.is_self_dual:
            partner_key = (lab.dual_id, b.a, b.b)
            if b.key < partner_key:
                partner = JordanBlock(lab.dual_id, b.a, b.b, b.mult)
                jpairs.append((b, partner))
        elif is_good_parity_block(lab, b.a, b.b):
            iplus.append(b)
        else:
            iminus.append(b)

    good = not iminus and not jpairs
    discrete = good and all(b.mult == 1 for b in psi.blocks)
    tempered = all(b.b == 1 for b in psi.blocks)

    nonneg_ddr = good
    if nonneg_ddr:
        for rho in psi.rho_ids():
            line = sorted(psi.blocks_for(rho), key=lambda b: (b.B, b.A))
            if any(b.mult > 1 for b in line):
                nonneg_ddr = False
                break
            if line and line[0].B < 0:
                nonneg_ddr = False
                break
            for prev, nxt in zip(line, line[1:]):
                if not prev.A < nxt.B:
                    nonneg_ddr = False
                    break
            if not nonneg_ddr:
                break

    return Classification(
        iplus=tuple(iplus),
        iminus=tuple(iminus),
        jpairs=tuple(jpairs),
        good_parity=good,
        discrete=discrete,
        tempered=tempered,
        nonneg_ddr=nonneg_ddr,
    )


def decompose(psi: AParameter) -> tuple[AParameter, tuple[JordanBlock, ...]]:
    """Split off the good-parity part: psi = psi_np^dual + psi_gp + psi_np.

    Returns (psi_gp, psi_np) where psi_np is a bare block multiset: half of
    each orthogonal-type multiplicity plus one member of each dual pair (the
    lexicographically smaller one, for determinism).  psi_np need not satisfy
    the A-parameter invariants on its own.
    """
    cls = classify(psi)
    gp = AParameter(psi.inventory, _normalize_blocks(cls.iplus), psi.side)
    np_blocks: list[JordanBlock] = []
    for b in cls.iminus:
        np_blocks.append(b.with_mult(b.mult // 2))
    for b, _partner in cls.jpairs:
        np_blocks.append(b)
    return gp, _normalize_blocks(np_blocks)


def reassemble(
    psi_gp: AParameter, psi_np: Sequence[JordanBlock]
) -> tuple[JordanBlock, ...]:
    """psi_np^dual + psi_gp + psi_np, as a normalized block multiset."""
    inv = psi_gp.inventory
    parts: list[JordanBlock] = list(psi_gp.blocks)
    for b in psi_np:
        parts.append(b)
        parts.append(JordanBlock(inv[b.rho].dual_id, b.a, b.b, b.mult))
    return _normalize_blocks(parts)


def s_psi(psi: AParameter) -> SignVector:
    """The distinguished element of the component group: -1 on even-b classes."""
    return Character.from_map(
        {b.key: (-1 if b.b % 2 == 0 else 1) for b in classify(psi).iplus}
    )


# ---------------------------------------------------------------------------
# the GL factor of a general packet member
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TauBlockShape:
    """Corner data of the generalized-segment matrix attached to one block.

    The matrix has a rows and b columns; the first row runs from B to A and
    the last from -A to -B.  Only this indexing data is kept: no
    representation is ever built.
    """

    rho: str
    a: int
    b: int
    top_left: HalfInteger
    top_right: HalfInteger
    bottom_left: HalfInteger
    bottom_right: HalfInteger


def tau_np_shape(psi_np: Sequence[JordanBlock]) -> tuple[TauBlockShape, ...]:
    """Matrix descriptors of the GL factor attached to psi_np, per occurrence."""
    shapes: list[TauBlockShape] = []
    for blk in psi_np:
        B = blk.B
        A = blk.A
        for _ in range(blk.mult):
            shapes.append(
                TauBlockShape(
                    rho=blk.rho,
                    a=blk.a,
                    b=blk.b,
                    top_left=B,
                    top_right=A,
                    bottom_left=-A,
                    bottom_right=-B,
                )
            )
    return tuple(shapes)


# ---------------------------------------------------------------------------
# exact rank of the pairing table (used by the property suite)
# ---------------------------------------------------------------------------


def pairing_table_rank(psi: AParameter) -> tuple[int, int]:
    """(rank, size) of the full character-pairing table over the rationals.

    The table is the 2^k x 2^k matrix of pairings between all sign vectors
    and all characters; non-degeneracy of the pairing makes it invertible.
    """
    chars = all_characters(psi)
    size = len(chars)
    matrix = [
        [Fraction(pair(e, s)) for s in chars] for e in chars
    ]
    rank = 0
    rows = matrix
    cols = size
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / pr[c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        r += 1
    rank = r
    return rank, size
