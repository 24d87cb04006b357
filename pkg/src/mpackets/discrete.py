"""Discrete bounded L-parameters: chain bounds, cuspidality, partial Jacquet
modules, first occurrence, and the discrete theta shift.

A discrete L-parameter is an A-parameter that is trivial on the second SL(2)
(all b = 1), of good parity and multiplicity free; characters are written on
the pairs (rho, a).  All operations here are parameter-level bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Union

from .core import (
    AParameter,
    Character,
    GroupSide,
    JordanBlock,
    build_parameter,
    classify,
)
from .errors import ParameterError, PreconditionError
from .halfint import HalfInteger
from .roots import RootNumberTable

INFINITE = None  # a_bound value meaning "no Jordan block above the chain"


def ensure_discrete(phi: AParameter) -> None:
    if any(b.b != 1 for b in phi.blocks):
        raise ParameterError("discrete L-parameters are trivial on the second SL(2)")
    cls = classify(phi)
    if not cls.discrete:
        raise ParameterError("parameter is not discrete (good parity, mult-free)")


def character_on(
    phi: AParameter, values: Mapping[tuple[str, int], int]
) -> Character:
    """Build a character on a discrete parameter from (rho, a) -> sign."""
    keys = {b.key for b in phi.blocks}
    out = {}
    for (rho, a), v in values.items():
        if (rho, a, 1) not in keys:
            raise ParameterError(f"({rho}, {a}) is not a block of the parameter")
        out[(rho, a, 1)] = v
    missing = keys - set(out)
    if missing:
        raise ParameterError(f"character misses blocks: {sorted(missing)}")
    return Character.from_map(out)


def jord_rho(phi: AParameter, rho: str) -> tuple[int, ...]:
    return tuple(sorted(b.a for b in phi.blocks_for(rho)))


def _trivial_id(phi: AParameter) -> Optional[str]:
    for lab in phi.inventory:
        if lab.is_trivial:
            return lab.id
    return None


def _is_trivial(phi: AParameter, rho: str) -> bool:
    return phi.inventory[rho].is_trivial


# ---------------------------------------------------------------------------
# chain bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RhoBounds:
    """The largest cuspidal-chain start b and the first block above it.

    ``a_bound`` is None when no block of the rho-line lies above b, in which
    case the line is rho-cuspidal.
    """

    b_bound: int
    a_bound: Optional[int]

    @property
    def cuspidal_line(self) -> bool:
        return self.a_bound is None


def _chain_conditions(phi: AParameter, eps: Character, rho: str, b: int) -> bool:
    """Conditions (1)-(3) on the part of the rho-line below b."""
    jord = set(jord_rho(phi, rho))
    trivial = _is_trivial(phi, rho)
    for a in jord:
        if a <= b and a - 2 > 0 and (a - 2) not in jord:
            return False
        if a <= b and (a - 2) in jord:
            if eps((rho, a - 2, 1)) * eps((rho, a, 1)) != -1:
                return False
    if 2 in jord and 2 <= b:
        want = 1 if trivial else -1
        if eps((rho, 2, 1)) != want:
            return False
    return True


def bounds(phi: AParameter, eps: Character, rho: str) -> RhoBounds:
    """Compute (b_bound, a_bound) for one cuspidal line.

    b_bound is the biggest b in Jord_rho satisfying the chain conditions; when
    none does it falls back to 0 on orthogonal lines and -1 on symplectic
    ones.  a_bound is the smallest Jordan entry above b_bound.
    """
    ensure_discrete(phi)
    lab = phi.inventory[rho]  # raises on unknown ids
    jord = jord_rho(phi, rho)
    b_bound: Optional[int] = None
    for b in sorted(jord, reverse=True):
        if _chain_conditions(phi, eps, rho, b):
            b_bound = b
            break
    if b_bound is None:
        from .core import SelfDualType

        b_bound = -1 if lab.self_dual_type is SelfDualType.SYMPLECTIC else 0
    a_bound = next((a for a in jord if a > b_bound), INFINITE)
    return RhoBounds(b_bound=b_bound, a_bound=a_bound)


# ---------------------------------------------------------------------------
# cuspidality
# ---------------------------------------------------------------------------


def is_cuspidal(phi: AParameter, eps: Character) -> bool:
    """Cuspidality test: every rho-line is a full chain of alternating signs
    with the sign at a = 2 fixed (+1 on the trivial line, -1 elsewhere)."""
    ensure_discrete(phi)
    for rho in phi.rho_ids():
        if not _chain_conditions(phi, eps, rho, max(jord_rho(phi, rho), default=0)):
            return False
    return True


# ---------------------------------------------------------------------------
# parameter-level partial Jacquet module
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JacResult:
    parameter: AParameter
    character: Character
    discrete: bool


def jac(
    phi: AParameter,
    eps: Character,
    rho: str,
    x: Union[HalfInteger, int],
) -> Optional[JacResult]:
    """Partial Jacquet module at rho |.|^x of a discrete (phi, eps).

    Returns None when the module vanishes.  Otherwise the output swaps the
    block (rho, 2x+1) for (rho, 2x-1) (dropped entirely at x = 1/2, where the
    new block would be zero dimensional) and may acquire multiplicity two,
    flagged by ``discrete``.
    """
    ensure_discrete(phi)
    phi.inventory[rho]
    x = HalfInteger.coerce(x)
    if x <= 0:
        return None
    n_plus = x.twice + 1
    if (rho, n_plus, 1) not in {b.key for b in phi.blocks}:
        return None

    trivial = _is_trivial(phi, rho)
    eps_plus = eps((rho, n_plus, 1))

    if x == HalfInteger(1):  # x = 1/2, the block (rho, 2) is removed
        keep = (trivial and eps_plus == -1) or (not trivial and eps_plus == 1)
        if not keep:
            return None
        blocks = [b for b in phi.blocks if b.key != (rho, 2, 1)]
        out = build_parameter(phi.inventory, blocks, phi.side)
        return JacResult(out, eps.drop((rho, 2, 1)), discrete=True)

    n_minus = n_plus - 2
    lower_present = (rho, n_minus, 1) in {b.key for b in phi.blocks}
    if lower_present and eps((rho, n_minus, 1)) * eps_plus != 1:
        return None

    blocks = [b for b in phi.blocks if b.key != (rho, n_plus, 1)]
    blocks.append(JordanBlock(rho, n_minus, 1))
    out = build_parameter(phi.inventory, blocks, phi.side)
    char = eps.drop((rho, n_plus, 1))
    if not lower_present:
        char = Character.from_map({**char.as_dict(), (rho, n_minus, 1): eps_plus})
    return JacResult(out, char, discrete=not lower_present)


def jac_scan_vanishes(phi: AParameter, eps: Character, rho: str) -> bool:
    """True iff the partial Jacquet module vanishes at every point of the line."""
    for a in jord_rho(phi, rho):
        if jac(phi, eps, rho, HalfInteger(a - 1)) is not None:
            return False
    return True


# ---------------------------------------------------------------------------
# theta: first occurrence and the large-alpha discrete shift
# ---------------------------------------------------------------------------


def eps_s0(eps: Character) -> int:
    """Pairing with the all-minus sign vector: (-1)**#{blocks with eps = -1}."""
    out = 1
    for _, v in eps.values:
        out *= v
    return out


def first_occurrence(phi: AParameter, eps: Character) -> int:
    """Witt-tower index of the first nonzero theta lift.

    Only defined when the trivial line is cuspidal (checked through the
    Jacquet-module scan); the answer is -b on the trivial line when the
    all-minus pairing is +1 and b + 2 otherwise.
    """
    ensure_discrete(phi)
    triv = _trivial_id(phi)
    if triv is not None and not jac_scan_vanishes(phi, eps, triv):
        raise PreconditionError(
            "first occurrence needs a parameter cuspidal along the trivial line"
        )
    b = bounds(phi, eps, triv).b_bound if triv is not None else 0
    return -b if eps_s0(eps) == 1 else b + 2


@dataclass(frozen=True)
class ThetaShift:
    parameter: AParameter
    character: Character
    central_sign: int


def epsilon_phi(phi: AParameter, table: RootNumberTable) -> int:
    """Product of the supplied root numbers over the blocks of a discrete
    parameter."""
    out = 1
    for b in phi.blocks:
        out *= table.get(b.rho, b.a) ** b.mult
    return out


def theta_discrete(
    phi: AParameter, eps: Character, alpha: int, table: RootNumberTable
) -> ThetaShift:
    """The large-alpha theta shift of a discrete (phi, eps).

    Appends triv (x) r(1) (x) r(alpha) on the odd-orthogonal side, flips the
    character along the trivial line, and pins the new block's sign to
    -eps(s0) epsilon(phi).  Also reports the value at -1, eps(s0) epsilon(phi).
    """
    ensure_discrete(phi)
    if alpha % 2 != 0 or alpha < 2 * phi.n + 2:
        raise PreconditionError(
            f"alpha = {alpha} must be even and at least 2n + 2 = {2 * phi.n + 2}"
        )
    triv = _trivial_id(phi)
    if triv is None:
        raise PreconditionError("inventory carries no trivial label")
    sign = eps_s0(eps) * epsilon_phi(phi, table)

    blocks = list(phi.blocks) + [JordanBlock(triv, 1, alpha)]
    out = build_parameter(phi.inventory, blocks, GroupSide.ODD_ORTHOGONAL)
    values = {}
    for key, v in eps.values:
        values[key] = -v if key[0] == triv else v
    values[(triv, 1, alpha)] = -sign
    return ThetaShift(out, Character.from_map(values), central_sign=sign)
