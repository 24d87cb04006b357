"""Exact combinatorics of local Arthur packets for metaplectic groups.

The package enumerates packet members as extended multi-segments, decides
non-vanishing, applies row exchanges and large-alpha theta shifts, and
cross-checks the structural identities of the theory at desk scale.
"""

from .core import (
    AParameter,
    BlockKey,
    Character,
    Classification,
    CuspidalLabel,
    GroupSide,
    Inventory,
    JordanBlock,
    SelfDualType,
    SignCharacter,
    SignVector,
    all_characters,
    build_inventory,
    build_parameter,
    classify,
    decompose,
    pair,
    s_psi,
    tau_np_shape,
    trivial_character,
)
from .halfint import HALF, ONE, ZERO, HalfInteger, half
from .roots import RootNumberTable, validate_ratio_rule
from .xms import (
    ExtendedMultiSegment,
    ExtendedSegment,
    ato_convert,
    ato_sign,
    build_xms,
    canonical,
    canonical_order,
    deform_minus,
    deform_plus,
    enhanced,
    equivalent,
    segment,
    shift,
    translate,
)
from .nonvanish import (
    adjacent_ok,
    enumerate_orders,
    nonvanishing,
    row_exchange,
    star,
)
from .packets import (
    PacketMember,
    ddr_check,
    enumerate_all,
    enumerate_packet,
    general,
    report,
)
from .discrete import (
    RhoBounds,
    bounds,
    first_occurrence,
    is_cuspidal,
    jac,
    theta_discrete,
)
from .adams import eps_psi, packet_shift_check, s0_pair, shift_alpha

__all__ = [name for name in dir() if not name.startswith("_")]
