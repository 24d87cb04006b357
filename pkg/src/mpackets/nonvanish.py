"""The non-vanishing criterion for extended multi-segments.

The decision runs in three stages: the depth condition (star) on the given
segments, a uniform translation onto a non-negative family, and the
adjacent-pair inequalities checked across every admissible order reachable by
row exchanges.  Row exchanges transpose nested neighbouring segments while
correcting (l, eta); they leave the enhanced parameter and the verdict alone,
which the check suites verify exhaustively at desk scale.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, replace

from .errors import EnumerationCapExceeded, OrderError, PreconditionError
from .halfint import neg_one_pow
from .xms import (
    ExtendedMultiSegment,
    ExtendedSegment,
    is_nonnegative,
    minimal_translation,
    translate,
)

DEFAULT_ORDER_CAP = 50_000


# ---------------------------------------------------------------------------
# the depth condition
# ---------------------------------------------------------------------------


def star(E: ExtendedMultiSegment) -> bool:
    """B + l against its threshold, for every segment.

    The threshold is 0 at integral B; at half-odd B it is -1/2 when eta
    matches the parity of the total a below the segment on its line, and 1/2
    otherwise.
    """
    for _, segs in E.lines:
        alpha = 0  # sum of a over the strictly earlier segments of the line
        for s in segs:
            bound_twice = 0
            if not s.B.is_integer:
                bound_twice = -1 if s.eta == neg_one_pow(alpha) else 1
            if (s.B + s.l).twice < bound_twice:
                return False
            alpha += s.a
    return True


# ---------------------------------------------------------------------------
# adjacent-pair conditions (non-negative families)
# ---------------------------------------------------------------------------


def _require_adjacent(E: ExtendedMultiSegment, rho: str, k: int) -> tuple[
    ExtendedSegment, ExtendedSegment
]:
    segs = E.line(rho)
    if not 1 <= k < len(segs):
        raise PreconditionError(f"positions {k - 1}, {k} are not adjacent on {rho!r}")
    return segs[k - 1], segs[k]


def adjacent_ok(E: ExtendedMultiSegment, rho: str, k: int) -> bool:
    """The necessary inequalities for the neighbours at positions k-1, k.

    Three shapes: the upper segment dominates coordinatewise, or one interval
    nests inside the other; an admissible order admits nothing else.
    """
    if not is_nonnegative(E):
        raise PreconditionError("adjacent-pair conditions apply to non-negative "
                                "families only")
    u, v = _require_adjacent(E, rho, k)
    match = v.eta == neg_one_pow(u.A - u.B) * u.eta
    if v.A >= u.A and v.B >= u.B:
        if match:
            return v.A - v.l >= u.A - u.l and v.B + v.l >= u.B + u.l
        return v.B + v.l > u.A - u.l
    if v.B <= u.B and u.A <= v.A:  # u nested in v
        if match:
            return 0 <= v.l - u.l <= v.b - u.b
        return v.l + u.l >= u.b
    if u.B <= v.B and v.A <= u.A:  # v nested in u
        if match:
            return 0 <= u.l - v.l <= u.b - v.b
        return v.l + u.l >= v.b
    raise OrderError(f"line {rho!r}: order is not admissible at positions "
                     f"{k - 1}, {k}")


# ---------------------------------------------------------------------------
# row exchange
# ---------------------------------------------------------------------------


def _fold(value: int, b: int) -> int:
    """Reduce into the fundamental domain of (Z/bZ)/{+-1}: [0, floor(b/2)]."""
    v = value % b
    if 2 * v > b:
        v = b - v
    return v


def _nested(u: ExtendedSegment, v: ExtendedSegment) -> bool:
    return (v.B <= u.B and u.A <= v.A) or (u.B <= v.B and v.A <= u.A)


def row_exchange(E: ExtendedMultiSegment, rho: str, k: int) -> ExtendedMultiSegment:
    """Transpose the neighbours at positions k-1, k with the (l, eta)
    correction rule; returns E unchanged when the swapped order would not be
    admissible (intervals not nested)."""
    if not is_nonnegative(E):
        raise PreconditionError("row exchange applies to non-negative families only")
    u, v = _require_adjacent(E, rho, k)
    if not _nested(u, v):
        return E

    match = v.eta == neg_one_pow(u.A - u.B) * u.eta
    if v.B <= u.B and u.A <= v.A:
        # u nested in v: v picks up the correction
        new_u = replace(u, eta=neg_one_pow(v.A - v.B) * u.eta)
        delta = neg_one_pow(u.A - u.B) * u.eta * v.eta * (u.b - 2 * u.l)
        new_l = _fold(v.l + delta, v.b)
        flip = 0 if (match and v.b - 2 * v.l < 2 * (u.b - 2 * u.l)) else 1
        new_v = replace(v, l=new_l, eta=neg_one_pow(u.A - u.B + flip) * v.eta)
    else:
        # v nested in u: u picks up the correction
        new_v = replace(v, eta=neg_one_pow(u.A - u.B) * v.eta)
        delta = neg_one_pow(u.A - u.B) * u.eta * v.eta * (v.b - 2 * v.l)
        new_l = _fold(u.l + delta, u.b)
        flip = 0 if (match and u.b - 2 * u.l < 2 * (v.b - 2 * v.l)) else 1
        new_u = replace(u, l=new_l, eta=neg_one_pow(v.A - v.B + flip) * u.eta)

    segs = list(E.line(rho))
    segs[k - 1], segs[k] = new_v, new_u
    return E.with_line(rho, segs)


# ---------------------------------------------------------------------------
# order enumeration
# ---------------------------------------------------------------------------

Perms = tuple[tuple[str, tuple[int, ...]], ...]


@dataclass(frozen=True)
class OrderState:
    """One admissible order, reached from the input by row exchanges.

    ``perms`` records, per line, which input position sits at each slot.
    """

    perms: Perms
    xms: ExtendedMultiSegment


def enumerate_orders(
    E: ExtendedMultiSegment,
    cap: int = DEFAULT_ORDER_CAP,
    verify_paths: bool = False,
) -> tuple[OrderState, ...]:
    """Breadth-first closure of E under all row exchanges.

    Each reachable order appears once, keyed by its position permutation.
    With ``verify_paths`` every revisit is checked to reproduce the stored
    representative (path independence).  Raises when the cap is hit.
    """
    if not is_nonnegative(E):
        raise PreconditionError("order enumeration applies to non-negative "
                                "families only")
    start: Perms = tuple((rho, tuple(range(len(segs)))) for rho, segs in E.lines)
    seen: dict[Perms, OrderState] = {start: OrderState(start, E)}
    queue = [seen[start]]
    while queue:
        state = queue.pop()
        for rho, segs in state.xms.lines:
            for k in range(1, len(segs)):
                if not _nested(segs[k - 1], segs[k]):
                    continue
                swapped = row_exchange(state.xms, rho, k)
                perms = dict(state.perms)
                line_perm = list(perms[rho])
                line_perm[k - 1], line_perm[k] = line_perm[k], line_perm[k - 1]
                perms[rho] = tuple(line_perm)
                key: Perms = tuple(sorted(perms.items()))
                if key in seen:
                    if verify_paths and seen[key].xms != swapped:
                        from .xms import equivalent

                        if not equivalent(seen[key].xms, swapped):
                            raise OrderError(
                                f"row-exchange paths disagree at order {key}"
                            )
                    continue
                if len(seen) >= cap:
                    raise EnumerationCapExceeded(
                        f"more than {cap} admissible orders; no verdict"
                    )
                nxt = OrderState(key, swapped)
                seen[key] = nxt
                queue.append(nxt)
    return tuple(seen.values())


def admissible_order_count(E: ExtendedMultiSegment) -> int:
    """Number of admissible orders, counted directly from the dominance
    relation (independently of row exchanges)."""

    def line_count(segs: tuple[ExtendedSegment, ...]) -> int:
        n = len(segs)
        dominated = [
            [segs[i].A < segs[j].A and segs[i].B < segs[j].B for j in range(n)]
            for i in range(n)
        ]

        def extensions(remaining: frozenset[int]) -> int:
            if not remaining:
                return 1
            total = 0
            for i in remaining:
                if all(not dominated[j][i] for j in remaining if j != i):
                    total += extensions(remaining - {i})
            return total

        return extensions(frozenset(range(n)))

    count = 1
    for _, segs in E.lines:
        count *= line_count(segs)
    return count


# ---------------------------------------------------------------------------
# the full criterion
# ---------------------------------------------------------------------------


def _orders_all_ok(E: ExtendedMultiSegment, cap: int) -> bool:
    for state in enumerate_orders(E, cap=cap):
        for rho, segs in state.xms.lines:
            for k in range(1, len(segs)):
                if not adjacent_ok(state.xms, rho, k):
                    return False
    return True


@functools.lru_cache(maxsize=200_000)
def nonvanishing(E: ExtendedMultiSegment, cap: int = DEFAULT_ORDER_CAP) -> bool:
    """Decide whether the multi-segment names a nonzero representation.

    Pipeline: the depth condition on E itself, then the adjacent-pair
    conditions across all reachable orders of the minimal non-negative
    translate of E.
    """
    if not star(E):
        return False
    return _orders_all_ok(translate(E, minimal_translation(E)), cap)
