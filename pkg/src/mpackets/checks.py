"""Corpus-wide check suites.

Each suite sweeps every parameter of a corpus bound and verifies one family
of structural identities exhaustively, reporting counts and any violating
witnesses.  These back the `check` command and the acceptance tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .adams import packet_shift_check
from .core import (
    AParameter,
    Inventory,
    all_characters,
    classify,
    pair,
    s_psi,
)
from .discrete import bounds, is_cuspidal, jac
from .errors import OrderError
from .halfint import HalfInteger, neg_one_pow
from .nonvanish import (
    admissible_order_count,
    enumerate_orders,
    nonvanishing,
    row_exchange,
)
from .packets import candidates, ddr_check
from .roots import RootNumberTable
from .xms import (
    ato_sign,
    canonical_order,
    enhanced,
    equivalent,
    minimal_translation,
    translate,
)
from . import corpus


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    passed: bool
    checked: int
    violations: tuple[str, ...]
    notes: tuple[str, ...] = ()

    def summary(self) -> str:
        status = "ok" if self.passed else f"FAILED ({len(self.violations)} violations)"
        out = f"suite {self.suite}: {status}, {self.checked} checks"
        for note in self.notes:
            out += f"\n  note: {note}"
        for v in self.violations[:20]:
            out += f"\n  violation: {v}"
        if len(self.violations) > 20:
            out += f"\n  ... and {len(self.violations) - 20} more"
        return out


def rowex_suite(inventory: Inventory, max_n: int) -> SuiteReport:
    """Row exchanges preserve the non-vanishing verdict always and, on
    non-vanishing inputs, the enhanced parameter; on those inputs double
    application is the identity up to equivalence and all exchange paths to
    one order agree.  Exchanges also reach exactly the admissible orders.

    The involution and path-independence laws are consequences of the
    isomorphism of the exchanged representations, so they are asserted on
    non-vanishing classes only; vanishing data admits genuine counterexamples.
    """
    violations: list[str] = []
    checked = 0
    for psi in corpus.iter_good_parity(inventory, max_n):
        first = True
        for E in candidates(psi):
            Et = translate(E, minimal_translation(E))
            verdict = nonvanishing(Et)
            if first:
                first = False
                reachable = len(enumerate_orders(Et))
                direct = admissible_order_count(Et)
                if reachable != direct:
                    violations.append(
                        f"{Et}: {reachable} reachable orders, {direct} admissible"
                    )
            if verdict:
                try:
                    enumerate_orders(Et, verify_paths=True)
                except OrderError as exc:
                    violations.append(f"{Et}: {exc}")
            for rho, segs in Et.lines:
                for k in range(1, len(segs)):
                    F = row_exchange(Et, rho, k)
                    checked += 1
                    if F == Et:
                        continue
                    if nonvanishing(F) != verdict:
                        violations.append(
                            f"{Et} --R_{k}({rho})--> {F}: verdict flips"
                        )
                    if verdict:
                        if enhanced(F) != enhanced(Et):
                            violations.append(
                                f"{Et} --R_{k}({rho})--> {F}: enhanced parameter "
                                "moved"
                            )
                        G = row_exchange(F, rho, k)
                        if not equivalent(G, Et):
                            violations.append(
                                f"{Et}: double exchange at {rho}[{k}] gives {G}"
                            )
    return SuiteReport("rowex", not violations, checked, tuple(violations))


def ddr_suite(inventory: Inventory, max_n: int) -> SuiteReport:
    """The one-step recursion consistency oracle over every non-negative DDR
    parameter, character, and deformable block."""
    violations: list[str] = []
    checked = 0
    for psi in corpus.iter_nonneg_ddr(inventory, max_n):
        blocks = [b.key for b in psi.blocks if b.b >= 2]
        if not blocks:
            continue
        for eps in all_characters(psi):
            for key in blocks:
                checked += 1
                rep = ddr_check(psi, eps, key)
                if not rep.passed:
                    for d in rep.details:
                        violations.append(f"psi={psi.blocks} eps={eps.values} "
                                          f"block={key}: {d}")
    return SuiteReport("ddr", not violations, checked, tuple(violations))


def adams_suite(
    inventory: Inventory, max_n: int, table: RootNumberTable
) -> SuiteReport:
    """Theta-shift compatibility at alpha = 2n + 2 and one larger even alpha."""
    violations: list[str] = []
    checked = 0
    for psi in corpus.iter_good_parity(inventory, max_n):
        for alpha in (2 * psi.n + 2, 2 * psi.n + 4):
            rep = packet_shift_check(psi, alpha, table)
            checked += rep.checked_members
            violations.extend(
                f"psi={psi.blocks} alpha={alpha}: {v}" for v in rep.violations
            )
    return SuiteReport("adams", not violations, checked, tuple(violations))


def cuspidal_oracle_suite(inventory: Inventory, max_n: int) -> SuiteReport:
    """The closed cuspidality conditions against the exhaustive Jacquet-module
    scan, plus the chain-bound consistency and the dimension law."""
    violations: list[str] = []
    checked = 0
    rho_ids = [lab.id for lab in inventory]
    for phi in corpus.iter_discrete_lparameters(inventory, max_n):
        max_a = max((b.a for b in phi.blocks), default=0)
        for eps in all_characters(phi):
            checked += 1
            closed = is_cuspidal(phi, eps)
            scan = True
            for rho in rho_ids:
                for twice_x in range(0, 2 * max_a + 2):
                    res = jac(phi, eps, rho, HalfInteger(twice_x))
                    if res is None:
                        continue
                    scan = False
                    want = phi.dim - 2 * phi.inventory[rho].dim
                    if res.parameter.dim != want:
                        violations.append(
                            f"phi={phi.blocks} eps={eps.values}: Jacquet output "
                            f"dimension {res.parameter.dim}, want {want}"
                        )
            if closed != scan:
                violations.append(
                    f"phi={phi.blocks} eps={eps.values}: closed conditions say "
                    f"{closed}, scan says {scan}"
                )
            via_bounds = all(
                bounds(phi, eps, rho).cuspidal_line for rho in rho_ids
            )
            if closed != via_bounds:
                violations.append(
                    f"phi={phi.blocks} eps={eps.values}: chain bounds disagree "
                    "with the closed conditions"
                )
    return SuiteReport("cuspidal-oracle", not violations, checked, tuple(violations))


def ato_suite(inventory: Inventory, max_n: int) -> SuiteReport:
    """Character laws of the normalization sign: it is a character (trivial
    total product over the block multiset), its value on the distinguished
    element counts the crossing pairs, and it is trivial on non-negative
    DDRs."""
    violations: list[str] = []
    checked = 0
    for psi in corpus.iter_good_parity(inventory, max_n):
        checked += 1
        ato = ato_sign(psi, canonical_order(psi))
        total = 1
        for blk in psi.blocks:
            total *= ato.character(blk.key) ** blk.mult
        if total != 1:
            violations.append(f"psi={psi.blocks}: total product {total} != +1")
        if psi.blocks:
            lhs = pair(ato.character, s_psi(psi))
            if lhs != neg_one_pow(ato.count):
                violations.append(
                    f"psi={psi.blocks}: value {lhs} on s_psi, "
                    f"{ato.count} crossing pairs"
                )
        if classify(psi).nonneg_ddr and ato.pairs:
            violations.append(
                f"psi={psi.blocks}: non-negative DDR with crossing pairs "
                f"{ato.pairs}"
            )
    return SuiteReport("ato", not violations, checked, tuple(violations))


SUITES = {
    "rowex": lambda inv, max_n, table: rowex_suite(inv, max_n),
    "ddr": lambda inv, max_n, table: ddr_suite(inv, max_n),
    "adams": adams_suite,
    "cuspidal-oracle": lambda inv, max_n, table: cuspidal_oracle_suite(inv, max_n),
}
