"""The atlas generator: every good-parity parameter up to a bound, with all
packet members and multiplicity diagnostics, as one workspace document."""

from __future__ import annotations

from typing import Any

from .core import Inventory, all_characters
from .packets import enumerate_all, report
from .serial import (
    character_to_json,
    label_to_json,
    parameter_to_json,
    xms_to_json,
)
from . import corpus


def build_atlas(inventory: Inventory, max_n: int) -> dict[str, Any]:
    """One record per (parameter, character): members and diagnostics.

    Output is deterministic for a fixed inventory and bound; it re-parses
    under the workspace schema.
    """
    parameters = []
    characters = []
    xms_entries = []
    records = []
    total_members = 0

    psis = list(corpus.iter_good_parity(inventory, max_n))
    for pi, psi in enumerate(psis):
        pname = f"p{pi:04d}"
        parameters.append(parameter_to_json(pname, psi))
        table = enumerate_all(psi)
        diag = report(psi)
        for ei, eps in enumerate(all_characters(psi)):
            cname = f"{pname}.e{ei:02d}"
            characters.append(character_to_json(cname, pname, eps))
            member_names = []
            for mi, member in enumerate(table[eps]):
                mname = f"{cname}.m{mi:02d}"
                xms_entries.append(xms_to_json(mname, member.xms))
                member_names.append(mname)
            total_members += len(member_names)
            records.append(
                {
                    "kind": "atlas-record",
                    "parameter": pname,
                    "character": cname,
                    "members": member_names,
                    "empty": not member_names,
                }
            )
        records.append(
            {
                "kind": "atlas-diagnostics",
                "parameter": pname,
                "total_members": diag.total,
                "multiplicity_free": diag.multiplicity_free,
                "empty_characters": len(diag.empty_characters),
            }
        )

    records.append(
        {
            "kind": "atlas-summary",
            "max_n": max_n,
            "parameters": len(psis),
            "members": total_members,
        }
    )
    return {
        "inventory": [label_to_json(lab) for lab in inventory],
        "parameters": parameters,
        "characters": characters,
        "xms": xms_entries,
        "reports": records,
    }
