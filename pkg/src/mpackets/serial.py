"""Workspace files: a single JSON-compatible schema for all pipeline data.

One document carries an inventory plus named parameters, characters and
multi-segments (and free-form report records).  Emission is canonical (sorted
keys, two-space indent, trailing newline) so canonical files round-trip
byte-for-byte through parse -> emit.  Half-integers serialize as doubled
integers under "A2"/"B2"/"x2" keys; signs as 1/-1; character values are keyed
"rho:a:b"; segment order is list order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .core import (
    AParameter,
    Character,
    CuspidalLabel,
    GroupSide,
    Inventory,
    JordanBlock,
    SelfDualType,
    build_inventory,
    build_parameter,
)
from .errors import InvalidData, SchemaError
from .halfint import HalfInteger
from .roots import RootNumberTable, validate_ratio_rule
from .xms import ExtendedMultiSegment, ExtendedSegment, build_xms


@dataclass(frozen=True)
class Workspace:
    inventory: Inventory
    parameters: tuple[tuple[str, AParameter], ...] = ()
    characters: tuple[tuple[str, str, Character], ...] = ()  # (name, param, char)
    xms: tuple[tuple[str, ExtendedMultiSegment], ...] = ()
    reports: tuple[Any, ...] = ()

    def parameter(self, name: Optional[str] = None) -> tuple[str, AParameter]:
        return _select("parameter", self.parameters, name)

    def character(self, name: Optional[str] = None) -> tuple[str, str, Character]:
        items = [(n, (n, p, c)) for n, p, c in self.characters]
        return _select("character", items, name)[1]

    def multisegment(self, name: Optional[str] = None) -> tuple[str, ExtendedMultiSegment]:
        return _select("xms", self.xms, name)

    def root_table(self) -> RootNumberTable:
        return RootNumberTable.from_inventory(self.inventory)


def _select(kind, items, name):
    if name is None:
        if len(items) == 1:
            return items[0]
        raise SchemaError(
            f"workspace holds {len(items)} {kind} entries; select one by name"
        )
    for item in items:
        if item[0] == name:
            return item
    raise SchemaError(f"no {kind} named {name!r} in workspace")


# ---------------------------------------------------------------------------
# reading
# ---------------------------------------------------------------------------


def _need(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise SchemaError(f"{path}: missing field {key!r}")
    return obj[key]


def _as_sign(v: Any, path: str) -> int:
    if v not in (1, -1):
        raise SchemaError(f"{path}: expected 1 or -1, got {v!r}")
    return v


def _as_int(v: Any, path: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"{path}: expected an integer, got {v!r}")
    return v


def _as_str(v: Any, path: str) -> str:
    if not isinstance(v, str):
        raise SchemaError(f"{path}: expected a string, got {v!r}")
    return v


def _as_list(v: Any, path: str) -> list:
    if not isinstance(v, list):
        raise SchemaError(f"{path}: expected a list, got {type(v).__name__}")
    return v


def _as_obj(v: Any, path: str) -> dict:
    if not isinstance(v, dict):
        raise SchemaError(f"{path}: expected an object, got {type(v).__name__}")
    return v


def _label_from(obj: dict, path: str) -> CuspidalLabel:
    roots_obj = _as_obj(obj.get("roots", {}), f"{path}.roots")
    roots = []
    for n_str, v in roots_obj.items():
        try:
            n = int(n_str)
        except ValueError:
            raise SchemaError(f"{path}.roots: key {n_str!r} is not an integer")
        roots.append((n, _as_sign(v, f"{path}.roots.{n_str}")))
    type_str = _as_str(_need(obj, "type", path), f"{path}.type")
    try:
        sdt = SelfDualType(type_str)
    except ValueError:
        raise SchemaError(f"{path}.type: unknown duality type {type_str!r}")
    return CuspidalLabel(
        id=_as_str(_need(obj, "id", path), f"{path}.id"),
        dim=_as_int(_need(obj, "dim", path), f"{path}.dim"),
        dual_id=_as_str(obj.get("dual", _need(obj, "id", path)), f"{path}.dual"),
        self_dual_type=sdt,
        is_trivial=bool(obj.get("trivial", False)),
        omega_minus_one=_as_sign(obj.get("omega", 1), f"{path}.omega"),
        root_numbers=tuple(sorted(roots)),
    )


def _side_from(obj: dict, path: str) -> GroupSide:
    side = obj.get("side", "metaplectic")
    try:
        return GroupSide(_as_str(side, f"{path}.side"))
    except ValueError:
        raise SchemaError(f"{path}.side: unknown side {side!r}")


def _block_key_from(text: str, path: str) -> tuple[str, int, int]:
    parts = text.rsplit(":", 2)
    if len(parts) != 3:
        raise SchemaError(f"{path}: block key {text!r} is not 'rho:a:b'")
    try:
        return (parts[0], int(parts[1]), int(parts[2]))
    except ValueError:
        raise SchemaError(f"{path}: block key {text!r} has non-integer a or b")


def parse(text: str, fallback_inventory: Optional[Inventory] = None) -> Workspace:
    """Load and fully validate a workspace document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    doc = _as_obj(doc, "$")

    unknown = set(doc) - {"inventory", "parameters", "characters", "xms", "reports"}
    if unknown:
        raise SchemaError(f"$: unknown sections {sorted(unknown)}")

    if "inventory" in doc:
        labels = []
        for i, entry in enumerate(_as_list(doc["inventory"], "inventory")):
            path = f"inventory[{i}]"
            try:
                labels.append(_label_from(_as_obj(entry, path), path))
            except InvalidData as exc:
                raise SchemaError(f"{path}: {exc}") from exc
        try:
            inventory = build_inventory(labels)
        except InvalidData as exc:
            raise SchemaError(f"inventory: {exc}") from exc
    elif fallback_inventory is not None:
        inventory = fallback_inventory
    else:
        raise SchemaError("$: workspace has no inventory section")

    problems = validate_ratio_rule(RootNumberTable.from_inventory(inventory), inventory)
    if problems:
        raise SchemaError("inventory roots: " + "; ".join(problems))

    parameters: list[tuple[str, AParameter]] = []
    for i, entry in enumerate(_as_list(doc.get("parameters", []), "parameters")):
        path = f"parameters[{i}]"
        obj = _as_obj(entry, path)
        name = _as_str(_need(obj, "name", path), f"{path}.name")
        blocks = []
        for j, b in enumerate(_as_list(_need(obj, "blocks", path), f"{path}.blocks")):
            bpath = f"{path}.blocks[{j}]"
            bobj = _as_obj(b, bpath)
            try:
                blocks.append(
                    JordanBlock(
                        rho=_as_str(_need(bobj, "rho", bpath), f"{bpath}.rho"),
                        a=_as_int(_need(bobj, "a", bpath), f"{bpath}.a"),
                        b=_as_int(_need(bobj, "b", bpath), f"{bpath}.b"),
                        mult=_as_int(bobj.get("mult", 1), f"{bpath}.mult"),
                    )
                )
            except InvalidData as exc:
                raise SchemaError(f"{bpath}: {exc}") from exc
        try:
            parameters.append(
                (name, build_parameter(inventory, blocks, _side_from(obj, path)))
            )
        except InvalidData as exc:
            raise SchemaError(f"{path}: {exc}") from exc

    param_names = {n for n, _ in parameters}
    if len(param_names) != len(parameters):
        raise SchemaError("parameters: duplicate names")

    characters: list[tuple[str, str, Character]] = []
    for i, entry in enumerate(_as_list(doc.get("characters", []), "characters")):
        path = f"characters[{i}]"
        obj = _as_obj(entry, path)
        name = _as_str(_need(obj, "name", path), f"{path}.name")
        pname = _as_str(_need(obj, "parameter", path), f"{path}.parameter")
        if pname not in param_names:
            raise SchemaError(f"{path}.parameter: unknown parameter {pname!r}")
        values = {}
        for key_str, v in _as_obj(_need(obj, "values", path), f"{path}.values").items():
            key = _block_key_from(key_str, f"{path}.values")
            values[key] = _as_sign(v, f"{path}.values.{key_str}")
        try:
            characters.append((name, pname, Character.from_map(values)))
        except InvalidData as exc:
            raise SchemaError(f"{path}: {exc}") from exc

    multisegs: list[tuple[str, ExtendedMultiSegment]] = []
    for i, entry in enumerate(_as_list(doc.get("xms", []), "xms")):
        path = f"xms[{i}]"
        obj = _as_obj(entry, path)
        name = _as_str(_need(obj, "name", path), f"{path}.name")
        lines = {}
        seg_obj = _as_obj(_need(obj, "segments", path), f"{path}.segments")
        for rho, seg_list in seg_obj.items():
            segs = []
            for j, s in enumerate(_as_list(seg_list, f"{path}.segments.{rho}")):
                spath = f"{path}.segments.{rho}[{j}]"
                sobj = _as_obj(s, spath)
                try:
                    segs.append(
                        ExtendedSegment(
                            A=HalfInteger(_as_int(_need(sobj, "A2", spath), f"{spath}.A2")),
                            B=HalfInteger(_as_int(_need(sobj, "B2", spath), f"{spath}.B2")),
                            l=_as_int(_need(sobj, "l", spath), f"{spath}.l"),
                            eta=_as_sign(_need(sobj, "eta", spath), f"{spath}.eta"),
                        )
                    )
                except InvalidData as exc:
                    raise SchemaError(f"{spath}: {exc}") from exc
            lines[rho] = segs
        try:
            multisegs.append(
                (name, build_xms(inventory, lines, _side_from(obj, path)))
            )
        except InvalidData as exc:
            raise SchemaError(f"{path}: {exc}") from exc

    reports = tuple(_as_list(doc.get("reports", []), "reports"))
    return Workspace(
        inventory=inventory,
        parameters=tuple(parameters),
        characters=tuple(characters),
        xms=tuple(multisegs),
        reports=reports,
    )


# ---------------------------------------------------------------------------
# writing
# ---------------------------------------------------------------------------


def label_to_json(lab: CuspidalLabel) -> dict:
    out: dict[str, Any] = {
        "id": lab.id,
        "dim": lab.dim,
        "dual": lab.dual_id,
        "type": lab.self_dual_type.value,
        "trivial": lab.is_trivial,
        "omega": lab.omega_minus_one,
    }
    if lab.root_numbers:
        out["roots"] = {str(n): v for n, v in lab.root_numbers}
    return out


def parameter_to_json(name: str, psi: AParameter) -> dict:
    return {
        "name": name,
        "side": psi.side.value,
        "blocks": [
            {"rho": b.rho, "a": b.a, "b": b.b, "mult": b.mult} for b in psi.blocks
        ],
    }


def character_to_json(name: str, pname: str, eps: Character) -> dict:
    return {
        "name": name,
        "parameter": pname,
        "values": {f"{r}:{a}:{b}": v for (r, a, b), v in eps.values},
    }


def xms_to_json(name: str, E: ExtendedMultiSegment) -> dict:
    return {
        "name": name,
        "side": E.side.value,
        "segments": {
            rho: [
                {"A2": s.A.twice, "B2": s.B.twice, "l": s.l, "eta": s.eta}
                for s in segs
            ]
            for rho, segs in E.lines
        },
    }


def workspace_to_json(ws: Workspace) -> dict:
    doc: dict[str, Any] = {
        "inventory": [label_to_json(lab) for lab in ws.inventory]
    }
    if ws.parameters:
        doc["parameters"] = [parameter_to_json(n, p) for n, p in ws.parameters]
    if ws.characters:
        doc["characters"] = [
            character_to_json(n, p, c) for n, p, c in ws.characters
        ]
    if ws.xms:
        doc["xms"] = [xms_to_json(n, E) for n, E in ws.xms]
    if ws.reports:
        doc["reports"] = list(ws.reports)
    return doc


def emit_doc(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit(ws: Workspace) -> str:
    return emit_doc(workspace_to_json(ws))
