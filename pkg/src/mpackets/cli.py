"""Command surface.

Every command reads a workspace file, works on a named entry (the name may be
omitted when the section has a single entry), and prints either a human
summary or, with --json, a machine document in the same workspace schema.
Exit codes: 0 success, 1 input error, 2 precondition error, 3 check-suite
failure.

The only environment variable honoured is MPACKETS_INVENTORY: a path to a
workspace file whose inventory is used when the input file has none.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import checks
from .adams import shift_alpha
from .atlas import build_atlas
from .core import AParameter, all_characters, classify
from .discrete import is_cuspidal, jac
from .errors import InvalidData, MPacketsError, PreconditionError, SchemaError
from .halfint import HalfInteger
from .nonvanish import nonvanishing, row_exchange
from .packets import enumerate_all, enumerate_packet
from .serial import (
    Workspace,
    character_to_json,
    emit_doc,
    label_to_json,
    parameter_to_json,
    parse,
    xms_to_json,
)
from .xms import enhanced

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_CHECK = 3

DEFAULT_SUITE_BOUNDS = {"rowex": 10, "ddr": 12, "adams": 8, "cuspidal-oracle": 10}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argument problems are input errors
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


class _CliInputError(Exception):
    pass


def _load(path: str) -> Workspace:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _CliInputError(f"cannot read {path}: {exc}") from exc
    fallback = None
    env = os.environ.get("MPACKETS_INVENTORY")
    if env:
        try:
            with open(env, "r", encoding="utf-8") as fh:
                fallback = parse(fh.read()).inventory
        except OSError as exc:
            raise _CliInputError(f"cannot read MPACKETS_INVENTORY={env}: {exc}")
    try:
        return parse(text, fallback_inventory=fallback)
    except SchemaError as exc:
        raise _CliInputError(str(exc)) from exc


def _doc(ws: Workspace, **sections) -> str:
    doc = {"inventory": [label_to_json(lab) for lab in ws.inventory]}
    doc.update({k: v for k, v in sections.items() if v})
    return emit_doc(doc)


def _character_for(
    ws: Workspace, pname: str, psi: AParameter, cname: Optional[str]
):
    name, owner, eps = ws.character(cname)
    if owner != pname:
        raise _CliInputError(
            f"character {name!r} belongs to parameter {owner!r}, not {pname!r}"
        )
    domain = {b.key for b in classify(psi).iplus}
    if eps.domain != domain:
        raise _CliInputError(
            f"character {name!r} is not a character on the good-parity classes "
            f"of {pname!r}"
        )
    return name, eps


def _flag_line(psi: AParameter) -> str:
    cls = classify(psi)
    flags = [
        name
        for name, on in [
            ("good-parity", cls.good_parity),
            ("discrete", cls.discrete),
            ("tempered", cls.tempered),
            ("nonneg-ddr", cls.nonneg_ddr),
        ]
        if on
    ]
    return ", ".join(flags) if flags else "none"


def cmd_validate(args) -> int:
    ws = _load(args.workspace)
    print(
        f"workspace ok: {len(ws.inventory.labels)} labels, "
        f"{len(ws.parameters)} parameters, {len(ws.characters)} characters, "
        f"{len(ws.xms)} multi-segments"
    )
    return EXIT_OK


def cmd_classify(args) -> int:
    ws = _load(args.workspace)
    pname, psi = ws.parameter(args.parameter)
    cls = classify(psi)
    if args.json:
        rec = {
            "kind": "classify",
            "parameter": pname,
            "n": psi.n,
            "good_parity": cls.good_parity,
            "discrete": cls.discrete,
            "tempered": cls.tempered,
            "nonneg_ddr": cls.nonneg_ddr,
            "iplus": [f"{b.rho}:{b.a}:{b.b}" for b in cls.iplus],
            "iminus": [f"{b.rho}:{b.a}:{b.b}" for b in cls.iminus],
            "jpairs": [
                [f"{x.rho}:{x.a}:{x.b}", f"{y.rho}:{y.a}:{y.b}"]
                for x, y in cls.jpairs
            ],
        }
        print(_doc(ws, parameters=[parameter_to_json(pname, psi)], reports=[rec]),
              end="")
        return EXIT_OK
    print(f"parameter {pname}: 2n = {psi.dim}, flags: {_flag_line(psi)}")
    for b in cls.iplus:
        print(f"  I+  {b.rho} (x) r({b.a}) (x) r({b.b})  x{b.mult}")
    for b in cls.iminus:
        print(f"  I-  {b.rho} (x) r({b.a}) (x) r({b.b})  x{b.mult}")
    for x, y in cls.jpairs:
        print(f"  J   {x.rho}/{y.rho} (x) r({x.a}) (x) r({x.b})  x{x.mult}")
    return EXIT_OK


def cmd_cuspidal(args) -> int:
    ws = _load(args.workspace)
    pname, psi = ws.parameter(args.parameter)
    cname, eps = _character_for(ws, pname, psi, args.character)
    value = is_cuspidal(psi, eps)
    if args.json:
        rec = {"kind": "cuspidal", "parameter": pname, "character": cname,
               "value": value}
        print(_doc(ws, parameters=[parameter_to_json(pname, psi)],
                   characters=[character_to_json(cname, pname, eps)],
                   reports=[rec]), end="")
    else:
        print(f"cuspidal: {'true' if value else 'false'}")
    return EXIT_OK


def cmd_jac(args) -> int:
    ws = _load(args.workspace)
    pname, psi = ws.parameter(args.parameter)
    cname, eps = _character_for(ws, pname, psi, args.character)
    res = jac(psi, eps, args.rho, HalfInteger(args.x2))
    if args.json:
        if res is None:
            rec = {"kind": "jac", "rho": args.rho, "x2": args.x2, "zero": True}
            print(_doc(ws, reports=[rec]), end="")
        else:
            rec = {"kind": "jac", "rho": args.rho, "x2": args.x2, "zero": False,
                   "discrete": res.discrete}
            print(_doc(
                ws,
                parameters=[parameter_to_json("jac.result", res.parameter)],
                characters=[character_to_json("jac.result.eps", "jac.result",
                                              res.character)],
                reports=[rec],
            ), end="")
        return EXIT_OK
    if res is None:
        print("zero")
    else:
        blocks = ", ".join(
            f"{b.rho}:{b.a}:{b.b}x{b.mult}" for b in res.parameter.blocks
        ) or "(empty)"
        signs = ", ".join(f"{r}:{a}:{b}={v:+d}" for (r, a, b), v in res.character.values)
        print(f"result: {blocks}  [{signs or 'no classes'}]"
              f"  discrete={str(res.discrete).lower()}")
    return EXIT_OK


def _print_members(pname, cname, members):
    print(f"packet {pname} / {cname}: {len(members)} member(s)")
    for m in members:
        print(f"  {m.xms}")


def cmd_packet(args) -> int:
    ws = _load(args.workspace)
    pname, psi = ws.parameter(args.parameter)
    owned = [c for c in ws.characters if c[1] == pname]
    if args.character is not None:
        cname, eps = _character_for(ws, pname, psi, args.character)
        selections = [(cname, eps)]
    elif len(owned) == 1:
        cname, eps = _character_for(ws, pname, psi, owned[0][0])
        selections = [(cname, eps)]
    else:
        selections = [
            (f"e{i:02d}", eps) for i, eps in enumerate(all_characters(psi))
        ]
    xms_out = []
    recs = []
    for cname, eps in selections:
        members = enumerate_packet(psi, eps)
        if args.json:
            names = []
            for mi, m in enumerate(members):
                mname = f"{pname}.{cname}.m{mi:02d}"
                xms_out.append(xms_to_json(mname, m.xms))
                names.append(mname)
            recs.append({"kind": "packet", "parameter": pname, "character": cname,
                         "values": {f"{r}:{a}:{b}": v for (r, a, b), v in eps.values},
                         "members": names})
        else:
            _print_members(pname, cname, members)
    if args.json:
        print(_doc(ws, parameters=[parameter_to_json(pname, psi)], xms=xms_out,
                   reports=recs), end="")
    return EXIT_OK


def cmd_nonvanish(args) -> int:
    ws = _load(args.workspace)
    name, E = ws.multisegment(args.xms)
    value = nonvanishing(E)
    if args.json:
        rec = {"kind": "nonvanish", "xms": name, "value": value}
        print(_doc(ws, xms=[xms_to_json(name, E)], reports=[rec]), end="")
    else:
        print(f"nonvanishing: {'true' if value else 'false'}")
    return EXIT_OK


def cmd_rowex(args) -> int:
    ws = _load(args.workspace)
    name, E = ws.multisegment(args.xms)
    out = row_exchange(E, args.rho, args.k)
    if args.json:
        rec = {"kind": "rowex", "xms": name, "rho": args.rho, "k": args.k,
               "exchanged": out != E}
        print(_doc(ws, xms=[xms_to_json(f"{name}.rowex", out)], reports=[rec]),
              end="")
    else:
        note = "" if out != E else "  (order not exchangeable; unchanged)"
        print(f"{out}{note}")
    return EXIT_OK


def cmd_adams(args) -> int:
    ws = _load(args.workspace)
    name, E = ws.multisegment(args.xms)
    shifted = shift_alpha(E, args.alpha, ws.root_table())
    if args.json:
        rec = {"kind": "adams", "xms": name, "alpha": args.alpha,
               "central_sign": shifted.central_sign}
        print(_doc(ws, xms=[xms_to_json(f"{name}.alpha", shifted.xms)],
                   reports=[rec]), end="")
    else:
        print(f"{shifted.xms}")
        print(f"central sign: {shifted.central_sign:+d}")
    return EXIT_OK


def cmd_atlas(args) -> int:
    ws = _load(args.workspace)
    doc = build_atlas(ws.inventory, args.max_n)
    if args.json:
        print(emit_doc(doc), end="")
        return EXIT_OK
    summary = doc["reports"][-1]
    print(
        f"atlas over 2n <= {args.max_n}: {summary['parameters']} parameters, "
        f"{summary['members']} members"
    )
    empties = sum(
        1 for r in doc["reports"] if r.get("kind") == "atlas-record" and r["empty"]
    )
    print(f"empty (parameter, character) slots: {empties}")
    return EXIT_OK


def cmd_check(args) -> int:
    ws = _load(args.workspace)
    max_n = args.max_n or DEFAULT_SUITE_BOUNDS[args.suite]
    suite = checks.SUITES[args.suite]
    report = suite(ws.inventory, max_n, ws.root_table())
    if args.json:
        rec = {"kind": "check", "suite": report.suite, "max_n": max_n,
               "passed": report.passed, "checked": report.checked,
               "violations": list(report.violations)}
        print(_doc(ws, reports=[rec]), end="")
    else:
        print(report.summary())
    return EXIT_OK if report.passed else EXIT_CHECK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mpackets", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, **extra):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("workspace", help="workspace file (JSON schema)")
        p.set_defaults(fn=fn)
        if extra.get("json", True):
            p.add_argument("--json", action="store_true",
                           help="emit a machine-readable workspace document")
        return p

    add("validate", cmd_validate, "parse and validate a workspace", json=False)

    p = add("classify", cmd_classify, "classify a parameter")
    p.add_argument("--parameter", help="parameter name")

    p = add("cuspidal", cmd_cuspidal, "decide cuspidality of (parameter, character)")
    p.add_argument("--parameter")
    p.add_argument("--character")

    p = add("jac", cmd_jac, "parameter-level partial Jacquet module")
    p.add_argument("--parameter")
    p.add_argument("--character")
    p.add_argument("--rho", required=True, help="cuspidal line")
    p.add_argument("--x2", required=True, type=int, help="doubled point 2x")

    p = add("packet", cmd_packet, "enumerate packet members")
    p.add_argument("--parameter")
    p.add_argument("--character", help="restrict to one character")

    p = add("nonvanish", cmd_nonvanish, "decide the non-vanishing criterion")
    p.add_argument("--xms", help="multi-segment name")

    p = add("rowex", cmd_rowex, "row exchange at positions k-1, k")
    p.add_argument("--xms")
    p.add_argument("--rho", required=True)
    p.add_argument("--k", required=True, type=int)

    p = add("adams", cmd_adams, "theta shift of a multi-segment")
    p.add_argument("--xms")
    p.add_argument("--alpha", required=True, type=int)

    p = add("atlas", cmd_atlas, "enumerate all good-parity packets up to a bound")
    p.add_argument("--max-n", required=True, type=int,
                   help="total dimension bound (2n)")

    p = add("check", cmd_check, "run a corpus check suite")
    p.add_argument("--suite", required=True, choices=sorted(checks.SUITES))
    p.add_argument("--max-n", type=int, help="override the suite's corpus bound")

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _CliInputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InvalidData as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except MPacketsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
