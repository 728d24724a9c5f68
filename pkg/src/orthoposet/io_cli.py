"""Poset file format, table/DOT renderers, JSON reports and the CLI.

File format (line oriented, ``#`` starts a comment, sections in this order,
``covers``/``prime`` lines may repeat):

    poset NAME
    elements L1 L2 ...
    covers A<B A<C ...
    prime A:B C:D ...

Labels are any non-whitespace strings without ``<`` or ``:``. The cover
relation is closed reflexively-transitively; the result must be a bounded
poset. ``prime``, when present, must be total.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from . import verify
from .adjoint import (
    CONDITION_KEYS,
    find_o6_subalgebra,
    is_adjoint_pair,
)
from .enumeration import SEARCH_FLAGS, SearchGoal, instance_flag_map, search
from .poset_core import OpPoset, Poset, PosetError, UndefinedOperationError
from .properties import PROPERTY_NAMES, op_reports, poset_reports
from .sasaki import OpTable, op_tables, sasaki_proj, sasaki_proj_dual


class ParseError(PosetError):
    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, column {col}: {message}")


@dataclass(frozen=True)
class PosetDocument:
    name: str
    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    prime: Optional[dict[str, str]]


_SECTION_ORDER = ("poset", "elements", "covers", "prime")


def _check_label(label: str, line: int, col: int) -> str:
    if "<" in label or ":" in label:
        raise ParseError(line, col, f"label {label!r} may not contain '<' or ':'")
    return label


def parse_poset(text: str) -> PosetDocument:
    """Parse and fully validate a poset document."""
    name = None
    elements: list[str] = []
    covers: list[tuple[str, str]] = []
    prime: dict[str, str] = {}
    seen_prime = False
    stage = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = line.split()
        keyword = tokens[0]
        col = line.index(keyword) + 1
        if keyword not in _SECTION_ORDER:
            raise ParseError(lineno, col, f"unknown section {keyword!r}")
        idx = _SECTION_ORDER.index(keyword)
        if idx < stage:
            raise ParseError(lineno, col, f"section {keyword!r} out of order")
        if keyword in ("poset", "elements") and idx == stage:
            raise ParseError(lineno, col, f"duplicate section {keyword!r}")
        stage = idx
        body = tokens[1:]
        if keyword == "poset":
            if len(body) != 1:
                raise ParseError(lineno, col, "poset section expects exactly one name")
            name = body[0]
        elif keyword == "elements":
            for tok in body:
                label = _check_label(tok, lineno, line.index(tok) + 1)
                if label in elements:
                    raise ParseError(lineno, line.index(tok) + 1, f"duplicate element {label!r}")
                elements.append(label)
            if not elements:
                raise ParseError(lineno, col, "elements section is empty")
        elif keyword == "covers":
            for tok in body:
                tcol = line.index(tok) + 1
                if tok.count("<") != 1:
                    raise ParseError(lineno, tcol, f"cover {tok!r} must be A<B")
                a, b = tok.split("<")
                for lab in (a, b):
                    if lab not in elements:
                        raise ParseError(lineno, tcol, f"unknown element {lab!r} in cover")
                if a == b:
                    raise ParseError(lineno, tcol, f"cover {tok!r} relates an element to itself")
                covers.append((a, b))
        else:
            seen_prime = True
            for tok in body:
                tcol = line.index(tok) + 1
                if tok.count(":") != 1:
                    raise ParseError(lineno, tcol, f"prime entry {tok!r} must be A:B")
                a, b = tok.split(":")
                for lab in (a, b):
                    if lab not in elements:
                        raise ParseError(lineno, tcol, f"unknown element {lab!r} in prime")
                if a in prime:
                    raise ParseError(lineno, tcol, f"duplicate prime entry for {a!r}")
                prime[a] = b
    if name is None:
        raise ParseError(1, 1, "missing poset section")
    if not elements:
        raise ParseError(1, 1, "missing elements section")
    if seen_prime:
        missing = [e for e in elements if e not in prime]
        if missing:
            raise ParseError(1, 1, f"prime map is partial; missing {', '.join(missing)}")
    doc = PosetDocument(
        name, tuple(elements), tuple(covers), dict(prime) if seen_prime else None
    )
    document_to_poset(doc)  # validates cycles and bounds
    return doc


def document_to_poset(doc: PosetDocument) -> Poset:
    index = {s: i for i, s in enumerate(doc.elements)}
    try:
        return Poset.from_covers(
            doc.elements, [(index[a], index[b]) for a, b in doc.covers]
        )
    except PosetError as exc:
        raise PosetError(f"{doc.name}: {exc}") from None


def document_to_op(doc: PosetDocument) -> OpPoset:
    if doc.prime is None:
        raise PosetError(f"{doc.name}: file defines no unary operation (prime section)")
    return OpPoset.from_named_map(document_to_poset(doc), doc.prime)


def serialize_document(doc: PosetDocument) -> str:
    lines = [f"poset {doc.name}", "elements " + " ".join(doc.elements)]
    if doc.covers:
        lines.append("covers " + " ".join(f"{a}<{b}" for a, b in doc.covers))
    if doc.prime is not None:
        lines.append("prime " + " ".join(f"{a}:{doc.prime[a]}" for a in doc.elements))
    return "\n".join(lines) + "\n"


def poset_to_document(p: Poset, name: str, prime: Optional[tuple[int, ...]] = None) -> PosetDocument:
    covers = tuple((p.names[i], p.names[j]) for i, j in sorted(p.covers()))
    pm = None
    if prime is not None:
        pm = {p.names[i]: p.names[v] for i, v in enumerate(prime)}
    return PosetDocument(name, p.names, covers, pm)


def load_poset_path(path: str) -> PosetDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_poset(fh.read())


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath("fixtures", name).read_text("utf-8")


def load_fixture(name: str) -> PosetDocument:
    """Bundled document, e.g. load_fixture("ex1.poset")."""
    return parse_poset(fixture_text(name))


# ---------------------------------------------------------------------------
# renderers
# ---------------------------------------------------------------------------


def _cell_text(p: Poset, mask: int) -> str:
    names = p.names_of(mask)
    if len(names) == 1:
        return names[0]
    return "{" + ",".join(names) + "}"


def render_table(table: OpTable, fmt: str = "text") -> str:
    p = table.poset
    if fmt == "text":
        head = [table.kind] + list(p.names)
        rows = [head]
        for x in range(p.n):
            rows.append(
                [p.names[x]] + [_cell_text(p, table.cells[x][y]) for y in range(p.n)]
            )
        widths = [max(len(r[c]) for r in rows) for c in range(p.n + 1)]
        return "\n".join(
            "  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip()
            for row in rows
        ) + "\n"
    if fmt == "csv":
        lines = [",".join([table.kind] + list(p.names))]
        for x in range(p.n):
            cells = ["|".join(p.names_of(table.cells[x][y])) for y in range(p.n)]
            lines.append(",".join([p.names[x]] + cells))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = {
            "op": table.kind,
            "elements": list(p.names),
            "cells": [
                [list(p.names_of(table.cells[x][y])) for y in range(p.n)]
                for x in range(p.n)
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    raise PosetError(f"unknown table format {fmt!r}")


def export_dot(p: Poset) -> str:
    """DOT digraph of the cover relation, bottom ranked lowest."""
    lines = ["digraph poset {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for name in p.names:
        lines.append(f'  "{name}";')
    for i, j in sorted(p.covers()):
        lines.append(f'  "{p.names[i]}" -> "{p.names[j]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "properties": {
            "type": "object",
            "properties": {k: {"type": "boolean"} for k in PROPERTY_NAMES},
            "additionalProperties": False,
        },
        "witnesses": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "properties": {
                    "elements": {"type": "array", "items": {"type": "string"}},
                    "condition": {"type": "string"},
                },
                "required": ["elements", "condition"],
            },
        },
        "adjoint": {
            "type": "object",
            "properties": {
                "a1": {"type": "boolean"},
                "a2": {"type": "boolean"},
                "witnesses": {
                    "type": "object",
                    "properties": {
                        "a1": {"type": ["array", "null"], "items": {"type": "string"}},
                        "a2": {"type": ["array", "null"], "items": {"type": "string"}},
                    },
                    "required": ["a1", "a2"],
                },
            },
            "required": ["a1", "a2", "witnesses"],
        },
        "conditions": {
            "type": "object",
            "properties": {k: {"type": "boolean"} for k in CONDITION_KEYS},
            "required": list(CONDITION_KEYS),
            "additionalProperties": False,
        },
    },
    "required": ["name", "n", "properties"],
    "additionalProperties": False,
}


def json_report(doc: PosetDocument) -> dict:
    """Stable-keyed structured report; adjointness only on orthogonal input."""
    p = document_to_poset(doc)
    out: dict = {"name": doc.name, "n": p.n}
    if doc.prime is None:
        reports = poset_reports(p)
    else:
        op = document_to_op(doc)
        reports = op_reports(op)
    out["properties"] = {k: r.holds for k, r in reports.items()}
    out["witnesses"] = {
        k: {
            "elements": [p.names[i] for i in r.witness.elements],
            "condition": r.witness.condition,
        }
        for k, r in reports.items()
        if not r.holds
    }
    if doc.prime is not None and reports["orthogonal"].holds:
        op = document_to_op(doc)
        rep = is_adjoint_pair(op)
        out["adjoint"] = {
            "a1": rep.a1,
            "a2": rep.a2,
            "witnesses": {
                "a1": [p.names[i] for i in rep.a1_witness] if rep.a1_witness else None,
                "a2": [p.names[i] for i in rep.a2_witness] if rep.a2_witness else None,
            },
        }
        out["conditions"] = {k: rep.conditions[k] for k in CONDITION_KEYS}
    return out


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _load_for_cli(path: str) -> PosetDocument:
    try:
        return load_poset_path(path)
    except OSError as exc:
        raise PosetError(f"cannot read {path}: {exc.strerror}") from None


def _cmd_check(args) -> int:
    doc = _load_for_cli(args.file)
    op_only = {"orthogonal", "complemented", "antitone", "involution", "orthomodular"}
    if args.props:
        wanted = args.props.split(",")
    elif doc.prime is None:
        wanted = [p for p in PROPERTY_NAMES if p not in op_only]
    else:
        wanted = list(PROPERTY_NAMES)
    for prop in wanted:
        if prop not in PROPERTY_NAMES:
            raise PosetError(f"unknown property {prop!r} (choose from {', '.join(PROPERTY_NAMES)})")
        if prop in op_only and doc.prime is None:
            raise PosetError(f"property {prop!r} needs a prime section in the file")
    if args.json:
        rep = json_report(doc)
        print(json.dumps(rep, indent=2))
        return 0 if all(rep["properties"][k] for k in wanted) else 1
    p = document_to_poset(doc)
    reports = op_reports(document_to_op(doc)) if doc.prime is not None else poset_reports(p)
    ok = True
    for prop in wanted:
        rep = reports[prop]
        print(rep.describe(p))
        ok = ok and rep.holds
    return 0 if ok else 1


def _cmd_tables(args) -> int:
    doc = _load_for_cli(args.file)
    op = document_to_op(doc)
    try:
        odot_table, arrow_table = op_tables(op)
    except UndefinedOperationError as exc:
        print(
            f"cannot build the tables: {exc}. The operations are total exactly "
            "on orthogonal posets; run `check --props orthogonal` for a witness.",
            file=sys.stderr,
        )
        return 1
    chosen = {"odot": [odot_table], "arrow": [arrow_table], "both": [odot_table, arrow_table]}
    for table in chosen[args.op]:
        sys.stdout.write(render_table(table, args.format))
        if args.format == "text":
            print()
    return 0


def _cmd_adjoint(args) -> int:
    doc = _load_for_cli(args.file)
    op = document_to_op(doc)
    p = op.poset
    try:
        rep = is_adjoint_pair(op)
    except UndefinedOperationError as exc:
        print(f"operations undefined ({exc}); the poset is not orthogonal", file=sys.stderr)
        return 1
    print(f"a1: {str(rep.a1).lower()}")
    print(f"a2: {str(rep.a2).lower()}")
    if args.witness:
        if rep.a1_witness:
            print("a1 witness:", ", ".join(p.names[i] for i in rep.a1_witness))
        if rep.a2_witness:
            print("a2 witness:", ", ".join(p.names[i] for i in rep.a2_witness))
    print(f"adjoint pair: {str(rep.adjoint).lower()}")
    return 0 if rep.adjoint else 1


def _cmd_thm1(args) -> int:
    doc = _load_for_cli(args.file)
    op = document_to_op(doc)
    p = op.poset
    try:
        rep = is_adjoint_pair(op)
    except UndefinedOperationError as exc:
        print(f"operations undefined ({exc}); the poset is not orthogonal", file=sys.stderr)
        return 1
    print(f"a1: {str(rep.a1).lower()}")
    print(f"a2: {str(rep.a2).lower()}")
    for key in CONDITION_KEYS:
        line = f"({key}): {str(rep.conditions[key]).lower()}"
        wit = rep.condition_witnesses[key]
        if wit:
            line += "  [witness " + ", ".join(p.names[i] for i in wit) + "]"
        print(line)
    group1 = {rep.a1, rep.conditions["i"], rep.conditions["ii"], rep.conditions["iii"]}
    group2 = {rep.a2, rep.conditions["iv"], rep.conditions["v"], rep.conditions["vi"]}
    consistent = len(group1) == 1 and len(group2) == 1
    print(f"equivalence groups consistent: {str(consistent).lower()}")
    return 0 if rep.adjoint and consistent else 1


def _cmd_o6(args) -> int:
    doc = _load_for_cli(args.file)
    op = document_to_op(doc)
    p = op.poset
    found = find_o6_subalgebra(op)
    if found is None:
        print("no O6 subalgebra")
    else:
        b, x, y, z, u, t = found
        print(
            "O6 subalgebra: "
            f"{p.names[b]} < {p.names[x]} < {p.names[z]} < {p.names[t]} and "
            f"{p.names[b]} < {p.names[y]} < {p.names[u]} < {p.names[t]}"
        )
    return 0


def _cmd_proj(args) -> int:
    doc = _load_for_cli(args.file)
    op = document_to_op(doc)
    p = op.poset
    a = p.index(args.a)
    xs = [p.index(args.x)] if args.x else list(range(p.n))
    try:
        for x in xs:
            fwd = _cell_text(p, sasaki_proj(op, a, x))
            dual = _cell_text(p, sasaki_proj_dual(op, a, x))
            print(f"x={p.names[x]}: projection {fwd}  dual {dual}")
    except UndefinedOperationError as exc:
        print(f"projection undefined: {exc}; the poset is not orthogonal", file=sys.stderr)
        return 1
    return 0


def _cmd_search(args) -> int:
    require = frozenset(args.require.split(",")) if args.require else frozenset()
    forbid = frozenset(args.forbid.split(",")) if args.forbid else frozenset()
    goal = SearchGoal(
        require=require, forbid=forbid, max_n=args.max_n, limit=args.limit, seed=args.seed
    )
    count = 0
    for op in search(goal):
        count += 1
        doc = poset_to_document(op.poset, f"hit{count}", op.prime)
        flags = instance_flag_map(op)
        sys.stdout.write(serialize_document(doc))
        print("# flags: " + " ".join(f"{k}={str(v).lower()}" for k, v in sorted(flags.items())))
        print()
    print(f"{count} match(es)")
    return 0


def _cmd_dot(args) -> int:
    doc = _load_for_cli(args.file)
    text = export_dot(document_to_poset(doc))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify_paper(args) -> int:
    numbers = None
    if args.criteria:
        numbers = sorted(int(tok) for tok in args.criteria.split(","))
    results = verify.run_all(numbers=numbers, progress=print)
    failed = [r for r in results if not r.passed]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{r.number:2d}/12] {status} {r.name} ({r.seconds:.2f}s) {r.detail}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthoposet",
        description="Finite bounded posets with a unary operation: set-valued "
        "Sasaki-style operations, adjointness analysis and model search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide structural properties of a poset file")
    c.add_argument("file")
    c.add_argument("--props", help="comma-separated property names (default: all)")
    c.add_argument("--json", action="store_true", help="emit the JSON report")
    c.set_defaults(func=_cmd_check)

    t = sub.add_parser("tables", help="print the operation tables")
    t.add_argument("file")
    t.add_argument("--op", choices=("odot", "arrow", "both"), default="both")
    t.add_argument("--format", choices=("text", "csv", "json"), default="text")
    t.set_defaults(func=_cmd_tables)

    a = sub.add_parser("adjoint", help="decide whether the operations form an adjoint pair")
    a.add_argument("file")
    a.add_argument("--witness", action="store_true", help="print violating triples")
    a.set_defaults(func=_cmd_adjoint)

    th = sub.add_parser("thm1", help="report both adjunction directions and conditions i..vi")
    th.add_argument("file")
    th.set_defaults(func=_cmd_thm1)

    o = sub.add_parser("o6", help="search a complemented lattice for an O6 subalgebra")
    o.add_argument("file")
    o.set_defaults(func=_cmd_o6)

    pr = sub.add_parser("proj", help="print the projection and its dual for a parameter")
    pr.add_argument("file")
    pr.add_argument("--a", required=True, help="projection parameter element")
    pr.add_argument("--x", help="single argument element (default: all)")
    pr.set_defaults(func=_cmd_proj)

    s = sub.add_parser("search", help="hunt for instances with required/forbidden flags")
    s.add_argument("--max-n", type=int, default=5, dest="max_n")
    s.add_argument("--require", help="comma-separated flags: " + ", ".join(SEARCH_FLAGS))
    s.add_argument("--forbid", help="comma-separated flags")
    s.add_argument("--limit", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_search)

    d = sub.add_parser("dot", help="export the cover relation as a DOT digraph")
    d.add_argument("file")
    d.add_argument("-o", "--output")
    d.set_defaults(func=_cmd_dot)

    v = sub.add_parser("verify-paper", help="run the bundled verification suite")
    v.add_argument("--criteria", help="comma-separated criterion numbers (default: all)")
    v.set_defaults(func=_cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PosetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
