"""Standard-module bookkeeping: the duality tables and their cross-checks.

Each Bernstein block carries rows pairing a group-side irreducible with its
duality image and the matching Hecke-algebra standard modules, indexed by
triples (torus point; nilpotent part; component-group representation).  The
SO4 block indexes modules by ordered pairs of rank-one triples, exactly as
the block's Hecke algebra factors.  Nilpotent labels are stored verbatim
per block (the type-A blocks use e[a1]/e[a2], the exceptional blocks use
coroot sums like e[av+2bv], normalized to ascending order inside the data
file), and unitarizability flags are ``U`` (unitarizable), ``-`` (verified
non-unitarizable) or ``.`` (not assessed).

``cross_check_tables`` registers every block's case with its bindings and
verifies: the group-side dual column agrees with the duality engine
(``Database.dual_of``), duality is an involution up to the printed sign on
both columns, ``lookup_dual`` is an involution on the Hecke side, the
U-flags are closed under duality, every registered label of the block's
case appears in exactly one row, and each row appears once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from . import paths
from .exprs import ExprContext, parse_value
from .formal import FormalSum
from .groth import IrrLabel
from .irrdb import Database, DatabaseGapError, Report, CheckItem, ResolutionError


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class StandardModuleLabel:
    torus: str
    nilpotent: tuple[str, ...]   # sorted e[..] arguments; empty means 0
    rep: str

    def __repr__(self):
        nilp = " + ".join(f"e[{n}]" for n in self.nilpotent) if self.nilpotent else "0"
        return f"({self.torus}; {nilp}; {self.rep})"


@dataclass(frozen=True)
class PairedLabel:
    first: StandardModuleLabel
    second: StandardModuleLabel

    def __repr__(self):
        return f"({self.first!r}, {self.second!r})"


HeckeLabel = Union[StandardModuleLabel, PairedLabel]


@dataclass
class DualPair:
    block: str
    group: str            # expression text, parsed against the block context
    group_dual: str
    sign: int
    hecke: HeckeLabel
    hecke_dual: HeckeLabel
    hecke_sign: int
    flags: tuple[str, str]   # 'U', '-' or '.' for (row, dual row)


@dataclass
class Block:
    name: str
    case: str
    bindings: dict = field(default_factory=dict)
    symbols: list = field(default_factory=list)   # (name, spec words)
    rows: list = field(default_factory=list)


def _parse_triple(text: str) -> StandardModuleLabel:
    m = re.fullmatch(r"\(\s*([A-Za-z0-9_]+)\s*;(.*);\s*(\(?[0-9]+\)?)\s*\)", text.strip())
    if not m:
        raise TableError(f"bad standard-module triple: {text!r}")
    torus, nilp_text, rep = m.group(1), m.group(2).strip(), m.group(3)
    if nilp_text == "0":
        nilp: tuple[str, ...] = ()
    else:
        parts = [p.strip() for p in nilp_text.split("+")]
        items = []
        for p in parts:
            m2 = re.fullmatch(r"e\[([^\]]+)\]", p)
            if not m2:
                raise TableError(f"bad nilpotent term {p!r} in {text!r}")
            items.append(m2.group(1).strip())
        nilp = tuple(sorted(items))
    return StandardModuleLabel(torus, nilp, rep)


def parse_hecke_label(text: str) -> HeckeLabel:
    text = text.strip()
    if re.match(r"\(\s*\(", text):
        # a pair of triples: ((..; ..; ..), (..; ..; ..))
        inner = text[1:-1].strip()
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return PairedLabel(_parse_triple(inner[:i]), _parse_triple(inner[i + 1:]))
        raise TableError(f"bad paired label: {text!r}")
    return _parse_triple(text)


class TableSet:
    def __init__(self, blocks: list[Block]):
        self.blocks = {b.name: b for b in blocks}

    @staticmethod
    def load(path=None) -> "TableSet":
        path = path or paths.tables_file()
        blocks: list[Block] = []
        current: Optional[Block] = None
        for raw in path.read_text().splitlines():
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            indented = line[0].isspace()
            line = line.strip()
            if not indented:
                words = line.split()
                if words[0] != "block":
                    raise TableError(f"expected a block header, got {line!r}")
                current = Block(words[1], case="")
                blocks.append(current)
                continue
            if current is None:
                raise TableError(f"indented line outside a block: {line!r}")
            words = line.split()
            if words[0] == "case":
                current.case = words[1]
            elif words[0] == "symbol":
                current.symbols.append(words[1:])
            elif words[0] == "bind":
                for assignment in words[1:]:
                    param, _, symbol = assignment.partition("=")
                    current.bindings[param] = symbol
            elif words[0] == "row":
                current.rows.append(_parse_row(current.name, line[len("row"):].strip()))
            else:
                raise TableError(f"unknown table directive {words[0]!r}")
        return TableSet(blocks)

    def lookup_dual(self, label: HeckeLabel, block: str) -> tuple[int, HeckeLabel]:
        """Table dual of a standard-module label, with its printed sign."""
        blk = self.blocks.get(block)
        if blk is None:
            raise TableError(f"unknown block {block!r}")
        for row in blk.rows:
            if row.hecke == label:
                return row.hecke_sign, row.hecke_dual
            if row.hecke_dual == label:
                return row.hecke_sign, row.hecke
        raise TableError(f"label {label!r} not present in block {block!r}")


def _parse_row(block: str, text: str) -> DualPair:
    cols = [c.strip() for c in text.split("|")]
    if len(cols) != 7:
        raise TableError(f"a row needs 7 columns, got {len(cols)}: {text!r}")
    group, dual, sign, hecke, hecke_dual, hsign, flags = cols
    if sign not in "+-" or hsign not in "+-":
        raise TableError(f"bad sign column in row {text!r}")
    fl = tuple(flags.split())
    if len(fl) != 2 or any(f not in ("U", "-", ".") for f in fl):
        raise TableError(f"bad flag column {flags!r}")
    return DualPair(
        block, group, dual, 1 if sign == "+" else -1,
        parse_hecke_label(hecke), parse_hecke_label(hecke_dual),
        1 if hsign == "+" else -1, fl)


def _block_context(db: Database, block: Block) -> ExprContext:
    aliases = {}
    for param, symbol in block.bindings.items():
        levi = db.symbols.cuspidal_levi(symbol)
        aliases[param] = symbol if levi is not None else db.symbols.char(**{symbol: 1})
    return ExprContext(db.symbols, aliases)


def _declare_block_symbols(db: Database, block: Block):
    for words in block.symbols:
        name = words[0]
        if words[1] == "cuspidal":
            db.symbols.declare_cuspidal(name, words[2])
        elif words[1] == "order":
            order = 0 if words[2] == "inf" else int(words[2])
            ramified = (len(words) > 3 and words[3] == "ramified")
            db.symbols.declare(name, order, ramified)
        else:
            raise TableError(f"bad symbol line in block {block.name!r}: {' '.join(words)}")


def _parse_label(text: str, ctx: ExprContext) -> IrrLabel:
    _, val = parse_value(text, ctx, "g2")
    keys = list(val.keys())
    if len(keys) != 1 or val.total() != 1 or not isinstance(keys[0], IrrLabel):
        raise TableError(f"not a single irreducible label: {text!r}")
    return keys[0]


def cross_check_tables(db: Database, tables: Optional[TableSet] = None) -> Report:
    """Verify group-side duality, Hecke involution and flag closure per block."""
    tables = tables or TableSet.load()
    report = Report()
    for block in tables.blocks.values():
        _declare_block_symbols(db, block)
        db.register_case(block.case, block.bindings)
        ctx = _block_context(db, block)
        seen_labels: dict[IrrLabel, int] = {}
        for row in block.rows:
            subject = f"{block.name}: {row.group} <-> {row.group_dual}"
            try:
                group = _parse_label(row.group, ctx)
                dual = _parse_label(row.group_dual, ctx)
            except Exception as exc:
                report.items.append(CheckItem(block.name, subject, False, str(exc)))
                continue
            for lab in {group, dual}:
                seen_labels[lab] = seen_labels.get(lab, 0) + 1
            # group side against the duality engine, both directions
            try:
                got_sign, got = db.dual_of(group)
                ok = (got_sign, got) == (row.sign, dual)
                detail = "" if ok else f"engine: {got_sign:+d} {got!r}, table: {row.sign:+d} {dual!r}"
                report.items.append(CheckItem(block.name, subject + " [dual]", ok, detail))
                back_sign, back = db.dual_of(dual)
                ok2 = (back_sign, back) == (row.sign, group)
                detail2 = "" if ok2 else f"engine: {back_sign:+d} {back!r}"
                report.items.append(CheckItem(block.name, subject + " [involution]", ok2, detail2))
            except (DatabaseGapError, ResolutionError) as exc:
                report.items.append(CheckItem(block.name, subject + " [dual]", False, str(exc)))
            # hecke side: lookup twice returns the starting label
            s1, h1 = tables.lookup_dual(row.hecke, block.name)
            s2, h2 = tables.lookup_dual(h1, block.name)
            ok3 = (h2 == row.hecke) and (s1 == row.hecke_sign) and (s1 == s2)
            report.items.append(CheckItem(
                block.name, subject + " [hecke involution]", ok3,
                "" if ok3 else f"lookup chain gave {s1:+d} {h1!r} then {s2:+d} {h2!r}"))
            # unitarizability closed under duality where assessed
            if "." not in row.flags:
                ok4 = row.flags[0] == row.flags[1]
                report.items.append(CheckItem(
                    block.name, subject + " [unitarizability closure]", ok4,
                    "" if ok4 else f"flags {row.flags}"))
        # coverage: every label registered for this block appears exactly once
        case_labels = db.case_labels(block.case, block.bindings)
        missing = [lab for lab in case_labels if lab not in seen_labels]
        doubled = [lab for lab, n in seen_labels.items() if n > 2]
        ok5 = not missing and not doubled
        report.items.append(CheckItem(
            block.name, "row coverage of registered labels", ok5,
            "" if ok5 else f"missing: {missing!r}, repeated: {doubled!r}"))
    return report
