"""Composition-series and Jacquet-module database for the registered cases.

Case data ships as block-structured text files (``data/cases/*.g2c``),
hand-editable and written in the shared expression grammar:

    case unit-1/2
    param chi order 2 ramified

    decomp I_a(1/2, delta(chi))
      = pi(chi) + J_a(1/2, delta(chi))
      source reference

    jacquet pi(chi)
      r_a = delta(nu^{1/2}*chi) + I^a(nu (x) chi)
      r_b = delta(nu^{1/2}*chi) + I^b(nu (x) chi)
      source reference

    length2 pi-j nu^{-1} (x) xi2
      source derived: single wall, factors are induced through it

Every entry carries a provenance flag: ``reference`` for data transcribed
from the published composition-series tables, ``derived: <note>`` for data
the loader computes itself.  A ``length2`` directive derives everything for
a length-two principal series I(chi): the unique reducibility wall is
located, I(chi) is split through a Levi conjugate of the wall into two full
induced classes (each irreducible since the length is two), the
subrepresentation is identified by Frobenius reciprocity (chi itself must
appear in its torus restriction), and the Jacquet entries come from the
geometric lemma.

``check_consistency`` re-derives every registered decomposition: the
geometric-lemma restriction of the induced class must equal the sum of the
factors' Jacquet entries, exactly.  ``dual_of`` runs the duality operator
on a label and resolves the answer to a single signed label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import paths
from .chars import SymbolTable, TorusCharacter, char_orbit, classify, orbit_min
from .exprs import ExprContext, ParseError, parse_value
from .formal import FormalSum, diff_report
from .gl2 import (GL2PrincipalSeries, GL2Steinberg, GL2Trivial, _split_datum,
                  gl2_restrict, reduces)
from .groth import (DatabaseGapError, InducedB, InducedMax, IrrInd, IrrLabel,
                    JGen, PiGen, canon_induced_max, dualize, restrict)
from .rootdata import build_root_system

G2 = build_root_system("G2")
LONG_ROOTS = {(0, 1), (3, 1), (3, 2)}  # root-basis coordinates

CASE_TAGS = (
    "unit-1/2",
    "unit-3/2",
    "quadratic-1/2",
    "cubic-1/2",
    "generic-length-2",
    "case3-length-2",
    "intermediate-alpha",
    "intermediate-beta",
)


class CaseError(ValueError):
    pass


class ResolutionError(DatabaseGapError):
    """dual_of could not resolve the dual to a single signed label."""


@dataclass
class DecompositionEntry:
    induced: object                  # canonical InducedB or InducedMax key
    factors: FormalSum               # over irreducible labels, coefficients >= 1
    provenance: str
    case: str


@dataclass
class JacquetEntry:
    label: IrrLabel
    r_a: FormalSum
    r_b: FormalSum
    provenance: str
    case: str


@dataclass
class CheckItem:
    case: str
    subject: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    items: list[CheckItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def failures(self) -> list[CheckItem]:
        return [i for i in self.items if not i.ok]

    def summary(self) -> str:
        lines = []
        for i in self.items:
            mark = "ok  " if i.ok else "FAIL"
            lines.append(f"[{mark}] {i.case}: {i.subject}" + (f"\n{i.detail}" if i.detail else ""))
        lines.append(f"{len(self.items)} checks, {len(self.failures())} failures")
        return "\n".join(lines)


class Database:
    """Write-once-per-case store of decompositions and Jacquet modules."""

    def __init__(self, symbols: SymbolTable):
        self.symbols = symbols
        self.decomps: dict[object, DecompositionEntry] = {}
        self.jacquet: dict[IrrLabel, JacquetEntry] = {}
        self.cases: dict[tuple[str, tuple], list] = {}

    # --- lookups used by the resolver ---
    def decomposition_of(self, key) -> Optional[FormalSum]:
        entry = self.decomps.get(key)
        return entry.factors if entry is not None else None

    def jacquet_of(self, label: IrrLabel):
        entry = self.jacquet.get(label)
        if entry is None:
            raise DatabaseGapError(
                f"no registered Jacquet data for {label!r}; register its case first")
        return entry.r_a, entry.r_b

    def labels(self) -> list[IrrLabel]:
        return list(self.jacquet)

    # --- registration ---
    def register_case(self, tag: str, bindings: Optional[dict] = None) -> list:
        """Load a case data file, binding its formal parameters to symbols."""
        bindings = dict(bindings or {})
        key = (tag, tuple(sorted(bindings.items())))
        if key in self.cases:
            return self.cases[key]
        path = paths.case_file(tag)
        if not path.exists():
            raise CaseError(f"unknown case {tag!r} (no data file {path})")
        entries = _load_case_file(self, path, tag, bindings)
        self.cases[key] = entries
        return entries

    def case_labels(self, tag: str, bindings: Optional[dict] = None) -> list[IrrLabel]:
        """Irreducible labels registered by one (case, binding) registration."""
        key = (tag, tuple(sorted((bindings or {}).items())))
        entries = self.cases.get(key, [])
        return [e.label for e in entries if isinstance(e, JacquetEntry)]

    def add_decomposition(self, induced, factors: FormalSum, provenance: str, case: str):
        if any(c < 1 for _, c in factors.items()):
            raise CaseError(f"decomposition of {induced!r} has a negative multiplicity")
        if any(not isinstance(k, IrrLabel) for k, _ in factors.items()):
            raise CaseError(f"decomposition of {induced!r} has non-irreducible factors")
        if isinstance(induced, InducedMax):
            induced = canon_induced_max(induced)
        elif isinstance(induced, InducedB):
            induced = InducedB(orbit_min(induced.chi))
        else:
            raise CaseError(f"decomposition key must be an induced class, got {induced!r}")
        prev = self.decomps.get(induced)
        if prev is not None:
            if prev.factors != factors:
                raise CaseError(f"conflicting decompositions registered for {induced!r}")
            return
        entry = DecompositionEntry(induced, factors, provenance, case)
        self.decomps[induced] = entry

    def add_jacquet(self, label: IrrLabel, r_a: FormalSum, r_b: FormalSum,
                    provenance: str, case: str):
        r0_a = r_a.map_terms(gl2_restrict)
        r0_b = r_b.map_terms(gl2_restrict)
        if r0_a != r0_b:
            raise CaseError(
                f"Jacquet data for {label!r} is inconsistent: r_T(r_a) != r_T(r_b)\n"
                + diff_report(r0_a, r0_b))
        prev = self.jacquet.get(label)
        if prev is not None:
            if prev.r_a != r_a or prev.r_b != r_b:
                raise CaseError(f"conflicting Jacquet data registered for {label!r}")
            return
        self.jacquet[label] = JacquetEntry(label, r_a, r_b, provenance, case)

    # --- checks and duality ---
    def check_consistency(self) -> Report:
        """Re-derive every decomposition from the geometric lemma."""
        report = Report()
        for entry in self.decomps.values():
            for gamma in ("a", "b"):
                subject = f"r_{gamma}({entry.induced!r}) = sum of factor restrictions"
                try:
                    lhs = restrict(gamma, FormalSum.of(entry.induced), self)
                    rhs = FormalSum.zero()
                    for label, mult in entry.factors.items():
                        r_a, r_b = self.jacquet_of_label_or_computed(label)
                        rhs = rhs + mult * (r_a if gamma == "a" else r_b)
                except DatabaseGapError as exc:
                    report.items.append(CheckItem(entry.case, subject, False, str(exc)))
                    continue
                ok = lhs == rhs
                detail = "" if ok else diff_report(lhs, rhs)
                report.items.append(CheckItem(entry.case, subject, ok, detail))
        for entry in self.jacquet.values():
            subject = f"r_T r_a = r_T r_b on {entry.label!r}"
            ok = entry.r_a.map_terms(gl2_restrict) == entry.r_b.map_terms(gl2_restrict)
            report.items.append(CheckItem(entry.case, subject, ok))
        return report

    def jacquet_of_label_or_computed(self, label: IrrLabel):
        if isinstance(label, (IrrInd,)):
            key = InducedMax(label.levi, label.rep)
            return (restrict("a", FormalSum.of(key)), restrict("b", FormalSum.of(key)))
        return self.jacquet_of(label)

    def dual_of(self, label: IrrLabel) -> tuple[int, IrrLabel]:
        """The duality image of a label as (sign, label); fails on gaps."""
        image = dualize(FormalSum.of(label), self)
        items = list(image.items())
        if len(items) == 1 and items[0][1] in (1, -1):
            return items[0][1], items[0][0]
        raise ResolutionError(
            f"duality of {label!r} did not resolve to a single signed label: {image!r}")


# --- case file loading -------------------------------------------------------

def _blocks(lines: list[str]):
    """Group a file into (header, [body lines]) blocks by indentation."""
    header = None
    body: list[str] = []
    for raw in lines:
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if not line[0].isspace():
            if header is not None:
                yield header, body
            header, body = line.strip(), []
        else:
            if header is None:
                raise CaseError(f"indented line outside a block: {line.strip()!r}")
            body.append(line.strip())
    if header is not None:
        yield header, body


def _load_case_file(db: Database, path, tag: str, bindings: dict) -> list:
    text = path.read_text()
    lines = text.splitlines()
    aliases: dict = {}
    ctx = ExprContext(db.symbols, aliases)
    entries = []
    declared_tag = None
    for header, body in _blocks(lines):
        words = header.split()
        kind = words[0]
        if kind == "case":
            declared_tag = words[1]
            if declared_tag != tag:
                raise CaseError(f"{path} declares case {declared_tag!r}, expected {tag!r}")
        elif kind == "param":
            _load_param(db, words, bindings, aliases)
        elif kind == "decomp":
            entries.append(_load_decomp(db, header, body, ctx, tag))
        elif kind == "jacquet":
            entries.append(_load_jacquet(db, header, body, ctx, tag))
        elif kind == "length2":
            entries.extend(_load_length2(db, header, body, ctx, tag))
        else:
            raise CaseError(f"unknown directive {kind!r} in {path}")
    if declared_tag is None:
        raise CaseError(f"{path} has no 'case' line")
    return entries


def _load_param(db: Database, words: list[str], bindings: dict, aliases: dict):
    # param NAME order (N|any) (ramified|unramified)   |   param NAME cuspidal (a|b)
    name = words[1]
    if words[2] == "cuspidal":
        levi = words[3]
        bound = bindings.get(name, name)
        db.symbols.declare_cuspidal(bound, levi)
        aliases[name] = bound
        return
    if words[2] != "order":
        raise CaseError(f"bad param line: {' '.join(words)!r}")
    order_word = words[3]
    ramified = (words[4] == "ramified") if len(words) > 4 else True
    required = None if order_word == "any" else (0 if order_word == "inf" else int(order_word))
    bound = bindings.get(name)
    if bound is None:
        default_order = 0 if required is None else required
        db.symbols.declare(name, default_order, ramified)
        aliases[name] = db.symbols.char(**{name: 1})
    else:
        if not db.symbols.is_symbol(bound):
            raise CaseError(
                f"binding {name}={bound}: declare symbol {bound!r} before registering the case")
        if required is not None and db.symbols.order(bound) != required:
            raise CaseError(
                f"binding {name}={bound}: the case needs a symbol of order "
                f"{order_word}, but {bound!r} has order {db.symbols.order(bound)}")
        aliases[name] = db.symbols.char(**{bound: 1})


def _get_source(body: list[str], path_hint: str) -> str:
    for line in body:
        if line.startswith("source"):
            src = line[len("source"):].strip()
            if not (src == "reference" or src.startswith("derived")):
                raise CaseError(f"{path_hint}: source must be 'reference' or 'derived: ...'")
            return src
    raise CaseError(f"{path_hint}: missing 'source' line")


def _load_decomp(db: Database, header: str, body: list[str], ctx: ExprContext, tag: str):
    induced_text = header[len("decomp"):].strip()
    lvl, induced = parse_value(induced_text, ctx, "g2")
    keys = [k for k, c in induced.items() if c == 1]
    if len(keys) != 1 or induced.total() != 1:
        raise CaseError(f"decomp header must be a single induced class: {induced_text!r}")
    factors = None
    for line in body:
        if line.startswith("="):
            _, factors = parse_value(line[1:].strip(), ctx, "g2")
    if factors is None:
        raise CaseError(f"decomp {induced_text!r} has no '=' line")
    src = _get_source(body, f"decomp {induced_text}")
    db.add_decomposition(keys[0], factors, src, tag)
    return db.decomps[_canon_key(keys[0])]


def _canon_key(key):
    if isinstance(key, InducedMax):
        return canon_induced_max(key)
    if isinstance(key, InducedB):
        return InducedB(orbit_min(key.chi))
    return key


def _load_jacquet(db: Database, header: str, body: list[str], ctx: ExprContext, tag: str):
    label_text = header[len("jacquet"):].strip()
    lvl, val = parse_value(label_text, ctx, "g2")
    keys = [k for k, c in val.items() if c == 1]
    if len(keys) != 1 or val.total() != 1 or not isinstance(keys[0], IrrLabel):
        raise CaseError(f"jacquet header must be a single irreducible label: {label_text!r}")
    label = keys[0]
    parts = {}
    for line in body:
        for gamma in ("r_a", "r_b"):
            if line.startswith(gamma):
                rest = line[len(gamma):].strip()
                if not rest.startswith("="):
                    raise CaseError(f"bad jacquet line {line!r}")
                level = "gl2a" if gamma == "r_a" else "gl2b"
                _, parts[gamma] = parse_value(rest[1:].strip(), ctx, level)
    if "r_a" not in parts or "r_b" not in parts:
        raise CaseError(f"jacquet {label_text!r} needs both r_a and r_b lines")
    src = _get_source(body, f"jacquet {label_text}")
    db.add_jacquet(label, parts["r_a"], parts["r_b"], src, tag)
    return db.jacquet[label]


def _is_long(root) -> bool:
    return tuple(int(c) for c in root) in LONG_ROOTS


def _load_length2(db: Database, header: str, body: list[str], ctx: ExprContext, tag: str):
    words = header.split(None, 2)
    style = words[1]
    if style not in ("pi-j", "induced"):
        raise CaseError(f"length2 style must be 'pi-j' or 'induced', got {style!r}")
    _, chi_sum = parse_value(words[2], ctx, "torus")
    keys = list(chi_sum.keys())
    if len(keys) != 1:
        raise CaseError(f"length2 takes a single torus character: {words[2]!r}")
    chi = keys[0]
    src = _get_source(body, f"length2 {words[2]}")
    return register_length2(db, chi, style, src, tag)


def register_length2(db: Database, chi: TorusCharacter, style: str,
                     provenance: str, tag: str) -> list:
    """Derive and register the two factors of a length-2 principal series.

    The character must lie on exactly one reducibility wall.  If the wall
    root is long the series splits through the beta Levi into a Steinberg
    and a trivial part (labels pi/J, sub first); a short wall splits through
    alpha and the factors keep their induced names.
    """
    profile = classify(chi)
    if len(profile.walls) != 1:
        raise CaseError(
            f"length2 registration needs exactly one reducibility wall, "
            f"{chi!r} has {len(profile.walls)}")
    if not profile.regular:
        raise CaseError(f"length2 registration needs a regular character, got {chi!r}")
    wall_long = _is_long(profile.walls[0])
    if (style == "pi-j") != wall_long:
        raise CaseError(
            f"style {style!r} does not match the wall type of {chi!r} "
            f"({'long' if wall_long else 'short'})")
    route = "b" if wall_long else "a"

    candidates = [psi for psi in char_orbit(chi)
                  if reduces(GL2PrincipalSeries.make(route, psi))]
    psi = min(candidates, key=TorusCharacter.sort_key)
    datum = _split_datum(route, psi)
    halves = [
        InducedMax(route, GL2Steinberg.make(route, datum)),
        InducedMax(route, GL2Trivial.make(route, datum)),
    ]
    # Frobenius reciprocity: the subrepresentation of I(chi) is the half
    # whose torus restriction contains chi itself.
    r0 = {i: restrict("0", FormalSum.of(halves[i])) for i in range(2)}
    contains = [bool(r0[i].coeff(chi)) for i in range(2)]
    if contains == [True, False]:
        sub_idx, quot_idx = 0, 1
    elif contains == [False, True]:
        sub_idx, quot_idx = 1, 0
    else:
        raise CaseError(f"could not identify the subrepresentation of I({chi!r})")

    if style == "pi-j":
        sub_label, quot_label = PiGen(chi), JGen(chi)
    else:
        canon_sub = canon_induced_max(halves[sub_idx])
        canon_quot = canon_induced_max(halves[quot_idx])
        sub_label = IrrInd(canon_sub.levi, canon_sub.rep)
        quot_label = IrrInd(canon_quot.levi, canon_quot.rep)

    labels = {sub_idx: sub_label, quot_idx: quot_label}
    db.add_decomposition(InducedB(chi), FormalSum.of(sub_label, quot_label),
                         provenance, tag)
    entries = [db.decomps[_canon_key(InducedB(chi))]]
    for i in range(2):
        db.add_decomposition(halves[i], FormalSum.of(labels[i]), provenance, tag)
        entries.append(db.decomps[_canon_key(halves[i])])
        r_a = restrict("a", FormalSum.of(halves[i]))
        r_b = restrict("b", FormalSum.of(halves[i]))
        db.add_jacquet(labels[i], r_a, r_b, provenance, tag)
        entries.append(db.jacquet[labels[i]])
    return entries
