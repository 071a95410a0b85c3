"""Expression language for characters, Levi classes, G2 classes and Hecke words.

The grammar mirrors the notation used throughout the calculus so that data
files, scenario files and the command line all read the same way:

    nu^{1/2}*chi (x) chi^{-1}            torus character
    delta(nu^{1/2}*chi), triv(chi)       GL2 Steinberg / trivial (Levi from context)
    I^a(c1 (x) c2), cusp(sigma, 1/2)     GL2 principal series / cuspidal
    I(c1 (x) c2), I_a(1/2, delta(chi))   induced G2 classes
    pi(chi), pi'(1), St, one, J(sigma)   irreducible labels
    J_a(1/2, delta(chi)), J_b(1, pi(one, chi)), pi(nu^{-1} (x) xi2)
    irr(I_a(delta(nu^{1/2}*xi2)))        irreducible induced, kept as a label
    T[s1 s2 s0], star(h), inv(h), q[s1]  Iwahori-Matsumoto elements

Sums at the character/representation levels use integer coefficients
(`2*pi(chi)`); Hecke expressions allow Laurent-polynomial scalars in the
q parameters (`(q[s1]-1)*T[s1]`).  Evaluation is typed by level: torus,
gl2a, gl2b, g2 or hecke.  Ambiguous atoms (`one`, `delta(..)`) take their
meaning from the expected level.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .chars import CharF, SymbolTable, TorusCharacter, orbit_min
from .formal import FormalSum
from .gl2 import (GL2Cuspidal, GL2PrincipalSeries, GL2Steinberg, GL2Trivial,
                  gl2_twist)
from .groth import (InducedB, InducedMax, IrrInd, IrrPS, IrrSt, IrrTriv,
                    JGen, JPS, JSigma, JSt, PiChi, PiGen, PiPrime1, PiSigma,
                    canon_induced_max)

TORUS, GL2A, GL2B, G2LEVEL, HECKE = "torus", "gl2a", "gl2b", "g2", "hecke"
GL2_LEVELS = {GL2A: "a", GL2B: "b"}
LEVEL_OF_LEVI = {"a": GL2A, "b": GL2B}

_G2_HEADS = {"St", "I", "I_a", "I_b", "J_a", "J_b", "pi", "pi'", "J", "irr"}
_GL2_HEADS = {"delta", "triv", "cusp", "I^a", "I^b"}
_HECKE_HEADS = {"T", "star", "inv", "q"}


class ParseError(ValueError):
    def __init__(self, message: str, pos: Optional[int] = None, text: Optional[str] = None):
        marker = ""
        if text is not None and pos is not None:
            marker = f"\n  {text}\n  {' ' * pos}^"
        loc = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{loc}{marker}")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<tensor>\(x\))
      | (?P<exp>\^\{[^}]*\})
      | (?P<name>I\^[ab]|[A-Za-z_][A-Za-z0-9_]*'?)
      | (?P<int>\d+)
      | (?P<op>==|[()\[\]+\-*,/])
    )""",
    re.VERBOSE,
)


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character", pos, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class ExprContext:
    """Symbols, parameter aliases and an optional Hecke algebra."""

    def __init__(self, symbols: SymbolTable, aliases: Optional[dict] = None, hecke=None):
        self.symbols = symbols
        self.aliases = dict(aliases or {})   # param name -> CharF or cuspidal name
        self.hecke = hecke

    def lookup_char(self, name: str) -> Optional[CharF]:
        val = self.aliases.get(name)
        if isinstance(val, CharF):
            return val
        if val is None and self.symbols.is_symbol(name):
            return self.symbols.char(**{name: 1})
        return None

    def lookup_cuspidal(self, name: str) -> Optional[tuple[str, str]]:
        val = self.aliases.get(name)
        if isinstance(val, str):
            name = val
        levi = self.symbols.cuspidal_levi(name)
        return (name, levi) if levi is not None else None


class Parser:
    def __init__(self, text: str, ctx: ExprContext):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self, ahead: int = 0):
        j = min(self.i + ahead, len(self.tokens) - 1)
        return self.tokens[j]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val!r}", pos, self.text)

    def at(self, value: str, ahead: int = 0) -> bool:
        return self.peek(ahead)[1] == value

    def error(self, message: str):
        raise ParseError(message, self.peek()[2], self.text)

    def done(self) -> bool:
        return self.peek()[0] == "end"

    # --- numbers ---
    def parse_rational(self) -> Fraction:
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        kind, val, pos = self.next()
        if kind != "int":
            raise ParseError("expected a number", pos, self.text)
        num = int(val)
        if self.at("/") and self.peek(1)[0] == "int":
            self.next()
            den = int(self.next()[1])
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def parse_exp_braces(self, raw: str, pos: int) -> Fraction:
        body = raw[2:-1].strip()
        m = re.fullmatch(r"(-?\d+)(?:\s*/\s*(\d+))?", body)
        if not m:
            raise ParseError(f"bad exponent {body!r}", pos, self.text)
        return Fraction(int(m.group(1)), int(m.group(2)) if m.group(2) else 1)

    # --- characters ---
    def char_starts(self, ahead: int = 0) -> bool:
        kind, val, _ = self.peek(ahead)
        return kind == "name" and (
            val in ("nu", "one") or self.ctx.lookup_char(val) is not None
        )

    def parse_char_factor(self) -> CharF:
        kind, val, pos = self.next()
        if kind != "name":
            raise ParseError(f"expected a character symbol, found {val!r}", pos, self.text)
        if val == "one":
            base = self.ctx.symbols.char()
        elif val == "nu":
            base = self.ctx.symbols.char(s=1)
        else:
            base = self.ctx.lookup_char(val)
            if base is None:
                raise ParseError(
                    f"unknown character symbol {val!r} "
                    f"(declare it: 'symbol {val} order <n> ramified|unramified')",
                    pos, self.text)
        if self.peek()[0] == "exp":
            _, raw, pos2 = self.next()
            e = self.parse_exp_braces(raw, pos2)
            if val == "nu":
                base = self.ctx.symbols.char(s=e)
            else:
                if e.denominator != 1:
                    raise ParseError("finite symbols take integer exponents", pos2, self.text)
                base = base ** e.numerator
        return base

    def parse_char(self) -> CharF:
        out = self.parse_char_factor()
        while self.at("*") and self.char_starts(1):
            self.next()
            out = out * self.parse_char_factor()
        return out

    def parse_tensor(self) -> TorusCharacter:
        c1 = self.parse_char()
        kind, val, pos = self.next()
        if kind != "tensor":
            raise ParseError("expected '(x)' in a torus character", pos, self.text)
        return TorusCharacter(c1, self.parse_char())

    # --- GL2 atoms ---
    def levi_from(self, level: Optional[str], what: str) -> str:
        if level in GL2_LEVELS:
            return GL2_LEVELS[level]
        self.error(f"{what} needs a Levi from context (use inside I_a/I_b or compare against r_a/r_b)")

    def parse_gl2_atom(self, level: Optional[str]):
        kind, val, pos = self.peek()
        if val in ("delta", "triv"):
            self.next()
            levi = self.levi_from(level, f"{val}(..)")
            self.expect("(")
            chi = self.parse_char()
            self.expect(")")
            cls = GL2Steinberg if val == "delta" else GL2Trivial
            return LEVEL_OF_LEVI[levi], cls.make(levi, chi)
        if val in ("I^a", "I^b"):
            self.next()
            levi = val[-1]
            self.expect("(")
            chi = self.parse_tensor()
            self.expect(")")
            return LEVEL_OF_LEVI[levi], GL2PrincipalSeries.make(levi, chi)
        if val == "cusp":
            self.next()
            self.expect("(")
            _, name, pos2 = self.next()
            info = self.ctx.lookup_cuspidal(name)
            if info is None:
                raise ParseError(
                    f"unknown cuspidal symbol {name!r} (declare it: 'symbol {name} cuspidal a|b')",
                    pos2, self.text)
            resolved, levi = info
            s = Fraction(0)
            if self.at(","):
                self.next()
                s = self.parse_rational()
            self.expect(")")
            if level in GL2_LEVELS and GL2_LEVELS[level] != levi:
                self.error(f"cuspidal {name!r} lives on Levi {levi!r}")
            return LEVEL_OF_LEVI[levi], GL2Cuspidal(levi, resolved, s)
        if self.char_starts():
            levi = self.levi_from(level, "a bare principal-series pair")
            chi = self.parse_tensor()
            return level, GL2PrincipalSeries.make(levi, chi)
        self.error(f"expected a GL2 class, found {val!r}")

    # --- G2 atoms ---
    def parse_induced_max(self, levi: str) -> InducedMax:
        self.expect("(")
        s = None
        if self.peek()[0] == "int" or (self.at("-") and self.peek(1)[0] == "int"):
            s = self.parse_rational()
            self.expect(",")
        _, rep = self.parse_gl2_atom(LEVEL_OF_LEVI[levi])
        if rep.levi != levi:
            self.error(f"I_{levi}(..) takes a class on Levi {levi!r}")
        self.expect(")")
        if s:
            rep = gl2_twist(s, None, rep)
        return InducedMax(levi, rep)

    def parse_g2_atom(self):
        kind, val, pos = self.peek()
        if val == "St":
            self.next()
            return IrrSt()
        if val == "one":
            self.next()
            return IrrTriv()
        if val == "I":
            self.next()
            self.expect("(")
            chi = self.parse_tensor()
            self.expect(")")
            return InducedB(chi)
        if val in ("I_a", "I_b"):
            self.next()
            return self.parse_induced_max(val[-1])
        if val in ("J_a", "J_b"):
            self.next()
            levi = val[-1]
            self.expect("(")
            s = self.parse_rational()
            self.expect(",")
            _, inner, pos2 = self.peek()
            if inner == "delta":
                self.next()
                self.expect("(")
                chi = self.parse_char()
                self.expect(")")
                self.expect(")")
                return JSt(levi, s + chi.nu_part(), chi.finite_part())
            if inner == "pi" and levi == "b":
                self.next()
                self.expect("(")
                c1 = self.parse_char()
                self.expect(",")
                c2 = self.parse_char()
                self.expect(")")
                self.expect(")")
                return JPS(s, GL2PrincipalSeries.make("b", TorusCharacter(c1, c2)))
            raise ParseError(
                f"J_{levi} takes delta(..)" + (" or pi(..,..)" if levi == "b" else ""),
                pos2, self.text)
        if val == "pi'":
            self.next()
            self.expect("(")
            _, one, pos2 = self.next()
            if one != "1":
                raise ParseError("the unit-case label is written pi'(1)", pos2, self.text)
            self.expect(")")
            return PiPrime1()
        if val in ("pi", "J"):
            self.next()
            self.expect("(")
            k2, name, _ = self.peek()
            info = self.ctx.lookup_cuspidal(name) if k2 == "name" else None
            if info is not None:
                self.next()
                self.expect(")")
                return PiSigma(info[1], info[0]) if val == "pi" else JSigma(info[1], info[0])
            if val == "J":
                chi = self.parse_tensor()
                self.expect(")")
                return JGen(chi)
            c1 = self.parse_char()
            if self.peek()[0] == "tensor":
                self.next()
                c2 = self.parse_char()
                self.expect(")")
                return PiGen(TorusCharacter(c1, c2))
            self.expect(")")
            return PiChi.make(c1)
        if val == "irr":
            self.next()
            self.expect("(")
            inner = self.parse_g2_atom()
            self.expect(")")
            if isinstance(inner, InducedB):
                return IrrPS(orbit_min(inner.chi))
            if isinstance(inner, InducedMax):
                canon = canon_induced_max(inner)
                return IrrInd(canon.levi, canon.rep)
            self.error("irr(..) wraps an induced class")
        self.error(f"expected a G2 class, found {val!r}")

    # --- generic (non-Hecke) sums ---
    def parse_algebra_sum(self, level: Optional[str]):
        total = FormalSum.zero()
        lvl = level
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        while True:
            coeff = 1
            if self.peek()[0] == "int" and self.at("*", 1):
                coeff = int(self.next()[1])
                self.next()
            kind, val, pos = self.peek()
            if val == "0" and kind == "int":
                self.next()
                term_level, term = lvl, FormalSum.zero()
            else:
                term_level, atom = self.parse_typed_atom(lvl)
                term = FormalSum.of(atom)
            if lvl is None:
                lvl = term_level
            elif term_level is not None and term_level != lvl:
                self.error(f"cannot mix levels {lvl} and {term_level} in one sum")
            total = total + (sign * coeff) * term
            if self.peek()[1] in ("+", "-"):
                sign = 1 if self.next()[1] == "+" else -1
                continue
            break
        return lvl, total

    def parse_typed_atom(self, level: Optional[str]):
        kind, val, pos = self.peek()
        if val in _G2_HEADS:
            if val == "pi" or val == "J":
                return G2LEVEL, self.parse_g2_atom()
            if val == "I" and level in GL2_LEVELS:
                self.error("at a Levi, principal series are written I^a(..) / I^b(..)")
            return G2LEVEL, self.parse_g2_atom()
        if val in _GL2_HEADS:
            lvl, atom = self.parse_gl2_atom(level)
            return lvl, atom
        if val == "one" and level == G2LEVEL:
            self.next()
            return G2LEVEL, IrrTriv()
        if self.char_starts():
            if level in GL2_LEVELS:
                lvl, atom = self.parse_gl2_atom(level)
                return lvl, atom
            return TORUS, self.parse_tensor()
        self.error(f"unexpected token {val!r}")

    # --- Hecke expressions ---
    def scalar_starts(self, ahead: int = 0) -> bool:
        kind, val, _ = self.peek(ahead)
        if kind == "int" or val == "q":
            return True
        if val == "(":
            return self._parens_are_scalar(self.i + ahead)
        return False

    def _parens_are_scalar(self, start: int) -> bool:
        depth = 0
        j = start
        while j < len(self.tokens):
            kind, val, _ = self.tokens[j]
            if val == "(":
                depth += 1
            elif val == ")":
                depth -= 1
                if depth == 0:
                    return True
            elif kind == "tensor":
                return False
            elif kind == "name" and val != "q":
                return False
            j += 1
        return False

    def parse_hecke_scalar(self):
        out = self.parse_hecke_scalar_term()
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            rhs = self.parse_hecke_scalar_term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def parse_hecke_scalar_term(self):
        neg = False
        while self.at("-"):
            self.next()
            neg = not neg
        out = self.parse_hecke_scalar_factor()
        while self.at("*") and self.scalar_starts(1):
            self.next()
            out = out * self.parse_hecke_scalar_factor()
        return -out if neg else out

    def parse_hecke_scalar_factor(self):
        from .laurent import LaurentPoly
        alg = self.ctx.hecke
        kind, val, pos = self.peek()
        if kind == "int":
            return LaurentPoly.constant(alg.param_vars, self.parse_rational())
        if val == "q":
            self.next()
            self.expect("[")
            _, g, pos2 = self.next()
            self.expect("]")
            base = alg.q_var(g)
            if self.peek()[0] == "exp":
                _, raw, pos3 = self.next()
                e = self.parse_exp_braces(raw, pos3)
                if e.denominator != 1:
                    raise ParseError("q exponents are integers", pos3, self.text)
                base = base ** e.numerator
            return base
        if val == "(":
            self.next()
            out = self.parse_hecke_scalar()
            self.expect(")")
            if self.peek()[0] == "exp":
                _, raw, pos3 = self.next()
                e = self.parse_exp_braces(raw, pos3)
                out = out ** e.numerator
            return out
        raise ParseError(f"expected a scalar, found {val!r}", pos, self.text)

    def parse_hecke_primary(self):
        from .hecke import HeckeError
        alg = self.ctx.hecke
        if alg is None:
            self.error("no Hecke algebra in scope (declare one: 'hecke G2 lattice=root')")
        kind, val, pos = self.peek()
        if val == "(" and not self._parens_are_scalar(self.i):
            self.next()
            h = self.parse_hecke_sum()
            self.expect(")")
            return h
        if val == "T":
            self.next()
            self.expect("[")
            gens = []
            while not self.at("]"):
                kind2, g, pos2 = self.next()
                if kind2 not in ("name", "int"):
                    raise ParseError(f"bad generator name {g!r}", pos2, self.text)
                gens.append(g if kind2 == "name" else f"s{g}")
            self.expect("]")
            try:
                return alg.t_element(gens)
            except HeckeError as exc:
                raise ParseError(str(exc), pos, self.text)
        if val == "star":
            self.next()
            self.expect("(")
            h = self.parse_hecke_sum()
            self.expect(")")
            return alg.kato_star(h)
        if val == "inv":
            self.next()
            self.expect("(")
            h = self.parse_hecke_sum()
            self.expect(")")
            return alg.invert(h)
        self.error(f"expected a Hecke element, found {val!r}")

    def parse_hecke_term(self):
        alg = self.ctx.hecke
        coeff = None
        if self.scalar_starts():
            coeff = self.parse_hecke_scalar()
            if self.at("*"):
                self.next()
            else:
                return alg.one().scale(coeff)
        out = self.parse_hecke_primary()
        while self.at("*"):
            self.next()
            if self.scalar_starts():
                out = out.scale(self.parse_hecke_scalar())
            else:
                out = out * self.parse_hecke_primary()
        if coeff is not None:
            out = out.scale(coeff)
        return out

    def parse_hecke_sum(self):
        alg = self.ctx.hecke
        if alg is None:
            self.error("no Hecke algebra in scope (declare one: 'hecke G2 lattice=root')")
        negate = False
        if self.at("-"):
            self.next()
            negate = True
        total = self.parse_hecke_term()
        if negate:
            total = total.negate()
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            term = self.parse_hecke_term()
            total = total + term if op == "+" else total + term.negate()
        return total


def _looks_hecke(tokens) -> bool:
    for kind, val, _ in tokens:
        if kind == "name" and val in _HECKE_HEADS:
            return True
        if kind == "name":
            return False
    return False


def parse_value(text: str, ctx: ExprContext, level: Optional[str] = None):
    """Parse and evaluate an expression; returns (level, value).

    The value is a FormalSum at the torus/gl2a/gl2b/g2 levels and a
    HeckeElement at the hecke level.
    """
    p = Parser(text, ctx)
    if level == HECKE or (level is None and _looks_hecke(p.tokens)):
        val = p.parse_hecke_sum()
        lvl = HECKE
    else:
        lvl, val = p.parse_algebra_sum(level)
    kind, tok, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input starting at {tok!r}", pos, text)
    return lvl, val


def split_assert(text: str) -> tuple[str, str]:
    """Split an 'lhs == rhs' assertion line."""
    parts = re.split(r"==", text)
    if len(parts) != 2:
        raise ParseError("an assertion needs exactly one '=='", None, text)
    return parts[0].strip(), parts[1].strip()
