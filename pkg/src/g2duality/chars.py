"""Symbolic characters of the split torus T = F* x F* of G2.

A character of F* is a formal product  nu^s * (finite symbols)  where nu is
the normalized absolute value, s is an exact rational, and the finite
symbols are user-declared generators with a fixed order (2, 3, ..., or
infinite) and a ramified/unramified flag.  A torus character is a pair.

The Weyl group acts through the identification of T with the diagonal tori
of the two GL2 Levi subgroups:

    (t1, t2) -> diag(t1, t2)          in L_alpha,
    (t1, t2) -> diag(t2, t1 t2^-1)    in L_beta,

which forces, on character pairs,

    s_alpha (c1, c2) = (c2, c1)
    s_beta  (c1, c2) = (c1 c2, c2^-1).

Equivalently, the character lattice carries the basis eps1, eps2 with
alpha = eps1 - eps2, beta = -eps1 + 2 eps2, and W acts by integer matrices
in that basis.  The convention is pinned by two facts that hold below and
are asserted in the test suite: s_alpha s_beta s_alpha s_beta s_alpha sends
nu^{-s2 +- 1} x^-1 (x) nu^{s2} x  to  nu^{-+1} (x) nu^{s2} x,  and the
W-orbit of a regular character has exactly 12 elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import rootdata
from .rootdata import WeylElement, mat_mul

INFINITE = 0  # declared order 0 means infinite order


class CharError(ValueError):
    pass


class SymbolTable:
    """Registry of finite character symbols (and cuspidal placeholders)."""

    def __init__(self):
        self._orders: dict[str, int] = {}
        self._ramified: dict[str, bool] = {}
        self._cuspidal: dict[str, str] = {}  # name -> levi ('a' or 'b')

    def declare(self, name: str, order: int, ramified: bool) -> None:
        if name in self._cuspidal:
            raise CharError(f"{name!r} is already a cuspidal symbol")
        if name in self._orders:
            if self._orders[name] != order or self._ramified[name] != ramified:
                raise CharError(f"conflicting redeclaration of symbol {name!r}")
            return
        if order < 0 or order == 1:
            raise CharError(f"symbol order must be 2, 3, ... or 0 (infinite), got {order}")
        self._orders[name] = order
        self._ramified[name] = ramified

    def declare_cuspidal(self, name: str, levi: str) -> None:
        if name in self._orders:
            raise CharError(f"{name!r} is already a character symbol")
        if levi not in ("a", "b"):
            raise CharError(f"cuspidal Levi must be 'a' or 'b', got {levi!r}")
        prev = self._cuspidal.get(name)
        if prev is not None and prev != levi:
            raise CharError(f"conflicting redeclaration of cuspidal symbol {name!r}")
        self._cuspidal[name] = levi

    def order(self, name: str) -> int:
        try:
            return self._orders[name]
        except KeyError:
            raise CharError(f"unknown symbol {name!r}") from None

    def is_ramified(self, name: str) -> bool:
        return self._ramified[name]

    def is_symbol(self, name: str) -> bool:
        return name in self._orders

    def cuspidal_levi(self, name: str) -> Optional[str]:
        return self._cuspidal.get(name)

    def char(self, s=0, **exponents) -> "CharF":
        return CharF.make(self, Fraction(s), exponents)


@dataclass(frozen=True)
class CharF:
    """A character of F*: nu^s times a product of finite symbols."""

    table: SymbolTable
    s: Fraction
    fin: tuple[tuple[str, int], ...]  # sorted (symbol, exponent), exponents nonzero

    @staticmethod
    def make(table: SymbolTable, s, exponents: Optional[dict] = None) -> "CharF":
        norm = {}
        for name, e in (exponents or {}).items():
            n = table.order(name)
            e = e % n if n != INFINITE else e
            if e:
                norm[name] = e
        return CharF(table, Fraction(s), tuple(sorted(norm.items())))

    def __mul__(self, other: "CharF") -> "CharF":
        if self.table is not other.table:
            raise CharError("characters from different symbol tables")
        exps = dict(self.fin)
        for name, e in other.fin:
            exps[name] = exps.get(name, 0) + e
        return CharF.make(self.table, self.s + other.s, exps)

    def inv(self) -> "CharF":
        return CharF.make(self.table, -self.s, {n: -e for n, e in self.fin})

    def __pow__(self, k: int) -> "CharF":
        return CharF.make(self.table, self.s * k, {n: e * k for n, e in self.fin})

    def is_trivial(self) -> bool:
        return self.s == 0 and not self.fin

    def finite_part(self) -> "CharF":
        return CharF(self.table, Fraction(0), self.fin)

    def nu_part(self) -> Fraction:
        return self.s

    def is_ramified(self) -> bool:
        return any(self.table.is_ramified(n) for n, _ in self.fin)

    def finite_order(self) -> int:
        """Order of the finite part (0 means infinite)."""
        from math import gcd, lcm
        order = 1
        for name, e in self.fin:
            n = self.table.order(name)
            if n == INFINITE:
                return INFINITE
            order = lcm(order, n // gcd(n, e))
        return order

    def equals_nu_power(self, k) -> bool:
        return not self.fin and self.s == Fraction(k)

    def sort_key(self):
        return (self.s, self.fin)

    def __repr__(self):
        parts = []
        if self.s == 1:
            parts.append("nu")
        elif self.s != 0:
            parts.append("nu^{%s}" % self.s)
        for name, e in self.fin:
            parts.append(name if e == 1 else "%s^{%d}" % (name, e))
        return "*".join(parts) if parts else "one"


@dataclass(frozen=True)
class TorusCharacter:
    """A character c1 (x) c2 of T = F* x F*."""

    c1: CharF
    c2: CharF

    def __mul__(self, other: "TorusCharacter") -> "TorusCharacter":
        return TorusCharacter(self.c1 * other.c1, self.c2 * other.c2)

    def inv(self) -> "TorusCharacter":
        return TorusCharacter(self.c1.inv(), self.c2.inv())

    def is_trivial(self) -> bool:
        return self.c1.is_trivial() and self.c2.is_trivial()

    def sort_key(self):
        return (self.c1.sort_key(), self.c2.sort_key())

    def __repr__(self):
        return f"{self.c1!r} (x) {self.c2!r}"


def char_mul(a: TorusCharacter, b: TorusCharacter) -> TorusCharacter:
    return a * b


def char_inv(a: TorusCharacter) -> TorusCharacter:
    return a.inv()


def nu(table: SymbolTable, s) -> CharF:
    return CharF.make(table, Fraction(s))


def trivial(table: SymbolTable) -> CharF:
    return CharF.make(table, 0)


# --- Weyl action ------------------------------------------------------------
#
# Change of basis between root-basis coordinates and the eps-basis of the
# character lattice: alpha = eps1 - eps2, beta = -eps1 + 2 eps2.

_P = ((1, -1), (-1, 2))      # columns: eps-coordinates of alpha, beta
_P_INV = ((2, 1), (1, 1))

G2 = rootdata.build_root_system("G2")


def char_matrix(w: WeylElement):
    """The matrix of w on the eps-basis of the character lattice."""
    if w.kind != "G2":
        raise CharError("character action is defined for the G2 Weyl group")
    return mat_mul(mat_mul(_P, w.matrix), _P_INV)


def weyl_act_char(w: WeylElement, chi: TorusCharacter) -> TorusCharacter:
    """Action of w in W(G2) on a torus character."""
    m = char_matrix(w)
    comps = (chi.c1, chi.c2)
    new = []
    for i in range(2):
        acc = comps[0] ** m[i][0] * comps[1] ** m[i][1]
        new.append(acc)
    return TorusCharacter(new[0], new[1])


def char_orbit(chi: TorusCharacter) -> list[TorusCharacter]:
    """The W(G2)-orbit, without repetitions, in enumeration order."""
    seen: dict = {}
    for w in rootdata.weyl_group("G2").elements:
        img = weyl_act_char(w, chi)
        seen.setdefault(img, None)
    return list(seen)


def orbit_min(chi: TorusCharacter) -> TorusCharacter:
    return min(char_orbit(chi), key=TorusCharacter.sort_key)


# --- reducibility classification --------------------------------------------
#
# The principal series I(c1 (x) c2) is irreducible unless the pairing with
# some positive coroot equals nu^{+-1}.  The six walls correspond to the
# classical five conditions on nu^{s1} xi (x) nu^{s2} xi; the numbering used
# in the case files is:
#   (1) <chi, (3a+b)^vee> = c1 = nu^{+-1}, or <chi, b^vee> = c2 = nu^{+-1}
#   (2) <chi, (3a+2b)^vee> = c1 c2 = nu^{+-1}
#   (3) <chi, a^vee> = c1 c2^-1 = nu^{+-1}
#   (4) <chi, (2a+b)^vee> = c1^2 c2 = nu^{+-1}
#   (5) <chi, (a+b)^vee> = c1 c2^2 = nu^{+-1}

WALL_CONDITIONS = (
    ((1, 0), 3),    # alpha
    ((0, 1), 1),    # beta
    ((1, 1), 5),    # alpha + beta
    ((2, 1), 4),    # 2 alpha + beta
    ((3, 1), 1),    # 3 alpha + beta
    ((3, 2), 2),    # 3 alpha + 2 beta
)


def coroot_pairing_char(chi: TorusCharacter, root) -> CharF:
    """The character <chi, gamma^vee> of F* attached to a positive root."""
    cor = G2.coroot_of(tuple(Fraction(c) for c in root))
    # coroot in the f-basis dual to eps: gamma^vee = x*f1 + y*f2 with
    # (x, y) = cor[0]*(alpha^vee in f) + cor[1]*(beta^vee in f);
    # alpha^vee = f1 - f2, beta^vee = f2.
    x = cor[0]
    y = -cor[0] + cor[1]
    return chi.c1 ** int(x) * chi.c2 ** int(y)


@dataclass(frozen=True)
class CaseProfile:
    conditions: frozenset[int]
    walls: tuple[tuple[int, int], ...]   # positive roots (root-basis) where pairing = nu^{+-1}
    regular: bool
    ramified: bool

    @property
    def irreducible(self) -> bool:
        return not self.conditions


def classify(chi: TorusCharacter) -> CaseProfile:
    """Which of the reducibility conditions (1)-(5) hold for I(chi)."""
    conds = set()
    walls = []
    regular = True
    for root, number in WALL_CONDITIONS:
        val = coroot_pairing_char(chi, root)
        if val.is_trivial():
            regular = False
        if val.equals_nu_power(1) or val.equals_nu_power(-1):
            conds.add(number)
            walls.append(root)
    ram = chi.c1.is_ramified() or chi.c2.is_ramified()
    return CaseProfile(frozenset(conds), tuple(walls), regular, ram)
