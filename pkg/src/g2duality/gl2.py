"""Representation classes of the two GL2 Levi subgroups of G2.

Everything at a Levi is routed through the identification of its diagonal
torus with T = F* x F*:

    Levi 'a' (alpha):  (t1, t2) -> diag(t1, t2),      det = t1 t2
    Levi 'b' (beta):   (t1, t2) -> diag(t2, t1/t2),   det = t1

so a torus character (c1, c2) corresponds to the GL2 torus character
(c1, c2) at 'a' and (c1*c2, c1) at 'b'.  All reducibility, restriction,
twist and transport logic is computed in standard GL2 coordinates and
translated back, so the adapted formulas at the beta Levi (restriction of
twisted Steinberg, the asymmetric nu^s tensor rule) come out of the single
coordinate change.

Basis classes for R(L_gamma): generalized Steinberg nu^s delta(chi),
generalized trivial nu^s chi o det, irreducible principal series (pair
canonical under the Levi Weyl reflection), and formal cuspidal symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .chars import CharF, TorusCharacter, nu as nu_char
from .formal import FormalSum

HALF = Fraction(1, 2)


class GL2Error(ValueError):
    pass


def to_gl2_pair(levi: str, chi: TorusCharacter) -> tuple[CharF, CharF]:
    if levi == "a":
        return (chi.c1, chi.c2)
    if levi == "b":
        return (chi.c1 * chi.c2, chi.c1)
    raise GL2Error(f"unknown Levi {levi!r}")


def from_gl2_pair(levi: str, pair: tuple[CharF, CharF]) -> TorusCharacter:
    a, b = pair
    if levi == "a":
        return TorusCharacter(a, b)
    if levi == "b":
        return TorusCharacter(b, a * b.inv())
    raise GL2Error(f"unknown Levi {levi!r}")


def levi_reflect(levi: str, chi: TorusCharacter) -> TorusCharacter:
    """The Levi Weyl reflection s_gamma on torus characters (swap in GL2 coords)."""
    a, b = to_gl2_pair(levi, chi)
    return from_gl2_pair(levi, (b, a))


@dataclass(frozen=True)
class GL2PrincipalSeries:
    """I^gamma(c1 (x) c2), stored with the s_gamma-least representative pair."""

    levi: str
    chi: TorusCharacter

    @staticmethod
    def make(levi: str, chi: TorusCharacter) -> "GL2PrincipalSeries":
        other = levi_reflect(levi, chi)
        best = min(chi, other, key=TorusCharacter.sort_key)
        return GL2PrincipalSeries(levi, best)

    def sort_key(self):
        return (2, self.levi, self.chi.sort_key())

    def __repr__(self):
        return f"I^{self.levi}({self.chi!r})"


@dataclass(frozen=True)
class GL2Steinberg:
    """nu^s delta(chi): generalized Steinberg twisted by nu^s."""

    levi: str
    fin: CharF      # finite part of chi (no nu component)
    s: Fraction

    @staticmethod
    def make(levi: str, chi: CharF) -> "GL2Steinberg":
        """delta(chi) for an arbitrary character, nu-part folded into the twist."""
        return GL2Steinberg(levi, chi.finite_part(), chi.nu_part())

    @property
    def datum(self) -> CharF:
        return self.fin * nu_char(self.fin.table, self.s)

    def sort_key(self):
        return (0, self.levi, self.s, self.fin.sort_key())

    def __repr__(self):
        return f"delta({self.datum!r})"


@dataclass(frozen=True)
class GL2Trivial:
    """nu^s chi o det: generalized trivial twisted by nu^s."""

    levi: str
    fin: CharF
    s: Fraction

    @staticmethod
    def make(levi: str, chi: CharF) -> "GL2Trivial":
        return GL2Trivial(levi, chi.finite_part(), chi.nu_part())

    @property
    def datum(self) -> CharF:
        return self.fin * nu_char(self.fin.table, self.s)

    def sort_key(self):
        return (1, self.levi, self.s, self.fin.sort_key())

    def __repr__(self):
        return f"triv({self.datum!r})"


@dataclass(frozen=True)
class GL2Cuspidal:
    """A formal irreducible cuspidal of GL2 twisted by nu^s."""

    levi: str
    name: str
    s: Fraction

    def sort_key(self):
        return (3, self.levi, self.s, self.name)

    def __repr__(self):
        if self.s == 0:
            return f"cusp({self.name})"
        return f"cusp({self.name}, {self.s})"


GL2Class = Union[GL2PrincipalSeries, GL2Steinberg, GL2Trivial, GL2Cuspidal]


def reduces(ps: GL2PrincipalSeries) -> bool:
    """I^gamma(c1 (x) c2) reduces iff the pairing with the Levi coroot is nu^{+-1}."""
    a, b = to_gl2_pair(ps.levi, ps.chi)
    ratio = a * b.inv()
    return ratio.equals_nu_power(1) or ratio.equals_nu_power(-1)


def _split_datum(levi: str, chi: TorusCharacter) -> CharF:
    """For a reducible pair, the chi with factors delta(chi), chi o det."""
    a, b = to_gl2_pair(levi, chi)
    ratio = a * b.inv()
    if ratio.equals_nu_power(1):
        lower = b
    elif ratio.equals_nu_power(-1):
        lower = a
    else:
        raise GL2Error(f"principal series {chi!r} at {levi!r} is irreducible")
    return lower * nu_char(lower.table, HALF)


def gl2_decompose(c: GL2Class) -> FormalSum:
    """Composition factors of a GL2 class in R(L_gamma)."""
    if isinstance(c, GL2PrincipalSeries) and reduces(c):
        m = _split_datum(c.levi, c.chi)
        return FormalSum.of(GL2Steinberg.make(c.levi, m), GL2Trivial.make(c.levi, m))
    return FormalSum.of(c)


def normalize(x: FormalSum) -> FormalSum:
    """Rewrite a GL2-level sum in the irreducible basis."""
    return x.map_terms(gl2_decompose)


def gl2_restrict(c: GL2Class) -> FormalSum:
    """Normalized Jacquet restriction to T, as a sum of torus characters."""
    table_pairs: list[TorusCharacter] = []
    if isinstance(c, GL2PrincipalSeries):
        table_pairs = [c.chi, levi_reflect(c.levi, c.chi)]
    elif isinstance(c, GL2Steinberg):
        chi = c.datum
        half = nu_char(chi.table, HALF)
        table_pairs = [from_gl2_pair(c.levi, (chi * half, chi * half.inv()))]
    elif isinstance(c, GL2Trivial):
        chi = c.datum
        half = nu_char(chi.table, HALF)
        table_pairs = [from_gl2_pair(c.levi, (chi * half.inv(), chi * half))]
    elif isinstance(c, GL2Cuspidal):
        return FormalSum.zero()
    else:
        raise GL2Error(f"not a GL2 class: {c!r}")
    return FormalSum((p, 1) for p in table_pairs)


def gl2_twist(s, fin: Optional[CharF], c: GL2Class) -> GL2Class:
    """Twist by nu^s (chi o det); multiplies both GL2 torus coordinates."""
    s = Fraction(s)
    if isinstance(c, GL2Cuspidal):
        if fin is not None and not fin.is_trivial():
            raise GL2Error("cuspidal symbols only support unramified nu^s twists")
        return GL2Cuspidal(c.levi, c.name, c.s + s)
    if isinstance(c, GL2Steinberg):
        extra = nu_char(c.fin.table, s) * (fin or c.fin.table.char())
        return GL2Steinberg.make(c.levi, c.datum * extra)
    if isinstance(c, GL2Trivial):
        extra = nu_char(c.fin.table, s) * (fin or c.fin.table.char())
        return GL2Trivial.make(c.levi, c.datum * extra)
    if isinstance(c, GL2PrincipalSeries):
        a, b = to_gl2_pair(c.levi, c.chi)
        table = a.table
        extra = nu_char(table, s) * (fin if fin is not None else table.char())
        return GL2PrincipalSeries.make(c.levi, from_gl2_pair(c.levi, (a * extra, b * extra)))
    raise GL2Error(f"not a GL2 class: {c!r}")


def match_steinberg(levi: str, chi: TorusCharacter) -> Optional[CharF]:
    """If chi is the T-restriction of some nu^s delta(chi0), return nu^s chi0."""
    a, b = to_gl2_pair(levi, chi)
    if (a * b.inv()).equals_nu_power(1):
        return b * nu_char(b.table, HALF)
    return None


def match_trivial(levi: str, chi: TorusCharacter) -> Optional[CharF]:
    a, b = to_gl2_pair(levi, chi)
    if (a * b.inv()).equals_nu_power(-1):
        return a * nu_char(a.table, HALF)
    return None


def transport(c: GL2Class, char_map) -> GL2Class:
    """Conjugate a GL2 class by a Weyl element preserving its Levi.

    ``char_map`` sends torus characters to torus characters (the action of
    the conjugating element).  Principal series transport termwise; the
    Steinberg and trivial classes transport by moving their T-restriction.
    Cuspidal symbols transport by inverting the nu^s twist, which is the
    only Levi-preserving conjugation in rank 2.
    """
    if isinstance(c, GL2PrincipalSeries):
        return GL2PrincipalSeries.make(c.levi, char_map(c.chi))
    if isinstance(c, GL2Cuspidal):
        return GL2Cuspidal(c.levi, c.name, -c.s)
    (orig,) = list(gl2_restrict(c).keys())
    moved = char_map(orig)
    if isinstance(c, GL2Steinberg):
        m = match_steinberg(c.levi, moved)
        if m is None:
            raise GL2Error(f"transport of {c!r} is not a Steinberg datum")
        return GL2Steinberg.make(c.levi, m)
    m = match_trivial(c.levi, moved)
    if m is None:
        raise GL2Error(f"transport of {c!r} is not a trivial-type datum")
    return GL2Trivial.make(c.levi, m)


def dualize_gl2_class(c: GL2Class) -> FormalSum:
    """Duality at the GL2 level from first principles: i_B r_B - id."""
    induced = gl2_restrict(c).map_terms(
        lambda chi: gl2_decompose(GL2PrincipalSeries.make(c.levi, chi))
    )
    return induced - gl2_decompose(c)


def dualize_gl2(x: FormalSum) -> FormalSum:
    """Linear extension of GL2 duality to sums."""
    return x.map_terms(dualize_gl2_class)
