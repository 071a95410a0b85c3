"""Grothendieck-group calculus for G2: induction, restriction, duality.

Basis keys for R(G2) come in three flavours:

* ``InducedB(chi)``        -- the full principal series I(chi),
* ``InducedMax(levi, c)``  -- I_gamma(c) induced from a GL2 Levi class,
* irreducible labels       -- Langlands-style names (St, pi(chi), J_gamma...).

Keys are never merged silently across Grothendieck-group identities such as
I(chi) = I(w chi); ``orbit_canonical`` rewrites a sum to canonical keys when
an equality-in-R(G) comparison is wanted, and ``resolve`` rewrites a sum in
the irreducible basis using registered composition data (failing loudly on
gaps, never guessing).

Jacquet restriction of induced keys is computed by the geometric lemma: a
sum over minimal double-coset representatives of (induce) o (Weyl twist) o
(restrict), with the single Levi-preserving representative contributing a
conjugated class and the rest passing through the torus.  The duality
operator is the signed sum  I r_0 - I_a r_a - I_b r_b + id.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import rootdata
from .chars import (CharF, TorusCharacter, char_orbit, classify, orbit_min,
                    weyl_act_char)
from .formal import FormalSum
from .gl2 import (GL2Class, GL2Cuspidal, GL2PrincipalSeries, GL2Steinberg,
                  GL2Trivial, _split_datum, dualize_gl2_class, gl2_decompose,
                  gl2_restrict, normalize, reduces, transport)

G2 = rootdata.build_root_system("G2")
W = rootdata.weyl_group("G2")

LEVI_INDEX = {"a": 0, "b": 1}
# the non-identity minimal double-coset representative fixing each Levi root:
# s_{3a+2b} fixes alpha, s_{2a+b} fixes beta
LEVI_FIXER = {
    "a": W.reflection((3, 2)),
    "b": W.reflection((2, 1)),
}


class GrothError(ValueError):
    pass


class DatabaseGapError(GrothError):
    """Raised when resolving needs composition data that was never registered."""


# --- G2-level basis keys -----------------------------------------------------

@dataclass(frozen=True)
class InducedB:
    chi: TorusCharacter

    def sort_key(self):
        return (10, self.chi.sort_key())

    def __repr__(self):
        return f"I({self.chi!r})"


@dataclass(frozen=True)
class InducedMax:
    levi: str
    rep: GL2Class

    def sort_key(self):
        return (11, self.levi, self.rep.sort_key())

    def __repr__(self):
        return f"I_{self.levi}({self.rep!r})"


class IrrLabel:
    """Base class for irreducible labels (canonical, hashable)."""


@dataclass(frozen=True)
class IrrSt(IrrLabel):
    def sort_key(self):
        return (0,)

    def __repr__(self):
        return "St"


@dataclass(frozen=True)
class IrrTriv(IrrLabel):
    def sort_key(self):
        return (1,)

    def __repr__(self):
        return "one"


@dataclass(frozen=True)
class PiChi(IrrLabel):
    """pi(chi): the distinguished subrepresentation in the s=1/2 cases."""

    fin: CharF

    @staticmethod
    def make(fin: CharF) -> "PiChi":
        # pi(chi) and pi(chi^-1) name the same representation
        return PiChi(min(fin, fin.inv(), key=CharF.sort_key))

    def sort_key(self):
        return (2, self.fin.sort_key())

    def __repr__(self):
        return f"pi({self.fin!r})"


@dataclass(frozen=True)
class PiPrime1(IrrLabel):
    def sort_key(self):
        return (3,)

    def __repr__(self):
        return "pi'(1)"


@dataclass(frozen=True)
class JSt(IrrLabel):
    """J_gamma(s, delta(chi)): Langlands quotient of I_gamma(s, delta(chi))."""

    levi: str
    s: Fraction
    fin: CharF

    def __post_init__(self):
        if self.s <= 0:
            raise GrothError(
                f"J_{self.levi}({self.s}, delta(..)) needs s > 0; rewrite via "
                f"I_{self.levi}(-s, delta(chi)) = I_{self.levi}(s, delta(chi^-1)) in R(G2)"
            )

    def sort_key(self):
        return (4, self.levi, self.s, self.fin.sort_key())

    def __repr__(self):
        return f"J_{self.levi}({self.s}, delta({self.fin!r}))"


@dataclass(frozen=True)
class JPS(IrrLabel):
    """J_b(s, pi(c1, c2)): Langlands quotient with a tempered GL2 series."""

    s: Fraction
    ps: GL2PrincipalSeries

    def __post_init__(self):
        if self.s <= 0:
            raise GrothError("J_b(s, pi(..)) needs s > 0")

    def sort_key(self):
        return (5, self.s, self.ps.sort_key())

    def __repr__(self):
        chi = self.ps.chi
        return f"J_b({self.s}, pi({chi.c1!r}, {chi.c2!r}))"


@dataclass(frozen=True)
class PiGen(IrrLabel):
    """pi(chi): subrepresentation of a length-2 principal series I(chi)."""

    chi: TorusCharacter

    def sort_key(self):
        return (6, self.chi.sort_key())

    def __repr__(self):
        return f"pi({self.chi!r})"


@dataclass(frozen=True)
class JGen(IrrLabel):
    """J(chi): quotient of a length-2 principal series I(chi)."""

    chi: TorusCharacter

    def sort_key(self):
        return (7, self.chi.sort_key())

    def __repr__(self):
        return f"J({self.chi!r})"


@dataclass(frozen=True)
class PiSigma(IrrLabel):
    """pi(sigma): discrete-series sub of the reducible intermediate series."""

    levi: str
    name: str

    def sort_key(self):
        return (8, self.levi, self.name)

    def __repr__(self):
        return f"pi({self.name})"


@dataclass(frozen=True)
class JSigma(IrrLabel):
    levi: str
    name: str

    def sort_key(self):
        return (9, self.levi, self.name)

    def __repr__(self):
        return f"J({self.name})"


@dataclass(frozen=True)
class IrrInd(IrrLabel):
    """An irreducible full induced I_gamma(c), kept under its induced name."""

    levi: str
    rep: GL2Class

    def sort_key(self):
        return (12, self.levi, self.rep.sort_key())

    def __repr__(self):
        return f"irr(I_{self.levi}({self.rep!r}))"


@dataclass(frozen=True)
class IrrPS(IrrLabel):
    """An irreducible full principal series I(chi), chi orbit-canonical."""

    chi: TorusCharacter

    def sort_key(self):
        return (13, self.chi.sort_key())

    def __repr__(self):
        return f"irr(I({self.chi!r}))"


G2Class = Union[InducedB, InducedMax, IrrLabel]


# --- canonical forms ---------------------------------------------------------

def canon_induced_max(key: InducedMax) -> InducedMax:
    """Canonical key among the R(G2)-equal forms of I_gamma(c).

    The conjugate by the Levi-preserving reflection gives an equal class in
    R(G2); prefer a positive twist (Langlands-style s > 0), then sort order.
    """
    fixer = LEVI_FIXER[key.levi]
    moved = transport(key.rep, lambda chi: weyl_act_char(fixer, chi))

    def pref(c):
        s = getattr(c, "s", None)
        return (0 if (s is not None and s > 0) else 1, c.sort_key())

    best = min(key.rep, moved, key=pref)
    return InducedMax(key.levi, best)


def orbit_canonical_key(key):
    if isinstance(key, InducedB):
        return InducedB(orbit_min(key.chi))
    if isinstance(key, InducedMax):
        return canon_induced_max(key)
    return key


def orbit_canonical(x: FormalSum) -> FormalSum:
    """Rewrite induced keys to canonical representatives of their R(G2) class."""
    return x.map_keys(orbit_canonical_key)


# --- parabolic induction -----------------------------------------------------

def induce(gamma: str, y: FormalSum) -> FormalSum:
    """Wrap a torus-level ('0') or GL2-level ('a'/'b') sum as induced keys."""
    if gamma == "0":
        return y.map_keys(InducedB)
    if gamma in ("a", "b"):
        return y.map_keys(lambda c: InducedMax(gamma, c))
    raise GrothError(f"unknown induction level {gamma!r}")


# --- the geometric lemma -----------------------------------------------------

def _coset_reps(left: Optional[str], right: Optional[str]):
    lset = frozenset(() if left is None else (LEVI_INDEX[left],))
    rset = frozenset(() if right is None else (LEVI_INDEX[right],))
    return rootdata.minimal_double_coset_reps(G2, lset, rset)


def _restrict_induced_b(gamma: str, chi: TorusCharacter) -> FormalSum:
    if gamma == "0":
        return FormalSum((weyl_act_char(w, chi), 1) for w in W.elements)
    reps = _coset_reps(gamma, None)
    out = FormalSum(
        (GL2PrincipalSeries.make(gamma, weyl_act_char(w, chi)), 1) for w in reps
    )
    return normalize(out)


def _restrict_induced_max(gamma: str, src: str, rep: GL2Class) -> FormalSum:
    src_root = G2.simple_roots[LEVI_INDEX[src]]
    torus_part = gl2_restrict(rep)
    if gamma == "0":
        reps = _coset_reps(None, src)
        out = FormalSum.zero()
        for w in reps:
            out = out + torus_part.map_keys(lambda chi, w=w: weyl_act_char(w, chi))
        return out
    dst_root = G2.simple_roots[LEVI_INDEX[gamma]]
    out = FormalSum.zero()
    for w in _coset_reps(gamma, src):
        if w.act(src_root) == dst_root:
            moved = transport(rep, lambda chi, w=w: weyl_act_char(w, chi))
            out = out + FormalSum.of(moved)
        else:
            out = out + torus_part.map_keys(
                lambda chi, w=w: GL2PrincipalSeries.make(gamma, weyl_act_char(w, chi))
            )
    return normalize(out)


def restrict(gamma: str, x: FormalSum, db=None) -> FormalSum:
    """Normalized Jacquet restriction r_gamma on a G2-level sum.

    gamma is '0' (to the torus), 'a' or 'b'.  Irreducible labels need their
    Jacquet data registered in ``db``; induced keys are computed by the
    geometric lemma.
    """
    if gamma not in ("0", "a", "b"):
        raise GrothError(f"unknown restriction level {gamma!r}")
    out = FormalSum.zero()
    for key, c in x:
        if isinstance(key, InducedB):
            part = _restrict_induced_b(gamma, key.chi)
        elif isinstance(key, InducedMax):
            part = _restrict_induced_max(gamma, key.levi, key.rep)
        elif isinstance(key, IrrLabel):
            part = _restrict_irr(gamma, key, db)
        else:
            raise GrothError(f"not a G2-level key: {key!r}")
        out = out + c * part
    return out


def _jacquet_from_db(label: IrrLabel, db):
    if db is None:
        raise DatabaseGapError(
            f"restriction of {label!r} needs registered Jacquet data (no database given)"
        )
    return db.jacquet_of(label)


def _restrict_irr(gamma: str, label: IrrLabel, db) -> FormalSum:
    if isinstance(label, IrrPS):
        return _restrict_induced_b(gamma, label.chi)
    if isinstance(label, IrrInd):
        return _restrict_induced_max(gamma, label.levi, label.rep)
    r_a, r_b = _jacquet_from_db(label, db)
    if gamma == "a":
        return r_a
    if gamma == "b":
        return r_b
    # r_0 = r_T^{L_a} o r_a
    return r_a.map_terms(gl2_restrict)


# --- resolution into the irreducible basis -----------------------------------

def resolve(x: FormalSum, db) -> FormalSum:
    """Rewrite a G2-level sum in the irreducible basis, or fail loudly."""
    out = FormalSum.zero()
    for key, c in x:
        out = out + c * _resolve_key(key, db)
    return out


def _resolve_key(key, db) -> FormalSum:
    if isinstance(key, IrrLabel):
        return FormalSum.of(key)
    if isinstance(key, InducedMax):
        rep = key.rep
        if isinstance(rep, GL2PrincipalSeries):
            if reduces(rep):
                m = _split_datum(rep.levi, rep.chi)
                split = FormalSum.of(
                    InducedMax(key.levi, GL2Steinberg.make(rep.levi, m)),
                    InducedMax(key.levi, GL2Trivial.make(rep.levi, m)),
                )
                return resolve(split, db)
            canon = canon_induced_max(key)
            found = db.decomposition_of(canon) if db is not None else None
            if found is not None:
                return found
            # transitivity of induction: I_gamma(I^gamma(chi)) = I(chi) in R(G2)
            return _resolve_key(InducedB(rep.chi), db)
        canon = canon_induced_max(key)
        found = db.decomposition_of(canon) if db is not None else None
        if found is None:
            raise DatabaseGapError(
                f"no registered composition series for {canon!r}; register its case"
            )
        return found
    if isinstance(key, InducedB):
        canon = InducedB(orbit_min(key.chi))
        found = db.decomposition_of(canon) if db is not None else None
        if found is not None:
            return found
        profile = classify(key.chi)
        if profile.irreducible:
            return FormalSum.of(IrrPS(canon.chi))
        # split through a Levi wall on some translate; alpha route first
        for levi in ("a", "b"):
            for psi in sorted(char_orbit(key.chi), key=TorusCharacter.sort_key):
                ps = GL2PrincipalSeries.make(levi, psi)
                if reduces(ps):
                    m = _split_datum(levi, psi)
                    split = FormalSum.of(
                        InducedMax(levi, GL2Steinberg.make(levi, m)),
                        InducedMax(levi, GL2Trivial.make(levi, m)),
                    )
                    return resolve(split, db)
        raise DatabaseGapError(
            f"reducible {canon!r} has no Levi wall and no registered decomposition"
        )
    raise GrothError(f"not a G2-level key: {key!r}")


# --- the duality operator ----------------------------------------------------

def dualize(x: FormalSum, db) -> FormalSum:
    """Signed duality I r_0 - I_a r_a - I_b r_b + id, in the irreducible basis."""
    out = FormalSum.zero()
    for key, c in x:
        out = out + c * _dualize_key(key, db)
    return out


def _dualize_key(key, db) -> FormalSum:
    if isinstance(key, InducedB):
        # duality commutes with induction and is the identity on the torus
        return _resolve_key(key, db)
    if isinstance(key, InducedMax):
        dual_levi = dualize_gl2_class(key.rep)
        return resolve(induce(key.levi, dual_levi), db)
    if isinstance(key, IrrPS):
        return FormalSum.of(key)
    if isinstance(key, IrrLabel):
        self_sum = FormalSum.of(key)
        r0 = _restrict_irr("0", key, db)
        r_a = _restrict_irr("a", key, db)
        r_b = _restrict_irr("b", key, db)
        total = resolve(induce("0", r0), db) \
            - resolve(induce("a", r_a), db) \
            - resolve(induce("b", r_b), db) \
            + self_sum
        return total
    raise GrothError(f"not a G2-level key: {key!r}")
