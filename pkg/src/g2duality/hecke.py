"""Extended affine Weyl groups and Iwahori-Matsumoto Hecke algebras.

The extended affine Weyl group of a rank <= 2 root datum (X = root or
weight lattice) is W x X with elements stored as (finite part, translation)
pairs; the translation is in root-basis coordinates.  Lengths come from the
closed inversion-count formula

    l(w t_l) = sum over positive roots g of
               |<l, g^vee>| + [w g < 0]            if <l, g^vee> >= 0,
               |<l, g^vee>| - 1 + [w g > 0]        otherwise,

cross-checked in the tests against breadth-first word search.  The affine
generator is s_0 = t_{theta} s_theta for theta the root whose coroot is the
highest coroot; Omega is the finite set of length-zero elements.

The Hecke algebra has basis T_w over Laurent polynomials in one formal
parameter per S_aff conjugacy class (classes joined by odd braid bonds),
with (T_s + 1)(T_s - q_s) = 0 and T_w T_w' = T_ww' when lengths add.  The
star involution is T_w* = (-1)^{l(w_fin)} q(w) T_{w^-1}^{-1} with q(w) the
product of the q_s over any reduced word.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from . import rootdata
from .laurent import LaurentPoly
from .rootdata import WeylElement

Vec = tuple[Fraction, ...]


class HeckeError(ValueError):
    pass


@dataclass(frozen=True)
class AffineWeylElement:
    """w_fin t_lambda in W x X; translation in root-basis coordinates."""

    fin: WeylElement
    trans: Vec

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        # (w t_l)(w' t_m) = (w w') t_{w'^-1(l) + m}
        w2inv = other.fin.inverse()
        moved = w2inv.act(self.trans)
        lam = tuple(a + b for a, b in zip(moved, other.trans))
        return AffineWeylElement(self.fin * other.fin, lam)

    def inverse(self) -> "AffineWeylElement":
        winv = self.fin.inverse()
        return AffineWeylElement(winv, tuple(-c for c in self.fin.act(self.trans)))

    def is_identity(self) -> bool:
        return not self.fin.word and all(c == 0 for c in self.trans)

    def sort_key(self):
        return (self.trans, self.fin.word)

    def __repr__(self):
        if self.is_identity():
            return "e"
        parts = []
        if self.fin.word:
            parts.append(repr(self.fin))
        if any(self.trans):
            parts.append("t[" + ",".join(str(c) for c in self.trans) + "]")
        return "*".join(parts)


class ExtendedAffineWeyl:
    """Group handle: generators, lengths, reduced words, Omega."""

    def __init__(self, kind: str, lattice: str = "root"):
        if lattice not in ("root", "weight"):
            raise HeckeError(f"lattice must be 'root' or 'weight', got {lattice!r}")
        self.kind = kind
        self.lattice = lattice
        self.rs = rootdata.build_root_system(kind)
        self.W = rootdata.weyl_group(kind)
        n = self.rs.rank

        # theta: the root whose coroot is the (componentwise) highest coroot
        best = None
        for root, cor in zip(self.rs.positive_roots, self.rs.coroots):
            if best is None or all(a >= b for a, b in zip(cor, best[1])):
                best = (root, cor)
        for root, cor in zip(self.rs.positive_roots, self.rs.coroots):
            if not all(a <= b for a, b in zip(cor, best[1])):
                raise HeckeError("no unique highest coroot")
        self.theta = best[0]

        zero = tuple(Fraction(0) for _ in range(n))
        self.identity = AffineWeylElement(self.W.identity, zero)
        # finite generators s1..sn, affine generator s0 = t_theta s_theta
        self.gen_names = tuple(f"s{i + 1}" for i in range(n)) + ("s0",)
        s_theta = self.W.reflection(self.theta)
        fin_gens = [AffineWeylElement(self.W.simple_reflections[i], zero) for i in range(n)]
        s0 = AffineWeylElement(s_theta, s_theta.inverse().act(self.theta))
        self.generators = {name: g for name, g in zip(self.gen_names, fin_gens + [s0])}
        self._lengths: dict[AffineWeylElement, int] = {}
        self._words: dict[AffineWeylElement, tuple] = {}
        self.omega = self._compute_omega()

    # --- lattice -------------------------------------------------------------
    def in_lattice(self, lam: Vec) -> bool:
        if self.lattice == "root":
            return all(c.denominator == 1 for c in lam)
        # weight lattice: integral pairing with every simple coroot
        return all(self.rs.simple_pairing(lam, i).denominator == 1
                   for i in range(self.rs.rank))

    def translation(self, lam) -> AffineWeylElement:
        lam = tuple(Fraction(c) for c in lam)
        if not self.in_lattice(lam):
            raise HeckeError(f"{lam} is not in the {self.lattice} lattice")
        return AffineWeylElement(self.W.identity, lam)

    # --- lengths and words ---------------------------------------------------
    def length(self, x: AffineWeylElement) -> int:
        cached = self._lengths.get(x)
        if cached is not None:
            return cached
        total = 0
        for root, cor in zip(self.rs.positive_roots, self.rs.coroots):
            m = sum(cor[i] * self.rs.simple_pairing(x.trans, i) for i in range(self.rs.rank))
            img_neg = not _positive(x.fin.act(root))
            if m >= 0:
                total += int(m) + (1 if img_neg else 0)
            else:
                total += int(-m) - 1 + (0 if img_neg else 1)
        self._lengths[x] = total
        return total

    def reduced_word(self, x: AffineWeylElement) -> tuple[tuple[str, ...], AffineWeylElement]:
        """Returns (word, omega_part) with x = omega * prod(word generators)."""
        cached = self._words.get(x)
        if cached is not None:
            return cached
        word: list[str] = []
        cur = x
        ell = self.length(cur)
        while ell > 0:
            for name in self.gen_names:
                cand = cur * self.generators[name]
                l2 = self.length(cand)
                if l2 < ell:
                    word.append(name)
                    cur, ell = cand, l2
                    break
            else:
                raise HeckeError(f"no descent found for {x!r}")
        word.reverse()
        result = (tuple(word), cur)
        self._words[x] = result
        return result

    def _compute_omega(self) -> tuple[AffineWeylElement, ...]:
        # length-zero elements: for every positive root, either pairing 0 and
        # w-image positive, or pairing -1 and w-image negative
        found = [self.identity]
        n = self.rs.rank
        pairs = list(zip(self.rs.positive_roots, self.rs.coroots))
        candidates = _lattice_box(self, 2)
        for lam in candidates:
            if all(c == 0 for c in lam):
                continue
            pairings = [self.rs.pairing(lam, cor) for _, cor in pairs]
            if not all(p in (0, -1) for p in pairings):
                continue
            for w in self.W.elements:
                ok = True
                for (root, _), p in zip(pairs, pairings):
                    pos = _positive(w.act(root))
                    if p == 0 and not pos:
                        ok = False
                        break
                    if p == -1 and pos:
                        ok = False
                        break
                if ok:
                    found.append(AffineWeylElement(w, lam))
                    break
        return tuple(found)

    def ball(self, max_length: int) -> list[AffineWeylElement]:
        """All elements of length <= max_length (including Omega translates)."""
        seen = {om: 0 for om in self.omega}
        frontier = list(self.omega)
        while frontier:
            nxt = []
            for x in frontier:
                lx = self.length(x)
                for name in self.gen_names:
                    y = x * self.generators[name]
                    if y in seen:
                        continue
                    ly = self.length(y)
                    if ly <= max_length and ly == lx + 1:
                        seen[y] = ly
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=lambda x: (self.length(x), x.sort_key()))

    def all_reduced_words(self, x: AffineWeylElement) -> list[tuple[str, ...]]:
        ell = self.length(x)
        if ell == 0:
            return [()]
        out = []
        for name in self.gen_names:
            y = x * self.generators[name]
            if self.length(y) == ell - 1:
                out.extend(w + (name,) for w in self.all_reduced_words(y))
        return out

    def braid_order(self, a: str, b: str, cap: int = 40) -> Optional[int]:
        """Order of s_a s_b (None if it exceeds the cap, i.e. infinite)."""
        prod = self.generators[a] * self.generators[b]
        cur = prod
        for k in range(1, cap + 1):
            if cur.is_identity():
                return k
            cur = cur * prod
        return None


def _positive(v) -> bool:
    return any(c > 0 for c in v) and all(c >= 0 for c in v)


def _lattice_box(group: ExtendedAffineWeyl, radius: int):
    n = group.rs.rank
    # weight lattice in root coordinates: integer combinations of C^-1 columns
    steps: list[Vec] = []
    if group.lattice == "root":
        basis = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    else:
        # fundamental weights: solutions of C x = e_i
        cart = group.rs.cartan
        basis = []
        for i in range(n):
            e = [Fraction(int(k == i)) for k in range(n)]
            basis.append(_solve_cartan(cart, e))
    out = []
    span = range(-radius, radius + 1)
    if n == 1:
        for a in span:
            out.append(tuple(a * basis[0][k] for k in range(n)))
    else:
        for a in span:
            for b in span:
                out.append(tuple(a * basis[0][k] + b * basis[1][k] for k in range(n)))
    return out


def _solve_cartan(cart, rhs):
    n = len(cart)
    if n == 1:
        return (Fraction(rhs[0], cart[0][0]),)
    det = cart[0][0] * cart[1][1] - cart[0][1] * cart[1][0]
    x = (cart[1][1] * rhs[0] - cart[0][1] * rhs[1])
    y = (-cart[1][0] * rhs[0] + cart[0][0] * rhs[1])
    return (Fraction(x, det), Fraction(y, det))


class HeckeAlgebra:
    """Iwahori-Matsumoto presentation over Laurent polynomials in the q_s."""

    def __init__(self, kind: str, lattice: str = "root",
                 params: Optional[dict] = None):
        self.group = ExtendedAffineWeyl(kind, lattice)
        names = self.group.gen_names
        # conjugacy classes of S_aff: generators joined by odd braid bonds
        parent = {g: g for g in names}

        def find(g):
            while parent[g] != g:
                g = parent[g]
            return g

        for a in names:
            for b in names:
                if a < b:
                    m = self.group.braid_order(a, b)
                    if m is not None and m % 2 == 1 and m > 1:
                        parent[find(a)] = find(b)
        self.param_class = {g: find(g) for g in names}
        reps = sorted(set(self.param_class.values()))
        self.param_vars = tuple(f"q[{r}]" for r in reps)
        self._values: dict[str, Fraction] = {}
        for g, val in (params or {}).items():
            if g not in names:
                raise HeckeError(f"unknown generator {g!r}")
            self._values[f"q[{self.param_class[g]}]"] = Fraction(val)

    # --- scalars ---
    def one_scalar(self) -> LaurentPoly:
        return LaurentPoly.constant(self.param_vars, 1)

    def q_var(self, gen: str) -> LaurentPoly:
        if gen not in self.param_class:
            raise HeckeError(f"unknown generator {gen!r}")
        var = f"q[{self.param_class[gen]}]"
        poly = LaurentPoly.variable(self.param_vars, var)
        if self._values:
            poly = poly.substitute(self._values)
        return poly

    def _scalar(self, c) -> LaurentPoly:
        return LaurentPoly.constant(self.param_vars, c)

    # --- elements ---
    def element(self, terms) -> "HeckeElement":
        return HeckeElement(self, dict(terms))

    def one(self) -> "HeckeElement":
        return self.element({self.group.identity: self.one_scalar()})

    def t_basis(self, x: AffineWeylElement) -> "HeckeElement":
        return self.element({x: self.one_scalar()})

    def t_element(self, gen_names: Iterable[str]) -> "HeckeElement":
        x = self.group.identity
        for g in gen_names:
            if g not in self.group.generators:
                raise HeckeError(
                    f"unknown generator {g!r}; this algebra has {', '.join(self.group.gen_names)}")
            x = x * self.group.generators[g]
        return self.t_basis(x)

    # --- multiplication ---
    def _mul_basis_gen(self, x: AffineWeylElement, gen: str):
        """T_x * T_s as a dict of basis terms."""
        s = self.group.generators[gen]
        xs = x * s
        if self.group.length(xs) > self.group.length(x):
            return {xs: self.one_scalar()}
        q = self.q_var(gen)
        return {xs: q, x: q - self.one_scalar()}

    def mul(self, a: "HeckeElement", b: "HeckeElement") -> "HeckeElement":
        out: dict[AffineWeylElement, LaurentPoly] = {}
        for y, cy in b.terms.items():
            word, omega = self.group.reduced_word(y)
            for x, cx in a.terms.items():
                coeff = cx * cy
                start = x * omega  # lengths add since l(omega) = 0
                partial = {start: coeff}
                for gen in word:
                    nxt: dict[AffineWeylElement, LaurentPoly] = {}
                    for z, cz in partial.items():
                        for w, cw in self._mul_basis_gen(z, gen).items():
                            prev = nxt.get(w)
                            nxt[w] = cz * cw if prev is None else prev + cz * cw
                    partial = {k: v for k, v in nxt.items() if not v.is_zero()}
                for z, cz in partial.items():
                    prev = out.get(z)
                    val = cz if prev is None else prev + cz
                    out[z] = val
        return self.element({k: v for k, v in out.items() if not v.is_zero()})

    # --- inverses, q(w), star ---
    def gen_inverse(self, gen: str) -> "HeckeElement":
        """T_s^{-1} = q_s^{-1} T_s + (q_s^{-1} - 1)."""
        qinv = self.q_var(gen) ** (-1)
        s = self.group.generators[gen]
        return self.element({
            s: qinv,
            self.group.identity: qinv - self.one_scalar(),
        })

    def basis_inverse(self, x: AffineWeylElement) -> "HeckeElement":
        """T_x^{-1} via a reduced word (Omega part contributes T_{omega^-1})."""
        word, omega = self.group.reduced_word(x)
        out = self.t_basis(omega.inverse())
        for gen in reversed(word):
            out = self.mul(self.gen_inverse(gen), out)
        return out

    def invert(self, h: "HeckeElement") -> "HeckeElement":
        items = list(h.terms.items())
        if len(items) != 1:
            raise HeckeError("only basis multiples are inverted")
        x, c = items[0]
        if len(c.terms) != 1:
            raise HeckeError("only monomial multiples of T_w are inverted")
        return self.basis_inverse(x).scale(c ** (-1))

    def q_of(self, x: AffineWeylElement) -> LaurentPoly:
        """Product of the q_s over a reduced word (reduced-word independent)."""
        word, _ = self.group.reduced_word(x)
        out = self.one_scalar()
        for gen in word:
            out = out * self.q_var(gen)
        return out

    def kato_star_basis(self, x: AffineWeylElement) -> "HeckeElement":
        sign = -1 if rootdata.length(x.fin) % 2 else 1
        res = self.basis_inverse(x.inverse()).scale(self.q_of(x))
        return res.scale(self._scalar(sign))

    def kato_star(self, h: "HeckeElement") -> "HeckeElement":
        out = self.element({})
        for x, c in h.terms.items():
            out = out + self.kato_star_basis(x).scale(c)
        return out


class HeckeElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HeckeAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {x: c for x, c in terms.items() if not c.is_zero()}

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        data = dict(self.terms)
        for x, c in other.terms.items():
            prev = data.get(x)
            data[x] = c if prev is None else prev + c
        return HeckeElement(self.algebra, data)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return self.algebra.mul(self, other)

    def scale(self, c: LaurentPoly) -> "HeckeElement":
        return HeckeElement(self.algebra, {x: v * c for x, v in self.terms.items()})

    def negate(self) -> "HeckeElement":
        return self.scale(self.algebra._scalar(-1))

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.negate()

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_items(self):
        return sorted(self.terms.items(),
                      key=lambda t: (self.algebra.group.length(t[0]), t[0].sort_key()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for x, c in self.sorted_items():
            word, omega = self.algebra.group.reduced_word(x)
            name = "T[" + " ".join(word) + "]"
            if not omega.is_identity():
                name = f"omega({omega!r})*{name}"
            cs = repr(c)
            if cs == "1":
                parts.append(name)
            elif cs == "-1":
                parts.append(f"-{name}")
            elif ("+" in cs) or (" - " in cs):
                parts.append(f"({cs})*{name}")
            else:
                parts.append(f"{cs}*{name}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


@lru_cache(maxsize=None)
def build_eaw(kind: str, lattice: str = "root") -> ExtendedAffineWeyl:
    """Extended affine Weyl group handle for a rank <= 2 datum."""
    return ExtendedAffineWeyl(kind, lattice)


def aw_length(group: ExtendedAffineWeyl, x: AffineWeylElement) -> int:
    return group.length(x)
