"""Rank <= 2 based root systems and their Weyl groups, in exact arithmetic.

Vectors live in the simple-root basis: a root ``x*alpha + y*beta`` is the
tuple ``(x, y)`` (rank-1 systems use 1-tuples).  Weights may have rational
coordinates in this basis, so everything is stored as ``Fraction``.  Weyl
elements are integer matrices acting on root-basis coordinates, together
with a canonical (lexicographically least) reduced word.

The Cartan matrix convention is ``cartan[i][j] = <alpha_j, alpha_i^vee>``,
so the pairing of ``v`` with the i-th simple coroot is ``(cartan @ v)[i]``.
For G2 the index 0 root ``alpha`` is short and the index 1 root ``beta`` is
long, with positive roots {a, b, a+b, 2a+b, 3a+b, 3a+2b}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[int, ...], ...]

CARTAN_MATRICES: dict[str, Matrix] = {
    "A1": ((2,),),
    "A1xA1": ((2, 0), (0, 2)),
    "A2": ((2, -1), (-1, 2)),
    "C2": ((2, -2), (-1, 2)),
    "G2": ((2, -3), (-1, 2)),
}

SIMPLE_NAMES = ("alpha", "beta")


class RootDataError(ValueError):
    pass


def _vec(coords) -> Vector:
    return tuple(Fraction(c) for c in coords)


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_apply(m: Matrix, v: Vector) -> Vector:
    n = len(m)
    return tuple(sum(Fraction(m[i][j]) * v[j] for j in range(n)) for i in range(n))


def mat_det(m: Matrix) -> int:
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@dataclass(frozen=True)
class RootSystem:
    """A based root system of rank 1 or 2."""

    kind: str
    cartan: Matrix
    simple_roots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]  # coroot of positive_roots[i], in the simple-coroot basis

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def pairing(self, v: Vector, coroot: Vector) -> Fraction:
        """<v, gamma^vee> where the coroot is written in the simple-coroot basis."""
        cv = [sum(Fraction(self.cartan[i][j]) * v[j] for j in range(self.rank))
              for i in range(self.rank)]
        return sum(coroot[i] * cv[i] for i in range(self.rank))

    def simple_pairing(self, v: Vector, i: int) -> Fraction:
        return sum(Fraction(self.cartan[i][j]) * v[j] for j in range(self.rank))

    def reflection_matrix(self, i: int) -> Matrix:
        """Matrix of the simple reflection s_i on root-basis coordinates."""
        n = self.rank
        rows = []
        for r in range(n):
            row = []
            for c in range(n):
                val = int(r == c) - (self.cartan[i][c] if r == i else 0)
                row.append(val)
            rows.append(tuple(row))
        return tuple(rows)

    def coroot_of(self, root: Vector) -> Vector:
        for r, cr in zip(self.positive_roots, self.coroots):
            if r == root:
                return cr
            if tuple(-c for c in r) == root:
                return tuple(-c for c in cr)
        raise RootDataError(f"{root} is not a root of {self.kind}")

    def is_positive_root(self, v: Vector) -> bool:
        return v in self.positive_roots


def _positive(v: Vector) -> bool:
    # a nonzero root is positive iff its nonzero simple-root coords are positive
    return any(c > 0 for c in v) and all(c >= 0 for c in v)


@lru_cache(maxsize=None)
def build_root_system(kind: str) -> RootSystem:
    """Build one of the supported rank <= 2 root systems (A1, A1xA1, A2, C2, G2)."""
    if kind not in CARTAN_MATRICES:
        raise RootDataError(f"unsupported root system kind: {kind!r}")
    cartan = CARTAN_MATRICES[kind]
    n = len(cartan)
    simples = tuple(_vec([int(i == j) for j in range(n)]) for i in range(n))

    # close the simple roots under the simple reflections
    roots = set(simples)
    frontier = set(simples)
    system = RootSystem(kind, cartan, simples, simples, simples)  # temporary, for matrices
    mats = [system.reflection_matrix(i) for i in range(n)]
    while frontier:
        new = set()
        for v in frontier:
            for m in mats:
                w = mat_apply(m, v)
                if w not in roots:
                    new.add(w)
        roots |= new
        frontier = new
    positives = tuple(sorted((v for v in roots if _positive(v)), key=lambda v: (sum(v), v)))

    # coroots close the same way, acting on simple-coroot coordinates
    simple_cor = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    frontier2 = {simples[i]: simple_cor[i] for i in range(n)}
    known = dict(frontier2)
    while frontier2:
        nxt = {}
        for root, cor in frontier2.items():
            for i, m in enumerate(mats):
                r2 = mat_apply(m, root)
                if r2 in known:
                    continue
                # reflected coroot: s_i(c)_j = c_j, minus pairing on coordinate i
                pair = sum(cor[j] * cartan[j][i] for j in range(n))
                c2 = tuple(cor[j] - (pair if j == i else 0) for j in range(n))
                nxt[r2] = c2
        known.update(nxt)
        frontier2 = nxt
    coroots = tuple(known[r] for r in positives)
    return RootSystem(kind, cartan, simples, positives, coroots)


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: integer matrix on the root basis + canonical word."""

    kind: str
    matrix: Matrix
    word: tuple[int, ...]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.kind != other.kind:
            raise RootDataError("Weyl elements from different root systems")
        group = weyl_group(self.kind)
        return group.by_matrix[mat_mul(self.matrix, other.matrix)]

    def inverse(self) -> "WeylElement":
        group = weyl_group(self.kind)
        m = self.matrix
        n = len(m)
        # inverse of an integer matrix of determinant +-1
        det = mat_det(m)
        if n == 1:
            inv = ((m[0][0] // det,),)
        else:
            inv = (
                (m[1][1] * det, -m[0][1] * det),
                (-m[1][0] * det, m[0][0] * det),
            ) if det in (1, -1) else None
        if inv is None:
            raise RootDataError("non-unimodular Weyl matrix")
        return group.by_matrix[tuple(tuple(int(x) for x in row) for row in inv)]

    def act(self, v) -> Vector:
        """Apply to a vector in root-basis coordinates."""
        v = _vec(v)
        if len(v) != len(self.matrix):
            raise RootDataError("dimension mismatch")
        return mat_apply(self.matrix, v)

    def __repr__(self):
        if not self.word:
            return "e"
        return "*".join(f"s_{SIMPLE_NAMES[i]}" for i in self.word)


def length(w: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    rs = build_root_system(w.kind)
    return sum(1 for r in rs.positive_roots if not _positive(mat_apply(w.matrix, r)))


def sign(w: WeylElement) -> int:
    return -1 if length(w) % 2 else 1


class WeylGroup:
    def __init__(self, kind: str):
        rs = build_root_system(kind)
        self.kind = kind
        self.root_system = rs
        n = rs.rank
        gens = [rs.reflection_matrix(i) for i in range(n)]
        ident = _identity(n)

        # BFS by word length; generators tried in index order so that the
        # first word reaching an element, read left to right, is lex-least.
        words: dict[Matrix, tuple[int, ...]] = {ident: ()}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                w = words[m]
                for i in range(n):
                    m2 = mat_mul(gens[i], m)  # prepend: word (i,) + w
                    if m2 not in words:
                        words[m2] = (i,) + w
                        nxt.append(m2)
            # keep lex-least among same-length candidates found this round
            frontier = nxt
        # rebuild words as lex-least: greedy left-descent gives the canonical word
        self.by_matrix: dict[Matrix, WeylElement] = {}
        elems = []
        for m in words:
            w = WeylElement(kind, m, self._lex_least_word(m, gens, rs))
            self.by_matrix[m] = w
            elems.append(w)
        elems.sort(key=lambda w: (len(w.word), w.word))
        self.elements: tuple[WeylElement, ...] = tuple(elems)
        self.identity = self.by_matrix[ident]
        self.simple_reflections = tuple(self.by_matrix[g] for g in gens)

    def _lex_least_word(self, m: Matrix, gens, rs) -> tuple[int, ...]:
        # greedy: repeatedly strip the smallest left descent
        word = []
        cur = m
        ell = sum(1 for r in rs.positive_roots if not _positive(mat_apply(cur, r)))
        while ell > 0:
            for i, g in enumerate(gens):
                m2 = mat_mul(g, cur)
                l2 = sum(1 for r in rs.positive_roots if not _positive(mat_apply(m2, r)))
                if l2 < ell:
                    word.append(i)
                    cur, ell = m2, l2
                    break
        return tuple(word)

    def reflection(self, root: Vector) -> WeylElement:
        """The reflection attached to a (positive) root."""
        rs = self.root_system
        cor = rs.coroot_of(_vec(root))
        n = rs.rank
        cols = []
        for j in range(n):
            e = _vec([int(k == j) for k in range(n)])
            pair = rs.pairing(e, cor)
            col = tuple(e[i] - pair * Fraction(root[i]) for i in range(n))
            cols.append(col)
        m = tuple(tuple(int(cols[j][i]) for j in range(n)) for i in range(n))
        return self.by_matrix[m]

    def longest_element(self) -> WeylElement:
        return max(self.elements, key=lambda w: len(w.word))


@lru_cache(maxsize=None)
def weyl_group(kind: str) -> WeylGroup:
    return WeylGroup(kind)


def weyl_elements(rs: RootSystem) -> list[WeylElement]:
    """All Weyl group elements, identity first, each with its canonical word."""
    return list(weyl_group(rs.kind).elements)


def act(w: WeylElement, v) -> Vector:
    return w.act(v)


def minimal_double_coset_reps(rs: RootSystem, left: frozenset, right: frozenset) -> list[WeylElement]:
    """Minimal-length representatives of W_left \\ W / W_right.

    ``left`` and ``right`` are sets of simple-root indices.  A representative
    ``w`` satisfies w(alpha_i) > 0 for i in ``right`` and w^{-1}(alpha_j) > 0
    for j in ``left``; brute force over W suffices at rank <= 2.
    """
    group = weyl_group(rs.kind)
    reps = []
    for w in group.elements:
        ok = all(_positive(w.act(rs.simple_roots[i])) for i in right)
        if ok:
            winv = w.inverse()
            ok = all(_positive(winv.act(rs.simple_roots[j])) for j in left)
        if ok:
            reps.append(w)
    return reps
