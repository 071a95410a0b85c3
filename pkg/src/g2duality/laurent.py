"""Multivariate Laurent polynomials with exact rational coefficients.

Monomials are exponent tuples over a fixed ordered variable list; used for
the formal Hecke parameters q_s.  Supports +, -, *, integer powers
(negative powers allowed on monomials), and specialization of variables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class LaurentError(ArithmeticError):
    pass


class LaurentPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: Mapping):
        self.vars = vars
        data = {}
        for mono, coeff in terms.items():
            c = Fraction(coeff)
            if c:
                data[tuple(mono)] = data.get(tuple(mono), 0) + c
        self.terms = {m: c for m, c in data.items() if c}

    @staticmethod
    def constant(vars: tuple[str, ...], c) -> "LaurentPoly":
        zero = tuple(0 for _ in vars)
        return LaurentPoly(vars, {zero: Fraction(c)})

    @staticmethod
    def variable(vars: tuple[str, ...], name: str) -> "LaurentPoly":
        mono = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise LaurentError(f"unknown variable {name!r}")
        return LaurentPoly(vars, {mono: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        zero = tuple(0 for _ in self.vars)
        return self.terms == {zero: Fraction(1)}

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        data = dict(self.terms)
        for m, c in other.terms.items():
            data[m] = data.get(m, 0) + c
        return LaurentPoly(self.vars, data)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.vars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        data = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                data[m] = data.get(m, 0) + c1 * c2
        return LaurentPoly(self.vars, data)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self.terms) != 1:
                raise LaurentError("only monomials have Laurent inverses")
            ((m, c),) = self.terms.items()
            inv = LaurentPoly(self.vars, {tuple(-e for e in m): 1 / c})
            return inv ** (-k)
        out = LaurentPoly.constant(self.vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def substitute(self, values: Mapping[str, Fraction]) -> "LaurentPoly":
        """Specialize some variables to exact rationals."""
        out = LaurentPoly(self.vars, {})
        for m, c in self.terms.items():
            coeff = c
            mono = list(m)
            for idx, v in enumerate(self.vars):
                if v in values and mono[idx]:
                    coeff = coeff * Fraction(values[v]) ** mono[idx]
                    mono[idx] = 0
            out = out + LaurentPoly(self.vars, {tuple(mono): coeff})
        return out

    def _mono_str(self, m) -> str:
        parts = []
        for v, e in zip(self.vars, m):
            if e == 0:
                continue
            parts.append(v if e == 1 else f"{v}^{{{e}}}")
        return "*".join(parts)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (sorted_key(t[0]),)):
            mono = self._mono_str(m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def sorted_key(mono):
    return tuple(-e for e in mono)
