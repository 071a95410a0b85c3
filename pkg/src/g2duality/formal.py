"""Integer formal sums over a canonical basis (Grothendieck-group elements).

Keys can be any hashable canonical objects; zero coefficients are never
stored.  Sums are immutable; arithmetic returns new objects.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping


class FormalSum:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        data = {}
        it = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in it:
            c = data.get(key, 0) + coeff
            if c:
                data[key] = c
            elif key in data:
                del data[key]
        self._terms = data

    @staticmethod
    def zero() -> "FormalSum":
        return FormalSum()

    @staticmethod
    def of(*keys) -> "FormalSum":
        return FormalSum((k, 1) for k in keys)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, key) -> int:
        return self._terms.get(key, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def total(self) -> int:
        return sum(self._terms.values())

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __add__(self, other: "FormalSum") -> "FormalSum":
        data = dict(self._terms)
        for k, c in other._terms.items():
            v = data.get(k, 0) + c
            if v:
                data[k] = v
            else:
                del data[k]
        out = FormalSum.__new__(FormalSum)
        out._terms = data
        return out

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-1) * other

    def __neg__(self) -> "FormalSum":
        return (-1) * self

    def __rmul__(self, n: int) -> "FormalSum":
        if n == 0:
            return FormalSum()
        out = FormalSum.__new__(FormalSum)
        out._terms = {k: n * c for k, c in self._terms.items()}
        return out

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def map_keys(self, f: Callable) -> "FormalSum":
        """Apply f to every key, merging collisions."""
        return FormalSum((f(k), c) for k, c in self._terms.items())

    def map_terms(self, f: Callable[..., "FormalSum"]) -> "FormalSum":
        """Linear extension of a key -> FormalSum map."""
        out = FormalSum()
        for k, c in self._terms.items():
            out = out + c * f(k)
        return out

    def sorted_items(self):
        def key(item):
            k, _ = item
            sk = k.sort_key() if hasattr(k, "sort_key") else ()
            return (type(k).__name__, sk, repr(k))
        return sorted(self._terms.items(), key=key)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.sorted_items():
            if c == 1:
                term = repr(k)
            elif c == -1:
                term = f"-{k!r}"
            else:
                term = f"{c}*{k!r}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def diff_report(left: FormalSum, right: FormalSum) -> str:
    """Term-level difference between two sums, for failure messages."""
    delta = left - right
    if delta.is_zero():
        return "equal"
    lines = []
    for k, c in delta.sorted_items():
        side = "left" if c > 0 else "right"
        lines.append(f"  {side} has extra {abs(c)} * {k!r}")
    return "\n".join(lines)
