"""Truncated Magnus series over non-commuting symbols ``K_i``.

Only repetition-free words are kept: products whose concatenated word repeats
a letter are discarded.  Those words span a two-sided ideal, so the quotient
is exact for coefficients of words with distinct letters.

A ``support`` word can shrink the quotient further to the subsequences of
that word (again a two-sided ideal); this is all that is needed to read off
the coefficient of ``support`` itself.
"""

from __future__ import annotations

from typing import Iterable, Mapping

__all__ = ["MagnusSeries"]

Word = tuple[int, ...]


class MagnusSeries:
    __slots__ = ("terms", "max_degree", "support", "_pos")

    def __init__(self, terms: Mapping[Word, int], max_degree: int, support: Iterable[int] | None = None):
        self.max_degree = max_degree
        self.support = None if support is None else tuple(support)
        if self.support is not None and len(set(self.support)) != len(self.support):
            raise ValueError("support word must not repeat letters")
        self._pos = None if self.support is None else {x: i for i, x in enumerate(self.support)}
        self.terms = {tuple(w): c for w, c in terms.items() if c and self._allowed(tuple(w))}

    def _allowed(self, word: Word) -> bool:
        if len(word) > self.max_degree or len(set(word)) != len(word):
            return False
        if self._pos is None:
            return True
        if any(x not in self._pos for x in word):
            return False
        return all(self._pos[x] < self._pos[y] for x, y in zip(word, word[1:]))

    def _like(self, terms: Mapping[Word, int]) -> MagnusSeries:
        out = MagnusSeries.__new__(MagnusSeries)
        out.max_degree, out.support, out._pos = self.max_degree, self.support, self._pos
        out.terms = {w: c for w, c in terms.items() if c}
        return out

    @classmethod
    def one(cls, max_degree: int, support: Iterable[int] | None = None) -> MagnusSeries:
        return cls({(): 1}, max_degree, support)

    @classmethod
    def generator(cls, letter: int, max_degree: int, support: Iterable[int] | None = None) -> MagnusSeries:
        """Image ``1 + K_letter`` of a meridian."""
        return cls({(): 1, (letter,): 1}, max_degree, support)

    def _check(self, other: MagnusSeries) -> None:
        if (self.max_degree, self.support) != (other.max_degree, other.support):
            raise ValueError("series truncated differently")

    def __mul__(self, other: MagnusSeries) -> MagnusSeries:
        self._check(other)
        out: dict[Word, int] = {}
        pos, top = self._pos, self.max_degree
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                if u and v:
                    if pos is not None:
                        if pos[u[-1]] >= pos[v[0]]:
                            continue
                    elif len(u) + len(v) > top or not set(u).isdisjoint(v):
                        continue
                w = u + v
                out[w] = out.get(w, 0) + a * b
        return self._like(out)

    def __add__(self, other: MagnusSeries) -> MagnusSeries:
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return self._like(out)

    def __neg__(self) -> MagnusSeries:
        return self._like({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: MagnusSeries) -> MagnusSeries:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return (self.max_degree, self.support, self.terms) == (other.max_degree, other.support, other.terms)

    def __hash__(self) -> int:
        return hash((self.max_degree, self.support, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            mono = "*".join(f"K{x}" for x in w) or "1"
            parts.append(f"{self.terms[w]:+d}*{mono}" if w else f"{self.terms[w]:+d}")
        return " ".join(parts)

    def coefficient(self, word: Iterable[int]) -> int:
        return self.terms.get(tuple(word), 0)

    def inverse(self) -> MagnusSeries:
        """Neumann series ``1 - x + x^2 - ...`` of ``1 + x``."""
        if self.terms.get((), 0) != 1:
            raise ValueError("only series with constant term 1 are invertible")
        minus_x = self._like({w: -c for w, c in self.terms.items() if w})
        result = self._like({(): 1})
        power = self._like({(): 1})
        for _ in range(self.max_degree):
            power = power * minus_x
            if not power.terms:
                break
            result = result + power
        return result

    def __pow__(self, exponent: int) -> MagnusSeries:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self._like({(): 1})
        for _ in range(exponent):
            result = result * self
        return result
