"""Free group words, the integral group ring, and Fox free derivatives.

A letter is a pair ``(generator index, +1 or -1)``; a :class:`Word` is a freely
reduced tuple of letters.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

Letter = tuple[int, int]


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {e}")
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


class Word:
    """A freely reduced word in the free group on generators ``0..l-1``."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = _reduce(letters)

    @classmethod
    def gen(cls, g: int, power: int = 1) -> "Word":
        e = 1 if power > 0 else -1
        return cls([(g, e)] * abs(power))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Word({self.to_text()!r})"

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return concat(self, other)

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.letters:
            return "1"
        out = []
        for g, e in self.letters:
            name = names[g] if names else f"x{g + 1}"
            out.append(name if e == 1 else f"{name}^-1")
        return " ".join(out)

    def prefix(self, k: int) -> "Word":
        w = object.__new__(Word)
        w.letters = self.letters[:k]
        return w

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}


EMPTY = Word()


def concat(u: Word, v: Word) -> Word:
    return Word(u.letters + v.letters)


def inverse(u: Word) -> Word:
    w = object.__new__(Word)
    w.letters = tuple((g, -e) for g, e in reversed(u.letters))
    return w


def abelian_degree(w: Word, abel: Mapping[int, int] | Sequence[int]) -> int:
    """Exponent of ``z`` in the image of ``w`` under the abelianization ``abel``."""
    total = 0
    for g, e in w.letters:
        try:
            total += e * abel[g]
        except (KeyError, IndexError):
            raise KeyError(f"generator {g} has no abelianization exponent") from None
    return total


class GroupRingElement:
    """Finite integer combination of free-group words."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Word, int] | None = None):
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c}

    @classmethod
    def of(cls, *pairs: tuple[int, Word]) -> "GroupRingElement":
        acc: dict[Word, int] = {}
        for c, w in pairs:
            acc[w] = acc.get(w, 0) + c
        return cls(acc)

    @classmethod
    def word(cls, w: Word, c: int = 1) -> "GroupRingElement":
        return cls({w: c})

    def __eq__(self, other):
        if isinstance(other, Word):
            other = GroupRingElement.word(other)
        if isinstance(other, int):
            other = GroupRingElement.word(EMPTY, other)
        return isinstance(other, GroupRingElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs.items())

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        acc = dict(self.coeffs)
        for w, c in other.coeffs.items():
            acc[w] = acc.get(w, 0) + c
        return GroupRingElement(acc)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.coeffs.items()})
        if isinstance(other, Word):
            other = GroupRingElement.word(other)
        acc: dict[Word, int] = {}
        for u, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                w = concat(u, v)
                acc[w] = acc.get(w, 0) + a * b
        return GroupRingElement(acc)

    def __rmul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return self * other
        if isinstance(other, Word):
            return GroupRingElement.word(other) * self
        return NotImplemented

    def __repr__(self):
        return f"GroupRingElement({self.to_text()!r})"

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for w, c in sorted(self.coeffs.items(), key=lambda wc: (len(wc[0]), wc[0].letters)):
            body = w.to_text(names)
            parts.append(f"{c:+d}*({body})")
        return " ".join(parts)


def fox_derivative(w: Word | GroupRingElement, gen: int) -> GroupRingElement:
    """Fox derivative with respect to generator ``gen``.

    A letter ``x_gen`` at position i contributes ``+prefix(i-1)``; a letter
    ``x_gen^-1`` at position i contributes ``-prefix(i)``.  Group-ring
    elements are differentiated term by term.
    """
    if isinstance(w, GroupRingElement):
        out = GroupRingElement()
        for u, c in w.coeffs.items():
            out = out + fox_derivative(u, gen) * c
        return out
    acc: dict[Word, int] = {}
    for i, (g, e) in enumerate(w.letters):
        if g != gen:
            continue
        if e == 1:
            p = w.prefix(i)
            acc[p] = acc.get(p, 0) + 1
        else:
            p = w.prefix(i + 1)
            acc[p] = acc.get(p, 0) - 1
    return GroupRingElement(acc)
