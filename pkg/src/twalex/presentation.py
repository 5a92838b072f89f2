"""Finite presentations with an abelianization onto ``<z>``, and the built-in
braid and welded braid groups."""

from __future__ import annotations

from dataclasses import dataclass, field

from .freegroup import Word, abelian_degree, concat, inverse


@dataclass(frozen=True)
class Presentation:
    name: str
    gens: tuple[str, ...]
    relators: tuple[Word, ...]
    abel: tuple[int, ...]
    # optional labels for relators, e.g. "[1,2]" for the braid relation
    labels: tuple[str, ...] = field(default=())

    @property
    def l(self) -> int:
        return len(self.gens)

    @property
    def m(self) -> int:
        return len(self.relators)

    def gen_index(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r} in {self.name}") from None

    def relator_label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"r{i + 1}"


@dataclass
class PresentationReport:
    valid: bool
    l: int
    m: int
    degenerate: bool
    problems: list[str]

    def as_dict(self) -> dict:
        return {"valid": self.valid, "l": self.l, "m": self.m,
                "degenerate": self.degenerate, "problems": list(self.problems)}


def validate(p: Presentation) -> PresentationReport:
    """Check relator balance and name uniqueness; flag the ``m < l - 1`` case."""
    problems = []
    if len(set(p.gens)) != len(p.gens):
        problems.append("generator names are not unique")
    if len(p.abel) != len(p.gens):
        problems.append("abelianization does not cover every generator")
    for i, r in enumerate(p.relators):
        bad = [g for g in r.generators() if g >= p.l]
        if bad:
            problems.append(f"relator {p.relator_label(i)} uses undeclared generators {bad}")
            continue
        if len(p.abel) == len(p.gens):
            d = abelian_degree(r, p.abel)
            if d != 0:
                problems.append(f"unbalanced relator {p.relator_label(i)}: abelian degree {d}")
    return PresentationReport(not problems, p.l, p.m, p.m < p.l - 1, problems)


def _commutator(a: int, b: int) -> Word:
    return Word([(a, 1), (b, 1), (a, -1), (b, -1)])


def _relation(left: list[int], right: list[int]) -> Word:
    """Relator ``left * right^-1`` from two positive words."""
    return concat(Word((g, 1) for g in left), inverse(Word((g, 1) for g in right)))


def braid_group(n: int) -> Presentation:
    """Artin presentation of ``B_n``.

    Relators are indexed by pairs ``[i, j]`` (``i < j``) in lexicographic order:
    the braid relation for ``j = i + 1`` and the commutator otherwise.
    """
    if n < 2:
        raise ValueError(f"braid group needs n >= 2, got {n}")
    gens = tuple(f"s{i}" for i in range(1, n))
    rels, labels = [], []
    for i in range(1, n):
        for j in range(i + 1, n):
            a, b = i - 1, j - 1
            if j == i + 1:
                rels.append(_relation([a, b, a], [b, a, b]))
            else:
                rels.append(_commutator(a, b))
            labels.append(f"[{i},{j}]")
    return Presentation(f"B{n}", gens, tuple(rels), (1,) * (n - 1), tuple(labels))


def welded_braid_group(n: int) -> Presentation:
    """Presentation of ``WB_n`` on ``s1..s{n-1}, t1..t{n-1}``.

    Relation families are emitted in this order, each relation ``L = R`` as
    the relator ``L R^-1``:

    1. ``s_i s_j = s_j s_i`` (``|i-j| >= 2``)
    2. ``s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}``
    3. ``t_i t_j = t_j t_i`` (``|i-j| >= 2``)
    4. ``t_i t_{i+1} t_i = t_{i+1} t_i t_{i+1}``
    5. ``t_i^2 = 1``
    6. ``s_i t_j = t_j s_i`` (``|i-j| >= 2``)
    7. ``s_i t_{i+1} t_i = t_{i+1} t_i s_{i+1}``
    8. ``t_i s_{i+1} s_i = s_{i+1} s_i t_{i+1}``
    """
    if n < 2:
        raise ValueError(f"welded braid group needs n >= 2, got {n}")
    k = n - 1
    gens = tuple(f"s{i}" for i in range(1, n)) + tuple(f"t{i}" for i in range(1, n))

    def s(i):
        return i - 1

    def t(i):
        return k + i - 1

    rels, labels = [], []

    def add(word, label):
        rels.append(word)
        labels.append(label)

    far = [(i, j) for i in range(1, n) for j in range(i + 2, n)]
    for i, j in far:
        add(_commutator(s(i), s(j)), f"s{i}s{j}=s{j}s{i}")
    for i in range(1, n - 1):
        add(_relation([s(i), s(i + 1), s(i)], [s(i + 1), s(i), s(i + 1)]), f"braid s{i}")
    for i, j in far:
        add(_commutator(t(i), t(j)), f"t{i}t{j}=t{j}t{i}")
    for i in range(1, n - 1):
        add(_relation([t(i), t(i + 1), t(i)], [t(i + 1), t(i), t(i + 1)]), f"braid t{i}")
    for i in range(1, n):
        add(_relation([t(i), t(i)], []), f"t{i}^2")
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) >= 2:
                add(_commutator(s(i), t(j)), f"s{i}t{j}=t{j}s{i}")
    for i in range(1, n - 1):
        add(_relation([s(i), t(i + 1), t(i)], [t(i + 1), t(i), s(i + 1)]), f"mixed s{i}t{i + 1}t{i}")
    for i in range(1, n - 1):
        add(_relation([t(i), s(i + 1), s(i)], [s(i + 1), s(i), t(i + 1)]), f"mixed t{i}s{i + 1}s{i}")
    abel = (1,) * k + (0,) * k
    return Presentation(f"WB{n}", gens, tuple(rels), abel, tuple(labels))
