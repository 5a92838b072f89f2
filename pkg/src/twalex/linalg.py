"""Dense exact matrices over the Laurent ring: determinants, minors, row-set streams."""

from __future__ import annotations

import itertools
import random
from math import comb
from typing import Iterable, Iterator, Sequence

from .laurent import TZA, LaurentPoly, VarSet, VarSetError, _min_key, exact_div, is_unit, pack, unpack


class PolyMatrix:
    """Immutable row-major matrix of :class:`LaurentPoly` entries."""

    __slots__ = ("nrows", "ncols", "rows", "vs")

    def __init__(self, rows: Sequence[Sequence[LaurentPoly]], vs: VarSet | None = None):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix rows")
        if vs is None:
            vs = self.rows[0][0].vs if self.nrows and self.ncols else TZA
        for r in self.rows:
            for x in r:
                if x.vs != vs:
                    raise VarSetError("matrix entries must share one variable set")
        self.vs = vs

    @classmethod
    def zeros(cls, nrows: int, ncols: int, vs: VarSet = TZA) -> "PolyMatrix":
        zero = LaurentPoly.const(0, vs)
        return cls([[zero] * ncols for _ in range(nrows)], vs)

    @classmethod
    def identity(cls, n: int, vs: VarSet = TZA, scale: LaurentPoly | None = None) -> "PolyMatrix":
        zero = LaurentPoly.const(0, vs)
        d = scale if scale is not None else LaurentPoly.const(1, vs)
        return cls([[d if i == j else zero for j in range(n)] for i in range(n)], vs)

    @classmethod
    def from_ints(cls, rows, vs: VarSet = TZA) -> "PolyMatrix":
        return cls([[x if isinstance(x, LaurentPoly) else LaurentPoly.const(x, vs) for x in r]
                    for r in rows], vs)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        from .exprio import render_matrix
        return f"PolyMatrix({render_matrix(self)})"

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.vs)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.vs)

    def __neg__(self):
        return PolyMatrix([[-x for x in r] for r in self.rows], self.vs)

    def scale(self, c: LaurentPoly) -> "PolyMatrix":
        return PolyMatrix([[c * x for x in r] for r in self.rows], self.vs)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = LaurentPoly.const(0, self.vs)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for col in cols:
                acc = zero
                for k, x in nz:
                    y = col[k]
                    if y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.vs)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(list(zip(*self.rows)), self.vs)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def zero_rows(self) -> list[int]:
        return [i for i, r in enumerate(self.rows) if not any(r)]


def block_matrix(blocks: Sequence[Sequence[PolyMatrix]]) -> PolyMatrix:
    rows = []
    for brow in blocks:
        for i in range(brow[0].nrows):
            rows.append([x for b in brow for x in b.rows[i]])
    return PolyMatrix(rows, blocks[0][0].vs)


def direct_sum(*blocks: PolyMatrix) -> PolyMatrix:
    vs = blocks[0].vs
    n = sum(b.nrows for b in blocks)
    zero = LaurentPoly.const(0, vs)
    out = [[zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                out[off + i][off + j] = b.rows[i][j]
        off += b.nrows
    return PolyMatrix(out, vs)


# -- determinants ----------------------------------------------------------

def det(m: PolyMatrix) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination.

    Each row's monomial content is factored out first so elimination runs on
    ordinary polynomials.  Pivots are chosen over the whole trailing block,
    preferring units (the next Bareiss division is then a monomial shift) and
    then sparse rows/columns.  Every Bareiss division is exact; a failure
    raises :class:`~twalex.laurent.NotDivisibleError`.
    """
    if not m.is_square():
        raise ValueError(f"determinant of non-square {m.shape} matrix")
    vs = m.vs
    n = m.nrows
    one = LaurentPoly.const(1, vs)
    if n == 0:
        return one
    factor = 0  # packed monomial key
    a = []
    for r in m.rows:
        nz = [x for x in r if x]
        if not nz:
            return LaurentPoly.const(0, vs)
        keys = [_min_key(x) for x in nz]
        mk = keys[0]
        if len(keys) > 1:
            nv = len(vs)
            mins = list(unpack(mk, nv))
            for k in keys[1:]:
                for i, e in enumerate(unpack(k, nv)):
                    if e < mins[i]:
                        mins[i] = e
            mk = pack(mins)
        factor += mk
        a.append([x.shift(-mk) if mk else x for x in r])
    sign = 1
    prev = one
    for k in range(n - 1):
        best = None
        best_score = None
        colcount = [0] * n
        for i in range(k, n):
            for j in range(k, n):
                if a[i][j]:
                    colcount[j] += 1
        for i in range(k, n):
            row = a[i]
            rc = sum(1 for j in range(k, n) if row[j])
            if rc == 0:
                return LaurentPoly.const(0, vs)
            for j in range(k, n):
                x = row[j]
                if not x:
                    continue
                score = (0 if is_unit(x) else 1, (rc - 1) * (colcount[j] - 1), len(x.terms))
                if best_score is None or score < best_score:
                    best, best_score = (i, j), score
        pi, pj = best
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            sign = -sign
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        p = a[k][k]
        prow = a[k]
        for i in range(k + 1, n):
            row = a[i]
            lead = row[k]
            if lead:
                for j in range(k + 1, n):
                    x = row[j]
                    y = prow[j]
                    if y:
                        v = p * x - lead * y if x else -(lead * y)
                    elif x:
                        v = p * x
                    else:
                        continue
                    row[j] = v if prev == one else exact_div(v, prev)
            elif p != prev:
                for j in range(k + 1, n):
                    x = row[j]
                    if x:
                        row[j] = (p * x) if prev == one else exact_div(p * x, prev)
            row[k] = LaurentPoly.const(0, vs)
        prev = p
    result = a[n - 1][n - 1]
    if sign < 0:
        result = -result
    return result.shift(factor) if factor else result


def det_cofactor(m: PolyMatrix, max_dim: int = 10) -> LaurentPoly:
    """Determinant by cofactor expansion along the sparsest row (oracle)."""
    if not m.is_square():
        raise ValueError(f"determinant of non-square {m.shape} matrix")
    if m.nrows > max_dim:
        raise ValueError(f"cofactor expansion refused above dimension {max_dim}")
    vs = m.vs

    def rec(rows: list[list[LaurentPoly]]) -> LaurentPoly:
        n = len(rows)
        if n == 0:
            return LaurentPoly.const(1, vs)
        if n == 1:
            return rows[0][0]
        i = min(range(n), key=lambda r: sum(1 for x in rows[r] if x))
        acc = LaurentPoly.const(0, vs)
        for j, x in enumerate(rows[i]):
            if not x:
                continue
            sub = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            term = x * rec(sub)
            acc = acc + term if (i + j) % 2 == 0 else acc - term
        return acc

    return rec([list(r) for r in m.rows])


def minor(m: PolyMatrix, rows: Sequence[int], cols: Sequence[int] | None = None) -> PolyMatrix:
    """Submatrix on the given 0-based, strictly increasing row/column indices."""
    if cols is None:
        cols = range(m.ncols)
    for idx, bound, what in ((rows, m.nrows, "row"), (cols, m.ncols, "column")):
        idx = list(idx)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"{what} indices must be strictly increasing: {idx}")
        if idx and (idx[0] < 0 or idx[-1] >= bound):
            raise IndexError(f"{what} index out of range 0..{bound - 1}: {idx}")
    cols = list(cols)
    return PolyMatrix([[m.rows[i][j] for j in cols] for i in rows], m.vs)


# -- row-set streams ---------------------------------------------------------

def unrank_combination(total: int, choose: int, rank: int) -> tuple[int, ...]:
    """The ``rank``-th ``choose``-subset of ``range(total)`` in lex order."""
    out = []
    x = 0
    for k in range(choose, 0, -1):
        while True:
            c = comb(total - x - 1, k - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


class RowSets:
    """A restartable, splittable stream of row index sets (0-based).

    ``strategy`` is ``"exhaustive"`` (lex order over all subsets),
    ``"sample"`` (``samples`` distinct subsets drawn with ``random.Random(seed)``)
    or ``"explicit"`` (the caller's ``sets`` in order).
    """

    def __init__(self, total: int, choose: int, strategy: str = "exhaustive", *,
                 seed: int = 0, samples: int = 0, sets: Iterable[Sequence[int]] = ()):
        if choose > total or choose < 0:
            raise ValueError(f"cannot choose {choose} rows out of {total}")
        self.total, self.choose, self.strategy = total, choose, strategy
        if strategy == "exhaustive":
            self._items = None
            self._len = comb(total, choose)
        elif strategy == "sample":
            space = comb(total, choose)
            k = min(samples, space)
            rng = random.Random(seed)
            seen: set[tuple[int, ...]] = set()
            items = []
            while len(items) < k:
                s = tuple(sorted(rng.sample(range(total), choose)))
                if s not in seen:
                    seen.add(s)
                    items.append(s)
            self._items = items
            self._len = k
        elif strategy == "explicit":
            items = [tuple(s) for s in sets]
            for s in items:
                if len(s) != choose or list(s) != sorted(set(s)) or (s and (s[0] < 0 or s[-1] >= total)):
                    raise ValueError(f"bad explicit row set {s}")
            self._items = items
            self._len = len(items)
        else:
            raise ValueError(f"unknown row-set strategy {strategy!r}")

    def __len__(self):
        return self._len

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return self.slice(0, self._len)

    def slice(self, start: int, stop: int) -> Iterator[tuple[int, ...]]:
        """Iterate positions ``start..stop-1``; exhaustive streams seek by unranking."""
        stop = min(stop, self._len)
        if start >= stop:
            return iter(())
        if self._items is not None:
            return iter(self._items[start:stop])
        first = unrank_combination(self.total, self.choose, start)
        return itertools.islice(_combinations_from(self.total, first), stop - start)

    def chunks(self, size: int) -> Iterator[tuple[int, int]]:
        for s in range(0, self._len, size):
            yield s, min(s + size, self._len)


def _combinations_from(total: int, first: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    c = list(first)
    k = len(c)
    while True:
        yield tuple(c)
        i = k - 1
        while i >= 0 and c[i] == total - k + i:
            i -= 1
        if i < 0:
            return
        c[i] += 1
        for j in range(i + 1, k):
            c[j] = c[j - 1] + 1


def row_sets(total: int, choose: int, strategy: str = "exhaustive", **kw) -> RowSets:
    return RowSets(total, choose, strategy, **kw)
