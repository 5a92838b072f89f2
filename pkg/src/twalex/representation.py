"""Matrix representations over the Laurent ring and the map Phi.

``Phi`` sends a free word ``w`` to ``rho(w) * z**alpha(w)`` and is extended
linearly to the group ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .freegroup import GroupRingElement, Word, abelian_degree
from .laurent import TZA, LaurentPoly, VarSet, exact_div, is_unit
from .linalg import PolyMatrix, det, direct_sum, minor
from .presentation import Presentation


def _inverse(m: PolyMatrix) -> PolyMatrix:
    """Exact inverse via the adjugate; ``det m`` must be a unit."""
    d = det(m)
    if not is_unit(d):
        raise ValueError(f"matrix is not invertible over the Laurent ring (det = {d})")
    n = m.nrows
    if n == 1:
        return PolyMatrix([[exact_div(LaurentPoly.const(1, m.vs), d)]], m.vs)
    out = [[None] * n for _ in range(n)]
    idx = list(range(n))
    for i in range(n):
        for j in range(n):
            sub = minor(m, [r for r in idx if r != i], [c for c in idx if c != j])
            cof = det(sub)
            if (i + j) % 2:
                cof = -cof
            out[j][i] = exact_div(cof, d)
    return PolyMatrix(out, m.vs)


@dataclass(frozen=True)
class MatrixRep:
    name: str
    gens: tuple[str, ...]
    mats: tuple[PolyMatrix, ...]
    inverses: tuple[PolyMatrix, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if len(self.gens) != len(self.mats):
            raise ValueError("one matrix per generator is required")
        dims = {m.shape for m in self.mats}
        if len(dims) != 1 or not self.mats[0].is_square():
            raise ValueError(f"generator matrices must be square of one size, got {dims}")
        if not self.inverses:
            object.__setattr__(self, "inverses", tuple(_inverse(m) for m in self.mats))

    @property
    def dim(self) -> int:
        return self.mats[0].nrows

    @property
    def vs(self) -> VarSet:
        return self.mats[0].vs

    def matrix(self, gen: int | str, exponent: int = 1) -> PolyMatrix:
        if isinstance(gen, str):
            gen = self.gens.index(gen)
        return self.mats[gen] if exponent > 0 else self.inverses[gen]

    def rho(self, w: Word) -> PolyMatrix:
        """``rho(w)`` as the letter-wise product of generator matrices."""
        out = PolyMatrix.identity(self.dim, self.vs)
        for g, e in w.letters:
            out = out @ self.matrix(g, e)
        return out


def _block(n: int, i: int, block: list[list[LaurentPoly]], vs: VarSet = TZA) -> PolyMatrix:
    """``I_{i-1} + block + I_{n-i-1}`` for a 2x2 ``block`` at 1-based position ``i``."""
    one = LaurentPoly.const(1, vs)
    parts = []
    if i - 1:
        parts.append(PolyMatrix.identity(i - 1, vs))
    parts.append(PolyMatrix([[x if isinstance(x, LaurentPoly) else one * x for x in r] for r in block], vs))
    if n - i - 1:
        parts.append(PolyMatrix.identity(n - i - 1, vs))
    return direct_sum(*parts)


def tym(n: int, vs: VarSet = TZA) -> MatrixRep:
    """Tong-Yang-Ma representation: ``s_i -> I + (0 1; t 0) + I``."""
    if n < 2:
        raise ValueError("n >= 2 required")
    t = LaurentPoly.var("t", vs)
    mats = tuple(_block(n, i, [[0, 1], [t, 0]], vs) for i in range(1, n))
    return MatrixRep(f"TYM{n}", tuple(f"s{i}" for i in range(1, n)), mats)


def burau_unreduced(n: int, vs: VarSet = TZA) -> MatrixRep:
    """Unreduced Burau: ``s_i -> I + (0 t; 1 1-t) + I``."""
    if n < 2:
        raise ValueError("n >= 2 required")
    t = LaurentPoly.var("t", vs)
    mats = tuple(_block(n, i, [[0, t], [1, 1 - t]], vs) for i in range(1, n))
    return MatrixRep(f"Burau{n}", tuple(f"s{i}" for i in range(1, n)), mats)


def burau_reduced(n: int, vs: VarSet = TZA) -> MatrixRep:
    """Reduced Burau in dimension ``n - 1``.

    ``s_i`` is the identity except for the window ``[[1,0,0],[t,-t,1],[0,0,1]]``
    placed on rows/columns ``i-1, i, i+1`` (1-based) and truncated at the
    boundary.
    """
    if n < 3:
        raise ValueError("reduced Burau needs n >= 3")
    t = LaurentPoly.var("t", vs)
    one = LaurentPoly.const(1, vs)
    zero = LaurentPoly.const(0, vs)
    window = [[one, zero, zero], [t, -t, one], [zero, zero, one]]
    d = n - 1
    mats = []
    for i in range(1, n):
        rows = [[one if r == c else zero for c in range(d)] for r in range(d)]
        for wr in range(3):
            for wc in range(3):
                r, c = i - 2 + wr, i - 2 + wc
                if 0 <= r < d and 0 <= c < d:
                    rows[r][c] = window[wr][wc]
        mats.append(PolyMatrix(rows, vs))
    return MatrixRep(f"rBurau{n}", tuple(f"s{i}" for i in range(1, n)), tuple(mats))


def wtym(n: int, vs: VarSet = TZA) -> MatrixRep:
    """Welded Tong-Yang-Ma: ``s_i`` as in TYM, ``t_i -> I + (0 a^-1; a 0) + I``."""
    if n < 2:
        raise ValueError("n >= 2 required")
    t = LaurentPoly.var("t", vs)
    a = LaurentPoly.var("a", vs)
    ainv = LaurentPoly.monomial({"a": -1}, vs=vs)
    sig = [_block(n, i, [[0, 1], [t, 0]], vs) for i in range(1, n)]
    tau = [_block(n, i, [[0, ainv], [a, 0]], vs) for i in range(1, n)]
    gens = tuple(f"s{i}" for i in range(1, n)) + tuple(f"t{i}" for i in range(1, n))
    return MatrixRep(f"wTYM{n}", gens, tuple(sig + tau))


# -- validation ----------------------------------------------------------------

@dataclass
class RepReport:
    valid: bool
    relators: list[tuple[str, bool]]
    determinants: list[tuple[str, str, bool]]
    problems: list[str]

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "relators": [{"relator": r, "ok": ok} for r, ok in self.relators],
            "determinants": [{"gen": g, "det": d, "unit": ok} for g, d, ok in self.determinants],
            "problems": list(self.problems),
        }


def validate_rep(p: Presentation, rho: MatrixRep) -> RepReport:
    """Check that every relator maps to the identity and every generator has unit determinant."""
    problems = []
    if tuple(p.gens) != tuple(rho.gens):
        problems.append(f"generator mismatch: presentation {p.gens} vs representation {rho.gens}")
        return RepReport(False, [], [], problems)
    dets = []
    for g, m in zip(rho.gens, rho.mats):
        d = det(m)
        ok = is_unit(d)
        dets.append((g, str(d), ok))
        if not ok:
            problems.append(f"det rho({g}) = {d} is not a unit")
    ident = PolyMatrix.identity(rho.dim, rho.vs)
    rels = []
    for i, r in enumerate(p.relators):
        ok = rho.rho(r) == ident
        rels.append((p.relator_label(i), ok))
        if not ok:
            problems.append(f"relator {p.relator_label(i)} does not map to the identity")
    return RepReport(not problems, rels, dets, problems)


# -- Phi -------------------------------------------------------------------------

def _zpow(k: int, vs: VarSet) -> LaurentPoly:
    return LaurentPoly.monomial({"z": k}, vs=vs)


def word_image(w: Word, rho: MatrixRep, abel: Sequence[int] | Mapping[int, int]) -> PolyMatrix:
    """``Phi(w) = rho(w) * z**alpha(w)``."""
    m = rho.rho(w)
    k = abelian_degree(w, abel)
    return m.scale(_zpow(k, rho.vs)) if k else m


def phi_eval(e: GroupRingElement | Word, rho: MatrixRep, abel: Sequence[int] | Mapping[int, int]) -> PolyMatrix:
    """Linear extension of :func:`word_image` to the group ring."""
    if isinstance(e, Word):
        e = GroupRingElement.word(e)
    for w, _ in e:
        for g in w.generators():
            if g >= len(rho.mats):
                raise KeyError(f"generator index {g} has no matrix in {rho.name}")
    out = PolyMatrix.zeros(rho.dim, rho.dim, rho.vs)
    for w, c in e:
        img = word_image(w, rho, abel)
        out = out + (img if c == 1 else img.scale(LaurentPoly.const(c, rho.vs)))
    return out


def fox_images(r: Word, rho: MatrixRep, abel: Sequence[int]) -> list[PolyMatrix]:
    """``[Phi(dr/dx_j) for j]`` for one relator, sharing prefix products.

    Equivalent to ``phi_eval(fox_derivative(r, j), rho, abel)`` for each j.
    """
    vs = rho.vs
    n = rho.dim
    acc = [PolyMatrix.zeros(n, n, vs) for _ in rho.mats]
    prefix = PolyMatrix.identity(n, vs)
    deg = 0
    for g, e in r.letters:
        if e == 1:
            acc[g] = acc[g] + (prefix.scale(_zpow(deg, vs)) if deg else prefix)
        prefix = prefix @ rho.matrix(g, e)
        deg += e * abel[g]
        if e == -1:
            acc[g] = acc[g] - (prefix.scale(_zpow(deg, vs)) if deg else prefix)
    return acc


def braid_tym_block(n: int, pair: tuple[int, int], k: int, vs: VarSet = TZA) -> PolyMatrix:
    """Closed form of ``Phi(d[i,j]/d s_k)`` for the braid group under TYM_n.

    ``pair = (i, j)`` names the relator ``[i, j]`` with ``1 <= i < j <= n-1``;
    ``k`` is the 1-based generator index.
    """
    i, j = pair
    if not (1 <= i < j <= n - 1) or not (1 <= k <= n - 1):
        raise ValueError(f"invalid relator {pair} or generator {k} for n={n}")
    t = LaurentPoly.var("t", vs)
    z = LaurentPoly.var("z", vs)
    one = LaurentPoly.const(1, vs)
    zero = LaurentPoly.const(0, vs)

    def scalar(c: LaurentPoly, size: int) -> list[PolyMatrix]:
        return [PolyMatrix.identity(size, vs, c)] if size else []

    def small(rows):
        return PolyMatrix([[x if isinstance(x, LaurentPoly) else one * x for x in r] for r in rows], vs)

    if j == k and i <= k - 2:
        c = z - 1
        mid = small([[-1, z], [t * z, -1]])
        return direct_sum(*scalar(c, i - 1), mid, *scalar(c, n - i - 1))
    if j == k and i == k - 1:
        c = -1 + z - z * z
        mid = small([[-1, z - z * z, zero], [t * z, -1, -z * z], [-(t * t * z * z), zero, -1 + z]])
        return direct_sum(*scalar(c, k - 2), mid, *scalar(c, n - k - 1))
    if i == k and j == k + 1:
        c = 1 - z + z * z
        mid = small([[1 - z, zero, z * z], [t * z * z, 1, -z], [zero, -t * z + t * z * z, 1]])
        return direct_sum(*scalar(c, k - 1), mid, *scalar(c, n - k - 2))
    if i == k and j >= k + 2:
        c = 1 - z
        mid = small([[1, -z], [-t * z, 1]])
        return direct_sum(*scalar(c, j - 1), mid, *scalar(c, n - j - 1))
    return PolyMatrix.zeros(n, n, vs)
