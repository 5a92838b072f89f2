"""Wada's twisted Alexander invariant.

Pipeline: Fox Jacobian under ``Phi`` (the Alexander matrix), removal of one
generator's column block, gcd over the maximal minors, division by
``det Phi(1 - x_j)``.  Results are defined up to a unit ``+-t^k z^c a^m``.
"""

from __future__ import annotations

import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .freegroup import EMPTY, GroupRingElement, Word
from .laurent import (
    TZA,
    LaurentPoly,
    VarSet,
    associates,
    divides,
    exact_div,
    gcd,
    is_unit,
    normal,
    render_poly,
    try_exact_div,
)
from .linalg import PolyMatrix, RowSets, block_matrix, det, minor
from .presentation import Presentation, braid_group, validate
from .representation import MatrixRep, fox_images, phi_eval, tym, validate_rep

log = logging.getLogger(__name__)

EXACT = "exact"
UPPER_BOUND = "subset-upper-bound"


class InvariantError(ValueError):
    """Invalid (presentation, representation) input pair."""


@dataclass(frozen=True)
class AlexanderMatrix:
    presentation: Presentation
    rep: MatrixRep
    blocks: tuple[tuple[PolyMatrix, ...], ...]
    matrix: PolyMatrix

    @property
    def n(self) -> int:
        return self.rep.dim

    def block(self, i: int, j: int) -> PolyMatrix:
        return self.blocks[i][j]

    def drop(self, j: int) -> PolyMatrix:
        """``M_j``: the flattened matrix without generator ``j``'s column block (0-based)."""
        n = self.n
        cols = [c for c in range(self.matrix.ncols) if not j * n <= c < (j + 1) * n]
        return minor(self.matrix, range(self.matrix.nrows), cols)

    def row_labels(self) -> list[str]:
        p = self.presentation
        return [f"{p.relator_label(i)}.{k + 1}" for i in range(p.m) for k in range(self.n)]

    def col_labels(self, drop: int | None = None) -> list[str]:
        p = self.presentation
        return [f"{g}.{k + 1}" for j, g in enumerate(p.gens) if j != drop for k in range(self.n)]


def alexander_matrix(p: Presentation, rho: MatrixRep, check: bool = True) -> AlexanderMatrix:
    """Block matrix whose ``(i, j)`` block is ``Phi(d r_i / d x_j)``."""
    if check:
        rep = validate(p)
        if not rep.valid:
            raise InvariantError("invalid presentation: " + "; ".join(rep.problems))
        rr = validate_rep(p, rho)
        if not rr.valid:
            raise InvariantError("invalid representation: " + "; ".join(rr.problems))
    blocks = tuple(tuple(fox_images(r, rho, p.abel)) for r in p.relators)
    if blocks:
        flat = block_matrix(blocks)
    else:
        flat = PolyMatrix([], rho.vs)
    return AlexanderMatrix(p, rho, blocks, flat)


def phi_one_minus(p: Presentation, rho: MatrixRep, j: int) -> PolyMatrix:
    """``Phi(1 - x_j)`` for the 0-based generator ``j``."""
    e = GroupRingElement({EMPTY: 1, Word([(j, 1)]): -1})
    return phi_eval(e, rho, p.abel)


def column_denominator(p: Presentation, rho: MatrixRep, j: int) -> LaurentPoly:
    return det(phi_one_minus(p, rho, j))


def choose_column(M: AlexanderMatrix) -> int:
    """First generator (0-based) with ``det Phi(1 - x_j) != 0``."""
    p, rho = M.presentation, M.rep
    for j in range(p.l):
        if column_denominator(p, rho, j):
            return j
    raise InvariantError(
        "det Phi(1 - x_j) vanishes for every generator; no column is usable for this input pair")


# -- minor gcd ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GcdStrategy:
    """How the maximal minors are visited.

    ``exhaustive`` scans every row set.  ``seeded`` evaluates the explicit
    ``sets`` plus ``samples`` random ones drawn from ``seed``; it is only
    certified when ``divisor`` (a divisor of every minor known in advance) is
    an associate of the subset gcd.
    """

    kind: str = "exhaustive"
    sets: tuple[tuple[int, ...], ...] = ()
    samples: int = 0
    seed: int = 0
    divisor: LaurentPoly | None = None

    def __post_init__(self):
        if self.kind not in ("exhaustive", "seeded"):
            raise ValueError(f"unknown strategy {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "exhaustive":
            return "exhaustive"
        d = f", divisor={render_poly(self.divisor)}" if self.divisor is not None else ""
        return f"seeded(sets={len(self.sets)}, samples={self.samples}, seed={self.seed}{d})"


EXHAUSTIVE = GcdStrategy()


@dataclass(frozen=True)
class MinorGcd:
    value: LaurentPoly
    certification: str
    evaluated: int
    skipped: int
    zero: int
    stopped_early: bool = False


def _row_stream(Mj: PolyMatrix, strategy: GcdStrategy) -> RowSets:
    total, k = Mj.nrows, Mj.ncols
    if strategy.kind == "exhaustive":
        return RowSets(total, k, "exhaustive")
    sets = [tuple(s) for s in strategy.sets]
    seen = set(sets)
    if strategy.samples:
        for s in RowSets(total, k, "sample", seed=strategy.seed, samples=strategy.samples):
            if s not in seen:
                seen.add(s)
                sets.append(s)
    return RowSets(total, k, "explicit", sets=sets)


def _fold(Mj: PolyMatrix, sets, zero_rows: frozenset, stop_on_unit: bool,
          divisor: LaurentPoly | None):
    g = None
    evaluated = skipped = zero = 0
    for rows in sets:
        if zero_rows and not zero_rows.isdisjoint(rows):
            skipped += 1
            continue
        d = det(minor(Mj, rows))
        evaluated += 1
        if not d:
            zero += 1
            continue
        if divisor is not None and not divides(divisor, d):
            raise InvariantError(
                f"supplied divisor {render_poly(divisor)} does not divide the minor on rows "
                f"{[r + 1 for r in rows]}")
        if g is None:
            g = normal(d)
        elif not divides(g, d):
            g = gcd(g, d)
        if stop_on_unit and is_unit(g):
            return g, evaluated, skipped, zero, True
    return g, evaluated, skipped, zero, False


_WORKER_STATE = {}


def _init_worker(Mj, strategy, zero_rows, stop_on_unit):
    _WORKER_STATE.update(Mj=Mj, stream=_row_stream(Mj, strategy), zero_rows=zero_rows,
                         stop=stop_on_unit, divisor=strategy.divisor)


def _work(bounds):
    s = _WORKER_STATE
    return _fold(s["Mj"], s["stream"].slice(*bounds), s["zero_rows"], s["stop"], s["divisor"])


def minor_gcd(Mj: PolyMatrix, strategy: GcdStrategy = EXHAUSTIVE, *, jobs: int = 1,
              chunk: int = 2000) -> MinorGcd:
    """gcd of the maximal minors of ``Mj`` under ``strategy``.

    Row sets containing an all-zero row are skipped without elimination.  In
    exhaustive mode the scan stops once the running gcd is a unit.
    """
    if Mj.nrows < Mj.ncols:
        raise InvariantError(f"{Mj.nrows} rows cannot carry maximal minors of order {Mj.ncols}")
    zero_rows = frozenset(Mj.zero_rows())
    stream = _row_stream(Mj, strategy)
    stop = strategy.kind == "exhaustive"
    divisor = strategy.divisor
    if jobs <= 1 or len(stream) <= chunk:
        g, ev, sk, ze, early = _fold(Mj, stream, zero_rows, stop, divisor)
    else:
        g, ev, sk, ze, early = None, 0, 0, 0, False
        with ProcessPoolExecutor(jobs, initializer=_init_worker,
                                 initargs=(Mj, strategy, zero_rows, stop)) as pool:
            for cg, cev, csk, cze, cearly in pool.map(_work, stream.chunks(chunk)):
                ev, sk, ze = ev + cev, sk + csk, ze + cze
                if cg is not None:
                    g = cg if g is None else gcd(g, cg)
                if stop and g is not None and is_unit(g):
                    early = True
                    pool.shutdown(cancel_futures=True)
                    break
    value = g if g is not None else LaurentPoly.const(0, Mj.vs)
    if strategy.kind == "exhaustive":
        cert = EXACT
    elif divisor is not None and g is not None and associates(g, divisor):
        cert = EXACT
    else:
        cert = UPPER_BOUND
    return MinorGcd(value, cert, ev, sk, ze, early)


# -- the invariant ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantResult:
    group: str
    rep: str
    numerator: LaurentPoly
    denominator: LaurentPoly
    minor_gcd: LaurentPoly
    column_det: LaurentPoly
    column: str | None
    certification: str
    strategy: str
    evaluated: int = 0
    skipped: int = 0
    zero_minors: int = 0
    seconds: float = 0.0
    notes: tuple[str, ...] = field(default=())

    @property
    def fraction(self) -> tuple[LaurentPoly, LaurentPoly]:
        return self.numerator, self.denominator

    def delta_text(self) -> str:
        if self.denominator == 1:
            return render_poly(self.numerator)
        return f"({render_poly(self.numerator)}) / ({render_poly(self.denominator)})"

    def as_record(self, timing: bool = False) -> dict:
        """Flat record; ``timing`` adds wall-clock seconds (which breaks run-to-run stability)."""
        rec = {
            "group": self.group,
            "rep": self.rep,
            "column": self.column,
            "strategy": self.strategy,
            "certification": self.certification,
            "numerator": render_poly(self.numerator),
            "denominator": render_poly(self.denominator),
            "minor_gcd": render_poly(self.minor_gcd),
            "column_det": render_poly(self.column_det),
            "delta": self.delta_text(),
            "minors_evaluated": self.evaluated,
            "minors_skipped": self.skipped,
            "zero_minors": self.zero_minors,
        }
        if timing:
            rec["seconds"] = round(self.seconds, 3)
        return rec


def reduce_fraction(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Canonical reduced fraction: normal forms with unit gcd."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    one = LaurentPoly.const(1, den.vs)
    if not num:
        return num, one
    q = try_exact_div(num, den)
    if q is not None:
        return normal(q), one
    g = gcd(num, den)
    return normal(exact_div(num, g)), normal(exact_div(den, g))


def twisted_alexander(p: Presentation, rho: MatrixRep, strategy: GcdStrategy = EXHAUSTIVE, *,
                      column: int | str | None = None, jobs: int = 1) -> InvariantResult:
    """``Delta_{G,rho}(z) = gcd_I(det M_j^I) / det Phi(1 - x_j)``, and 0 when ``m < l - 1``."""
    t0 = time.perf_counter()
    vs = rho.vs
    zero, one = LaurentPoly.const(0, vs), LaurentPoly.const(1, vs)
    if p.m < p.l - 1:
        return InvariantResult(p.name, rho.name, zero, one, zero, one, None, EXACT,
                               strategy.describe(), notes=("m < l - 1",))
    M = alexander_matrix(p, rho)
    if column is None:
        j = choose_column(M)
    else:
        j = p.gen_index(column) if isinstance(column, str) else column
    den = column_denominator(p, rho, j)
    if not den:
        raise InvariantError(f"det Phi(1 - {p.gens[j]}) = 0; choose another column")
    Mj = M.drop(j)
    if Mj.ncols == 0:
        # single generator: the empty minor has determinant 1
        mg = MinorGcd(one, EXACT, 1, 0, 0)
    else:
        mg = minor_gcd(Mj, strategy, jobs=jobs)
    num, dred = reduce_fraction(mg.value, den)
    return InvariantResult(
        p.name, rho.name, num, dred, mg.value, den, p.gens[j], mg.certification,
        strategy.describe(), mg.evaluated, mg.skipped, mg.zero, time.perf_counter() - t0)


def _as_fraction(r) -> tuple[LaurentPoly, LaurentPoly]:
    if isinstance(r, InvariantResult):
        return r.numerator, r.denominator
    if isinstance(r, LaurentPoly):
        return r, LaurentPoly.const(1, r.vs)
    num, den = r
    return num, den


def equal_up_to_unit(r1, r2) -> bool:
    """True iff ``num1*den2 = u * num2*den1`` for a unit ``u``."""
    n1, d1 = _as_fraction(r1)
    n2, d2 = _as_fraction(r2)
    if not d1 or not d2:
        raise ZeroDivisionError("zero denominator")
    a, b = n1 * d2, n2 * d1
    if not a or not b:
        return not a and not b
    q = try_exact_div(a, b)
    return q is not None and is_unit(q)


# -- cross validation -------------------------------------------------------------------------

@dataclass
class CrossReport:
    checks: list[dict]

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)


def valid_columns(p: Presentation, rho: MatrixRep) -> list[int]:
    return [j for j in range(p.l) if column_denominator(p, rho, j)]


def column_change_check(M: AlexanderMatrix, j: int, k: int, rows: Sequence[int]) -> tuple[bool, int]:
    """Check ``det M_j^I det Phi(1-x_k) = +- det M_k^I det Phi(1-x_j)``.

    Returns ``(holds up to sign, sign)`` where sign is 0 when both sides vanish.
    """
    p, rho = M.presentation, M.rep
    lhs = det(minor(M.drop(j), rows)) * column_denominator(p, rho, k)
    rhs = det(minor(M.drop(k), rows)) * column_denominator(p, rho, j)
    if lhs == rhs:
        return True, (1 if lhs else 0)
    if lhs == -rhs:
        return True, -1
    return False, 0


def cross_validate(p: Presentation, rho: MatrixRep, strategy: GcdStrategy = EXHAUSTIVE, *,
                   samples: int = 50, seed: int = 0, jobs: int = 1,
                   invariants: bool = True) -> CrossReport:
    """Column-change identity on sampled row sets and column independence of the invariant."""
    M = alexander_matrix(p, rho)
    cols = valid_columns(p, rho)
    checks = []
    if len(cols) < 2:
        return CrossReport([{"check": "valid columns", "ok": False,
                             "detail": f"need two valid columns, found {len(cols)}"}])
    size = (p.l - 1) * rho.dim
    rng = random.Random(seed)
    even = rho.dim % 2 == 0
    for j, k in itertools.combinations(cols, 2):
        sets = RowSets(M.matrix.nrows, size, "sample", seed=rng.randrange(1 << 30), samples=samples)
        bad, minus = 0, 0
        for rows in sets:
            ok, sgn = column_change_check(M, j, k, rows)
            bad += not ok
            minus += sgn < 0
        checks.append({"check": f"column identity {p.gens[j]},{p.gens[k]}", "ok": bad == 0,
                       "detail": f"{len(sets)} row sets, {bad} failures, {minus} with sign -1"})
        if even:
            checks.append({"check": f"even-dimension sign {p.gens[j]},{p.gens[k]}", "ok": minus == 0,
                           "detail": f"{minus} row sets with sign -1"})
    if invariants:
        results = [twisted_alexander(p, rho, strategy, column=j, jobs=jobs) for j in cols]
        base = results[0]
        for r in results[1:]:
            checks.append({"check": f"invariant column {base.column} vs {r.column}",
                           "ok": equal_up_to_unit(base, r),
                           "detail": f"{base.delta_text()} vs {r.delta_text()}"})
    return CrossReport(checks)


# -- structured row sets for the braid groups under TYM -----------------------------------------

def braid_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n) for j in range(i + 1, n)]


def structured_row_orders(n: int) -> dict[str, tuple[int, ...]]:
    """Structured row selections (0-based rows of ``M_{n-1}`` for ``B_n``/TYM_n).

    Rows are listed in construction order, which fixes the sign of the
    determinant:

    ``I``: blocks ``[j, j+1]`` for ``j = 1..n-2`` (n >= 4).
    ``I'``: blocks ``[k, n-1]`` for ``k = 1..n-3``, then ``[1, n-2]`` (n >= 5).
    ``I''``: blocks ``[k, n-1]`` (``k = 1..n-3``) each with its last row replaced
    in place by the last row of ``[k, n-2]``, then ``[n-2, n-1]`` (n >= 4).
    """
    pos = {pr: b for b, pr in enumerate(braid_pairs(n))}

    def rows(pr):
        b = pos[pr]
        return list(range(b * n, (b + 1) * n))

    out = {}
    if n >= 4:
        out["I"] = tuple(r for j in range(1, n - 1) for r in rows((j, j + 1)))
        dd = []
        for k in range(1, n - 2):
            dd += rows((k, n - 1))[:-1] + [rows((k, n - 2))[-1]]
        dd += rows((n - 2, n - 1))
        out["I''"] = tuple(dd)
    if n >= 5:
        out["I'"] = tuple([r for k in range(1, n - 2) for r in rows((k, n - 1))] + rows((1, n - 2)))
    return out


def structured_index_sets(n: int) -> dict[str, tuple[int, ...]]:
    """:func:`structured_row_orders` as strictly increasing index sets."""
    return {k: tuple(sorted(v)) for k, v in structured_row_orders(n).items()}


def rows_det(m: PolyMatrix, rows: Sequence[int]) -> LaurentPoly:
    """Determinant of the rows of ``m`` taken in the given order."""
    return det(PolyMatrix([m.rows[i] for i in rows], m.vs))


def structured_closed_forms(n: int, vs: VarSet = TZA) -> dict[str, tuple[LaurentPoly, LaurentPoly]]:
    """Closed forms ``(det M^I, det M^I / divisor)`` for each structured selection."""
    z = LaurentPoly.var("z", vs)
    t = LaurentPoly.var("t", vs)
    a, b, c, e = 1 - z, 1 - t * z * z, 1 + t * z ** 3, 1 - z + z * z
    out = {}
    if n >= 4:
        out["I"] = ((a * b * c) ** (n - 2) * e ** ((n - 3) * (n - 2)),
                    b ** (n - 3) * c ** (n - 2) * e ** ((n - 3) * (n - 2)))
        out["I''"] = (b * c * e ** (n - 2) * a ** ((n - 1) * (n - 3)),
                      c * e ** (n - 2) * a ** ((n - 4) * (n - 1) + 1))
    if n >= 5:
        out["I'"] = ((b * a ** (n - 2)) ** (n - 3) * b * (z - 1) ** (n - 2),
                     b ** (n - 3) * a ** ((n - 3) * (n - 2)))
    return out


def structured_report(n: int) -> list[dict]:
    """Compare structured determinants of ``M_{n-1}`` (B_n, TYM_n) with their closed forms.

    The reduced form (divided by :func:`braid_minor_divisor`) is compared up to
    sign for ``I'``, whose closed form is only stated up to sign.
    """
    M = alexander_matrix(braid_group(n), tym(n)).drop(n - 2)
    D = braid_minor_divisor(n, M.vs)
    forms = structured_closed_forms(n, M.vs)
    out = []
    for name, rows in structured_row_orders(n).items():
        full, reduced = forms[name]
        d = rows_det(M, rows)
        q = try_exact_div(d, D)
        red_ok = q is not None and (q == reduced or (name == "I'" and q == -reduced))
        out.append({"n": n, "set": name, "rows": [r + 1 for r in rows], "det": render_poly(d),
                    "full_ok": d == full, "reduced_ok": red_ok})
    return out


def braid_minor_divisor(n: int, vs: VarSet = TZA) -> LaurentPoly:
    """``(1 - z)^(n-2) (1 - t z^2)``, a divisor of every maximal minor of ``M_{n-1}``."""
    z = LaurentPoly.var("z", vs)
    t = LaurentPoly.var("t", vs)
    return (1 - z) ** (n - 2) * (1 - t * z * z)
