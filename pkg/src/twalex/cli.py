"""Command-line front end.

Subcommands: ``compute``, ``matrix``, ``validate`` and ``reproduce``.  Exit
status is 0 when every requested computation or check succeeded, 1 when a
check or comparison failed and 2 for bad input or a refused computation.

Defaults can be overridden from the environment: ``TWALEX_STRATEGY``,
``TWALEX_SEED``, ``TWALEX_SAMPLES``, ``TWALEX_CEILING``, ``TWALEX_JOBS`` and
``TWALEX_OUTPUT``.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .exprio import (
    ParseError,
    load_presentation,
    load_representation,
    parse_poly,
    render_matrix,
    render_matrix_table,
)
from .invariant import (
    EXACT,
    GcdStrategy,
    InvariantError,
    alexander_matrix,
    cross_validate,
    equal_up_to_unit,
    braid_minor_divisor,
    structured_index_sets,
    structured_report,
    twisted_alexander,
)
from .laurent import TZA, LaurentPoly, associates, render_poly
from .presentation import Presentation, braid_group, validate, welded_braid_group
from .representation import MatrixRep, burau_reduced, burau_unreduced, tym, validate_rep, wtym

log = logging.getLogger("twalex")

BANNER = "UNCERTIFIED (subset upper bound)"

REPS = {"tym": tym, "burau": burau_unreduced, "rburau": burau_reduced, "wtym": wtym}


class UsageError(Exception):
    """Bad selector or refused computation (exit status 2)."""


def _env(name: str, default, cast=str):
    raw = os.environ.get("TWALEX_" + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"TWALEX_{name}={raw!r} is not a valid {cast.__name__}") from None


# -- selectors --------------------------------------------------------------------------

@dataclass
class RunConfig:
    group: Presentation
    rep: MatrixRep
    builtin: tuple[str, int] | None
    strategy: str = "exhaustive"
    seed: int = 0
    samples: int = 200
    divisor: LaurentPoly | None = None
    drop: str | None = None
    ceiling: int = 10**6
    jobs: int = 1
    output: str = "text"
    timing: bool = False


def parse_group(sel: str) -> tuple[Presentation, tuple[str, int] | None]:
    m = re.fullmatch(r"(b|wb)(\d+)", sel.lower())
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 2:
            raise UsageError(f"group {sel!r}: n must be at least 2")
        return (braid_group(n) if kind == "b" else welded_braid_group(n)), (kind, n)
    if Path(sel).is_file():
        return load_presentation(sel), None
    raise UsageError(f"unknown group {sel!r}: expected b<n>, wb<n> or a presentation file")


def parse_rep(sel: str, builtin: tuple[str, int] | None) -> MatrixRep:
    m = re.fullmatch(r"([a-z]+)(\d*)", sel.lower())
    if m and m.group(1) in REPS:
        name, digits = m.group(1), m.group(2)
        if digits:
            n = int(digits)
        elif builtin is not None:
            n = builtin[1]
        else:
            raise UsageError(f"representation {sel!r} needs an explicit size with a file group, e.g. {sel}3")
        try:
            return REPS[name](n)
        except ValueError as e:
            raise UsageError(f"representation {sel!r}: {e}") from None
    if Path(sel).is_file():
        return load_representation(sel)
    raise UsageError(f"unknown representation {sel!r}: expected one of {sorted(REPS)} or a file")


def _column(p: Presentation, drop: str | None) -> int | None:
    if drop is None:
        return None
    if drop in p.gens:
        return p.gen_index(drop)
    if drop.isdigit() and 1 <= int(drop) <= p.l:
        return int(drop) - 1
    raise UsageError(f"--drop {drop!r}: not a generator of {p.name} {p.gens}")


def _strategy(cfg: RunConfig) -> tuple[GcdStrategy, int | None]:
    """Strategy and column, applying the B_n/TYM seeded defaults."""
    col = _column(cfg.group, cfg.drop)
    if cfg.strategy == "exhaustive":
        return GcdStrategy(), col
    if cfg.strategy != "seeded":
        raise UsageError(f"unknown strategy {cfg.strategy!r}")
    sets, divisor = (), cfg.divisor
    if cfg.builtin and cfg.builtin[0] == "b" and cfg.rep.name == f"TYM{cfg.builtin[1]}":
        n = cfg.builtin[1]
        if col is None:
            col = n - 2
        if col == n - 2:
            sets = tuple(structured_index_sets(n).values())
            if divisor is None:
                divisor = braid_minor_divisor(n, cfg.rep.vs)
    return GcdStrategy("seeded", sets, cfg.samples, cfg.seed, divisor), col


def _check_ceiling(cfg: RunConfig) -> None:
    p, rho = cfg.group, cfg.rep
    if p.m < p.l - 1:
        return
    rows, cols = p.m * rho.dim, (p.l - 1) * rho.dim
    count = math.comb(rows, cols)
    if count > cfg.ceiling:
        raise UsageError(
            f"exhaustive scan needs C({rows},{cols}) = {count} minors, above the ceiling {cfg.ceiling}; "
            "use --strategy seeded (with --divisor to certify) or raise --ceiling")


def run_invariant(cfg: RunConfig):
    strategy, col = _strategy(cfg)
    if strategy.kind == "exhaustive":
        _check_ceiling(cfg)
    return twisted_alexander(cfg.group, cfg.rep, strategy, column=col, jobs=cfg.jobs)


# -- output -----------------------------------------------------------------------------

def emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True))


def _result_text(r) -> str:
    lines = [
        f"group          {r.group}",
        f"representation {r.rep}",
        f"dropped column {r.column}",
        f"strategy       {r.strategy}",
        f"minors         {r.evaluated} evaluated, {r.skipped} skipped (zero row), {r.zero_minors} zero",
        f"minor gcd      {render_poly(r.minor_gcd)}",
        f"det Phi(1-x_j) {render_poly(r.column_det)}",
        f"Delta          {r.delta_text()}",
        f"certification  {r.certification}",
        f"seconds        {r.seconds:.2f}",
    ]
    if r.certification != EXACT:
        lines.insert(0, f"*** {BANNER} ***")
    return "\n".join(lines)


# -- commands ---------------------------------------------------------------------------

def cmd_compute(cfg: RunConfig) -> int:
    r = run_invariant(cfg)
    if cfg.output == "records":
        rec = r.as_record(timing=cfg.timing)
        if r.certification != EXACT:
            rec["banner"] = BANNER
        emit(rec)
    else:
        print(_result_text(r))
    return 0


def cmd_matrix(cfg: RunConfig) -> int:
    M = alexander_matrix(cfg.group, cfg.rep)
    col = _column(cfg.group, cfg.drop)
    mat = M.matrix if col is None else M.drop(col)
    if cfg.output == "records":
        emit({"group": cfg.group.name, "rep": cfg.rep.name,
              "drop": None if col is None else cfg.group.gens[col],
              "rows": mat.nrows, "cols": mat.ncols, "matrix": render_matrix(mat)})
    else:
        drop_txt = "" if col is None else f", column {cfg.group.gens[col]} dropped"
        print(f"# {cfg.group.name} / {cfg.rep.name}: {mat.nrows} x {mat.ncols}{drop_txt}")
        print(render_matrix_table(mat, M.row_labels(), M.col_labels(col)))
    return 0


def cmd_validate(cfg: RunConfig, cross: bool, cross_samples: int) -> int:
    checks = []
    pr = validate(cfg.group)
    checks.append({"check": "presentation", "ok": pr.valid,
                   "detail": "; ".join(pr.problems) or f"l={pr.l} m={pr.m}"
                   + (" (m < l - 1: invariant is 0)" if pr.degenerate else "")})
    rr = validate_rep(cfg.group, cfg.rep)
    for g, d, ok in rr.determinants:
        checks.append({"check": f"det rho({g}) is a unit", "ok": ok, "detail": d})
    for label, ok in rr.relators:
        checks.append({"check": f"relator {label} maps to identity", "ok": ok, "detail": ""})
    if not rr.relators and not rr.determinants:
        checks.append({"check": "representation", "ok": False, "detail": "; ".join(rr.problems)})
    if cross and pr.valid and rr.valid:
        strategy, _ = _strategy(cfg)
        if strategy.kind == "exhaustive":
            _check_ceiling(cfg)
        rep = cross_validate(cfg.group, cfg.rep, strategy, samples=cross_samples, seed=cfg.seed,
                             jobs=cfg.jobs)
        checks.extend(rep.checks)
    for c in checks:
        if cfg.output == "records":
            emit({"group": cfg.group.name, "rep": cfg.rep.name, **c})
        else:
            print(f"{'PASS' if c['ok'] else 'FAIL'}  {c['check']}" + (f"  [{c['detail']}]" if c["detail"] else ""))
    return 0 if all(c["ok"] for c in checks) else 1


def parse_range(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text.strip())
    if not m:
        raise UsageError(f"--n {text!r}: expected N or A..B")
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) else a
    if b < a:
        raise UsageError(f"--n {text!r}: empty range")
    return list(range(a, b + 1))


def _reproduce_invariant(target: str, n: int, args) -> dict:
    z = LaurentPoly.var("z", TZA)
    t = LaurentPoly.var("t", TZA)
    one = LaurentPoly.const(1, TZA)
    if target == "thm1.1":
        group, rep = braid_group(n), burau_reduced(n)
        expected = 1 - t * z * z if n == 3 else one
    elif target == "thm1.2":
        group, rep = braid_group(n), tym(n)
        expected = 1 + t * z ** 3 if n == 3 else one
    else:
        group, rep = welded_braid_group(n), wtym(n)
        expected = one
    cfg = RunConfig(group, rep, ("b" if target != "wb3" else "wb", n), seed=args.seed,
                    samples=args.samples, ceiling=args.ceiling, jobs=args.jobs)
    cfg.strategy = "seeded" if target == "thm1.2" and n >= 5 else "exhaustive"
    rec = {"target": target, "n": n, "expected": render_poly(expected)}
    try:
        r = run_invariant(cfg)
    except UsageError as e:
        return {**rec, "computed": None, "certification": None, "match": False, "detail": str(e)}
    match = r.certification == EXACT and equal_up_to_unit(r, expected)
    detail = f"{r.evaluated} minors, gcd {render_poly(r.minor_gcd)}, column {r.column}"
    if target == "wb3":
        zz = (1 - z) * (1 - t * z * z)
        ok = associates(r.minor_gcd, zz)
        match = match and ok
        detail += f"; gcd associate to (1 - z)*(1 - t*z^2): {ok}"
    if r.certification != EXACT:
        detail += f"; {BANNER}"
    return {**rec, "computed": r.delta_text(), "certification": r.certification, "match": match,
            "detail": detail}


def _reproduce_structured(n: int) -> list[dict]:
    if n < 4:
        return [{"target": "lemma4.3", "n": n, "set": None, "match": False,
                 "detail": "structured index sets need n >= 4"}]
    out = []
    for row in structured_report(n):
        out.append({"target": "lemma4.3", "n": n, "set": row["set"], "computed": row["det"],
                    "match": row["full_ok"] and row["reduced_ok"],
                    "detail": f"closed form: {row['full_ok']}, after dividing by the divisor: {row['reduced_ok']}"})
    return out


DEFAULT_RANGES = {"thm1.1": "3..4", "thm1.2": "3..5", "lemma4.3": "4..5", "wb3": "3"}


def cmd_reproduce(args) -> int:
    targets = list(DEFAULT_RANGES) if args.target == "all" else [args.target]
    rows = []
    for target in targets:
        ns = [3] if target == "wb3" else parse_range(args.n or DEFAULT_RANGES[target])
        for n in ns:
            if target == "lemma4.3":
                rows.extend(_reproduce_structured(n))
            else:
                rows.append(_reproduce_invariant(target, n, args))
    for r in rows:
        if args.output == "records":
            emit(r)
        else:
            label = f"{r['target']:9s} n={r['n']}" + (f" {r['set']:4s}" if r.get("set") else "")
            if "expected" in r:
                body = f"computed {r['computed']}  expected {r['expected']}"
            else:
                body = ""
            print(f"{'MATCH   ' if r['match'] else 'MISMATCH'}  {label}  {body}  [{r['detail']}]")
    return 0 if all(r["match"] for r in rows) else 1


# -- argument parsing -------------------------------------------------------------------

def _output(sp: argparse.ArgumentParser) -> None:
    # accepted after the subcommand too; SUPPRESS keeps the top-level value otherwise
    sp.add_argument("--output", choices=["text", "records"], default=argparse.SUPPRESS)


def _common(sp: argparse.ArgumentParser, invariant: bool = True) -> None:
    sp.add_argument("--group", required=True, help="b<n>, wb<n> or a presentation file")
    sp.add_argument("--rep", required=True, help="tym, burau, rburau, wtym (optionally with size) or a file")
    sp.add_argument("--drop", help="generator whose column block is removed (name or 1-based index)")
    _output(sp)
    if invariant:
        sp.add_argument("--strategy", choices=["exhaustive", "seeded"], default=_env("STRATEGY", "exhaustive"))
        sp.add_argument("--seed", type=int, default=_env("SEED", 0, int))
        sp.add_argument("--samples", type=int, default=_env("SAMPLES", 200, int))
        sp.add_argument("--divisor", help="polynomial known to divide every maximal minor (certifies seeded runs)")
        sp.add_argument("--ceiling", type=int, default=_env("CEILING", 10**6, int),
                        help="largest exhaustive minor count allowed")
        sp.add_argument("--jobs", type=int, default=_env("JOBS", 1, int))
        sp.add_argument("--timing", action="store_true", help="add wall-clock seconds to records")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twalex", description="Twisted Alexander invariants of braid groups.")
    ap.add_argument("-v", "--verbose", action="store_true")
    ap.add_argument("--output", choices=["text", "records"], default=_env("OUTPUT", "text"))
    sub = ap.add_subparsers(dest="command", required=True)

    _common(sub.add_parser("compute", help="compute the invariant"))
    _common(sub.add_parser("matrix", help="print the Alexander matrix"), invariant=False)
    v = sub.add_parser("validate", help="check a presentation/representation pair")
    _common(v)
    v.add_argument("--cross", action="store_true", help="also run the column-change cross-checks")
    v.add_argument("--cross-samples", type=int, default=50)

    r = sub.add_parser("reproduce", help="recompute the published values")
    r.add_argument("target", choices=["thm1.1", "thm1.2", "lemma4.3", "wb3", "all"])
    r.add_argument("--n", help="size or range A..B")
    _output(r)
    r.add_argument("--seed", type=int, default=_env("SEED", 0, int))
    r.add_argument("--samples", type=int, default=_env("SAMPLES", 200, int))
    r.add_argument("--ceiling", type=int, default=_env("CEILING", 10**6, int))
    r.add_argument("--jobs", type=int, default=_env("JOBS", 1, int))
    return ap


def _config(args) -> RunConfig:
    group, builtin = parse_group(args.group)
    rep = parse_rep(args.rep, builtin)
    cfg = RunConfig(group, rep, builtin, drop=args.drop, output=args.output)
    if hasattr(args, "strategy"):
        cfg.strategy, cfg.seed, cfg.samples = args.strategy, args.seed, args.samples
        cfg.ceiling, cfg.jobs, cfg.timing = args.ceiling, args.jobs, args.timing
        if args.divisor:
            cfg.divisor = parse_poly(args.divisor, label="--divisor")
    return cfg


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"twalex: {e}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "reproduce":
            return cmd_reproduce(args)
        cfg = _config(args)
        if args.command == "compute":
            return cmd_compute(cfg)
        if args.command == "matrix":
            return cmd_matrix(cfg)
        return cmd_validate(cfg, args.cross, args.cross_samples)
    except (UsageError, ParseError, InvariantError, OSError) as e:
        print(f"twalex: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
