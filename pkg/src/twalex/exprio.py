"""Text formats: polynomial expressions, words, matrices, presentation and
representation files.

Polynomial grammar (LL(1))::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := primary ['^' ['-'] integer]
    primary := integer | var | '(' expr ')'

Negative powers are only accepted when the base is a unit.  Generators are
written ``s1, s2, ...`` (sigma_i) and ``t1, t2, ...`` (tau_i) for the built-in
groups; files may declare any names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .freegroup import Word
from .laurent import GLOBAL_ORDER, TZA, LaurentPoly, NotDivisibleError, VarSet, render_poly
from .linalg import PolyMatrix
from .presentation import Presentation
from .representation import MatrixRep


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int, token: str, source: str = "<string>"):
        self.msg, self.line, self.col, self.token, self.source = msg, line, col, token, source
        super().__init__(f"{source}:{line}:{col}: {msg} (at {token!r})")


@dataclass(frozen=True)
class ExprSource:
    text: str
    label: str = "<string>"
    line: int = 1
    col_offset: int = 0


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")


def _where(src: ExprSource, pos: int) -> tuple[int, int]:
    """Line and 1-based column of offset ``pos`` in ``src.text``."""
    nl = src.text.rfind("\n", 0, pos)
    if nl < 0:
        return src.line, src.col_offset + pos + 1
    return src.line + src.text.count("\n", 0, pos), pos - nl


def _tokenize(src: ExprSource):
    toks = []
    for m in _TOKEN.finditer(src.text):
        if m.group(1):
            kind, val = "int", m.group(1)
        elif m.group(2):
            kind, val = "name", m.group(2)
        else:
            val = m.group(3)
            if val not in "+-*^()[],":
                raise ParseError("unexpected character", *_where(src, m.start()), val, src.label)
            kind = val
        toks.append((kind, val, m.start()))
    toks.append(("eof", "", len(src.text)))
    return toks


class _Parser:
    def __init__(self, src: ExprSource, allowed: Sequence[str], vs: VarSet):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0
        self.allowed = tuple(allowed)
        self.vs = vs

    def peek(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        kind, val, pos = tok or self.peek()
        raise ParseError(msg, *_where(self.src, pos), val or "<end>", self.src.label)

    def take(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            self.error("malformed exponent: expected an integer" if kind == "int" else f"expected {kind!r}")
        self.i += 1
        return tok

    def expr(self) -> LaurentPoly:
        neg = False
        if self.peek()[0] == "-":
            self.i += 1
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> LaurentPoly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.i += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> LaurentPoly:
        base = self.primary()
        if self.peek()[0] == "^":
            caret = self.peek()
            self.i += 1
            sign = 1
            if self.peek()[0] == "-":
                self.i += 1
                sign = -1
            tok = self.take("int")
            e = sign * int(tok[1])
            try:
                base = base ** e
            except NotDivisibleError:
                self.error("negative exponent on a non-unit", caret)
        return base

    def primary(self) -> LaurentPoly:
        kind, val, _ = tok = self.peek()
        if kind == "int":
            self.i += 1
            return LaurentPoly.const(int(val), self.vs)
        if kind == "name":
            if val not in self.allowed:
                self.error(f"unknown variable {val!r}", tok)
            self.i += 1
            return LaurentPoly.var(val, self.vs)
        if kind == "(":
            self.i += 1
            inner = self.expr()
            self.take(")")
            return inner
        self.error("expected integer, variable or '('")

    def matrix(self) -> list[list[LaurentPoly]]:
        self.take("[")
        rows = [self.row()]
        while self.peek()[0] == ",":
            self.i += 1
            rows.append(self.row())
        self.take("]")
        return rows

    def row(self) -> list[LaurentPoly]:
        self.take("[")
        out = [self.expr()]
        while self.peek()[0] == ",":
            self.i += 1
            out.append(self.expr())
        self.take("]")
        return out

    def finish(self):
        if self.peek()[0] != "eof":
            self.error("unexpected trailing input")


def _src(text, label) -> ExprSource:
    return text if isinstance(text, ExprSource) else ExprSource(text, label)


def parse_poly(text: str | ExprSource, *, variables: Sequence[str] = GLOBAL_ORDER,
               vs: VarSet = TZA, label: str = "<string>") -> LaurentPoly:
    p = _Parser(_src(text, label), variables, vs)
    if p.peek()[0] == "eof":
        p.error("empty expression")
    out = p.expr()
    p.finish()
    return out


def parse_matrix(text: str | ExprSource, *, variables: Sequence[str] = GLOBAL_ORDER,
                 vs: VarSet = TZA, label: str = "<string>") -> PolyMatrix:
    p = _Parser(_src(text, label), variables, vs)
    rows = p.matrix()
    p.finish()
    if len({len(r) for r in rows}) != 1:
        p.error("ragged matrix")
    return PolyMatrix(rows, vs)


_WORD_TOKEN = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")


def parse_word(text: str | ExprSource, gens: Sequence[str], *, label: str = "<string>") -> Word:
    """Parse ``s1 s2^-1 ...``; ``name^k`` repeats a letter ``|k|`` times."""
    src = _src(text, label)
    letters = []
    for m in re.finditer(r"\S+", src.text):
        tok = m.group(0)
        col = src.col_offset + m.start() + 1
        wm = _WORD_TOKEN.match(tok)
        if not wm:
            raise ParseError("malformed word token", src.line, col, tok, src.label)
        name, exp = wm.group(1), wm.group(2)
        if name == "1" or name not in gens:
            raise ParseError(f"undeclared generator {name!r}", src.line, col, tok, src.label)
        e = int(exp) if exp is not None else 1
        if e == 0:
            raise ParseError("zero exponent", src.line, col, tok, src.label)
        g = list(gens).index(name)
        letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return Word(letters)


# -- rendering -----------------------------------------------------------------------

def render_matrix(m: PolyMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(render_poly(x) for x in r) + "]" for r in m.rows) + "]"


def render_matrix_table(m: PolyMatrix, row_labels: Sequence[str] | None = None,
                        col_labels: Sequence[str] | None = None) -> str:
    cells = [[render_poly(x) for x in r] for r in m.rows]
    width = [max([len(c[j]) for c in cells] + [1]) for j in range(m.ncols)]
    lw = max((len(s) for s in row_labels), default=0) if row_labels else 0
    lines = []
    if col_labels:
        lines.append(" " * (lw + 2 if lw else 0) + "  ".join(s.rjust(w) for s, w in zip(col_labels, width)))
    for i, r in enumerate(cells):
        body = "  ".join(c.rjust(w) for c, w in zip(r, width))
        lines.append((row_labels[i].ljust(lw) + "  " if row_labels else "") + body)
    return "\n".join(lines)


def render(obj) -> str:
    """Canonical text for a polynomial, matrix, word or result record."""
    if isinstance(obj, LaurentPoly):
        return render_poly(obj)
    if isinstance(obj, PolyMatrix):
        return render_matrix(obj)
    if isinstance(obj, Word):
        return obj.to_text()
    if hasattr(obj, "as_record"):
        import json
        return json.dumps(obj.as_record(), sort_keys=True)
    raise TypeError(f"cannot render {type(obj).__name__}")


# -- files -----------------------------------------------------------------------------

def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield n, line


def parse_presentation(text: str, label: str = "<presentation>") -> Presentation:
    """Read ``group``, ``gens``, ``rel`` (repeatable) and ``abel`` directives."""
    name, gens, rel_src, abel = None, None, [], None
    for n, line in _lines(text):
        head, _, rest = line.strip().partition(" ")
        col = line.index(head) + len(head) + 2
        if head == "group":
            name = rest.strip()
        elif head == "gens":
            gens = tuple(rest.split())
        elif head == "rel":
            rel_src.append(ExprSource(rest, label, n, col - 1))
        elif head == "abel":
            abel = {}
            for m in re.finditer(r"\S+", rest):
                tok = m.group(0)
                am = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)=(-?\d+)", tok)
                if not am:
                    raise ParseError("malformed abel entry", n, col + m.start(), tok, label)
                abel[am.group(1)] = int(am.group(2))
        else:
            raise ParseError("unknown directive", n, line.index(head) + 1, head, label)
    if gens is None:
        raise ParseError("missing 'gens' directive", 1, 1, "", label)
    if abel is None:
        raise ParseError("missing 'abel' directive", 1, 1, "", label)
    missing = [g for g in gens if g not in abel]
    if missing:
        raise ParseError(f"no abelianization exponent for {missing}", 1, 1, "abel", label)
    extra = [g for g in abel if g not in gens]
    if extra:
        raise ParseError(f"abelianization names undeclared generators {extra}", 1, 1, "abel", label)
    rels = tuple(parse_word(s, gens) for s in rel_src)
    return Presentation(name or Path(label).stem, gens, rels, tuple(abel[g] for g in gens))


def parse_representation(text: str, label: str = "<representation>") -> MatrixRep:
    """Read ``rep``, ``dim``, ``vars`` and per-generator ``mat <gen> = [[...]]`` directives.

    A ``mat`` directive may continue over several lines until its brackets balance.
    """
    name, dim, variables = None, None, GLOBAL_ORDER
    gens, mats = [], []
    pending = None
    for n, line in _lines(text):
        if pending is not None:
            pending[2] += "\n" + line
            if pending[2].count("[") == pending[2].count("]"):
                gens.append(pending[0])
                mats.append(parse_matrix(ExprSource(pending[2], label, pending[1], pending[3]),
                                         variables=variables))
                pending = None
            continue
        head, _, rest = line.strip().partition(" ")
        if head == "rep":
            name = rest.strip()
        elif head == "dim":
            try:
                dim = int(rest)
            except ValueError:
                raise ParseError("dim must be an integer", n, 5, rest, label) from None
        elif head == "vars":
            variables = tuple(rest.split())
            for v in variables:
                if v not in GLOBAL_ORDER:
                    raise ParseError("unknown variable", n, line.index(v) + 1, v, label)
        elif head == "mat":
            mm = re.match(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*)$", rest)
            if not mm:
                raise ParseError("expected 'mat <gen> = [[...]]'", n, 5, rest, label)
            body = mm.group(2)
            col = line.index(body) if body else len(line)
            if body.count("[") != body.count("]"):
                pending = [mm.group(1), n, body, col]
                continue
            gens.append(mm.group(1))
            mats.append(parse_matrix(ExprSource(body, label, n, col), variables=variables))
        else:
            raise ParseError("unknown directive", n, 1, head, label)
    if pending is not None:
        raise ParseError("unterminated matrix", pending[1], pending[3] + 1, pending[2].splitlines()[-1][-10:], label)
    if not mats:
        raise ParseError("no 'mat' directives", 1, 1, "", label)
    for g, m in zip(gens, mats):
        if dim is not None and m.shape != (dim, dim):
            raise ParseError(f"matrix for {g} has shape {m.shape}, expected {dim}x{dim}", 1, 1, g, label)
    return MatrixRep(name or Path(label).stem, tuple(gens), tuple(mats))


def render_presentation(p: Presentation) -> str:
    lines = [f"group {p.name}", "gens " + " ".join(p.gens)]
    lines += ["rel " + r.to_text(p.gens) for r in p.relators]
    lines.append("abel " + " ".join(f"{g}={a}" for g, a in zip(p.gens, p.abel)))
    return "\n".join(lines) + "\n"


def render_representation(rho: MatrixRep) -> str:
    lines = [f"rep {rho.name}", f"dim {rho.dim}", "vars " + " ".join(rho.vs.names)]
    lines += [f"mat {g} = {render_matrix(m)}" for g, m in zip(rho.gens, rho.mats)]
    return "\n".join(lines) + "\n"


def load_presentation(path: str | Path) -> Presentation:
    path = Path(path)
    return parse_presentation(path.read_text(), str(path))


def load_representation(path: str | Path) -> MatrixRep:
    path = Path(path)
    return parse_representation(path.read_text(), str(path))


def parse_matrix_file(text: str, label: str = "<matrix>") -> PolyMatrix:
    """A row-list matrix with ``#`` comments, possibly spread over several lines."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    return parse_matrix(body, label=label)


def load_matrix(path: str | Path) -> PolyMatrix:
    path = Path(path)
    return parse_matrix_file(path.read_text(), str(path))
