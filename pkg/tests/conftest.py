import random

import pytest
import sympy
from hypothesis import strategies as st

from twalex.freegroup import Word
from twalex.laurent import TZA, LaurentPoly
from twalex.linalg import PolyMatrix

T, Z, A = sympy.symbols("t z a")


def to_sympy(p: LaurentPoly):
    out = sympy.Integer(0)
    for (et, ez, ea), c in p.items():
        out += c * T**et * Z**ez * A**ea
    return sympy.expand(out)


def from_sympy(expr) -> LaurentPoly:
    expr = sympy.expand(expr)
    terms = []
    for term in sympy.Add.make_args(expr):
        c, rest = term.as_coeff_Mul()
        pw = rest.as_powers_dict()
        terms.append(((int(pw.get(T, 0)), int(pw.get(Z, 0)), int(pw.get(A, 0))), int(c)))
    return LaurentPoly.from_terms(terms)


def polys(max_terms=5, lo=-3, hi=3, coeff=6, nvars=3):
    mono = st.tuples(*([st.integers(lo, hi)] * nvars + [st.just(0)] * (3 - nvars)))
    return st.lists(st.tuples(mono, st.integers(-coeff, coeff)), max_size=max_terms).map(
        lambda items: LaurentPoly.from_terms(items))


def random_poly(rng: random.Random, terms=4, lo=-2, hi=2, coeff=5, nvars=3) -> LaurentPoly:
    items = []
    for _ in range(rng.randint(0, terms)):
        e = [rng.randint(lo, hi) for _ in range(nvars)] + [0] * (3 - nvars)
        items.append((tuple(e), rng.randint(-coeff, coeff)))
    return LaurentPoly.from_terms(items)


def random_matrix(rng: random.Random, n: int, density=0.7, **kw) -> PolyMatrix:
    zero = LaurentPoly.const(0)
    return PolyMatrix([[random_poly(rng, **kw) if rng.random() < density else zero
                        for _ in range(n)] for _ in range(n)], TZA)


def random_word(rng: random.Random, ngens: int, length: int) -> Word:
    return Word((rng.randrange(ngens), rng.choice((1, -1))) for _ in range(length))


@pytest.fixture
def tz():
    return LaurentPoly.var("t"), LaurentPoly.var("z"), LaurentPoly.var("a")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE
    except ImportError:
        return
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
