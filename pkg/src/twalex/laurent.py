"""Multivariate Laurent polynomials over the integers.

Monomials are stored as a single packed integer key: the exponent of the
i-th variable of the active :class:`VarSet` is the i-th balanced digit in
base ``2**24``.  Multiplying monomials is then integer addition, which keeps
the inner loops of products and eliminations cheap.

Canonical term order is graded-lexicographic with ``t < z < a``.  Terms are
printed in ascending order, so ``1 + t*z^3`` and ``-1 + z - z^2``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence

__all__ = [
    "VarSet",
    "TZA",
    "LaurentPoly",
    "VarSetError",
    "NotDivisibleError",
    "monomial_split",
    "gcd",
    "exact_div",
    "is_unit",
]

GLOBAL_ORDER = ("t", "z", "a")

_BITS = 24
_BASE = 1 << _BITS
_HALF = _BASE >> 1
_MASK = _BASE - 1


class VarSetError(ValueError):
    """Operands live in different polynomial rings."""


class NotDivisibleError(ArithmeticError):
    """Raised by :func:`exact_div` when the quotient is not a Laurent polynomial."""


@dataclass(frozen=True)
class VarSet:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        pos = [GLOBAL_ORDER.index(v) if v in GLOBAL_ORDER else None for v in self.names]
        if None in pos:
            raise ValueError(f"variables must be drawn from {GLOBAL_ORDER}, got {self.names}")
        if pos != sorted(pos):
            raise ValueError(f"variables must follow the global order {GLOBAL_ORDER}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


TZA = VarSet(GLOBAL_ORDER)


def pack(exps: Sequence[int]) -> int:
    key = 0
    for e in reversed(exps):
        if not -_HALF <= e < _HALF:
            raise OverflowError(f"exponent {e} out of range")
        key = key * _BASE + e
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    out = []
    for _ in range(nvars):
        r = key & _MASK
        if r >= _HALF:
            r -= _BASE
        out.append(r)
        key = (key - r) >> _BITS
    return tuple(out)


def _nonneg_key(key: int, nvars: int) -> bool:
    for _ in range(nvars):
        r = key & _MASK
        if r >= _HALF:
            return False
        key >>= _BITS
    return key == 0


def _grlex(exps: tuple[int, ...]):
    return (sum(exps), exps[::-1])


class LaurentPoly:
    """An immutable element of ``Z[v1^{+-1}, ..., vk^{+-1}]``."""

    __slots__ = ("vs", "terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, vs: VarSet = TZA):
        self.vs = vs
        self.terms = {k: c for k, c in terms.items() if c} if terms else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, vs: VarSet) -> "LaurentPoly":
        p = object.__new__(cls)
        p.vs = vs
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: int, vs: VarSet = TZA) -> "LaurentPoly":
        return cls._raw({0: c} if c else {}, vs)

    @classmethod
    def monomial(cls, exps: Mapping[str, int] | Sequence[int] = (), coeff: int = 1,
                 vs: VarSet = TZA) -> "LaurentPoly":
        if isinstance(exps, Mapping):
            vec = [0] * len(vs)
            for name, e in exps.items():
                vec[vs.index(name)] += e
        else:
            vec = list(exps) + [0] * (len(vs) - len(exps))
        return cls._raw({pack(vec): coeff} if coeff else {}, vs)

    @classmethod
    def var(cls, name: str, vs: VarSet = TZA) -> "LaurentPoly":
        return cls.monomial({name: 1}, vs=vs)

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Sequence[int], int]], vs: VarSet = TZA) -> "LaurentPoly":
        acc: dict[int, int] = {}
        for exps, c in items:
            k = pack(list(exps))
            acc[k] = acc.get(k, 0) + c
        return cls._raw({k: c for k, c in acc.items() if c}, vs)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms as ``(exponent vector, coefficient)``, ascending graded-lex."""
        n = len(self.vs)
        out = [(unpack(k, n), c) for k, c in self.terms.items()]
        out.sort(key=lambda kc: _grlex(kc[0]))
        return out

    def degree(self, name: str) -> int:
        i = self.vs.index(name)
        n = len(self.vs)
        return max(unpack(k, n)[i] for k in self.terms)

    def min_degree(self, name: str) -> int:
        i = self.vs.index(name)
        n = len(self.vs)
        return min(unpack(k, n)[i] for k in self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(0, 0)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.const(other, self.vs)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.vs != self.vs:
            raise VarSetError(f"mismatched variable sets {self.vs.names} and {other.vs.names}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._raw(out, self.vs)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self.terms.items()}, self.vs)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._raw(out, self.vs)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly._raw({}, self.vs)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            if cb == 1:
                return LaurentPoly._raw({k + kb: c for k, c in a.items()}, self.vs)
            return LaurentPoly._raw({k + kb: c * cb for k, c in a.items()}, self.vs)
        out: dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly._raw({k: c for k, c in out.items() if c}, self.vs)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not is_unit(self):
                raise NotDivisibleError("negative power of a non-unit")
            (k, c), = self.terms.items()
            return LaurentPoly._raw({k * e: c ** -e}, self.vs)
        result = LaurentPoly.const(1, self.vs)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, key: int) -> "LaurentPoly":
        """Multiply by the monomial with packed exponent ``key``."""
        return LaurentPoly._raw({k + key: c for k, c in self.terms.items()}, self.vs)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vs == other.vs and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vs, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({render_poly(self)!r})"

    def __str__(self):
        return render_poly(self)

    def __reduce__(self):
        return (_rebuild, (self.terms, self.vs))


def _rebuild(terms, vs):
    return LaurentPoly._raw(terms, vs)


# -- rendering ------------------------------------------------------------

def _render_monomial(exps, names) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def render_poly(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    names = p.vs.names
    out = []
    for i, (exps, c) in enumerate(p.items()):
        mono = _render_monomial(exps, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(out)


# -- units and normal forms ----------------------------------------------

def is_unit(p: LaurentPoly) -> bool:
    """True iff ``p`` is plus or minus a monomial."""
    if len(p.terms) != 1:
        return False
    c, = p.terms.values()
    return c == 1 or c == -1


def _min_key(p: LaurentPoly) -> int:
    n = len(p.vs)
    mins = None
    for k in p.terms:
        e = unpack(k, n)
        mins = list(e) if mins is None else [min(x, y) for x, y in zip(mins, e)]
    return pack(mins)


def _first_coeff(p: LaurentPoly) -> int:
    n = len(p.vs)
    k = min(p.terms, key=lambda k: _grlex(unpack(k, n)))
    return p.terms[k]


def monomial_split(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split ``p`` as ``unit * part``.

    ``unit`` is a signed monomial; ``part`` has non-negative exponents, is
    divisible by no variable, and its first term in canonical (ascending
    graded-lex) order has a positive coefficient.
    """
    if not p.terms:
        raise ValueError("monomial_split of the zero polynomial")
    mk = _min_key(p)
    part = p.shift(-mk) if mk else p
    sign = 1 if _first_coeff(part) > 0 else -1
    if sign < 0:
        part = -part
    return LaurentPoly._raw({mk: sign}, p.vs), part


def normal(p: LaurentPoly) -> LaurentPoly:
    """Canonical associate of ``p`` (zero maps to zero)."""
    if not p.terms:
        return p
    return monomial_split(p)[1]


# -- exact division -------------------------------------------------------

def _divexact_poly(p: dict, d: dict, nvars: int) -> dict | None:
    """Divide polynomials with non-negative exponents; None if not exact.

    Leading terms are taken in the packed-key (lex) order.  When ``d`` divides
    ``p`` the leading monomial of every remainder is divisible by that of
    ``d``, so any failure proves non-divisibility.
    """
    lk = max(d)
    lc = d[lk]
    rest = [(k, c) for k, c in d.items() if k != lk]
    r = dict(p)
    heap = [-k for k in r]
    heapq.heapify(heap)
    q: dict[int, int] = {}
    while heap:
        k = -heapq.heappop(heap)
        c = r.pop(k, 0)
        if not c:
            continue
        qk = k - lk
        if not _nonneg_key(qk, nvars):
            return None
        qc, rem = divmod(c, lc)
        if rem:
            return None
        q[qk] = qc
        for kd, cd in rest:
            kk = qk + kd
            old = r.get(kk)
            if old is None:
                r[kk] = -qc * cd
                heapq.heappush(heap, -kk)
            else:
                v = old - qc * cd
                if v:
                    r[kk] = v
                else:
                    del r[kk]
    return q


def try_exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly | None:
    """Quotient ``p / d`` in the Laurent ring, or None when it does not exist."""
    if d.vs != p.vs:
        raise VarSetError(f"mismatched variable sets {p.vs.names} and {d.vs.names}")
    if not d.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return p
    if len(d.terms) == 1:
        (kd, cd), = d.terms.items()
        if cd == 1:
            return p.shift(-kd)
        if cd == -1:
            return LaurentPoly._raw({k - kd: -c for k, c in p.terms.items()}, p.vs)
        out = {}
        for k, c in p.terms.items():
            qc, rem = divmod(c, cd)
            if rem:
                return None
            out[k - kd] = qc
        return LaurentPoly._raw(out, p.vs)
    dk = _min_key(d)
    pk = _min_key(p)
    dpart = {k - dk: c for k, c in d.terms.items()}
    ppart = {k - pk: c for k, c in p.terms.items()}
    q = _divexact_poly(ppart, dpart, len(p.vs))
    if q is None:
        return None
    off = pk - dk
    return LaurentPoly._raw({k + off: c for k, c in q.items()}, p.vs)


def exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Quotient ``q`` with ``q * d == p``; raises NotDivisibleError otherwise."""
    q = try_exact_div(p, d)
    if q is None:
        raise NotDivisibleError(f"{render_poly(d)} does not divide {render_poly(p)}")
    return q


def divides(d: LaurentPoly, p: LaurentPoly) -> bool:
    return try_exact_div(p, d) is not None


def associates(p: LaurentPoly, q: LaurentPoly) -> bool:
    """True iff ``p`` and ``q`` differ by a unit factor."""
    if not p.terms or not q.terms:
        return not p.terms and not q.terms
    return normal(p) == normal(q)


# -- gcd: recursive primitive PRS ----------------------------------------

def _active_vars(p: LaurentPoly) -> set[int]:
    n = len(p.vs)
    out = set()
    for k in p.terms:
        for i, e in enumerate(unpack(k, n)):
            if e:
                out.add(i)
    return out


def _coeffs(p: LaurentPoly, v: int) -> dict[int, LaurentPoly]:
    """Coefficients of ``p`` viewed as univariate in variable ``v``."""
    n = len(p.vs)
    unit = 1 << (_BITS * v)
    buckets: dict[int, dict[int, int]] = {}
    for k, c in p.terms.items():
        e = unpack(k, n)[v]
        buckets.setdefault(e, {})[k - e * unit] = c
    return {e: LaurentPoly._raw(t, p.vs) for e, t in buckets.items()}


def _from_coeffs(cs: Mapping[int, LaurentPoly], v: int, vs: VarSet) -> LaurentPoly:
    unit = 1 << (_BITS * v)
    out: dict[int, int] = {}
    for e, c in cs.items():
        off = e * unit
        for k, x in c.terms.items():
            out[k + off] = x
    return LaurentPoly._raw(out, vs)


def _content(p: LaurentPoly, v: int) -> LaurentPoly:
    cs = sorted(_coeffs(p, v).values(), key=len)
    g = normal(cs[0])
    for c in cs[1:]:
        if g == 1:
            break
        g = _gcd_cf(g, normal(c))
    return g


def _primpart(p: LaurentPoly, v: int) -> LaurentPoly:
    return normal(exact_div(p, _content(p, v)))


def _prem(a: LaurentPoly, b: LaurentPoly, v: int) -> LaurentPoly:
    """A pseudo-remainder of ``a`` by ``b`` in variable ``v``.

    The result equals ``c*a - q*b`` for some ``c`` a power of lc(b); the power
    is not fixed, which is harmless because callers take primitive parts.
    """
    A = _coeffs(a, v)
    B = _coeffs(b, v)
    db = max(B)
    lcb = B[db]
    while A:
        da = max(A)
        if da < db:
            break
        lca = A.pop(da)
        A = {e: c * lcb for e, c in A.items()}
        shift = da - db
        for e, c in B.items():
            if e == db:
                continue
            k = e + shift
            val = A.get(k)
            val = -(lca * c) if val is None else val - lca * c
            if val:
                A[k] = val
            else:
                A.pop(k, None)
    return _from_coeffs(A, v, a.vs)


def _gcd_cf(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """gcd of two normalized (content-free, non-negative) polynomials."""
    if p == q:
        return p
    if p.is_constant() and q.is_constant():
        return LaurentPoly.const(igcd(p.constant_value(), q.constant_value()), p.vs)
    vp, vq = _active_vars(p), _active_vars(q)
    v = max(vp | vq)
    if v not in vp:
        return _gcd_cf(p, _content(q, v))
    if v not in vq:
        return _gcd_cf(_content(p, v), q)
    cp, cq = _content(p, v), _content(q, v)
    c = _gcd_cf(cp, cq)
    a = normal(exact_div(p, cp))
    b = normal(exact_div(q, cq))
    if a.degree(p.vs.names[v]) < b.degree(p.vs.names[v]):
        a, b = b, a
    name = p.vs.names[v]
    while True:
        if divides(b, a):
            g = b
            break
        r = _prem(a, b, v)
        if not r.terms:
            g = b
            break
        r = normal(r)
        if name not in {r.vs.names[i] for i in _active_vars(r)}:
            g = LaurentPoly.const(1, p.vs)
            break
        a, b = b, _primpart(r, v)
    return normal(c * g)


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in the normal form of :func:`monomial_split`.

    ``gcd(p, 0)`` is the normal form of ``p``; ``gcd(0, 0)`` raises.
    """
    if p.vs != q.vs:
        raise VarSetError(f"mismatched variable sets {p.vs.names} and {q.vs.names}")
    if not p.terms and not q.terms:
        raise ValueError("gcd(0, 0) is undefined")
    if not p.terms:
        return normal(q)
    if not q.terms:
        return normal(p)
    return _gcd_cf(normal(p), normal(q))


def gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    return reduce(gcd, polys)
