"""Sparse multivariate polynomials over F_q in variables y1, y2, ...

A monomial is a sorted tuple of (variable, exponent) pairs, a polynomial a
map from monomials to nonzero coefficients; building through from_terms or
the arithmetic methods keeps the representation canonical, so equal maps
mean equal polynomials.

Since a^q = a in F_q, exponents can be folded by e -> ((e-1) mod (q-1)) + 1
without changing the function on F_q; reduce_exponents applies this, and
mul/pow take reduce_q to fold eagerly during products.

>>> from chevcount.gfq import GF
>>> f2 = GF(2)
>>> y1, y2 = Poly.variable(f2, 1), Poly.variable(f2, 2)
>>> print(y1.mul(y1.add(y2), reduce_q=2))
y1*y2 + y1
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .gfq import Field

__all__ = ["Poly", "parse_poly"]

Mono = tuple  # tuple[tuple[int, int], ...]: ((var, exp), ...) sorted by var


def _mono_mul(a: Mono, b: Mono, reduce_q: int | None) -> Mono:
    if not a:
        ab = b
    elif not b:
        ab = a
    else:
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            va, ea = a[i]
            vb, eb = b[j]
            if va < vb:
                out.append(a[i]); i += 1
            elif vb < va:
                out.append(b[j]); j += 1
            else:
                out.append((va, ea + eb)); i += 1; j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        ab = tuple(out)
    if reduce_q is not None and reduce_q > 2:
        return _mono_reduce(ab, reduce_q)
    if reduce_q == 2:
        return tuple((v, 1) for v, e in ab)
    return ab


def _mono_reduce(m: Mono, q: int) -> Mono:
    return tuple((v, (e - 1) % (q - 1) + 1) for v, e in m)


def _mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Mono):
    # graded, then lexicographic by variable index (lower index first)
    return (-_mono_degree(m), m)


class Poly:
    """Immutable sparse polynomial; do not mutate .terms."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping[Mono, int]):
        self.field = field
        self.terms = dict(terms)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, {})

    @classmethod
    def constant(cls, field: Field, c: int) -> "Poly":
        c = field.check(c)
        return cls(field, {(): c} if c else {})

    @classmethod
    def variable(cls, field: Field, var: int) -> "Poly":
        if var < 1:
            raise ValueError("variables are numbered from 1")
        return cls(field, {((var, 1),): field.one})

    @classmethod
    def from_terms(cls, field: Field, items: Iterable[tuple[Mono, int]]) -> "Poly":
        terms: dict[Mono, int] = {}
        for m, c in items:
            m = tuple(sorted(m))
            c = field.add(terms.get(m, 0), field.check(c))
            if c:
                terms[m] = c
            else:
                terms.pop(m, None)
        return cls(field, terms)

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> int:
        if not self.terms:
            return 0
        if self.is_constant():
            return self.terms[()]
        raise ValueError("polynomial is not constant")

    def variables(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    # -- arithmetic ------------------------------------------------------------

    def add(self, other: "Poly") -> "Poly":
        f = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(f, out)

    def neg(self) -> "Poly":
        f = self.field
        return Poly(f, {m: f.neg(c) for m, c in self.terms.items()})

    def sub(self, other: "Poly") -> "Poly":
        return self.add(other.neg())

    def scale(self, c: int) -> "Poly":
        f = self.field
        c = f.check(c)
        if not c:
            return Poly.zero(f)
        return Poly(f, {m: f.mul(v, c) for m, v in self.terms.items()})

    def mul(self, other: "Poly", reduce_q: int | None = None) -> "Poly":
        f = self.field
        out: dict[Mono, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2, reduce_q)
                c = f.add(out.get(m, 0), f.mul(c1, c2))
                if c:
                    out[m] = c
                else:
                    out.pop(m, None)
        return Poly(f, out)

    def pow(self, e: int, reduce_q: int | None = None) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(self.field, self.field.one)
        for _ in range(e):
            out = out.mul(self, reduce_q)
        return out

    def reduce_exponents(self) -> "Poly":
        """Fold exponents by the Frobenius relation a^q = a; the result is
        the same function on F_q with per-variable degree < q (degree exactly
        in 1..q-1 for variables that occur)."""
        q = self.field.q
        f = self.field
        out: dict[Mono, int] = {}
        for m, c in self.terms.items():
            mr = _mono_reduce(m, q) if q > 2 else tuple((v, 1) for v, _ in m)
            s = f.add(out.get(mr, 0), c)
            if s:
                out[mr] = s
            else:
                out.pop(mr, None)
        return Poly(f, out)

    def substitute(self, var: int, g: "Poly", reduce_q: int | None = None) -> "Poly":
        """Replace var by the polynomial g; g must not contain var."""
        if var in g.variables():
            raise ValueError("substitution target occurs in the replacement")
        f = self.field
        out = Poly.zero(f)
        powers: dict[int, Poly] = {0: Poly.constant(f, f.one)}

        def gpow(e: int) -> Poly:
            if e not in powers:
                powers[e] = gpow(e - 1).mul(g, reduce_q)
            return powers[e]

        for m, c in self.terms.items():
            e = 0
            rest = []
            for v, ev in m:
                if v == var:
                    e = ev
                else:
                    rest.append((v, ev))
            piece = Poly(f, {tuple(rest): c})
            if e:
                piece = piece.mul(gpow(e), reduce_q)
            out = out.add(piece)
        return out

    def evaluate(self, assignment: Mapping[int, int]) -> int:
        f = self.field
        total = 0
        for m, c in self.terms.items():
            v = c
            for var, e in m:
                v = f.mul(v, f.pow(assignment[var], e))
            total = f.add(total, v)
        return total

    # -- operators for tests and interactive use -------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        return self.add(other)

    def __sub__(self, other: "Poly") -> "Poly":
        return self.sub(other)

    def __mul__(self, other: "Poly") -> "Poly":
        return self.mul(other)

    def __neg__(self) -> "Poly":
        return self.neg()

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Poly) and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    # -- text form ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_key):
            c = self.terms[m]
            factors = []
            if c != 1 or not m:
                factors.append(str(c))
            for v, e in m:
                factors.append("y%d" % v if e == 1 else "y%d^%d" % (v, e))
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return "Poly(%s)" % self


_TOKEN = re.compile(r"\s*(?:(\d+)|y(\d+)(?:\^(\d+))?|([+*-]))")


def parse_poly(text: str, field: Field) -> Poly:
    """Parse the textual form, e.g. "2*y5^2*y7 + y6 + 1"."""
    pos = 0
    terms: list[tuple[Mono, int]] = []
    sign = 1
    coeff = None
    mono: dict[int, int] = {}
    expect_factor = True

    def close_term():
        nonlocal coeff, mono, sign
        if coeff is None and not mono:
            raise ValueError("empty term in %r" % text)
        c = field.one if coeff is None else coeff
        if sign < 0:
            c = field.neg(c)
        terms.append((tuple(sorted(mono.items())), c))
        coeff, mono, sign = None, {}, 1

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError("cannot parse polynomial at %r" % text[pos:])
            break
        pos = m.end()
        num, var, exp, op = m.groups()
        if num is not None:
            # prime fields reduce mod p; extension fields use the packed
            # integer form, which has no meaning above q
            n = int(num)
            c = n % field.p if field.k == 1 else field.check(n)
            coeff = c if coeff is None else field.mul(coeff, c)
            expect_factor = False
        elif var is not None:
            v = int(var)
            e = int(exp) if exp else 1
            mono[v] = mono.get(v, 0) + e
            expect_factor = False
        elif op == "*":
            expect_factor = True
        else:
            close_term()
            if op == "-":
                sign = -1
            expect_factor = True
    if coeff is not None or mono or not terms:
        close_term()
    return Poly.from_terms(field, terms)
