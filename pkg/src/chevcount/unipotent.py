"""Words in root elements x_r(a) and the normal form of unipotent elements.

A word is a list of (root index, coefficient) pairs over the positive roots,
representing the product of the root elements left to right.  Coefficients
live in a pluggable domain (field elements or polynomials in the coset
indeterminates) so one rewriting engine covers both the concrete and the
symbolic computation.

Two local moves rewrite any word to the ordered normal form: merging
x_r(a) x_r(b) -> x_r(a+b), and the commutator relation

    x_s(b) x_r(a) = x_r(a) x_s(b) * prod x_{i*r + j*s}(C_ij (-a)^i b^j),

with the correction factors ordered by increasing i+j.  A commutator move
removes one out-of-order pair at its height sum and creates factors only at
strictly larger height sums, so the rewriting terminates for any move
selection and any target ordering of the positive roots; the normal form is
independent of both.
"""

from __future__ import annotations

import re
from typing import Sequence

from .chevalley import StructureConstants
from .gfq import Field
from .mpoly import Poly
from .rootsys import RootSystem

__all__ = [
    "FieldCoeffs", "PolyCoeffs", "commutator_expand", "normal_form",
    "nf_multiply", "nf_inverse", "conjugate", "parse_x_word", "format_x_word",
]


class FieldCoeffs:
    """Coefficient domain of field elements in their integer form."""

    __slots__ = ("field", "zero", "one")

    def __init__(self, field: Field):
        self.field = field
        self.zero = 0
        self.one = field.one

    def add(self, a: int, b: int) -> int:
        return self.field.add(a, b)

    def neg(self, a: int) -> int:
        return self.field.neg(a)

    def mul(self, a: int, b: int) -> int:
        return self.field.mul(a, b)

    def pow_int(self, a: int, k: int) -> int:
        return self.field.pow(a, k)

    def is_zero(self, a: int) -> bool:
        return a == 0

    def from_int(self, n: int) -> int:
        return self.field.from_int(n)


class PolyCoeffs:
    """Coefficient domain of polynomials over F_q, with exponents folded by
    a^q = a after every product so degrees stay below q per variable."""

    __slots__ = ("field", "reduce_q", "zero", "one")

    def __init__(self, field: Field, reduce: bool = True):
        self.field = field
        self.reduce_q = field.q if reduce else None
        self.zero = Poly.zero(field)
        self.one = Poly.constant(field, field.one)

    def add(self, a: Poly, b: Poly) -> Poly:
        return a.add(b)

    def neg(self, a: Poly) -> Poly:
        return a.neg()

    def mul(self, a: Poly, b: Poly) -> Poly:
        return a.mul(b, self.reduce_q)

    def pow_int(self, a: Poly, k: int) -> Poly:
        return a.pow(k, self.reduce_q)

    def is_zero(self, a: Poly) -> bool:
        return a.is_zero()

    def from_int(self, n: int) -> Poly:
        return Poly.constant(self.field, self.field.from_int(n))


def commutator_expand(sc: StructureConstants, dom, s: int, b, r: int, a) -> list:
    """Word equal to x_s(b)*x_r(a): the swapped pair followed by the
    correction factors x_{i*r+j*s}(C_ij (-a)^i b^j) sorted by i+j."""
    if r == s:
        raise ValueError("equal roots merge instead of commuting")
    out = [(r, a), (s, b)]
    na = dom.neg(a)
    for i, j, t, c in sc.commutator_terms(r, s):
        coeff = dom.mul(dom.from_int(c), dom.mul(dom.pow_int(na, i), dom.pow_int(b, j)))
        if not dom.is_zero(coeff):
            out.append((t, coeff))
    return out


def _expand_at(sc, dom, work: list, i: int) -> None:
    s, b = work[i]
    r, a = work[i + 1]
    repl = [(r, a), (s, b)]
    na = dom.neg(a)
    for i_, j_, t, c in sc.commutator_terms(r, s):
        coeff = dom.mul(dom.from_int(c), dom.mul(dom.pow_int(na, i_), dom.pow_int(b, j_)))
        if not dom.is_zero(coeff):
            repl.append((t, coeff))
    work[i:i + 2] = repl


def _rewrite_greedy(sc, dom, work: list, pos: Sequence[int]) -> list:
    # cheap moves (merges and commuting swaps) before any expansion, then one
    # commutator expansion on the out-of-order pair with the smallest height
    # sum, which the termination metric rewards.  A pointer sweep with
    # backtracking reaches the cheap-move fixpoint without rescanning: after a
    # merge, swap, or splice only the pairs at the mutation site need another
    # look, so the pointer steps back there and everything to its left stays
    # settled.  work holds no zero coefficients on entry (normal_form strips
    # them) and merges drop any zero they produce, so the sweep never tests
    # coefficients at all.
    heights = sc.rs.heights
    n = sc.rs.n_pos
    com = sc.commute_table
    add = dom.add
    is_zero = dom.is_zero
    i = 0
    length = len(work)
    while True:
        if i + 1 < length:
            r, c = work[i]
            r2, c2 = work[i + 1]
            if r2 == r:
                c = add(c, c2)
                if is_zero(c):
                    del work[i:i + 2]
                    length -= 2
                else:
                    work[i] = (r, c)
                    del work[i + 1]
                    length -= 1
                if i:
                    i -= 1
                continue
            if pos[r2] < pos[r] and com[r2 * n + r]:
                work[i] = (r2, c2)
                work[i + 1] = (r, c)
                if i:
                    i -= 1
                continue
            i += 1
            continue
        # sweep stalled: every adjacent pair is in order or blocked by a
        # non-commuting violation, so pick the cheapest violation to expand
        best = -1
        besth = 0
        for k in range(length - 1):
            rl = work[k][0]
            rr = work[k + 1][0]
            if pos[rr] < pos[rl]:
                h = heights[rl] + heights[rr]
                if best < 0 or h < besth:
                    best, besth = k, h
        if best < 0:
            return work
        _expand_at(sc, dom, work, best)
        length = len(work)
        i = best - 1 if best else 0


def _rewrite_naive(sc, dom, work: list, pos: Sequence[int]) -> list:
    # always act on the leftmost removable zero, mergeable pair, or
    # out-of-order pair; used to check that the result is move-independent
    while True:
        acted = False
        i = 0
        while i < len(work):
            if dom.is_zero(work[i][1]):
                del work[i]
                acted = True
                break
            if i + 1 < len(work):
                s, b = work[i]
                r, a = work[i + 1]
                if pos[r] <= pos[s] and not dom.is_zero(a):
                    if r == s:
                        work[i] = (r, dom.add(b, a))
                        del work[i + 1]
                    else:
                        _expand_at(sc, dom, work, i)
                    acted = True
                    break
            i += 1
        if not acted:
            return work


def normal_form(sc: StructureConstants, dom, factors, order: Sequence[int] | None = None,
                strategy: str = "greedy") -> list:
    """Rewrite a word to its normal form under the target order.

    order maps each positive root index to its sort position; None means the
    canonical order.  Returns (root, coefficient) pairs sorted by the target
    order with zero coefficients dropped.
    """
    rs = sc.rs
    n = rs.n_pos
    pos = order if order is not None else range(n)
    work = []
    for r, c in factors:
        if not 0 <= r < n:
            raise ValueError("root index %r is not a positive root" % (r,))
        if not dom.is_zero(c):
            work.append((r, c))
    if strategy == "greedy":
        return _rewrite_greedy(sc, dom, work, pos)
    if strategy == "naive":
        return _rewrite_naive(sc, dom, work, pos)
    raise ValueError("unknown strategy %r" % strategy)


def nf_multiply(sc: StructureConstants, dom, u, v, order=None, strategy="greedy") -> list:
    return normal_form(sc, dom, list(u) + list(v), order, strategy)


def nf_inverse(sc: StructureConstants, dom, u, order=None, strategy="greedy") -> list:
    inv = [(r, dom.neg(c)) for r, c in reversed(list(u))]
    return normal_form(sc, dom, inv, order, strategy)


def conjugate(sc: StructureConstants, dom, g, v, order=None, strategy="greedy") -> list:
    """Normal form of g v g^{-1}."""
    word = list(g) + list(v) + [(r, dom.neg(c)) for r, c in reversed(list(g))]
    return normal_form(sc, dom, word, order, strategy)


_X_FACTOR = re.compile(r"x(\d+)\((-?\d+)\)\Z")


def parse_x_word(text: str, rs: RootSystem, field: Field) -> list:
    """Parse "x12(1)*x33(2)" into (root, coefficient) pairs; root indices are
    1-based positions in the canonical order, "1" is the empty word.
    Coefficients reduce mod p for prime fields and must be packed integers in
    [0, q) otherwise."""
    text = text.strip()
    if text in ("1", ""):
        return []
    out = []
    for part in text.split("*"):
        m = _X_FACTOR.match(part.strip())
        if not m:
            raise ValueError("cannot parse factor %r" % part.strip())
        idx = int(m.group(1))
        if not 1 <= idx <= rs.n_pos:
            raise ValueError("root index %d out of range 1..%d" % (idx, rs.n_pos))
        raw = int(m.group(2))
        c = raw % field.p if field.k == 1 else field.check(raw)
        out.append((idx - 1, c))
    return out


def format_x_word(factors) -> str:
    factors = list(factors)
    if not factors:
        return "1"
    return "*".join("x%d(%s)" % (r + 1, c) for r, c in factors)
