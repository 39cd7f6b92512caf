"""Permutation character values of parabolic subgroups on unipotent elements.

The value of the permutation character of P_J(q) at a unipotent v counts the
right cosets P_J(q)x with x v x^{-1} in P_J(q).  Grouping cosets by their
J-reduced Weyl part w reduces this to one polynomial system per w: write the
representative as w_dot x_{l+1}(y_{l+1}) ... x_N(y_N) over the family's root
order (inversion roots at positions l+1..N), multiply by v, renormalize
symbolically to coefficients b_1..b_N, and count the F_q-solutions of

    y_{l+1} - b_{l+1} = 0, ..., y_N - b_N = 0.

The value is the sum of the solution counts over all J-reduced w.

Most families need no work: if some root r carries exactly one factor of v
and no other support root of v precedes it in the dominance order, then for
every w with w(r) negative the system contains the unsatisfiable equation
y_i = y_i + c, so the family contributes zero and is skipped up front.

Solution counting is heuristic (variable elimination, constant detection,
then backtracking) with an exhaustive brute-force strategy as referee.
"""

from __future__ import annotations

import os
from collections import namedtuple
from typing import Iterable

import numpy as np

from .chevalley import StructureConstants, build_structure_constants
from .cosets import CosetFamily, FamilyStream
from .gfq import Field, field_for_order
from .mpoly import Poly
from .rootsys import RootSystem, WeylElement, build_root_system
from .unipotent import PolyCoeffs, normal_form

__all__ = [
    "SupportSets", "support_sets", "prune", "PolynomialSystem", "build_system",
    "count_solutions", "perm_char_value", "perm_char_report", "PermCharReport",
    "FamilyRecord", "DEFAULT_TERM_BUDGET",
]

DEFAULT_TERM_BUDGET = 200000

SupportSets = namedtuple("SupportSets", "psi_prime psi")

FamilyRecord = namedtuple("FamilyRecord", "word n_vars count")

PermCharReport = namedtuple(
    "PermCharReport", "value families_total families_pruned families_counted records")


def support_sets(rs: RootSystem, factors) -> SupportSets:
    """psi_prime: the roots of the nonzero factors of v.  psi: those carried
    by exactly one factor with no other support root below them in the
    dominance order."""
    counts: dict[int, int] = {}
    for r, c in factors:
        if c:
            counts[r] = counts.get(r, 0) + 1
    psi_prime = frozenset(counts)
    psi = frozenset(
        r for r, n in counts.items()
        if n == 1 and not any(rp != r and rs.dominance_less(rp, r) for rp in psi_prime))
    return SupportSets(psi_prime, psi)


def _psi_mask(psi: Iterable[int]) -> int:
    mask = 0
    for r in psi:
        mask |= 1 << r
    return mask


def prune(rs: RootSystem, w, psi: Iterable[int]) -> bool:
    """True iff some r in psi has w(r) negative, in which case the family of
    w contributes no solutions."""
    if isinstance(w, CosetFamily):
        bits = w.inv_bits
        return any(bits >> r & 1 for r in psi)
    if isinstance(w, WeylElement):
        return any(not w.rs.is_positive(w.act(r)) for r in psi)
    raise TypeError("expected a WeylElement or CosetFamily")


class PolynomialSystem:
    """Equations {each = 0} over the field, in variables named by 1-based
    root positions; variables may be absent from every equation."""

    __slots__ = ("field", "variables", "equations", "provenance")

    def __init__(self, field: Field, variables: tuple, equations: tuple, provenance=None):
        self.field = field
        self.variables = tuple(variables)
        self.equations = tuple(equations)
        self.provenance = provenance

    def __repr__(self) -> str:
        return "PolynomialSystem(%d vars, %d equations)" % (
            len(self.variables), len(self.equations))


def build_system(sc: StructureConstants, family: CosetFamily, v, field: Field) -> PolynomialSystem:
    """The equation system for one family: renormalize
    x_{l+1}(y_{l+1})...x_N(y_N) * v under the family's root order to get the
    coefficients b_i, and equate y_i = b_i at the inversion positions.  The
    coefficients at positions 1..l land in the parabolic and are discarded."""
    rs = sc.rs
    n = rs.n_pos
    l = family.split
    positions = tuple(range(l + 1, n + 1))
    if not v:
        # the indeterminate word is already ordered, so b_i = y_i exactly
        return PolynomialSystem(field, positions, (), family.word)
    order = family.order_key()
    roots_in_order = family.root_order()
    dom = PolyCoeffs(field)
    word = [(roots_in_order[i - 1], Poly.variable(field, i)) for i in positions]
    for r, c in v:
        word.append((r, Poly.constant(field, c)))
    nf = dict(normal_form(sc, dom, word, order=order))
    eqs = []
    for i in positions:
        b = nf.get(roots_in_order[i - 1], dom.zero)
        eq = Poly.variable(field, i).sub(b)
        if not eq.is_zero():
            eqs.append(eq)
    return PolynomialSystem(field, positions, tuple(eqs), family.word)


def _brute_count(field: Field, live: list, eqs: list) -> int:
    q = field.q
    k = len(live)
    if not eqs:
        return q ** k
    if q ** k > 1 << 24:
        raise ValueError("brute force over %d assignments is not feasible" % q ** k)
    if field.k == 1:
        # vectorized over the full assignment grid
        p = field.p
        grid = np.indices((q,) * k, dtype=np.int64).reshape(k, -1)
        cols = {v: grid[i] for i, v in enumerate(live)}
        ok = np.ones(grid.shape[1], dtype=bool)
        for e in eqs:
            val = np.zeros(grid.shape[1], dtype=np.int64)
            for mono, c in e.terms.items():
                t = np.full(grid.shape[1], c, dtype=np.int64)
                for var, exp in mono:
                    t = t * pow_mod_array(cols[var], exp, p) % p
                val = (val + t) % p
            ok &= val == 0
            if not ok.any():
                return 0
        return int(ok.sum())
    count = 0
    import itertools
    for assign_vals in itertools.product(range(q), repeat=k):
        assign = dict(zip(live, assign_vals))
        if all(e.evaluate(assign) == 0 for e in eqs):
            count += 1
    return count


def pow_mod_array(a: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            out = out * base % p
        base = base * base % p
        e >>= 1
    return out


def _find_elimination(eqs: list):
    """Equations of shape c*y + f with y absent from f, as (terms in f, eq
    index, variable, coefficient); None when the shape never occurs."""
    best = None
    for idx, e in enumerate(eqs):
        occ: dict[int, int] = {}
        for mono in e.terms:
            for var, _ in mono:
                occ[var] = occ.get(var, 0) + 1
        for mono, c in e.terms.items():
            if len(mono) == 1 and mono[0][1] == 1 and occ[mono[0][0]] == 1:
                y = mono[0][0]
                key = (len(e.terms) - 1, y, idx)
                if best is None or key < best[0]:
                    best = (key, idx, y, c)
    return best


def _heuristic_count(field: Field, live: set, eqs: list, budget: int) -> int:
    q = field.q
    while True:
        work = []
        for e in eqs:
            if e.is_constant():
                if e.constant_value():
                    return 0
            else:
                work.append(e)
        eqs = work
        if not eqs:
            return q ** len(live)
        found = _find_elimination(eqs)
        if found is not None:
            _, idx, y, c = found
            e = eqs[idx]
            f = Poly(field, {m: cc for m, cc in e.terms.items()
                             if m != ((y, 1),)})
            g = f.scale(field.neg(field.inv(c)))
            new_eqs = []
            total_terms = 0
            for k2, other in enumerate(eqs):
                if k2 == idx:
                    continue
                if y in other.variables():
                    other = other.substitute(y, g, reduce_q=q)
                new_eqs.append(other)
                total_terms += len(other.terms)
            if total_terms <= budget:
                live = live - {y}
                eqs = new_eqs
                continue
        # backtrack on the variable hitting the most equations, lowest index on ties
        occ: dict[int, int] = {}
        for e in eqs:
            for var in e.variables():
                occ[var] = occ.get(var, 0) + 1
        y = max(occ, key=lambda var: (occ[var], -var))
        rest = live - {y}
        total = 0
        for a in range(q):
            const = Poly.constant(field, a)
            spec = [e.substitute(y, const, reduce_q=q) if y in e.variables() else e
                    for e in eqs]
            total += _heuristic_count(field, rest, spec, budget)
        return total


def count_solutions(system: PolynomialSystem, strategy: str = "heuristic",
                    term_budget: int = DEFAULT_TERM_BUDGET) -> int:
    """Exact number of assignments in F_q^{#vars} satisfying every equation.
    No equations means q^{#vars}; a nonzero constant equation means zero."""
    live = set(system.variables)
    for e in system.equations:
        extra = e.variables() - live
        if extra:
            raise ValueError("equation uses variables %r outside the system" % sorted(extra))
    if strategy == "bruteforce":
        return _brute_count(system.field, sorted(live), list(system.equations))
    if strategy != "heuristic":
        raise ValueError("unknown strategy %r" % strategy)
    eqs = [e.reduce_exponents() for e in system.equations]
    return _heuristic_count(system.field, live, eqs, term_budget)


def _check_normal_form(rs: RootSystem, field: Field, v) -> list:
    out = []
    last = -1
    for r, c in v:
        if not 0 <= r < rs.n_pos:
            raise ValueError("root index %r out of range" % (r,))
        if r <= last:
            raise ValueError("factors must be in canonical normal form "
                             "(strictly increasing root indices)")
        last = r
        c = field.check(c)
        if c:
            out.append((r, c))
    return out


_WORKER_STATE: dict = {}


def _worker_init(rs_name, signs_items, J, v, q, strategy, term_budget):
    rs = build_root_system(rs_name)
    sc = build_structure_constants(rs, dict(signs_items))
    _WORKER_STATE.update(rs=rs, sc=sc, J=tuple(J), v=list(v),
                         field=field_for_order(q), strategy=strategy,
                         budget=term_budget)

def _worker_batch(batch):
    st = _WORKER_STATE
    rs, sc, field = st["rs"], st["sc"], st["field"]
    out = []
    for word, length, bits in batch:
        family = CosetFamily(rs, st["J"], word, length, bits)
        system = build_system(sc, family, st["v"], field)
        n = count_solutions(system, st["strategy"], st["budget"])
        out.append((word, len(system.variables), n))
    return out


def perm_char_report(rs: RootSystem, sc: StructureConstants, J, v, q: int,
                     strategy: str = "heuristic", workers: int | None = None,
                     audit: bool = False, term_budget: int = DEFAULT_TERM_BUDGET,
                     _fast_identity: bool = True) -> PermCharReport:
    """Character value plus audit data: how many families the Weyl group
    quotient has, how many were skipped by the support-set criterion, and,
    when audit is set, one (reduced word, #vars, count) record per surviving
    family.  v must be in canonical normal form over F_q."""
    J = rs.check_j(J)
    field = field_for_order(q)
    v = _check_normal_form(rs, field, v)
    if not v and _fast_identity:
        # every system is empty, so each family contributes q^{l(w)}; sum
        # from the length histogram without materializing families
        from . import _kernel
        run = _kernel.enumerate_quotient(rs, J, want_words=False, emit=False)
        run.drain()
        value = 0
        qp = 1
        for count in run.histogram.tolist():
            value += count * qp
            qp *= q
        return PermCharReport(value, run.total, 0, run.total,
                              None if not audit else [])
    mask = _psi_mask(support_sets(rs, v).psi)
    stream = FamilyStream(rs, J, psi_mask=mask or None, want_words=True)
    value = 0
    counted = 0
    records = [] if audit else None
    if workers is None:
        workers = 1
    if workers > 1:
        value, counted, records = _run_parallel(
            rs, sc, J, v, q, strategy, term_budget, stream, workers, audit)
    else:
        for family in stream:
            system = build_system(sc, family, v, field)
            n = count_solutions(system, strategy, term_budget)
            value += n
            counted += 1
            if records is not None:
                records.append(FamilyRecord(family.word, len(system.variables), n))
    total = stream.total
    return PermCharReport(value, total, total - counted, counted, records)


def _run_parallel(rs, sc, J, v, q, strategy, term_budget, stream, workers, audit):
    from concurrent.futures import ProcessPoolExecutor

    signs_items = tuple(sorted(sc.signs.items()))
    value = 0
    counted = 0
    records = [] if audit else None
    batch = []
    futures = []
    with ProcessPoolExecutor(
            max_workers=workers, initializer=_worker_init,
            initargs=(rs.name, signs_items, J, v, q, strategy, term_budget)) as pool:
        for family in stream:
            batch.append((family.word, family.length, family.inv_bits))
            if len(batch) >= 32:
                futures.append(pool.submit(_worker_batch, batch))
                batch = []
        if batch:
            futures.append(pool.submit(_worker_batch, batch))
        for fut in futures:
            for word, n_vars, n in fut.result():
                value += n
                counted += 1
                if records is not None:
                    records.append(FamilyRecord(word, n_vars, n))
    return value, counted, records


def perm_char_value(rs: RootSystem, sc: StructureConstants, J, v, q: int,
                    strategy: str = "heuristic", workers: int | None = None,
                    term_budget: int = DEFAULT_TERM_BUDGET) -> int:
    """The permutation character of P_J(q) evaluated at the unipotent v."""
    return perm_char_report(rs, sc, J, v, q, strategy=strategy, workers=workers,
                            term_budget=term_budget).value
