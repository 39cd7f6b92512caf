"""Brute-force referee for character values via the adjoint representation.

Everything here works with concrete matrices over a prime field: the
parabolic subalgebra p_J = span{h_i, e_r for r positive or in Phi_J^-} is a
coordinate subspace of the adjoint module, an element g lies in P_J(q)
exactly when Ad(g) stabilizes p_J, and a character value is obtained by
enumerating every concrete coset representative and testing x v x^{-1}
directly.  The kernel of Ad is central and contained in every parabolic, so
the fixed-coset count downstairs equals the one in the Chevalley group.

This scales exponentially in l(w) and exists to referee the symbolic engine
at small rank; construction refuses parabolic indices beyond a guard.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .chevalley import StructureConstants
from .cosets import CosetFamily, coset_families, poincare_index
from .rootsys import RootSystem

__all__ = ["FeasibilityError", "MatrixOracle", "parabolic_membership",
           "perm_char_value_matrix", "INDEX_GUARD"]

INDEX_GUARD = 10 ** 6


class FeasibilityError(RuntimeError):
    """The requested enumeration is too large for the matrix referee; use
    the symbolic engine instead."""


def _inv_mod(mat: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a small matrix over F_p by Gauss-Jordan elimination."""
    d = mat.shape[0]
    a = mat % p
    aug = np.concatenate([a, np.eye(d, dtype=np.int64)], axis=1)
    for col in range(d):
        piv = -1
        for row in range(col, d):
            if aug[row, col] % p:
                piv = row
                break
        if piv < 0:
            raise ValueError("matrix is singular mod %d" % p)
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        inv = pow(int(aug[col, col]), -1, p)
        aug[col] = aug[col] * inv % p
        for row in range(d):
            if row != col and aug[row, col]:
                aug[row] = (aug[row] - aug[row, col] * aug[col]) % p
    return aug[:, d:]


def parabolic_rows(rs: RootSystem, J) -> tuple:
    """(member, complement) coordinate indices of p_J in the adjoint basis
    h_1..h_rank, e by root index."""
    J = rs.check_j(J)
    rank, n = rs.rank, rs.n_pos
    member = list(range(rank)) + [rank + r for r in range(n)]
    member += [rank + n + r for r in rs.phi_j_positive(J)]
    member_set = set(member)
    comp = [i for i in range(rank + 2 * n) if i not in member_set]
    return tuple(sorted(member)), tuple(comp)


def parabolic_membership(g: np.ndarray, member, comp, p: int) -> bool:
    """Whether g maps the coordinate subspace into itself: the member
    columns must vanish on the complement rows."""
    return not (g[np.ix_(comp, member)] % p).any()


class MatrixOracle:
    """Concrete coset representatives of P_J(q) as adjoint matrices, with a
    per-family cache of representatives and their inverses."""

    def __init__(self, rs: RootSystem, sc: StructureConstants, J, q: int,
                 guard: int = INDEX_GUARD):
        if sc.rs is not rs:
            raise ValueError("structure constants built on a different root system")
        p = int(q)
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError("the matrix referee handles prime q only")
        # closed form, so an oversized request fails fast without enumeration
        index = poincare_index(rs, J, p)
        if index > guard:
            raise FeasibilityError(
                "parabolic index %d exceeds the guard %d; use the symbolic "
                "engine" % (index, guard))
        self.rs = rs
        self.sc = sc
        self.J = rs.check_j(J)
        self.p = p
        self.index = index
        self.member, self.comp = parabolic_rows(rs, J)
        self._families: list = []
        self._build()

    def _x(self, r: int, a: int) -> np.ndarray:
        return self.sc.x_matrix(r, a % self.p, self.p)

    def _n_simple(self, i: int) -> np.ndarray:
        p = self.p
        neg = self.rs.negate(i)
        m = self._x(i, 1) @ self._x(neg, p - 1) % p @ self._x(i, 1) % p
        return m % p

    def _build(self) -> None:
        p = self.p
        d = self.sc.dim
        eye = np.eye(d, dtype=np.int64)
        xcache = {}
        for family in coset_families(self.rs, self.J):
            w = eye
            for s in family.word:
                w = w @ self._n_simple(s) % p
            fwd = w[None, :, :]
            inv = _inv_mod(w, p)[None, :, :]
            for r in family.inversion_roots:
                mats = xcache.get(r)
                if mats is None:
                    mats = (np.stack([self._x(r, a) for a in range(p)]),
                            np.stack([self._x(r, (-a) % p) for a in range(p)]))
                    xcache[r] = mats
                xs, xinvs = mats
                m = fwd.shape[0]
                fwd = (fwd[:, None] @ xs[None, :]) % p
                fwd = fwd.reshape(m * p, d, d)
                inv = (xinvs[None, :] @ inv[:, None]) % p
                inv = inv.reshape(m * p, d, d)
            self._families.append((fwd, inv))

    def value(self, v) -> int:
        """Number of cosets P_J(q)x with x v x^{-1} in P_J(q), for v given
        as (root, coefficient) factors."""
        p = self.p
        d = self.sc.dim
        vm = np.eye(d, dtype=np.int64)
        for r, c in v:
            vm = vm @ self._x(r, c) % p
        count = 0
        for fwd, inv in self._families:
            g = (fwd @ vm % p) @ inv % p
            ok = ~(g[:, self.comp][:, :, self.member] % p).any(axis=(1, 2))
            count += int(ok.sum())
        return count


_ORACLE_CACHE: dict = {}


def perm_char_value_matrix(rs: RootSystem, sc: StructureConstants, J, v, q: int,
                           guard: int = INDEX_GUARD) -> int:
    """Character value by full enumeration; referee for perm_char_value."""
    key = (rs.name, tuple(sorted(sc.signs.items())), rs.check_j(J), q)
    oracle = _ORACLE_CACHE.get(key)
    if oracle is None:
        oracle = MatrixOracle(rs, sc, J, q, guard)
        _ORACLE_CACHE[key] = oracle
    return oracle.value(v)
