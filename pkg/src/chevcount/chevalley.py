"""Chevalley basis structure constants and the adjoint representation.

A Chevalley basis {h_i, e_r} is pinned down by a sign choice: write each
non-simple positive root as r = rt + alpha_i with alpha_i simple of largest
possible index (the extraspecial decomposition); prescribing the signs
eps_r of N_{rt, alpha_i} determines every other constant.  The default
table is all +1.

N_{r,s} for positive pairs is built by increasing height of r+s from the
Jacobi identity anchored at the extraspecial pair; mixed-sign pairs reduce
to positive ones through the standard identities

    N_{r,s} = -N_{s,r} = -N_{-r,-s},
    N_{r,s}/(u,u) = N_{s,u}/(r,r) = N_{u,r}/(s,s)   for r+s+u = 0,

with |N_{r,s}| = p+1 where p is the largest integer with s - p*r a root.
All divisions are checked exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rootsys import RootSystem

__all__ = [
    "StructureConstants",
    "build_structure_constants",
    "base_change_lambdas",
    "parse_sign_table",
    "format_sign_table",
]


class StructureConstants:
    def __init__(self, rs: RootSystem, signs: dict[int, int] | None = None):
        self.rs = rs
        n = rs.n_pos
        if signs is None:
            signs = {}
        self.signs = {t: int(signs.get(t, 1)) for t in range(rs.rank, n)}
        for t, e in self.signs.items():
            if e not in (1, -1):
                raise ValueError("sign for root %d must be +-1, got %r" % (t, e))
        self.extraspecial: dict[int, tuple[int, int]] = {}
        self._n_pos: dict[tuple[int, int], int] = {}
        self._n_memo: dict[tuple[int, int], int] = {}
        self._comm_cache: dict[tuple[int, int], tuple] = {}
        self._ad_cache: dict[int, list] = {}
        self._commute_table: bytes | None = None
        self._build_positive_table()

    # -- root bookkeeping -------------------------------------------------

    def _sum_idx(self, i: int, j: int) -> int | None:
        rs = self.rs
        v = tuple(a + b for a, b in zip(rs.roots[i], rs.roots[j]))
        return rs.root_index.get(v)

    def string_p(self, r: int, s: int) -> int:
        """Largest p with s - p*r a root."""
        rs = self.rs
        vr, vs = rs.roots[r], rs.roots[s]
        p = 0
        v = tuple(a - b for a, b in zip(vs, vr))
        while v in rs.root_index:
            p += 1
            v = tuple(a - b for a, b in zip(v, vr))
        return p

    def _extraspecial_pair(self, t: int) -> tuple[int, int]:
        """(rt, alpha_i) with i maximal such that t - alpha_i is positive."""
        rs = self.rs
        vt = rs.roots[t]
        for i in range(rs.rank - 1, -1, -1):
            if vt[i] == 0:
                continue
            v = list(vt)
            v[i] -= 1
            rt = rs.root_index.get(tuple(v))
            if rt is not None and rt < rs.n_pos:
                return rt, i
        raise AssertionError("no extraspecial decomposition for root %d" % t)

    # -- the positive N table ----------------------------------------------

    def _set_pos(self, r: int, s: int, value: int) -> None:
        assert abs(value) == self.string_p(r, s) + 1
        self._n_pos[(r, s)] = value
        self._n_pos[(s, r)] = -value

    def _build_positive_table(self) -> None:
        rs = self.rs
        norms = rs.norms()
        for t in range(rs.rank, rs.n_pos):  # by increasing height
            r1, i = self._extraspecial_pair(t)
            s1 = i  # simple root index == canonical root index
            self.extraspecial[t] = (r1, s1)
            self._set_pos(r1, s1, self.signs[t] * (self.string_p(r1, s1) + 1))
            for r in range(rs.n_pos):
                s = self._sum_idx(t, rs.negate(r))
                if s is None or s >= rs.n_pos or r > s:
                    continue
                if (r, s) in ((r1, s1), (s1, r1)):
                    continue
                # Jacobi on (e_r1, e_s1, e_{-r}):
                # N_{r1,s1} N_{t,-r} + N_{s1,-r} N_{s1-r,r1} + N_{-r,r1} N_{r1-r,s1} = 0
                neg_r = rs.negate(r)
                t2 = t3 = 0
                d = self._sum_idx(s1, neg_r)
                if d is not None:
                    t2 = self.n(s1, neg_r) * self.n(d, r1)
                d = self._sum_idx(r1, neg_r)
                if d is not None:
                    t3 = self.n(neg_r, r1) * self.n(d, s1)
                n_t_negr = Fraction(-(t2 + t3), self._n_pos[(r1, s1)])
                val = -Fraction(norms[t], norms[s]) * n_t_negr
                assert val.denominator == 1, (t, r, s, val)
                self._set_pos(r, s, int(val))

    # -- N for arbitrary sign combinations ----------------------------------

    def n(self, x: int, y: int) -> int:
        """N_{x,y} for any roots x, y (0 when x+y is not a root)."""
        key = (x, y)
        out = self._n_memo.get(key)
        if out is None:
            out = self._n_compute(x, y)
            self._n_memo[key] = out
        return out

    def _n_compute(self, x: int, y: int) -> int:
        rs = self.rs
        n = rs.n_pos
        u = self._sum_idx(x, y)
        if u is None:
            return 0
        xp, yp = x < n, y < n
        if xp and yp:
            return self._n_pos[(x, y)]
        if not xp and not yp:
            return -self.n(rs.negate(x), rs.negate(y))
        if not xp:  # normalize to x positive, y negative
            return -self.n(y, x)
        norms = rs.norms()
        if u < n:
            # z = -u negative; N_{x,y} = (u,u)/(x,x) * N_{y,z}, both negative
            val = -Fraction(norms[u], norms[x]) * self.n(rs.negate(y), u)
        else:
            # z = -u positive; N_{x,y} = (z,z)/(y,y) * N_{z,x}, both positive
            z = rs.negate(u)
            val = Fraction(norms[z], norms[y]) * self.n(z, x)
        assert val.denominator == 1, (x, y, val)
        return int(val)

    # -- commutator constants ------------------------------------------------

    def commutator_terms(self, r1: int, r2: int) -> tuple:
        """Constants for x_{r2}(a2) x_{r1}(a1) =
        x_{r1}(a1) x_{r2}(a2) prod x_{i*r1+j*r2}(C_ij (-a1)^i a2^j).

        Returns ((i, j, root_index, C), ...) sorted by i+j then i; r1, r2
        must be distinct positive roots with r1 + r2 != 0.
        """
        key = (r1, r2)
        out = self._comm_cache.get(key)
        if out is None:
            out = self._commutator_terms(r1, r2)
            self._comm_cache[key] = out
        return out

    def _m_const(self, r: int, s: int, i: int) -> Fraction:
        # M(r, s, i) = (1/i!) N_{r,s} N_{r,r+s} ... N_{r,(i-1)r+s}
        val = Fraction(1)
        fact = 1
        cur = s
        for m in range(i):
            val *= self.n(r, cur)
            fact *= m + 1
            nxt = self._sum_idx(r, cur)
            if m + 1 < i:
                assert nxt is not None
                cur = nxt
        return val / fact

    def _commutator_terms(self, r1: int, r2: int) -> tuple:
        rs = self.rs
        if r1 == r2 or rs.negate(r1) == r2:
            raise ValueError("commutator formula needs linearly independent roots")
        out = []
        v1, v2 = rs.roots[r1], rs.roots[r2]
        for i in range(1, 4):
            for j in range(1, 4):
                v = tuple(i * a + j * b for a, b in zip(v1, v2))
                t = rs.root_index.get(v)
                if t is None:
                    continue
                if (i, j) == (1, 1):
                    c = Fraction(self.n(r1, r2))
                elif j == 1:
                    c = self._m_const(r1, r2, i)
                elif i == 1:
                    c = (-1) ** j * self._m_const(r2, r1, j)
                elif (i, j) == (3, 2):
                    c = Fraction(1, 3) * self._m_const(self._sum_idx(r1, r2), r1, 2)
                elif (i, j) == (2, 3):
                    c = Fraction(-2, 3) * self._m_const(self._sum_idx(r1, r2), r2, 2)
                else:
                    raise AssertionError("unexpected commutator term (%d,%d)" % (i, j))
                assert c.denominator == 1, (r1, r2, i, j, c)
                if c:
                    out.append((i, j, t, int(c)))
        out.sort(key=lambda term: (term[0] + term[1], term[0]))
        return tuple(out)

    def commutes(self, r1: int, r2: int) -> bool:
        """x_{r1}(*) and x_{r2}(*) commute for all coefficients: no i*r1+j*r2
        is a root (i, j >= 1)."""
        return r1 != r2 and not self.commutator_terms(r1, r2)

    @property
    def commute_table(self) -> bytes:
        """Flat n_pos*n_pos table with table[r*n_pos + s] = 1 iff commutes(r, s);
        the diagonal is 0.  Built on first use."""
        tbl = self._commute_table
        if tbl is None:
            n = self.rs.n_pos
            raw = bytearray(n * n)
            for r in range(n):
                for s in range(r + 1, n):
                    if not self.commutator_terms(r, s):
                        raw[r * n + s] = 1
                        raw[s * n + r] = 1
            tbl = bytes(raw)
            self._commute_table = tbl
        return tbl

    # -- adjoint representation ----------------------------------------------

    @property
    def dim(self) -> int:
        return self.rs.rank + 2 * self.rs.n_pos

    def h_coroot(self, r: int) -> list[int]:
        """[e_r, e_{-r}] = h_r as integer coordinates over h_1..h_rank."""
        rs = self.rs
        norms = rs.norms()
        out = []
        for i, c in enumerate(rs.roots[r]):
            val = Fraction(c) * norms[i] / norms[r]
            assert val.denominator == 1
            out.append(int(val))
        return out

    def ad_powers(self, r: int) -> list:
        """[(ad e_r)^k / k! for k = 0..K] as integer numpy matrices, up to
        the last nonzero power.  Basis order: h_1..h_rank, then e by root
        index."""
        out = self._ad_cache.get(r)
        if out is not None:
            return out
        import numpy as np

        rs = self.rs
        rank, n = rs.rank, rs.n_pos
        d = self.dim
        ad = [[Fraction(0)] * d for _ in range(d)]
        # column h_i: [e_r, h_i] = -<r-pairing> e_r
        vr = rs.roots[r]
        for i in range(rank):
            ad[rank + r][i] = -Fraction(rs.pairing(vr, i))
        # column e_s
        for s in range(2 * n):
            if rs.negate(s) == r:
                for i, c in enumerate(self.h_coroot(r)):
                    ad[i][rank + s] = Fraction(c)
                continue
            t = self._sum_idx(r, s)
            if t is not None:
                ad[rank + t][rank + s] = Fraction(self.n(r, s))

        powers = []
        cur = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        k = 0
        while True:
            mat = np.empty((d, d), dtype=np.int64)
            for i in range(d):
                for j in range(d):
                    assert cur[i][j].denominator == 1
                    mat[i, j] = int(cur[i][j])
            powers.append(mat)
            if k > 0 and not mat.any():
                powers.pop()
                break
            k += 1
            assert k <= 6, "adjoint nilpotency bound exceeded"
            nxt = [[Fraction(0)] * d for _ in range(d)]
            for i in range(d):
                row = ad[i]
                for m in range(d):
                    a = row[m]
                    if a:
                        crow = cur[m]
                        nrow = nxt[i]
                        for j in range(d):
                            if crow[j]:
                                nrow[j] += a * crow[j]
            cur = [[v / k for v in row] for row in nxt]
        self._ad_cache[r] = powers
        return powers

    def x_matrix(self, r: int, a: int, p: int):
        """exp(a ad e_r) mod p as a numpy matrix; a an integer mod p."""
        powers = self.ad_powers(r)
        out = powers[0].copy()
        ak = 1
        for k in range(1, len(powers)):
            ak = ak * a % p
            if ak:
                out = out + ak * powers[k]
        return out % p


def build_structure_constants(rs: RootSystem, signs=None) -> StructureConstants:
    """signs: None or "plus" for all +1, or {root_index: +-1} for the
    non-simple positive roots (missing entries default to +1)."""
    if signs == "plus":
        signs = None
    return StructureConstants(rs, signs)


def base_change_lambdas(sc: StructureConstants, sc2: StructureConstants) -> list[int]:
    """lambda_r with x_r(a) |-> x_r(lambda_r a) an isomorphism from the
    group built on sc to the one built on sc2; lambda = 1 on simple roots,
    lambda_r = lambda_rt * eps_r * eps'_r by increasing height, and
    lambda_{-r} = lambda_r."""
    rs = sc.rs
    if sc2.rs is not rs and sc2.rs.name != rs.name:
        raise ValueError("sign tables belong to different root systems")
    lam = [1] * rs.n_pos
    for t in range(rs.rank, rs.n_pos):
        rt, _ = sc.extraspecial[t]
        lam[t] = lam[rt] * sc.signs[t] * sc2.signs[t]
    return lam


# -- sign table files ---------------------------------------------------------

def format_sign_table(sc: StructureConstants) -> str:
    rs = sc.rs
    lines = [
        "# extraspecial sign table",
        "# one line per non-simple positive root: coefficient vector, sign",
        "type %s" % rs.name,
        "order height-then-reverse-lex",
    ]
    for t in range(rs.rank, rs.n_pos):
        lines.append("%s %s" % (",".join(str(c) for c in rs.roots[t]),
                                "+" if sc.signs[t] == 1 else "-"))
    return "\n".join(lines) + "\n"


def parse_sign_table(text: str, rs: RootSystem) -> dict[int, int]:
    signs: dict[int, int] = {}
    declared_type = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("type "):
            declared_type = line.split()[1]
            continue
        if line.startswith("order "):
            if line.split()[1] != "height-then-reverse-lex":
                raise ValueError("unsupported root order %r" % line)
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("+", "-"):
            raise ValueError("line %d: expected 'c1,...,cn +-'" % lineno)
        vec = tuple(int(c) for c in parts[0].split(","))
        idx = rs.root_index.get(vec)
        if idx is None or idx >= rs.n_pos or idx < rs.rank:
            raise ValueError("line %d: %s is not a non-simple positive root"
                             % (lineno, parts[0]))
        signs[idx] = 1 if parts[1] == "+" else -1
    if declared_type is not None and declared_type != rs.name:
        raise ValueError("sign table is for type %s, not %s" % (declared_type, rs.name))
    return signs
