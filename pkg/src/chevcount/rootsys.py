"""Root systems of finite type and their Weyl groups.

Roots are represented by their integer coefficient vectors over the simple
roots.  The positive roots are kept in a canonical order: by height, then by
descending lexicographic order on coefficient vectors, which places the
simple root alpha_i at index i-1.  Indices 0..N-1 are the positive roots,
indices N..2N-1 their negatives (index N+i is -r_i).

Weyl group elements act on root indices; an element is stored as the full
permutation of the 2N root indices together with one word in the simple
reflections.  Equality and hashing use the permutation only.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

__all__ = [
    "RootSystem",
    "WeylElement",
    "JReducedElement",
    "build_root_system",
    "enumerate_j_reduced",
    "weyl_group_order",
]


# s_i(alpha_j) = alpha_j - CARTAN[i][j] * alpha_i, i.e. entry [i][j] is
# 2(alpha_i, alpha_j)/(alpha_i, alpha_i).  Bourbaki numbering throughout:
# B_n has alpha_n short, C_n has alpha_n long, E_n chains 1-3-4-5-6-7-8 with
# node 2 attached to node 4, F4 has alpha_3, alpha_4 short, G2 has alpha_1
# short.


def _cartan_matrix(family: str, n: int) -> list[list[int]]:
    m = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, a: int = -1, b: int = -1) -> None:
        m[i][j] = a
        m[j][i] = b

    if family == "A":
        for i in range(n - 1):
            bond(i, i + 1)
    elif family == "B":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -1, -2)
    elif family == "C":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -2, -1)
    elif family == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif family == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(1, 3)
    elif family == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif family == "G":
        bond(0, 1, -3, -1)
    else:
        raise ValueError("unknown family %r" % family)
    return m


_RANK_RANGE = {"A": (1, 30), "B": (2, 30), "C": (2, 30), "D": (3, 30),
               "E": (6, 8), "F": (4, 4), "G": (2, 2)}

# Degrees of the basic invariants; the Weyl group order is their product.
_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    "D": lambda n: list(range(2, 2 * n - 1, 2)) + [n],
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12],
                    7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
}


def parse_type(name: str) -> tuple[str, int]:
    name = name.strip().upper()
    if len(name) < 2 or name[0] not in _RANK_RANGE or not name[1:].isdigit():
        raise ValueError("cannot parse Cartan type %r" % name)
    family, n = name[0], int(name[1:])
    lo, hi = _RANK_RANGE[family]
    if not lo <= n <= hi:
        raise ValueError("rank %d out of range for family %s" % (n, family))
    return family, n


class RootSystem:
    """Immutable container for one irreducible root system.

    Attributes are filled once by build_root_system and then treated as
    read-only; instances are shared freely between threads.
    """

    def __init__(self, family: str, rank: int):
        self.family = family
        self.rank = rank
        self.name = "%s%d" % (family, rank)
        self.cartan = _cartan_matrix(family, rank)
        pos = _positive_closure(self.cartan)
        pos.sort(key=lambda v: (sum(v), tuple(-c for c in v)))
        self.n_pos = len(pos)
        self.roots: list[tuple[int, ...]] = pos + [tuple(-c for c in v) for v in pos]
        self.root_index = {v: i for i, v in enumerate(self.roots)}
        self.heights = [sum(v) for v in pos]
        # canonical order puts alpha_i at index i
        for i in range(rank):
            assert self.roots[i] == tuple(int(j == i) for j in range(rank))
        self.simple_perms = [self._reflection_perm(i) for i in range(rank)]
        self._norms: list | None = None

    # -- basic geometry -------------------------------------------------

    def pairing(self, vec: Sequence[int], i: int) -> int:
        """2(r, alpha_i)/(alpha_i, alpha_i) for r given by its vector."""
        row = self.cartan[i]
        return sum(c * row[j] for j, c in enumerate(vec))

    def reflect_vec(self, vec: Sequence[int], i: int) -> tuple[int, ...]:
        out = list(vec)
        out[i] -= self.pairing(vec, i)
        return tuple(out)

    def _reflection_perm(self, i: int) -> tuple[int, ...]:
        return tuple(self.root_index[self.reflect_vec(v, i)] for v in self.roots)

    def negate(self, idx: int) -> int:
        n2 = 2 * self.n_pos
        return (idx + self.n_pos) % n2

    def is_positive(self, idx: int) -> bool:
        return idx < self.n_pos

    def height(self, idx: int) -> int:
        return self.heights[idx] if idx < self.n_pos else -self.heights[idx - self.n_pos]

    def root_sum(self, i: int, j: int) -> int | None:
        """Index of r_i + r_j, or None when the sum is not a root."""
        v = tuple(a + b for a, b in zip(self.roots[i], self.roots[j]))
        return self.root_index.get(v)

    def dominance_less(self, i: int, j: int) -> bool:
        """r_i < r_j in the dominance order: r_j - r_i a nonzero sum of
        positive roots (equivalently coordinatewise <=, not equal)."""
        a, b = self.roots[i], self.roots[j]
        return a != b and all(x <= y for x, y in zip(a, b))

    def norms(self) -> list:
        """Squared lengths (alpha_i, alpha_i) as exact Fractions, extended to
        all roots; only length ratios are ever used."""
        if self._norms is None:
            from fractions import Fraction

            d = [Fraction(0)] * self.rank
            d[0] = Fraction(2)
            # propagate along bonds: d_j / d_i = cartan[i][j] / cartan[j][i]
            todo = [0]
            seen = {0}
            while todo:
                i = todo.pop()
                for j in range(self.rank):
                    if j not in seen and self.cartan[i][j] != 0:
                        d[j] = d[i] * self.cartan[i][j] / self.cartan[j][i]
                        seen.add(j)
                        todo.append(j)
            assert len(seen) == self.rank
            gram = [[d[i] * self.cartan[i][j] / 2 for j in range(self.rank)]
                    for i in range(self.rank)]
            out = []
            for v in self.roots:
                s = sum(gram[i][j] * v[i] * v[j]
                        for i in range(self.rank) for j in range(self.rank))
                out.append(s)
            self._norms = out
        return self._norms

    # -- parabolic subsystems -------------------------------------------

    def check_j(self, J: Iterable[int]) -> tuple[int, ...]:
        J = tuple(sorted(set(J)))
        for i in J:
            if not 0 <= i < self.rank:
                raise ValueError("simple root index %d out of range" % i)
        return J

    def phi_j_positive(self, J: Iterable[int]) -> list[int]:
        """Positive roots supported on the simple roots in J."""
        J = set(self.check_j(J))
        return [i for i, v in enumerate(self.roots[: self.n_pos])
                if all(c == 0 or j in J for j, c in enumerate(v))]

    def describe_root(self, idx: int) -> str:
        v = self.roots[idx]
        return "(%s)" % ",".join(str(c) for c in v)

    def __repr__(self) -> str:
        return "RootSystem(%s, %d positive roots)" % (self.name, self.n_pos)


def _positive_closure(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    rank = len(cartan)
    simples = [tuple(int(j == i) for j in range(rank)) for i in range(rank)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rank):
                pairing = sum(c * cartan[i][j] for j, c in enumerate(v))
                w = list(v)
                w[i] -= pairing
                w = tuple(w)
                if w not in seen and all(c >= 0 for c in w):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return list(seen)


_CACHE: dict[tuple[str, int], RootSystem] = {}


def build_root_system(name: str) -> RootSystem:
    family, n = parse_type(name)
    key = (family, n)
    if key not in _CACHE:
        _CACHE[key] = RootSystem(family, n)
    return _CACHE[key]


def weyl_group_order(rs: RootSystem) -> int:
    out = 1
    for d in _DEGREES[rs.family](rs.rank):
        out *= d
    return out


class WeylElement:
    """A Weyl group element: root permutation plus one witnessing word.

    Multiplication composes actions, (v*w)(r) = v(w(r)).  The stored word is
    a product expression, not necessarily reduced; reduced_word() computes one.
    """

    __slots__ = ("rs", "perm", "word")

    def __init__(self, rs: RootSystem, perm: tuple[int, ...], word: tuple[int, ...]):
        self.rs = rs
        self.perm = perm
        self.word = word

    @classmethod
    def identity(cls, rs: RootSystem) -> "WeylElement":
        return cls(rs, tuple(range(2 * rs.n_pos)), ())

    @classmethod
    def reflection(cls, rs: RootSystem, i: int) -> "WeylElement":
        return cls(rs, rs.simple_perms[i], (i,))

    @classmethod
    def from_word(cls, rs: RootSystem, word: Iterable[int]) -> "WeylElement":
        w = cls.identity(rs)
        for i in word:
            w = w * cls.reflection(rs, i)
        return w

    def act(self, idx: int) -> int:
        return self.perm[idx]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        sp, op = self.perm, other.perm
        return WeylElement(self.rs, tuple(sp[op[x]] for x in range(len(sp))),
                           self.word + other.word)

    def inverse(self) -> "WeylElement":
        perm = [0] * len(self.perm)
        for x, y in enumerate(self.perm):
            perm[y] = x
        return WeylElement(self.rs, tuple(perm), tuple(reversed(self.word)))

    @property
    def length(self) -> int:
        n = self.rs.n_pos
        return sum(1 for r in range(n) if self.perm[r] >= n)

    def inversion_roots(self) -> list[int]:
        """Positive roots sent to negative roots, in canonical order."""
        n = self.rs.n_pos
        return [r for r in range(n) if self.perm[r] >= n]

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.perm))

    def reduced_word(self) -> tuple[int, ...]:
        w = WeylElement(self.rs, self.perm, ())
        n = self.rs.n_pos
        out: list[int] = []
        while True:
            for i in range(self.rs.rank):
                if w.perm[i] >= n:  # right descent: l(w s_i) < l(w)
                    break
            else:
                assert w.is_identity()
                return tuple(reversed(out))
            out.append(i)
            w = w * WeylElement.reflection(self.rs, i)

    def is_j_reduced(self, J: Iterable[int]) -> bool:
        """l(s_j w) > l(w) for all j in J, i.e. w is the minimal length
        element of its coset W_J w."""
        n = self.rs.n_pos
        inv = self.inverse()
        return all(inv.perm[j] < n for j in self.rs.check_j(J))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self) -> int:
        return hash(self.perm)

    def __repr__(self) -> str:
        if not self.word:
            return "WeylElement(e)"
        return "WeylElement(%s)" % "*".join("s%d" % (i + 1) for i in self.word)


class JReducedElement:
    """One element of the J-reduced stream.

    Carries the reduced word, the length and the inversion set (as a bitmask
    over positive root indices); the full permutation is materialized only on
    demand via to_weyl().
    """

    __slots__ = ("rs", "word", "length", "inv_bits", "_weyl")

    def __init__(self, rs: RootSystem, word: tuple[int, ...], length: int, inv_bits: int):
        self.rs = rs
        self.word = word
        self.length = length
        self.inv_bits = inv_bits
        self._weyl: WeylElement | None = None

    def inversion_roots(self) -> list[int]:
        bits = self.inv_bits
        return [r for r in range(self.rs.n_pos) if (bits >> r) & 1]

    def to_weyl(self) -> WeylElement:
        if self._weyl is None:
            self._weyl = WeylElement.from_word(self.rs, self.word)
        return self._weyl

    @property
    def perm(self) -> tuple[int, ...]:
        return self.to_weyl().perm

    def __repr__(self) -> str:
        return "JReducedElement(len=%d, word=%s)" % (
            self.length, "*".join("s%d" % (i + 1) for i in self.word) or "e")


def enumerate_j_reduced(rs: RootSystem, J: Iterable[int]) -> Iterator[JReducedElement]:
    """Stream the minimal length representatives of the cosets W_J w.

    Each J-reduced element is yielded exactly once, with its inversion set;
    nothing is materialized beyond the traversal stack, so the E8 / D4
    quotient (3628800 elements) streams in bounded memory.
    """
    from . import _kernel

    J = rs.check_j(J)
    run = _kernel.enumerate_quotient(rs, J, psi_mask=None, want_words=True)
    for chunk in run:
        words_flat, offsets = chunk.words_flat, chunk.offsets
        for k in range(chunk.count):
            word = tuple(int(c) for c in words_flat[offsets[k]:offsets[k + 1]])
            bits = 0
            for w in range(chunk.bits.shape[1] - 1, -1, -1):
                bits = (bits << 64) | int(chunk.bits[k, w])
            yield JReducedElement(rs, word, int(chunk.lengths[k]), bits)


def _match_cartan(sub: list[list[int]], std: list[list[int]]) -> bool:
    # permutation equivalence of two small Cartan matrices by backtracking
    # on the assignment, pruning against already-placed rows
    m = len(std)
    assign: list[int] = []
    used = [False] * m

    def place(i: int) -> bool:
        if i == m:
            return True
        for cand in range(m):
            if used[cand] or std[i][i] != sub[cand][cand]:
                continue
            ok = True
            for j in range(i):
                if std[i][j] != sub[cand][assign[j]] or std[j][i] != sub[assign[j]][cand]:
                    ok = False
                    break
            if ok:
                used[cand] = True
                assign.append(cand)
                if place(i + 1):
                    return True
                assign.pop()
                used[cand] = False
        return False

    return place(0)


def subsystem_types(rs: RootSystem, J: Iterable[int]) -> list[tuple[str, int]]:
    """Classify the root subsystem generated by the simple roots in J:
    connected components of the induced diagram matched against the standard
    Cartan matrices, returned as sorted (family, rank) pairs."""
    J = rs.check_j(J)
    adj = {i: [j for j in J if j != i and rs.cartan[i][j] != 0] for i in J}
    seen: set[int] = set()
    out = []
    for start in J:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        k = 0
        while k < len(comp):
            for j in adj[comp[k]]:
                if j not in seen:
                    seen.add(j)
                    comp.append(j)
            k += 1
        comp.sort()
        sub = [[rs.cartan[a][b] for b in comp] for a in comp]
        m = len(comp)
        candidates = ["A"]
        if m >= 2:
            candidates += ["B", "C"]
        if m >= 4:
            candidates.append("D")
        if m in (6, 7, 8):
            candidates.append("E")
        if m == 4:
            candidates.append("F")
        if m == 2:
            candidates.append("G")
        for fam in candidates:
            if _match_cartan(sub, _cartan_matrix(fam, m)):
                out.append((fam, m))
                break
        else:
            raise AssertionError("unclassifiable diagram component %r" % (comp,))
    return sorted(out)


def weyl_subgroup_order(rs: RootSystem, J: Iterable[int]) -> int:
    """|W_J| as the product of the component reflection group orders."""
    out = 1
    for fam, rank in subsystem_types(rs, J):
        for d in _DEGREES[fam](rank):
            out *= d
    return out
