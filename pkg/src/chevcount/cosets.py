"""Right-coset representatives of parabolic subgroups.

For J a set of simple roots, every right coset of the parabolic subgroup
P_J has a unique representative w_dot * prod x_r(a_r), where w runs over the
J-reduced elements of the Weyl group, the product is over the inversion
roots of w (positive r with w(r) negative), and the a_r run over F_q.  A
CosetFamily bundles the q^{l(w)} representatives sharing one w.

Each family fixes the ordering of all positive roots that the downstream
symbolic computation requires: the roots kept positive by w first, the
inversion roots last, both parts in the canonical order.  Positions are
1-based; the inversion roots occupy positions l+1..N where l = N - l(w).
"""

from __future__ import annotations

from typing import Iterable, Iterator

from . import _kernel
from .rootsys import (RootSystem, WeylElement, subsystem_types,
                      weyl_group_order, weyl_subgroup_order, _DEGREES)

__all__ = ["CosetFamily", "FamilyStream", "coset_families", "parabolic_index",
           "poincare_index"]


class CosetFamily:
    """The q^{l(w)} coset representatives attached to one J-reduced w."""

    __slots__ = ("rs", "J", "word", "length", "inv_bits", "_inv_roots")

    def __init__(self, rs: RootSystem, J: tuple, word: tuple, length: int, inv_bits: int):
        self.rs = rs
        self.J = J
        self.word = word
        self.length = length
        self.inv_bits = inv_bits
        self._inv_roots = None

    @property
    def inversion_roots(self) -> tuple:
        """Positive roots sent negative by w, in canonical order; the factors
        of the representatives and the indeterminate positions l+1..N."""
        if self._inv_roots is None:
            bits = self.inv_bits
            self._inv_roots = tuple(i for i in range(self.rs.n_pos) if bits >> i & 1)
        return self._inv_roots

    @property
    def split(self) -> int:
        """l = number of positive roots kept positive by w."""
        return self.rs.n_pos - self.length

    def root_order(self) -> list:
        """r_1..r_N: non-inversion roots then inversion roots."""
        bits = self.inv_bits
        keep = [i for i in range(self.rs.n_pos) if not bits >> i & 1]
        return keep + list(self.inversion_roots)

    def order_key(self) -> list:
        """Sort position of each positive root under this family's order."""
        pos = [0] * self.rs.n_pos
        for position, root in enumerate(self.root_order()):
            pos[root] = position
        return pos

    def weyl(self) -> WeylElement:
        return WeylElement.from_word(self.rs, self.word)

    def coset_count(self, q: int) -> int:
        return q ** self.length

    def __repr__(self) -> str:
        return "CosetFamily(w=%s, l(w)=%d)" % (list(self.word), self.length)


class FamilyStream:
    """Iterates CosetFamily records for all J-reduced w, optionally skipping
    families whose inversion bits meet a mask; the run statistics (histogram
    over all lengths, number emitted) stay available afterwards."""

    def __init__(self, rs: RootSystem, J: Iterable[int], psi_mask: int | None = None,
                 want_words: bool = True):
        self.rs = rs
        self.J = rs.check_j(J)
        self.run = _kernel.enumerate_quotient(rs, self.J, psi_mask=psi_mask,
                                              want_words=want_words)
        self._want_words = want_words

    def __iter__(self) -> Iterator[CosetFamily]:
        rs, J = self.rs, self.J
        for chunk in self.run:
            words_flat, offsets = chunk.words_flat, chunk.offsets
            bits_words = chunk.bits.shape[1]
            for k in range(chunk.count):
                bits = 0
                for w in range(bits_words - 1, -1, -1):
                    bits = (bits << 64) | int(chunk.bits[k, w])
                if words_flat is not None:
                    word = tuple(int(c) for c in words_flat[offsets[k]:offsets[k + 1]])
                else:
                    word = None
                yield CosetFamily(rs, J, word, int(chunk.lengths[k]), bits)

    @property
    def histogram(self):
        return self.run.histogram

    @property
    def emitted(self) -> int:
        return self.run.emitted

    @property
    def total(self) -> int:
        return self.run.total


def coset_families(rs: RootSystem, J: Iterable[int]) -> Iterator[CosetFamily]:
    """All families for the parabolic given by J, in enumeration order."""
    return iter(FamilyStream(rs, J))


def parabolic_index(rs: RootSystem, J: Iterable[int], q: int) -> int:
    """[G(q) : P_J(q)] = sum of q^{l(w)} over J-reduced w, from the length
    histogram of the quotient enumeration."""
    J = rs.check_j(J)
    run = _kernel.enumerate_quotient(rs, J, want_words=False, emit=False)
    run.drain()
    total = 0
    qp = 1
    for count in run.histogram.tolist():
        total += count * qp
        qp *= q
    return total


def poincare_index(rs: RootSystem, J: Iterable[int], q: int) -> int:
    """The same index from the degrees of the reflection groups: the quotient
    of Poincare polynomials evaluated at q, computed without enumerating
    anything; serves as an independent cross-check."""
    J = rs.check_j(J)
    num = 1
    n_num = 0
    for d in _DEGREES[rs.family](rs.rank):
        num *= (q ** d - 1)
        n_num += 1
    den = 1
    n_den = 0
    for fam, rank in subsystem_types(rs, J):
        for d in _DEGREES[fam](rank):
            den *= (q ** d - 1)
            n_den += 1
    den *= (q - 1) ** (n_num - n_den)
    quotient, rem = divmod(num, den)
    assert rem == 0, "Poincare quotient must be integral"
    return quotient
