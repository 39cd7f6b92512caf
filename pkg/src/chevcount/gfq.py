"""Arithmetic in F_q for q = p^k up to 2^16.

Elements are plain integers in [0, q): the integer n encodes the polynomial
sum(digit_i * t^i) where n = sum(digit_i * p^i), reduced modulo a monic
irreducible modulus of degree k.  This base-p packing is also the on-disk
and CLI serialization.

The default modulus is the lexicographically least monic irreducible of
degree k, comparing coefficient tuples written from the leading term down,
e.g. t^3+t+1 for F_8.  A different monic irreducible can be passed in.

Multiplication and inversion in extension fields go through discrete
log/antilog tables built on first use (q is capped, so the tables are small).
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = ["Field", "GF", "field_for_order"]

Q_CAP = 1 << 16


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# polynomials over F_p as tuples of coefficients, constant term first


def _poly_trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(out, mod, p)


def _poly_rem(a: Sequence[int], mod: Sequence[int], p: int) -> tuple[int, ...]:
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, m in enumerate(mod):
            a[shift + i] = (a[shift + i] - factor * m) % p
        a.pop()
    return _poly_trim(a)


def _monic_polys(p: int, deg: int) -> Iterable[tuple[int, ...]]:
    """All monic polynomials of the given degree (order irrelevant here)."""
    for n in range(p ** deg):
        digits = []
        m = n
        for _ in range(deg):
            digits.append(m % p)
            m //= p
        yield tuple(digits) + (1,)


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    deg = len(f) - 1
    if deg == 1:
        return True
    if f[0] == 0:  # divisible by t
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_rem(f, g, p):
                return False
    return True


def _default_modulus(p: int, k: int) -> tuple[int, ...]:
    for n in range(p ** k):
        # descending-order tuple (1, a_{k-1}, ..., a_0) enumerated in
        # ascending lexicographic order
        digits = []
        m = n
        for _ in range(k):
            digits.append(m % p)
            m //= p
        # digits[0] = a_0 ... digits[k-1] = a_{k-1}; n orders by a_0 fastest,
        # which is exactly lex order on (a_{k-1}, ..., a_0)
        f = tuple(digits) + (1,)
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


class Field:
    """F_q with q = p^k <= 2^16; elements are ints in [0, q)."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ValueError("p = %d is not prime" % p)
        if k < 1:
            raise ValueError("k must be >= 1")
        q = p ** k
        if q > Q_CAP:
            raise ValueError("q = %d exceeds the supported cap %d" % (q, Q_CAP))
        self.p = p
        self.k = k
        self.q = q
        if k == 1:
            self.modulus = (0, 1) if modulus is None else tuple(c % p for c in modulus)
        else:
            if modulus is None:
                self.modulus = _default_modulus(p, k)
            else:
                m = tuple(c % p for c in modulus)
                if len(m) != k + 1 or m[-1] != 1:
                    raise ValueError("modulus must be monic of degree k")
                if not _is_irreducible(m, p):
                    raise ValueError("modulus is not irreducible over F_%d" % p)
                self.modulus = m
        self.zero = 0
        self.one = 1 % q
        self._log: list[int] | None = None
        self._exp: list[int] | None = None

    # -- encoding ---------------------------------------------------------

    def to_digits(self, a: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.k):
            digits.append(a % self.p)
            a //= self.p
        return tuple(digits)

    def from_digits(self, digits: Sequence[int]) -> int:
        a = 0
        for d in reversed(list(digits)):
            a = a * self.p + d % self.p
        return a

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError("%r is not an element of %s" % (a, self))
        return a

    def from_int(self, n: int) -> int:
        """Image of the rational integer n under Z -> F_p c F_q."""
        return n % self.p

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        p = self.p
        out = 0
        mult = 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        log, exp = self._tables()
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in %s" % self)
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        log, exp = self._tables()
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        log, exp = self._tables()
        return exp[log[a] * e % (self.q - 1)]

    def _mul_slow(self, a: int, b: int) -> int:
        return self.from_digits(
            _poly_mulmod(self.to_digits(a), self.to_digits(b), self.modulus, self.p)
            + (0,) * self.k)

    def _tables(self) -> tuple[list[int], list[int]]:
        if self._log is None:
            q = self.q
            for g in range(2, q):
                seen = [0] * q
                exp = []
                x = 1
                for _ in range(q - 1):
                    if seen[x]:
                        break
                    seen[x] = 1
                    exp.append(x)
                    x = self._mul_slow(x, g)
                if len(exp) == q - 1:
                    log = [0] * q
                    for e, v in enumerate(exp):
                        log[v] = e
                    self._exp, self._log = exp, log
                    break
            else:
                raise AssertionError("no generator found")
        return self._log, self._exp

    def elements(self) -> range:
        return range(self.q)

    # -- display ------------------------------------------------------------

    def format_element(self, a: int) -> str:
        return str(self.check(a))

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.k, -1, -1):
            c = self.modulus[i] if i < len(self.modulus) else 0
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "t" if i == 1 else "t^%d" % i
                terms.append(var if c == 1 else "%d*%s" % (c, var))
        return "+".join(terms)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Field)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return "GF(%d)" % self.p
        return "GF(%d^%d, %s)" % (self.p, self.k, self.modulus_str())


def GF(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> Field:
    return Field(p, k, modulus)


def field_for_order(q: int) -> Field:
    """The field with q elements, factoring q as a prime power."""
    if q < 2:
        raise ValueError("field order must be at least 2")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError("%d is not a prime power" % q)
    return GF(p, k)
