"""Finite residue rings: Z/p^c, quadratic extensions of it, and unit groups.

Ring elements are plain ints (Z/p^c) or int pairs (a, b) meaning a + b*x with
x^2 = d (quadratic model).  The quadratic model at level 1 with d a non-residue
is the residue field F_{p^2} of a nonsplit quaternion or inert quadratic order.
"""

from __future__ import annotations

import math
from itertools import product


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, int(p**0.5) + 1))


def _factor(n: int):
    out = {}
    k = 2
    while k * k <= n:
        while n % k == 0:
            out[k] = out.get(k, 0) + 1
            n //= k
        k += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class ZModRing:
    """Z / p^c."""

    def __init__(self, p: int, c: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p, self.c = p, c
        self.modulus = p ** c
        self.residue_cardinality = p
        self.kind = "zmod"

    def cardinality(self):
        return self.modulus

    def elements(self):
        return range(self.modulus)

    def add(self, a, b):
        return (a + b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def one(self):
        return 1 % self.modulus

    def zero(self):
        return 0

    def is_unit(self, a) -> bool:
        return math.gcd(a, self.modulus) == 1 if self.modulus > 1 else False

    def inv(self, a):
        return pow(a, -1, self.modulus)

    def units(self):
        return [a for a in self.elements() if self.is_unit(a)]

    def unit_count(self):
        if self.c == 0:
            return 1
        return self.p ** (self.c - 1) * (self.p - 1)

    def unit_generator(self):
        """A generator of the (cyclic, p odd) unit group."""
        if self.p == 2 and self.c > 2:
            raise ValueError("units of Z/2^c are not cyclic for c >= 3")
        order = self.unit_count()
        primes = list(_factor(order))
        for g in range(2, self.modulus):
            if not self.is_unit(g):
                continue
            if all(pow(g, order // q, self.modulus) != 1 for q in primes):
                return g
        raise RuntimeError("no generator found")

    def norm(self, a):   # reduced norm / trace of the trivial extension
        return a

    def trace(self, a):
        return a

    def lift(self, a) -> int:
        return a % self.modulus


class QuadRing:
    """(Z/p^c)[x] / (x^2 - d); for c = 1 and d a non-residue this is F_{p^2}."""

    def __init__(self, p: int, c: int, d: int):
        if not is_prime(p) or p == 2:
            raise ValueError("quadratic residue model needs an odd prime")
        self.p, self.c, self.d = p, c, d % (p ** c)
        self.modulus = p ** c
        self.base = ZModRing(p, c)
        self.residue_cardinality = p * p if self._nonresidue() else p
        self.kind = "quad"

    def _nonresidue(self):
        return pow(self.d, (self.p - 1) // 2, self.p) == self.p - 1

    def cardinality(self):
        return self.modulus ** 2

    def elements(self):
        return product(range(self.modulus), repeat=2)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.modulus, (a[1] + b[1]) % self.modulus)

    def mul(self, a, b):
        return ((a[0] * b[0] + self.d * a[1] * b[1]) % self.modulus,
                (a[0] * b[1] + a[1] * b[0]) % self.modulus)

    def neg(self, a):
        return ((-a[0]) % self.modulus, (-a[1]) % self.modulus)

    def one(self):
        return (1 % self.modulus, 0)

    def zero(self):
        return (0, 0)

    def conj(self, a):
        return (a[0], (-a[1]) % self.modulus)

    def norm(self, a) -> int:
        return (a[0] * a[0] - self.d * a[1] * a[1]) % self.modulus

    def trace(self, a) -> int:
        return (2 * a[0]) % self.modulus

    def is_unit(self, a) -> bool:
        return self.base.is_unit(self.norm(a))

    def inv(self, a):
        n = self.base.inv(self.norm(a))
        c = self.conj(a)
        return ((c[0] * n) % self.modulus, (c[1] * n) % self.modulus)

    def units(self):
        return [a for a in self.elements() if self.is_unit(a)]

    def unit_count(self):
        if not self._nonresidue():
            raise ValueError("unit count only for the field model")
        q2 = self.p ** 2
        return q2 ** (self.c - 1) * (q2 - 1)

    def unit_generator(self):
        if self.c != 1:
            raise ValueError("generator search only at level 1")
        order = self.unit_count()
        primes = list(_factor(order))
        for a in self.elements():
            if a == self.zero() or not self.is_unit(a):
                continue
            if all(self._pow(a, order // q) != self.one() for q in primes):
                return a
        raise RuntimeError("no generator found")

    def _pow(self, a, k):
        out = self.one()
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def lift(self, a) -> int:
        raise TypeError("no canonical integer lift for quadratic elements")


def gl_order_residue_field(m: int, q: int) -> int:
    """|GL_m(F_q)|."""
    out = 1
    for i in range(m):
        out *= q ** m - q ** i
    return out


def gl_congruence_count(m: int, ring) -> int:
    """|GL_m(O / p^c)| by the closed form q^((c-1) m^2) |GL_m(residue field)|."""
    if ring.c == 0:
        return 1
    q = ring.residue_cardinality
    if ring.kind == "quad" and ring.residue_cardinality == ring.p:
        raise ValueError("split quadratic model has no single residue field")
    return q ** ((ring.c - 1) * m * m) * gl_order_residue_field(m, q)


def gl_count_bruteforce(m: int, ring, limit: int = 10 ** 6) -> int:
    """Exhaustive count of invertible m x m matrices over the ring."""
    total = ring.cardinality() ** (m * m)
    if total > limit:
        raise ValueError(f"enumeration of {total} matrices exceeds the cap {limit}")
    if m == 1:
        return sum(1 for a in ring.elements() if ring.is_unit(a))
    if m != 2:
        raise NotImplementedError("brute-force count implemented for m <= 2")
    count = 0
    for a, b, c_, d_ in product(ring.elements(), repeat=4):
        det = ring.add(ring.mul(a, d_), ring.neg(ring.mul(b, c_)))
        if ring.is_unit(det):
            count += 1
    return count
