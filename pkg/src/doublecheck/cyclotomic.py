"""Exact cyclotomic arithmetic.

Elements of Q(zeta_N) are stored on the power basis 1, zeta, ..., zeta^(phi(N)-1)
after reduction modulo the N-th cyclotomic polynomial, so equality is a
coefficient comparison.  Rationals are the order-1 case.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

INF = float("inf")


def padic_val(x, p: int):
    """v_p(x) for a rational x; v_p(0) is reported as +infinity."""
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, low degree first, monic."""
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by prod of Phi_d over proper divisors d | n
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _exact_div(num, den):
    # long division of integer polynomials, exact by construction
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[len(den) - 1 + i], den[-1])
        assert r == 0
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert all(c == 0 for c in num)
    return out


def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class Cyclotomic:
    """An element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        # coeffs: mapping power-of-zeta -> rational, powers arbitrary mod order
        self.order = order
        vec = [Fraction(0)] * order if order > 1 else [Fraction(0)]
        if coeffs:
            for k, v in coeffs.items():
                vec[k % order] += Fraction(v)
        self.coeffs = tuple(_reduce_mod_cyclo(vec, order))

    @staticmethod
    def rational(x) -> "Cyclotomic":
        return Cyclotomic(1, {0: Fraction(x)})

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyclotomic":
        return Cyclotomic(n, {k % n: 1})

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        return Cyclotomic.rational(x)

    # -- basic structure -------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def promote(self, order: int) -> "Cyclotomic":
        if order == self.order:
            return self
        assert order % self.order == 0
        step = order // self.order
        return Cyclotomic(order, {k * step: c for k, c in enumerate(self.coeffs) if c})

    @staticmethod
    def _common(a: "Cyclotomic", b: "Cyclotomic"):
        n = math.lcm(a.order, b.order)
        return a.promote(n), b.promote(n), n

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        a, b, n = Cyclotomic._common(self, Cyclotomic._coerce(other))
        return Cyclotomic(n, {k: ca + cb for k, (ca, cb) in enumerate(zip(a.coeffs, b.coeffs))})

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, {k: -c for k, c in enumerate(self.coeffs)})

    def __sub__(self, other):
        return self + (-Cyclotomic._coerce(other))

    def __rsub__(self, other):
        return Cyclotomic._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, {k: c * other for k, c in enumerate(self.coeffs)})
        a, b, n = Cyclotomic._common(self, Cyclotomic._coerce(other))
        conv = [Fraction(0)] * (2 * len(a.coeffs))
        for i, ca in enumerate(a.coeffs):
            if ca == 0:
                continue
            for j, cb in enumerate(b.coeffs):
                if cb:
                    conv[i + j] += ca * cb
        return Cyclotomic(n, dict(enumerate(_fold_powers(conv, n))))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, t: int) -> "Cyclotomic":
        """Apply zeta -> zeta^t (t coprime to the order)."""
        if math.gcd(t, self.order) != 1:
            raise ValueError("galois exponent must be coprime to the order")
        return Cyclotomic(self.order, {(k * t) % self.order: c
                                       for k, c in enumerate(self.coeffs) if c})

    def conj(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^(-1)."""
        return self.galois(self.order - 1) if self.order > 1 else self

    def conjugates(self):
        return [self.galois(t) for t in range(1, self.order + 1)
                if math.gcd(t, self.order) == 1] or [self]

    def norm(self) -> Fraction:
        """Field norm down to Q (product of all Galois conjugates)."""
        out = Cyclotomic.rational(1)
        for c in self.conjugates():
            out = out * c
        return out.as_fraction()

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.as_fraction())
        conjs = self.conjugates()
        prod = Cyclotomic.rational(1)
        for c in conjs[1:]:
            prod = prod * c
        nrm = (self * prod).as_fraction()
        return prod * (Fraction(1) / nrm)

    def __truediv__(self, other):
        return self * Cyclotomic._coerce(other).inverse()

    def __rtruediv__(self, other):
        return Cyclotomic._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b, _ = Cyclotomic._common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    # -- evaluation ------------------------------------------------------

    def eval_complex(self) -> complex:
        """Embed via zeta_N -> exp(2*pi*i/N)."""
        return sum(complex(c) * cmath.exp(2j * cmath.pi * k / self.order)
                   for k, c in enumerate(self.coeffs) if c)

    def padic_valuation(self, p: int) -> Fraction:
        """Valuation at the prime above p, normalized with v(p) = 1.

        Requires the prime above p in Q(zeta_N) to be unique (p must generate
        the units modulo the prime-to-p part of N); otherwise the valuation
        depends on an embedding choice and a ValueError is raised.
        """
        if self.is_zero():
            return INF
        if self.is_rational():
            return padic_val(self.coeffs[0], p)
        n = self.order
        m = n
        while m % p == 0:
            m //= p
        units = [t for t in range(1, m + 1) if math.gcd(t, m) == 1]
        if m > 2:
            gen, seen = p % m, {1}
            x = 1
            for _ in units:
                x = (x * gen) % m
                seen.add(x)
            if len(seen & set(units)) != len(units):
                raise ValueError(
                    f"prime above {p} in Q(zeta_{n}) is not unique; "
                    "valuation needs an embedding choice")
        nrm = self.norm()
        return Fraction(padic_val(nrm, p), _phi(n))

    def __repr__(self):
        if self.is_rational():
            return f"{self.coeffs[0]}"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else (f"{c}*z{self.order}^{k}" if k > 1 else f"{c}*z{self.order}"))
        return " + ".join(terms) if terms else "0"


def _fold_powers(vec, n):
    # fold zeta^k for k >= n using zeta^n = 1, then reduce mod Phi_n
    out = [Fraction(0)] * n if n > 1 else [Fraction(0)]
    for k, c in enumerate(vec):
        if c:
            out[k % n] += c
    return _reduce_mod_cyclo(out, n)


def _reduce_mod_cyclo(vec, n):
    phi = _phi(n)
    if n == 1:
        return vec[:1]
    mod = cyclotomic_polynomial(n)
    vec = vec[:] + [Fraction(0)] * max(0, phi + 1 - len(vec))
    for i in range(len(vec) - 1, phi - 1, -1):
        c = vec[i]
        if c:
            vec[i] = Fraction(0)
            for j in range(phi):
                vec[i - phi + j] -= c * mod[j]
    return vec[:phi]


def sqrt_of_prime(p: int) -> Cyclotomic:
    """Exact sqrt(p) as a cyclotomic number, via the quadratic Gauss sum."""
    if p == 2:
        # sqrt(2) = zeta_8 + zeta_8^-1
        return Cyclotomic(8, {1: 1, 7: 1})
    g = Cyclotomic(p)
    for k in range(p):
        g = g + Cyclotomic.zeta(p, (k * k) % p)
    if p % 4 == 1:
        return g
    # p = 3 mod 4: the quadratic Gauss sum is i*sqrt(p), so divide by i
    return Cyclotomic.zeta(4, 3) * g


def sqrt_of_prime_power(q: int) -> Cyclotomic:
    """Exact sqrt(q) for a prime power q."""
    p = _smallest_prime_factor(q)
    f = 0
    while q > 1:
        q //= p
        f += 1
    out = Cyclotomic.rational(p ** (f // 2))
    if f % 2:
        out = out * sqrt_of_prime(p)
    return out


def _smallest_prime_factor(n: int) -> int:
    k = 2
    while k * k <= n:
        if n % k == 0:
            return k
        k += 1
    return n
