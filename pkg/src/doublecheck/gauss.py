"""Finite characters and Gauss sums, scalar and matrix variants.

Characters on the (cyclic) unit group of Z/p^c or F_{q^2} are specified by
their order; values are exact roots of unity and the character is extended by
zero off the units.  The additive character is u -> zeta_{p^c}^lift(tau(u)),
the lift taken in [0, p^c).

The matrix sum over Mat_m(O/p^c) is normalized by q^(-c d1 m(m-1)/2) so that
the closed form is exactly chi(nu(beta)) G(chi)^m on invertible beta.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .cyclotomic import Cyclotomic
from .residue import QuadRing, ZModRing


class FiniteCharacter:
    """A character of the unit group, given by the image exponent of a fixed
    generator; chi(g^j) = zeta_order^j."""

    def __init__(self, ring, order: int, verify_limit: int = 400,
                 rng: random.Random | None = None):
        self.ring = ring
        self.order = order
        if ring.c == 0 or ring.cardinality() == 1:
            if order != 1:
                raise ValueError("the trivial ring only carries the trivial character")
            self.generator = None
            self.log_table = {}
            self.conductor_exp = 0
            return
        total = ring.unit_count()
        if total % order:
            raise ValueError(f"order {order} does not divide |units| = {total}")
        self.generator = ring.unit_generator()
        self.log_table = {}
        x = ring.one()
        for j in range(total):
            self.log_table[x] = (j % order) if order > 1 else 0
            x = ring.mul(x, self.generator)
        self._verify_multiplicative(verify_limit, rng or random.Random(0))
        self.conductor_exp = self._conductor()

    def _verify_multiplicative(self, limit: int, rng):
        units = list(self.log_table)
        if len(units) <= limit:
            pairs = [(u, v) for u in units for v in units]
        else:
            pairs = [(rng.choice(units), rng.choice(units)) for _ in range(2000)]
        for u, v in pairs:
            lhs = self.log_table[self.ring.mul(u, v)]
            rhs = (self.log_table[u] + self.log_table[v]) % self.order
            if lhs != rhs:
                raise AssertionError(f"character table not multiplicative at {u}, {v}")

    def _conductor(self) -> int:
        """Minimal cc with chi trivial on 1 + p^cc O (0 for the trivial chi)."""
        ring = self.ring
        if self.order == 1:
            return 0
        if isinstance(ring, QuadRing):
            return ring.c  # level-1 field model: nontrivial => conductor q
        for cc in range(1, ring.c + 1):
            if all(self.log_table[(1 + ring.p ** cc * k) % ring.modulus] == 0
                   for k in range(ring.modulus // ring.p ** cc)
                   if ring.is_unit(1 + ring.p ** cc * k)):
                return cc
        return ring.c

    def exponent(self, u):
        """Log of chi(u), or None off the units."""
        return self.log_table.get(u)

    def value(self, u) -> Cyclotomic:
        e = self.log_table.get(u)
        if e is None:
            return Cyclotomic.rational(0)
        return Cyclotomic.zeta(self.order, e)

    def value_of_rational(self, x) -> Cyclotomic:
        """chi applied to a rational that is a unit at p."""
        x = Fraction(x)
        ring = self.ring
        num = x.numerator % ring.modulus
        den = x.denominator % ring.modulus
        if not (ring.is_unit(num % ring.modulus) and ring.is_unit(den)):
            return Cyclotomic.rational(0)
        return self.value(ring.mul(num, ring.inv(den)))

    def inverse_character(self) -> "FiniteCharacter":
        out = FiniteCharacter.__new__(FiniteCharacter)
        out.ring, out.order = self.ring, self.order
        out.generator = self.generator
        out.log_table = {u: (-e) % self.order for u, e in self.log_table.items()}
        out.conductor_exp = self.conductor_exp
        return out

    def is_primitive(self) -> bool:
        return self.conductor_exp == getattr(self.ring, "c", 0)


# ---------------------------------------------------------------------------
# scalar Gauss sums


def gauss_sum(chi: FiniteCharacter) -> Cyclotomic:
    """G(chi) = sum over the residue ring of chi(nu(u)) e(tau(u)/varpi^c)."""
    ring = chi.ring
    if getattr(ring, "c", 0) == 0 or ring.cardinality() == 1:
        return Cyclotomic.rational(1)
    if isinstance(ring, ZModRing):
        pc = ring.modulus
        order = math.lcm(chi.order, pc)
        coeffs = {}
        for u, e in chi.log_table.items():
            k = (e * (order // chi.order) + u * (order // pc)) % order
            coeffs[k] = coeffs.get(k, 0) + 1
        return Cyclotomic(order, coeffs)
    if isinstance(ring, QuadRing):
        if ring.c != 1:
            raise NotImplementedError("quadratic residue model only at level 1")
        p = ring.p
        order = math.lcm(chi.order, p)
        coeffs = {}
        for u in ring.elements():
            e = chi.log_table.get(u)
            if e is None:
                continue
            t = ring.trace(u) % p
            k = (e * (order // chi.order) + t * (order // p)) % order
            coeffs[k] = coeffs.get(k, 0) + 1
        return Cyclotomic(order, coeffs)
    raise TypeError(f"unsupported ring {ring!r}")


def gauss_sum_norm_twist(chi_base: FiniteCharacter, model: QuadRing) -> Cyclotomic:
    """Gauss sum of chi composed with the norm, over the F_{q^2}-model of a
    nonsplit quaternion residue ring (level 1 only)."""
    if model.c != 1:
        raise NotImplementedError("nonsplit quaternion model only at level 1")
    p = model.p
    order = math.lcm(chi_base.order, p)
    coeffs = {}
    for u in model.elements():
        nu = model.norm(u) % p
        e = chi_base.log_table.get(nu)
        if e is None:
            continue
        t = model.trace(u) % p
        k = (e * (order // chi_base.order) + t * (order // p)) % order
        coeffs[k] = coeffs.get(k, 0) + 1
    return Cyclotomic(order, coeffs)


def global_gauss(local_sums) -> Cyclotomic:
    """Product of local Gauss sums (the empty product is 1)."""
    out = Cyclotomic.rational(1)
    for g in local_sums:
        out = out * g
    return out


# ---------------------------------------------------------------------------
# matrix Gauss sums


def _hist_to_cyclotomic(hist: np.ndarray, chi: FiniteCharacter, pc: int) -> Cyclotomic:
    order = math.lcm(chi.order, pc)
    coeffs = {}
    step_chi, step_add = order // chi.order, order // pc
    for v in range(hist.shape[0]):
        e = chi.log_table.get(v)
        if e is None:
            continue
        row = hist[v]
        for t in range(pc):
            cnt = int(row[t])
            if cnt:
                k = (e * step_chi + t * step_add) % order
                coeffs[k] = coeffs.get(k, 0) + cnt
    return Cyclotomic(order, coeffs)


def matrix_gauss_bruteforce(chi: FiniteCharacter, beta, m: int, d1: int = 1,
                            size_cap: int = 10 ** 7) -> Cyclotomic:
    """q^(-c d1 m(m-1)/2) * sum over Mat_m(O/p^c) of chi(nu(u)) e(tau(beta u)).

    beta is an m x m integer matrix for the scalar ring, or a matrix of ring
    pairs for the quadratic model.
    """
    ring = chi.ring
    if isinstance(ring, ZModRing):
        pc = ring.modulus
        if pc ** (m * m) > size_cap:
            raise ValueError(f"{pc ** (m*m)} matrices exceed the enumeration cap")
        if m == 1:
            b = int(beta[0][0]) % pc
            hist = np.zeros((pc, pc), dtype=np.int64)
            u = np.arange(pc, dtype=np.int64)
            np.add.at(hist, (u, (b * u) % pc), 1)
        elif m == 2:
            b11, b12 = int(beta[0][0]) % pc, int(beta[0][1]) % pc
            b21, b22 = int(beta[1][0]) % pc, int(beta[1][1]) % pc
            hist = np.zeros((pc, pc), dtype=np.int64)
            rng_ = np.arange(pc, dtype=np.int64)
            bb, cc, dd = np.meshgrid(rng_, rng_, rng_, indexing="ij")
            bb, cc, dd = bb.ravel(), cc.ravel(), dd.ravel()
            for a in range(pc):
                det = (a * dd - bb * cc) % pc
                # tr(beta u) for u = [[a,b],[c,d]]: b11 a + b12 c + b21 b + b22 d
                tr = (b11 * a + b12 * cc + b21 * bb + b22 * dd) % pc
                np.add.at(hist, (det, tr), 1)
        else:
            raise NotImplementedError("matrix Gauss sums implemented for m <= 2")
        out = _hist_to_cyclotomic(hist, chi, pc)
        q, c = ring.p, ring.c
        return out * Fraction(1, q ** (c * d1 * (m * (m - 1) // 2)))
    raise TypeError("scalar brute force needs a Z/p^c character; "
                    "use matrix_gauss_bruteforce_quad for the F_q^2 model")


def matrix_gauss_bruteforce_quad(chi_base: FiniteCharacter, model: QuadRing,
                                 beta, m: int, d1: int = 2,
                                 size_cap: int = 10 ** 7) -> Cyclotomic:
    """The nonsplit-quaternion variant over Mat_m(F_{q^2}), m <= 2."""
    if model.c != 1:
        raise NotImplementedError("quadratic model only at level 1")
    p = model.p
    card = model.cardinality()
    if card ** (m * m) > size_cap:
        raise ValueError("enumeration cap exceeded")
    hist = np.zeros((p, p), dtype=np.int64)
    if m == 1:
        b = beta[0][0]
        for u in model.elements():
            nu = model.norm(u) % p
            t = model.trace(model.mul(b, u)) % p
            hist[nu, t] += 1
    elif m == 2:
        els = list(model.elements())
        for a in els:
            for bb in els:
                for cc in els:
                    for dd in els:
                        det = model.add(model.mul(a, dd), model.neg(model.mul(bb, cc)))
                        nu = model.norm(det) % p
                        tr = model.add(
                            model.add(model.mul(beta[0][0], a), model.mul(beta[0][1], cc)),
                            model.add(model.mul(beta[1][0], bb), model.mul(beta[1][1], dd)))
                        hist[nu, model.trace(tr) % p] += 1
    else:
        raise NotImplementedError("m <= 2")
    out = _hist_to_cyclotomic(hist, chi_base, p)
    return out * Fraction(1, p ** (1 * d1 * (m * (m - 1) // 2)))


def matrix_gauss_closed(chi: FiniteCharacter, beta, m: int,
                        model: QuadRing | None = None) -> Cyclotomic:
    """chi(nu(beta)) G(chi)^m on invertible beta, 0 otherwise."""
    if model is not None:
        g = gauss_sum_norm_twist(chi, model)
        det = _det_ring(model, beta, m)
        nu = model.norm(det) % model.p
        e = chi.log_table.get(nu)
        if e is None:
            return Cyclotomic.rational(0)
        return Cyclotomic.zeta(chi.order, e) * g ** m
    ring = chi.ring
    det = _det_ring(ring, [[int(x) % ring.modulus for x in row] for row in beta], m)
    if not ring.is_unit(det):
        return Cyclotomic.rational(0)
    return chi.value(det) * gauss_sum(chi) ** m


def _det_ring(ring, beta, m: int):
    if m == 1:
        return beta[0][0]
    if m == 2:
        return ring.add(ring.mul(beta[0][0], beta[1][1]),
                        ring.neg(ring.mul(beta[0][1], beta[1][0]))) \
            if not isinstance(ring, ZModRing) else \
            (beta[0][0] * beta[1][1] - beta[0][1] * beta[1][0]) % ring.modulus
    raise NotImplementedError("m <= 2")
