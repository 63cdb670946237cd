"""Classical-group shapes, their derived constants and the doubling setup.

A shape is (case, m, r, theta) with n = 2m + r.  The eight supported cases
are I, II, III, III', IV, IV', V-inert, V-ramified; the split unitary case
is rejected.  All matrix identities here are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebras import Algebra, Mat

CASES = ("I", "II", "III", "III'", "IV", "IV'", "V-inert", "V-ramified")

EPSILON = {"I": 1, "II": -1, "III": 1, "III'": 1, "IV": -1, "IV'": -1,
           "V-inert": -1, "V-ramified": -1}

# family letter used by formula tables that do not distinguish sub-cases
FAMILY = {"I": "I", "II": "II", "III": "III", "III'": "III", "IV": "IV",
          "IV'": "IV", "V-inert": "V", "V-ramified": "V"}


def case_family(case: str) -> str:
    if case == "V":
        return "V"
    return FAMILY[case]


@dataclass
class GroupShape:
    case: str
    m: int
    r: int
    theta: Mat | None = None
    alg: Algebra | None = None

    def __post_init__(self):
        if self.case == "V'":
            raise ValueError("split unitary (Case V') is out of scope")
        if self.case not in CASES and self.case != "V":
            raise ValueError(f"unknown case {self.case!r}")
        if self.m < 1:
            raise ValueError("Witt index m must be >= 1")
        if self.r < 0:
            raise ValueError("anisotropic rank r must be >= 0")
        if self.alg is None:
            self.alg = default_algebra(self.case)
        if self.r > 0:
            if self.theta is None:
                raise ValueError("r > 0 needs an explicit theta")
            eps = self.epsilon
            if self.theta.star() != (self.theta * eps if eps == 1 else -self.theta):
                raise ValueError("theta must satisfy theta* = eps * theta")
            if not self.alg_matrix_invertible(self.theta):
                raise ValueError("theta must be invertible")

    @property
    def n(self) -> int:
        return 2 * self.m + self.r

    @property
    def epsilon(self) -> int:
        return EPSILON.get(self.case, -1)

    @property
    def family(self) -> str:
        return case_family(self.case)

    def alg_matrix_invertible(self, x: Mat) -> bool:
        try:
            x.inverse()
            return True
        except ZeroDivisionError:
            return False


def default_algebra(case: str) -> Algebra:
    fam = case_family(case)
    if fam in ("I", "II"):
        return Algebra.field()
    if case in ("III'", "IV'"):
        return Algebra.split_quaternion()
    if fam in ("III", "IV"):
        return Algebra.quaternion(-1, -1)
    return Algebra.quadratic(-1)


@dataclass
class DerivedConstants:
    n: int
    kappa: Fraction
    d1: int
    d2: int
    d3: int
    d4: int
    iota: int | None


def kappa_of(case: str, n: int) -> Fraction:
    fam = case_family(case)
    return {
        "I": Fraction(n - 1, 2),
        "II": Fraction(n + 1, 2),
        "III": Fraction(2 * n + 1, 2),
        "IV": Fraction(2 * n - 1, 2),
        "V": Fraction(n, 2),
    }[fam]


def derive_constants(shape: GroupShape) -> DerivedConstants:
    """The constant pack (kappa, d1..d4, iota) for a shape."""
    case, fam, n = shape.case, shape.family, shape.n
    d1 = 1 if fam in ("I", "II", "V") else 2
    d2 = 1 if fam in ("I", "II") else 2
    d3 = 1 if (fam in ("I", "II") or case == "V-ramified") else 2
    d4 = 2 if case == "V-inert" else 1
    iota = {"II": 1, "IV": 4, "V": 2}.get(fam)
    return DerivedConstants(n=n, kappa=kappa_of(case, n), d1=d1, d2=d2,
                            d3=d3, d4=d4, iota=iota)


# ---------------------------------------------------------------------------
# doubling matrices


def phi_matrix(shape: GroupShape) -> Mat:
    alg, m, r, eps = shape.alg, shape.m, shape.r, shape.epsilon
    zmm = Mat.zeros(alg, m, m)
    one = Mat.identity(alg, m)
    if r == 0:
        return Mat.from_blocks([[zmm, one], [one * eps, zmm]])
    zmr, zrm = Mat.zeros(alg, m, r), Mat.zeros(alg, r, m)
    return Mat.from_blocks([
        [zmm, zmr, one],
        [zrm, shape.theta, zrm],
        [one * eps, zmr, zmm],
    ])


def j_matrix(shape: GroupShape) -> Mat:
    alg, n, eps = shape.alg, shape.n, shape.epsilon
    z = Mat.zeros(alg, n, n)
    one = Mat.identity(alg, n)
    return Mat.from_blocks([[z, one], [one * eps, z]])


def r_matrix(shape: GroupShape) -> Mat:
    alg, m, r, eps = shape.alg, shape.m, shape.r, shape.epsilon
    one_m = Mat.identity(alg, m)
    half = Fraction(1, 2)
    rows = []
    if r > 0:
        one_r = Mat.identity(alg, r)
        th_inv = shape.theta.inverse()
        zr = lambda c: Mat.zeros(alg, r, c)
        zm = lambda c: Mat.zeros(alg, m, c)
        rows = [
            [zr(m), one_r * (eps * half), zr(m), zr(m), one_r * (eps * half), zr(m)],
            [zm(m), zm(r), zm(m), zm(m), zm(r), one_m * (-eps)],
            [one_m, zm(r), zm(m), zm(m), zm(r), zm(m)],
            [zr(m), th_inv, zr(m), zr(m), -th_inv, zr(m)],
            [zm(m), zm(r), zm(m), one_m, zm(r), zm(m)],
            [zm(m), zm(r), one_m, zm(m), zm(r), zm(m)],
        ]
    else:
        zm = lambda c: Mat.zeros(alg, m, c)
        rows = [
            [zm(m), zm(m), zm(m), one_m * (-eps)],
            [one_m, zm(m), zm(m), zm(m)],
            [zm(m), zm(m), one_m, zm(m)],
            [zm(m), one_m, zm(m), zm(m)],
        ]
    return Mat.from_blocks(rows)


def delta_matrix(shape: GroupShape) -> Mat:
    alg, m, r, eps = shape.alg, shape.m, shape.r, shape.epsilon
    n = shape.n
    out = Mat.identity(alg, 2 * n)
    # block coordinates in the (r, m, m, r, m, m) layout
    o_m1 = r          # first m-block row offset
    o_m2 = r + m      # second m-block
    o_m3 = 2 * r + 2 * m  # fourth block is r; fifth starts here
    o_m4 = 2 * r + 3 * m
    for i in range(m):
        out.e[o_m3 + i][o_m2 + i] = alg.scalar(-1)
        out.e[o_m4 + i][o_m1 + i] = alg.scalar(eps)
    return out


def weyl_w(shape: GroupShape) -> Mat:
    alg, m, r, eps = shape.alg, shape.m, shape.r, shape.epsilon
    one = Mat.identity(alg, m)
    z = Mat.zeros(alg, m, m)
    if r == 0:
        return Mat.from_blocks([[z, one], [one * eps, z]])
    zmr, zrm = Mat.zeros(alg, m, r), Mat.zeros(alg, r, m)
    return Mat.from_blocks([
        [z, zmr, one],
        [zrm, Mat.identity(alg, r), zrm],
        [one * eps, zmr, z],
    ])


def build_doubling(shape: GroupShape) -> dict:
    """Assemble Phi, J_n, R, delta, w and verify R diag(Phi,-Phi) R* = J_n."""
    phi = phi_matrix(shape)
    jn = j_matrix(shape)
    rmat = r_matrix(shape)
    n = shape.n
    alg = shape.alg
    big = Mat.zeros(alg, 2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            big.e[i][j] = phi.e[i][j]
            big.e[n + i][n + j] = alg.neg(phi.e[i][j])
    check = rmat * big * rmat.star()
    if check != jn:
        raise AssertionError("doubling identity R diag(Phi,-Phi) R* = J_n failed")
    return {"Phi": phi, "J": jn, "R": rmat, "delta": delta_matrix(shape),
            "w": weyl_w(shape)}


def in_group(g: Mat, shape: GroupShape):
    """Check g Phi g* = Phi; returns (ok, first violating entry or None)."""
    phi = phi_matrix(shape)
    diff = g * phi * g.star() - phi
    for i in range(diff.rows):
        for j in range(diff.cols):
            if not shape.alg.is_zero(diff.e[i][j]):
                return False, (i, j, diff.e[i][j])
    return True, None


def embed_pair(g1: Mat, g2: Mat, shape: GroupShape, check_input=True) -> Mat:
    """Image of (g1, g2) in the doubled group, via conjugation by R.

    The result is also cross-checked against the explicit block formula,
    and satisfies h J_n h* = J_n exactly.
    """
    if check_input:
        for g in (g1, g2):
            ok, bad = in_group(g, shape)
            if not ok:
                raise ValueError(f"input not in G: (g Phi g* - Phi)[{bad[0]}][{bad[1]}] = {bad[2]}")
    alg, n = shape.alg, shape.n
    rmat = r_matrix(shape)
    big = Mat.zeros(alg, 2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            big.e[i][j] = g1.e[i][j]
            big.e[n + i][n + j] = g2.e[i][j]
    h = rmat * big * rmat.inverse()
    h2 = _embed_block_formula(g1, g2, shape)
    if h != h2:
        raise AssertionError("conjugation and block-formula embeddings disagree")
    return h


def _embed_block_formula(g1: Mat, g2: Mat, shape: GroupShape) -> Mat:
    alg, m, r, eps = shape.alg, shape.m, shape.r, shape.epsilon
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)

    def blocks(g):
        a = g.block(0, m, 0, m)
        f = g.block(0, m, m, m + r)
        b = g.block(0, m, m + r, 2 * m + r)
        h = g.block(m, m + r, 0, m)
        e = g.block(m, m + r, m, m + r)
        j = g.block(m, m + r, m + r, 2 * m + r)
        c = g.block(m + r, 2 * m + r, 0, m)
        k = g.block(m + r, 2 * m + r, m, m + r)
        d = g.block(m + r, 2 * m + r, m + r, 2 * m + r)
        return a, f, b, h, e, j, c, k, d

    a1, f1, b1, h1, e1, j1, c1, k1, d1 = blocks(g1)
    a2, f2, b2, h2, e2, j2, c2, k2, d2 = blocks(g2)

    if r > 0:
        th = shape.theta
        th_inv = th.inverse()
        row1 = [(e1 + e2) * half, -(j2 * half), h1 * (eps * half),
                (e1 - e2) * th * (eps * quarter), h2 * (eps * half), j1 * (eps * half)]
        row2 = [-k2, d2, Mat.zeros(alg, m, m), k2 * th * (eps * half), -(c2 * eps),
                Mat.zeros(alg, m, m)]
        row3 = [f1 * eps, Mat.zeros(alg, m, m), a1, f1 * th * half,
                Mat.zeros(alg, m, m), b1]
        row4 = [th_inv * (e1 - e2) * eps, th_inv * j2 * eps, th_inv * h1,
                th_inv * ((e1 + e2) * half) * th, -(th_inv * h2), th_inv * j1]
        row5 = [f2 * eps, -(b2 * eps), Mat.zeros(alg, m, m), -(f2 * th * half), a2,
                Mat.zeros(alg, m, m)]
        row6 = [k1 * eps, Mat.zeros(alg, m, m), c1, k1 * th * half,
                Mat.zeros(alg, m, m), d1]
        return Mat.from_blocks([row1, row2, row3, row4, row5, row6])
    z = Mat.zeros(alg, m, m)
    return Mat.from_blocks([
        [d2, z, -(c2 * eps), z],
        [z, a1, z, b1],
        [-(b2 * eps), z, a2, z],
        [z, c1, z, d1],
    ])


# ---------------------------------------------------------------------------
# random rational group points (for identity testing)


def _upper_unipotent(shape: GroupShape, f: Mat, b0: Mat) -> Mat:
    """[[1, f, b],[0, 1, -eps theta f*],[0,0,1]] with b solving the membership
    condition; b0 is a free element of S_m added to the particular solution."""
    alg, m, r, eps = shape.alg, shape.m, shape.r, shape.epsilon
    one = Mat.identity(alg, m)
    if r > 0:
        b = b0 - (f * shape.theta * f.star()) * (eps * Fraction(1, 2))
        j = -(shape.theta * f.star() * eps)
        return Mat.from_blocks([
            [one, f, b],
            [Mat.zeros(alg, r, m), Mat.identity(alg, r), j],
            [Mat.zeros(alg, m, m), Mat.zeros(alg, m, r), one],
        ])
    return Mat.from_blocks([[one, b0], [Mat.zeros(alg, m, m), one]])


def _levi(shape: GroupShape, a: Mat, e: Mat | None) -> Mat:
    alg, m, r = shape.alg, shape.m, shape.r
    ahat = a.inverse().star()
    if r > 0:
        z_mr, z_rm, z_mm = Mat.zeros(alg, m, r), Mat.zeros(alg, r, m), Mat.zeros(alg, m, m)
        return Mat.from_blocks([
            [a, z_mr, z_mm],
            [z_rm, e, z_rm],
            [z_mm, z_mr, ahat],
        ])
    z = Mat.zeros(alg, m, m)
    return Mat.from_blocks([[a, z], [z, ahat]])


def _random_s_matrix(shape: GroupShape, rng: random.Random, size: int) -> Mat:
    """A random element of S_m (eps b + b* = 0) with small entries."""
    alg, m, eps = shape.alg, shape.m, shape.epsilon
    out = Mat.zeros(alg, m, m)
    basis = alg.basis()
    for i in range(m):
        for j in range(i, m):
            x = alg.zero()
            for bb in basis:
                coeff = Fraction(rng.randint(-size, size), rng.choice((1, 1, 2)))
                x = alg.add(x, alg.mul(alg.scalar(coeff), bb))
            if i == j:
                # project onto {y : eps y + y^rho = 0} via y = (x - eps x^rho)/2
                y = alg.mul(alg.scalar(Fraction(1, 2)),
                            alg.add(x, alg.neg(alg.mul(alg.scalar(eps), alg.conj(x)))))
                out.e[i][i] = y
            else:
                out.e[i][j] = x
                out.e[j][i] = alg.neg(alg.mul(alg.scalar(eps), alg.conj(x)))
    return out


def _random_gl(alg: Algebra, m: int, rng: random.Random, size: int) -> Mat:
    """Random element of GL_m(D): product of elementary matrices."""
    out = Mat.identity(alg, m)
    basis = alg.basis()
    for _ in range(2 * m):
        if m == 1 or rng.random() < 0.3:
            d = Mat.identity(alg, m)
            u = alg.zero()
            for bb in basis:
                u = alg.add(u, alg.mul(alg.scalar(rng.randint(-size, size)), bb))
            if not alg.is_invertible(u):
                u = alg.one()
            d.e[0][0] = u
            out = out * d
        else:
            i, j = rng.sample(range(m), 2)
            el = Mat.identity(alg, m)
            x = alg.zero()
            for bb in basis:
                x = alg.add(x, alg.mul(alg.scalar(rng.randint(-size, size)), bb))
            el.e[i][j] = x
            out = out * el
    return out


def _random_norm_one(shape: GroupShape, rng: random.Random) -> Mat:
    """Random e with e theta e* = theta (implemented for r = 1)."""
    alg = shape.alg
    if shape.r != 1:
        raise NotImplementedError("random anisotropic part only for r <= 1")
    if alg.kind == Algebra.QUAD:
        # norm-one torus of E: (1 + t sqrt(d)) / (1 - t sqrt(d))
        t = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        den = 1 - alg.d * t * t
        e = (Fraction(1 + alg.d * t * t, 1) / den, 2 * t / den)
        return Mat(alg, [[e]])
    raise NotImplementedError("anisotropic part supported for quadratic algebra")


def random_group_element(shape: GroupShape, rng: random.Random, size: int = 2) -> Mat:
    """A random rational point of G, built from exact generators."""
    g = Mat.identity(shape.alg, shape.n)
    w = weyl_w(shape)
    for _ in range(3):
        g = g * _upper_unipotent(shape, _random_fr_matrix(shape, rng, size),
                                 _random_s_matrix(shape, rng, size))
        g = g * w
        if shape.r == 1:
            g = g * _levi(shape, _random_gl(shape.alg, shape.m, rng, size),
                          _random_norm_one(shape, rng))
        else:
            g = g * _levi(shape, _random_gl(shape.alg, shape.m, rng, size),
                          Mat.identity(shape.alg, shape.r) if shape.r else None)
    return g


def _random_fr_matrix(shape: GroupShape, rng: random.Random, size: int) -> Mat:
    alg, m, r = shape.alg, shape.m, shape.r
    if r == 0:
        return Mat.zeros(alg, m, 0)
    out = Mat.zeros(alg, m, r)
    for i in range(m):
        for j in range(r):
            acc = alg.zero()
            for bb in alg.basis():
                acc = alg.add(acc, alg.mul(alg.scalar(rng.randint(-size, size)), bb))
            out.e[i][j] = acc
    return out
