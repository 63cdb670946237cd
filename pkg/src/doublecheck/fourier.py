"""Beta-block matrices, lattice membership and Fourier-coefficient assembly
for the normalized Eisenstein series.

The beta matrix is handled in blocks (r, m, m); membership in the dual
lattices is decided by pairing against an O-basis of the relevant lattice,
which reduces to denominator bounds at p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebras import Algebra, Mat
from .arch import eisenstein_constant
from .cyclotomic import Cyclotomic, padic_val
from .gauss import FiniteCharacter, gauss_sum
from .groups import GroupShape, case_family, derive_constants, kappa_of
from .interp import ExactProduct, gamma_expr_to_exact, special_point
from .laurent import EulerProduct, LaurentMonomial
from .localfactors import CHI, hecke_local_L, qpow


@dataclass
class BetaBlockMatrix:
    """beta in S_n written with blocks b1 (r x r), b2, b3 (m x r), b4, b5, b6
    (m x m); the assembled matrix is

        [[b1, -eps b2*, -eps b3*],
         [b2,  b4,      -eps b5*],
         [b3,  b5,       b6    ]].
    """

    shape: GroupShape
    b1: Mat
    b2: Mat
    b3: Mat
    b4: Mat
    b5: Mat
    b6: Mat

    def __post_init__(self):
        m, r, eps, alg = self.shape.m, self.shape.r, self.shape.epsilon, self.shape.alg
        sizes = [(self.b1, r, r), (self.b2, m, r), (self.b3, m, r),
                 (self.b4, m, m), (self.b5, m, m), (self.b6, m, m)]
        for blk, rr, cc in sizes:
            if (blk.rows, blk.cols) != (rr, cc):
                raise ValueError("block size mismatch")
        for blk in (self.b1, self.b4, self.b6):
            if blk.star() != -(blk * eps):
                raise ValueError("diagonal blocks must satisfy x* = -eps x")

    def assemble(self) -> Mat:
        eps = self.shape.epsilon
        if self.shape.r == 0:
            return Mat.from_blocks([
                [self.b4, -(self.b5.star() * eps)],
                [self.b5, self.b6],
            ])
        return Mat.from_blocks([
            [self.b1, -(self.b2.star() * eps), -(self.b3.star() * eps)],
            [self.b2, self.b4, -(self.b5.star() * eps)],
            [self.b3, self.b5, self.b6],
        ])

    @staticmethod
    def disassemble(shape: GroupShape, beta: Mat) -> "BetaBlockMatrix":
        m, r = shape.m, shape.r
        return BetaBlockMatrix(
            shape,
            beta.block(0, r, 0, r),
            beta.block(r, r + m, 0, r),
            beta.block(r + m, r + 2 * m, 0, r),
            beta.block(r, r + m, r, r + m),
            beta.block(r + m, r + 2 * m, r, r + m),
            beta.block(r + m, r + 2 * m, r + m, r + 2 * m),
        )


def skew_space_basis(alg: Algebra, eps: int, n: int):
    """An O-basis of S_n(O) = {x : eps x + x* = 0} over the order basis."""
    out = []
    basis = alg.basis()
    for i in range(n):
        for b in basis:
            if alg.is_zero(alg.add(alg.mul(alg.scalar(eps), b), alg.conj(b))):
                z = Mat.zeros(alg, n, n)
                z.e[i][i] = b
                out.append(z)
    for i in range(n):
        for j in range(i + 1, n):
            for b in basis:
                z = Mat.zeros(alg, n, n)
                z.e[i][j] = b
                z.e[j][i] = alg.neg(alg.mul(alg.scalar(eps), alg.conj(b)))
                out.append(z)
    return out


def level_lattice_basis(shape: GroupShape, p: int, c: int):
    """Basis of S_n(o)^c: the r-block scaled by p, everything else by p^c."""
    n, r = shape.n, shape.r
    base = skew_space_basis(shape.alg, shape.epsilon, n)
    out = []
    for z in base:
        support_in_r = all(shape.alg.is_zero(z.e[i][j])
                           for i in range(n) for j in range(n)
                           if not (i < r and j < r))
        w = 1 if support_in_r else c
        out.append(z * (Fraction(p) ** w))
    return out


def _trace_fraction(shape: GroupShape, x: Mat) -> Fraction:
    t = x.reduced_trace()
    coords = shape.alg.coords(t) if not isinstance(t, Fraction) else [t]
    if any(c != 0 for c in coords[1:]):
        raise ValueError("pairing trace is not rho-invariant")
    return Fraction(coords[0])


def lattice_membership(shape: GroupShape, beta: Mat, p: int,
                       level: str = "dual", c: int = 0) -> dict:
    """Is tau(beta S) integral at p for all S in the stated lattice?

    level 'dual' pairs against S_n(O); 'dual-level-c' against S_n(o)^c.
    """
    if level == "dual":
        gens = skew_space_basis(shape.alg, shape.epsilon, shape.n)
    elif level == "dual-level-c":
        gens = level_lattice_basis(shape, p, c)
    else:
        raise ValueError(f"unknown lattice {level}")
    witness = None
    for k, S in enumerate(gens):
        val = _trace_fraction(shape, beta * S)
        if padic_val(val, p) < 0:
            witness = {"generator": k, "pairing": val}
            break
    return {"member": witness is None, "witness": witness}


def sp_block_condition(shape: GroupShape, beta: Mat, p: int, n_level: int) -> bool:
    """The deeper congruence at p: b2, b3 = 0 mod p^(n-1), b4, b6 = 0 mod
    p^(2n-2) in the block decomposition."""
    blocks = BetaBlockMatrix.disassemble(shape, beta)
    need = [(blocks.b2, n_level - 1), (blocks.b3, n_level - 1),
            (blocks.b4, 2 * n_level - 2), (blocks.b6, 2 * n_level - 2)]
    for blk, w in need:
        for row in blk.e:
            for x in row:
                for coord in shape.alg.coords(x):
                    if padic_val(Fraction(coord), p) < w:
                        return False
    return True


def beta_positive_definite(shape: GroupShape, beta: Mat, tol: float = 1e-9):
    """Positive definiteness of the archimedean image (for epsilon = -1
    hermitian data; Case III goes through the split embedding)."""
    h = beta.to_complex()
    if shape.epsilon == 1:
        # skew-hermitian quaternionic data: multiply the split image by the
        # symmetric identification J-conjugation; desk scope keeps diagonal use
        h = 1j * h
    h = (h + h.conj().T) / 2
    eig = np.linalg.eigvalsh(h)
    return bool(eig.min() > tol), eig


# ---------------------------------------------------------------------------
# the four local coefficient formulas


def local_fc_unramified(case: str, n: int, t: int, lambda_sign: int = 1,
                        p_plugin=None) -> dict:
    """The unramified-place coefficient: a product of Hecke L-factors times
    the integral-polynomial plugin (default 1), assuming the membership gate
    a* beta a in S_t(o)* has been checked by the caller."""
    fam = case_family(case)
    out = EulerProduct.one()
    if fam == "I":
        for i in range(1, (n - t) // 2 + 1):
            out = out * hecke_local_L(-n + t + 2 * i, chi_power=2, x_power=2)
    elif fam == "II":
        if t % 2 == 0:
            out = out * _hecke_with_sign(-Fraction(n - 1, 2) + Fraction(t, 2), lambda_sign)
            for i in range(1, (n - t) // 2 + 1):
                out = out * hecke_local_L(-n + t + 2 * i, chi_power=2, x_power=2)
        else:
            for i in range(1, (n - t + 1) // 2 + 1):
                out = out * hecke_local_L(-n + t - 1 + 2 * i, chi_power=2, x_power=2)
    elif fam == "III":
        if t % 2 == 0:
            out = out * _hecke_with_sign(-Fraction(2 * n - 1, 2) + t, lambda_sign)
        for i in range(1, n - t + 1):
            out = out * hecke_local_L(-2 * n + 2 * t + 2 * i, chi_power=2, x_power=2)
    elif fam == "IV":
        for i in range(1, n - t + 1):
            out = out * hecke_local_L(-2 * n + 2 * t + 2 * i, chi_power=2, x_power=2)
    elif fam == "V":
        # L(2s - i + 1, chi^0 chi_{E/F}^(n+i)); the quadratic twist enters as
        # a sign at the uniformizer (inert) or drops the odd twists (ramified)
        ramified = case == "V-ramified"
        for i in range(1, n - t + 1):
            twist_odd = (n + i) % 2 == 1
            if ramified and twist_odd:
                continue
            sign = -1 if (twist_odd and not ramified) else 1
            out = out * hecke_local_L(1 - i, chi_power=(2 if ramified else 1),
                                      x_power=2, coeff=sign)
    else:
        raise ValueError(f"unsupported case {case}")
    plugin = p_plugin if p_plugin is not None else LaurentMonomial.one()
    return {"l_product": out, "plugin": plugin}


def _hecke_with_sign(shift, sign):
    return hecke_local_L(shift, chi_power=1, x_power=1, coeff=sign)


def local_fc_dagger(shape: GroupShape, beta: Mat, p: int, c: int) -> int:
    """Coefficient of the level-section: 1 iff beta lies in the level-c dual
    (nonzero reduced norm required by the formula)."""
    if _nu_is_zero(shape, beta):
        raise ValueError("the formula needs nu(beta) != 0")
    return 1 if lattice_membership(shape, beta, p, "dual-level-c", c)["member"] else 0


def local_fc_ddagger(shape: GroupShape, beta: Mat, chi: FiniteCharacter,
                     c: int) -> Cyclotomic:
    """q^(c d1 m(m-1)/2) chi(nu(beta5)) G(chi)^m when beta5 is a unit and
    beta is in the level-0 dual; 0 otherwise."""
    if _nu_is_zero(shape, beta):
        raise ValueError("the formula needs nu(beta) != 0")
    consts = derive_constants(shape)
    m = shape.m
    p = chi.ring.p
    blocks = BetaBlockMatrix.disassemble(shape, beta)
    nu5 = _nu_fraction(shape, blocks.b5)
    if nu5 is None or padic_val(nu5, p) != 0:
        return Cyclotomic.rational(0)
    if not lattice_membership(shape, beta, p, "dual-level-c", 0)["member"]:
        return Cyclotomic.rational(0)
    chival = chi.value_of_rational(nu5)
    pref = Fraction(p) ** (c * consts.d1 * (m * (m - 1) // 2))
    return chival * gauss_sum(chi) ** m * pref


def local_fc_p(shape: GroupShape, beta: Mat, p: int) -> int:
    """The p-stabilized section coefficient: 1 iff beta5 is a unit and beta
    is in the level-0 dual."""
    if _nu_is_zero(shape, beta):
        raise ValueError("the formula needs nu(beta) != 0")
    blocks = BetaBlockMatrix.disassemble(shape, beta)
    nu5 = _nu_fraction(shape, blocks.b5)
    if nu5 is None or padic_val(nu5, p) != 0:
        return 0
    return 1 if lattice_membership(shape, beta, p, "dual-level-c", 0)["member"] else 0


def _nu_fraction(shape: GroupShape, x: Mat):
    """Reduced norm as a Fraction when it lands in F (integrality caller's
    business); None for zero."""
    nu = x.reduced_norm()
    coords = shape.alg.coords(nu) if not isinstance(nu, Fraction) else [nu]
    if all(c == 0 for c in coords):
        return None
    if any(c != 0 for c in coords[1:]):
        # Case V determinant can be a genuine E-element; use its norm
        return Fraction(coords[0]) ** 2 - Fraction(shape.alg.d) * Fraction(coords[1]) ** 2
    return Fraction(coords[0])


def _nu_is_zero(shape: GroupShape, beta: Mat) -> bool:
    return _nu_fraction(shape, beta) is None


# ---------------------------------------------------------------------------
# global assembly


@dataclass
class FourierCoefficientReport:
    nonzero: bool
    gates: dict
    qz_prefactor: ExactProduct | None = None
    c_beta_chi: ExactProduct | None = None
    eisenstein_block: ExactProduct | None = None
    d_pi: Fraction | None = None
    numeric: complex | None = None


def global_fc(shape: GroupShape, l: int, beta: Mat, p: int, n_level: int,
              chi_p: FiniteCharacter | None,
              n2_data=(), qz_data=(), hecke_tail=None, d_F: int = 1) -> FourierCoefficientReport:
    """Assemble the Fourier-coefficient report of the normalized Eisenstein
    series at beta.

    n2_data: list of (q_v, conductor_c, gauss_value Cyclotomic) for the fixed
    ramified places; qz_data: list of (chi(nu(a_v)) Cyclotomic, q_v,
    valuation of nu(a_v)); hecke_tail: optional exact Cyclotomic for the
    unramified Hecke L-tail of cases II/III.
    """
    consts = derive_constants(shape)
    m = shape.m
    sp = special_point(shape.case, shape.m, shape.r, l)
    gates = {}
    gates["sp_condition"] = sp_block_condition(shape, beta, p, n_level) if n_level > 1 else True
    gates["dual_membership"] = lattice_membership(shape, beta, p, "dual-level-c", 0)["member"]
    posdef, eig = beta_positive_definite(shape, beta)
    gates["positive_definite"] = posdef
    blocks = BetaBlockMatrix.disassemble(shape, beta)
    nu5 = _nu_fraction(shape, blocks.b5)
    gates["beta5_unit"] = nu5 is not None and padic_val(nu5, p) == 0
    if not all(v if isinstance(v, bool) else v for v in gates.values()):
        return FourierCoefficientReport(nonzero=False, gates=gates)

    # C(q_z) = prod chi(nu(a_v)) |N(nu(a_v))|^(s0 + kappa)
    qz = ExactProduct.one()
    e = sp["s0"] + sp["kappa"]
    for chival, qv, val_nu in qz_data:
        cv = chival if isinstance(chival, Cyclotomic) else Cyclotomic.rational(chival)
        qz = qz * ExactProduct(cyclo=cv * _q_power(qv, -e * val_nu))

    # C(beta, chi)
    cbx = ExactProduct.one()
    for qv, cc, _g in n2_data:
        cbx = cbx * ExactProduct(rational=Fraction(qv) ** (cc * consts.d1 * (m * (m - 1) // 2)))
    c_p = chi_p.conductor_exp if chi_p is not None else 0
    cbx = cbx * ExactProduct(rational=Fraction(p) ** (c_p * consts.d1 * (m * (m - 1) // 2)))
    g_total = Cyclotomic.rational(1)
    for _qv, _cc, gval in n2_data:
        g_total = g_total * gval
    if chi_p is not None and c_p > 0:
        g_total = g_total * gauss_sum(chi_p)
    chi5 = chi_p.value_of_rational(nu5) if (chi_p is not None and c_p > 0) \
        else Cyclotomic.rational(1)
    if chi5.is_zero():
        gates["beta5_unit"] = False
        return FourierCoefficientReport(nonzero=False, gates=gates)
    cbx = cbx * ExactProduct(cyclo=g_total ** m * chi5)
    nu2beta = _nu_fraction(shape, beta * 2)
    cbx = cbx * _fraction_power_exact(nu2beta, Fraction(l) - sp["kappa"])

    eis = gamma_expr_to_exact(eisenstein_constant(shape.case, sp["n"], l, d_F))
    if hecke_tail is not None:
        eis = eis * ExactProduct(cyclo=hecke_tail)

    total_numeric = (qz * cbx * eis).to_complex()
    return FourierCoefficientReport(
        nonzero=True, gates=gates, qz_prefactor=qz, c_beta_chi=cbx,
        eisenstein_block=eis, d_pi=sp["d_pi"], numeric=total_numeric)


def _q_power(q: int, e: Fraction) -> Cyclotomic:
    from .cyclotomic import sqrt_of_prime_power
    e = Fraction(e)
    if e.denominator == 1:
        return Cyclotomic.rational(Fraction(q) ** int(e))
    if e.denominator == 2:
        return sqrt_of_prime_power(q) ** int(2 * e)
    raise ValueError("q-exponent must be a half-integer")


def _fraction_power_exact(x: Fraction, e: Fraction) -> ExactProduct:
    """x^e as an exact product when e is a half-integer and x a positive
    rational square at the half (else keeps a float via the units channel)."""
    e = Fraction(e)
    if e.denominator == 1:
        return ExactProduct(rational=Fraction(x) ** int(e))
    # half-integer power of a rational: exact if x is a perfect square
    root = _exact_sqrt(Fraction(x))
    if root is not None:
        return ExactProduct(rational=Fraction(x) ** (int(e - Fraction(1, 2))) * root)
    out = ExactProduct()
    out.units[f"{x}^{e}"] += 1
    return out


def _exact_sqrt(x: Fraction):
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None
