"""Special-value bookkeeping and p-adic interpolation formulas.

Values are assembled as structured exact products (rational part, cyclotomic
part, a power of pi, a multiset of Gamma arguments and opaque period units),
so that dual-path comparisons and valuation ledgers are exact.  The CM period
and the Petersson norm stay symbolic throughout (value 1 in numeric mode).
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .arch import c_l, eisenstein_constant
from .cyclotomic import INF, Cyclotomic, padic_val
from .gauss import FiniteCharacter, gauss_sum
from .groups import GroupShape, case_family, derive_constants, kappa_of
from .laurent import EulerProduct
from .localfactors import (EigenformData, LocalPlaceData, global_truncated_L,
                           modification_M, standard_values)
from .residue import ZModRing


# ---------------------------------------------------------------------------
# special points and exponent tables


def weight_bound(case: str, m: int, r: int, over_Q: bool = True) -> int:
    fam = case_family(case)
    n = 2 * m + r
    if fam == "II":
        return m + 1
    return (n + r + 1) if over_Q else (n + 1)


def special_point(case: str, m: int, r: int, l: int, over_Q: bool = True) -> dict:
    """s0, the Eisenstein pi-exponent d(pi) and the L-value pi-exponent
    dd(pi) for a parallel weight l."""
    fam = case_family(case)
    n = 2 * m + r
    bound = weight_bound(case, m, r, over_Q)
    if l < bound:
        raise ValueError(f"weight {l} below the bound {bound} for case {case}")
    kappa = kappa_of(case, n)
    s0 = Fraction(l) - kappa if fam in ("II", "III", "IV") else Fraction(l, 2) - kappa
    if fam == "II":
        d_pi = Fraction(n * l) - Fraction(n * (n - 1), 4) + l - Fraction(n, 2)
        dd_pi = Fraction(n * l) - Fraction(3 * m * m, 2) + l - Fraction(n, 2)
    elif fam == "III":
        d_pi = Fraction(2 * n * l) - Fraction(n * (2 * n - 1), 2) + l - n
        dd_pi = Fraction(2 * n * l) - Fraction(3 * n * n, 2) + l - n
    elif fam == "IV":
        d_pi = Fraction(n * l) - Fraction(n * (n - 1))
        dd_pi = Fraction(n * l) - Fraction(3 * n * (n - 1), 2)
    else:
        d_pi = Fraction(n * l) - Fraction(n * (n - 1), 2)
        dd_pi = d_pi - Fraction(m * (m + r))
    return {"s0": s0, "d_pi": d_pi, "dd_pi": dd_pi, "kappa": kappa, "n": n}


def pi_exponent_audit(case: str, m: int, r: int, l: int, over_Q: bool = True) -> dict:
    """Reproduce d(pi) and dd(pi) by independent exponent bookkeeping:
    d(pi) from the Eisenstein constant plus the critical Hecke L-value
    exponent, dd(pi) by removing the c_l(s0) contribution."""
    sp = special_point(case, m, r, l, over_Q)
    n, s0 = sp["n"], sp["s0"]
    fam = case_family(case)
    eis = eisenstein_constant(case, n, l, d_F=1)
    hecke_exp = (s0 + Fraction(1, 2)) if fam in ("II", "III") else Fraction(0)
    d_pi_indep = eis.pi_exponent + hecke_exp
    cl = c_l(case, m, r, l, s0)
    dd_pi_indep = d_pi_indep - cl.pi_exponent
    return {
        "d_pi": sp["d_pi"], "d_pi_independent": d_pi_indep,
        "dd_pi": sp["dd_pi"], "dd_pi_independent": dd_pi_indep,
        "d_match": sp["d_pi"] == d_pi_indep,
        "dd_match": sp["dd_pi"] == dd_pi_indep,
    }


# ---------------------------------------------------------------------------
# Dirichlet characters over Z and generalized Bernoulli numbers


class DirichletCharacter:
    """A Dirichlet character of prime-power (or trivial) modulus."""

    def __init__(self, modulus: int, order: int = 1):
        self.modulus = modulus
        if modulus == 1:
            self.order = 1
            self.char = None
            self.conductor = 1
            return
        p, c = _prime_power(modulus)
        self.char = FiniteCharacter(ZModRing(p, c), order)
        self.order = order
        self.conductor = p ** self.char.conductor_exp if self.char.conductor_exp else 1

    def value(self, a: int) -> Cyclotomic:
        if self.modulus == 1:
            return Cyclotomic.rational(1)
        return self.char.value(a % self.modulus)

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def parity(self) -> int:
        v = self.value(-1)
        return 1 if v == 1 else -1

    def bar(self) -> "DirichletCharacter":
        out = DirichletCharacter(1)
        out.modulus, out.order, out.conductor = self.modulus, self.order, self.conductor
        out.char = self.char.inverse_character() if self.char else None
        return out

    def gauss_sum(self) -> Cyclotomic:
        if self.modulus == 1:
            return Cyclotomic.rational(1)
        return gauss_sum(self.char)


def _prime_power(n: int):
    p = 2
    while n % p:
        p += 1
    c = 0
    while n % p == 0:
        n //= p
        c += 1
    if n != 1:
        raise ValueError("only prime-power moduli are supported")
    return p, c


def bernoulli_number(k: int) -> Fraction:
    # B1 = -1/2 convention
    if k == 0:
        return Fraction(1)
    B = [Fraction(1)]
    for mm in range(1, k + 1):
        acc = Fraction(0)
        for j in range(mm):
            acc += Fraction(math.comb(mm + 1, j)) * B[j]
        B.append(-acc / (mm + 1))
    return B[k]


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    x = Fraction(x)
    return sum(Fraction(math.comb(k, j)) * bernoulli_number(j) * x ** (k - j)
               for j in range(k + 1))


def bernoulli_L(psi: DirichletCharacter, k: int):
    """Exact L(1-k, psi) = -B_{k,psi}/k via generalized Bernoulli numbers."""
    if k < 1:
        raise ValueError("k >= 1")
    f = psi.modulus
    acc = Cyclotomic.rational(0)
    for a in range(1, f + 1):
        v = psi.value(a)
        if not v.is_zero():
            acc = acc + v * bernoulli_poly(k, Fraction(a, f))
    b_k_psi = acc * Fraction(f) ** (k - 1)
    return b_k_psi * Fraction(-1, k)


def dirichlet_L_numeric(psi: DirichletCharacter, s: float, tol: float = 1e-12,
                        N: int = 24, J: int = 10) -> complex:
    """L(s, psi) for Re(s) > 1 by Euler-Maclaurin on the Hurwitz pieces."""
    if s <= 1:
        raise ValueError("series evaluation needs Re(s) > 1")
    f = psi.modulus
    total = 0j
    worst = 0.0
    for a in range(1, f + 1):
        v = psi.value(a)
        if v.is_zero():
            continue
        hz, err = _hurwitz_em(s, a / f, N, J)
        worst = max(worst, err)
        total += v.eval_complex() * hz
    total *= f ** (-s)
    if worst * f > tol:
        raise ArithmeticError(f"Euler-Maclaurin tail {worst} exceeds tolerance {tol}")
    return total


def _hurwitz_em(s: float, x: float, N: int, J: int):
    head = sum((k + x) ** (-s) for k in range(N))
    tail = (N + x) ** (1 - s) / (s - 1) + 0.5 * (N + x) ** (-s)
    poch = s
    term = 0.0
    for j in range(1, J + 1):
        b2j = float(bernoulli_number(2 * j))
        term = b2j / math.factorial(2 * j) * poch * (N + x) ** (-s - 2 * j + 1)
        tail += term
        poch *= (s + 2 * j - 1) * (s + 2 * j)
    err = abs(term) * (s + 2 * J + 1) / (N + x)
    return head + tail, err


def functional_eq_check(psi: DirichletCharacter, s0: Fraction,
                        disc_sqrt: float = 1.0, d_F: int = 1) -> dict:
    """Compare the series value L(s0+1/2, psi) against two right-hand sides:
    the stated conductor-power variant and the classical completed-L
    functional equation.  Discrepancies are reported, not resolved."""
    k = Fraction(s0) + Fraction(1, 2)
    if k.denominator != 1 or k < 2:
        raise ValueError("need s0 + 1/2 an integer >= 2")
    k = int(k)
    if not psi.is_primitive():
        raise ValueError("functional equation needs a primitive character")
    if psi.parity() != (-1) ** k:
        raise ValueError("parity mismatch: psi(-1) must equal (-1)^k")
    f = psi.modulus
    lhs = dirichlet_L_numeric(psi, float(k))
    l_neg = bernoulli_L(psi.bar(), k).eval_complex()
    g = psi.gauss_sum().eval_complex()
    front = (2j * math.pi) ** k / (2 * math.gamma(k))
    rhs_classical = psi.parity() * front ** d_F * (g / f ** k) * l_neg
    rhs_paper = front ** d_F * (disc_sqrt * g / f ** (k - 1)) * l_neg
    ratio = rhs_paper / rhs_classical if rhs_classical else float("nan")
    return {
        "k": k,
        "lhs_series": lhs,
        "rhs_paper": rhs_paper,
        "rhs_classical": rhs_classical,
        "classical_agrees": abs(lhs - rhs_classical) <= 1e-8 * abs(lhs),
        "paper_to_classical_ratio": ratio,
    }


# ---------------------------------------------------------------------------
# structured exact products


@dataclass
class ExactProduct:
    """rational * cyclo * pi^pi_exp * prod Gamma(a)^mult * prod unit^exp."""

    rational: Fraction = Fraction(1)
    cyclo: Cyclotomic = None
    pi_exp: Fraction = Fraction(0)
    gammas: Counter = field(default_factory=Counter)   # Fraction arg -> signed mult
    units: Counter = field(default_factory=Counter)

    def __post_init__(self):
        if self.cyclo is None:
            self.cyclo = Cyclotomic.rational(1)
        self.pi_exp = Fraction(self.pi_exp)
        self.rational = Fraction(self.rational)

    @staticmethod
    def one():
        return ExactProduct()

    def __mul__(self, other: "ExactProduct") -> "ExactProduct":
        out = ExactProduct(self.rational * other.rational,
                           self.cyclo * other.cyclo,
                           self.pi_exp + other.pi_exp)
        # Counter.__add__ drops non-positive counts, so merge by hand
        out.gammas = Counter(self.gammas)
        for a, mult in other.gammas.items():
            out.gammas[a] += mult
        out.units = Counter(self.units)
        for u, e in other.units.items():
            out.units[u] += e
        return out

    def normalized(self) -> "ExactProduct":
        out = ExactProduct(self.rational, self.cyclo, self.pi_exp)
        out.gammas = Counter({a: m for a, m in self.gammas.items() if m})
        out.units = Counter({u: e for u, e in self.units.items() if e})
        return out

    def __eq__(self, other):
        a, b = self.normalized(), other.normalized()
        return (a.rational == b.rational and a.cyclo == b.cyclo
                and a.pi_exp == b.pi_exp and a.gammas == b.gammas
                and a.units == b.units)

    def to_complex(self, units_value: float = 1.0) -> complex:
        out = complex(self.rational) * self.cyclo.eval_complex() \
            * math.pi ** float(self.pi_exp)
        for a, mult in self.gammas.items():
            out *= math.gamma(float(a)) ** mult
        for _, e in self.units.items():
            out *= units_value ** e
        return out

    def padic_valuation(self, p: int, gamma_policy: str = "factorial"):
        """Ledger valuation: rationals and cyclotomics exactly, pi and units
        are valuation-0 symbols, Gamma at positive integers contributes the
        factorial valuation."""
        if self.rational == 0 or self.cyclo.is_zero():
            return INF
        v = Fraction(padic_val(self.rational, p))
        cv = self.cyclo.padic_valuation(p)
        v += Fraction(cv) if cv != INF else 0
        for a, mult in self.gammas.items():
            if a.denominator == 1 and a > 0 and gamma_policy == "factorial":
                v += mult * Fraction(_factorial_valuation(int(a) - 1, p))
        return v


def _factorial_valuation(k: int, p: int) -> int:
    out, q = 0, p
    while q <= k:
        out += k // q
        q *= p
    return out


def gamma_expr_to_exact(expr) -> ExactProduct:
    out = ExactProduct(pi_exp=expr.pi_exponent)
    rat, i_exp = expr.prefactor_exact
    out.rational = Fraction(rat)
    out.cyclo = Cyclotomic.zeta(4, i_exp % 4)
    for a in expr.num:
        out.gammas[Fraction(a)] += 1
    for a in expr.den:
        out.gammas[Fraction(a)] -= 1
    return out


def euler_product_exact(ep: EulerProduct, values: dict) -> ExactProduct:
    v = ep.evaluate(values)
    if not isinstance(v, Cyclotomic):
        raise TypeError("exact evaluation required")
    return ExactProduct(cyclo=v)


# ---------------------------------------------------------------------------
# interpolation inputs and the two assembly routes


@dataclass
class InterpolationInput:
    shape: GroupShape
    eigenform: EigenformData
    l: int
    chi_p: FiniteCharacter | None      # p-power-conductor character (None: c = 0)
    place_set: list                    # finite place ids entering the L-product
    chi1_gauss_local: list = field(default_factory=list)  # fixed-part local Gauss sums
    chi1_value_at_p: object = 1        # chi_1(varpi_p), a root of unity / rational
    gauss_p_D: object = None           # D-algebra Gauss sum at p (default: scalar sum)
    split_at_p: bool = False           # Case III with r = 1 needs p split in D
    over_Q: bool = True

    @property
    def conductor_exp(self) -> int:
        return self.chi_p.conductor_exp if self.chi_p is not None else 0

    def p_place(self) -> LocalPlaceData:
        return self.eigenform.places[self.eigenform.p[0][0]]

    def check(self):
        if self.eigenform.alpha_p in (None, 0):
            raise ValueError("a nonzero U(p)-eigenvalue is required")


def _chi_value_at_p(inp: InterpolationInput):
    """chi(varpi_p) = chi_1(varpi_p) * chi_p(varpi_p); the p-power part is
    nontrivial only for c = 0 (else the factor it feeds is 1)."""
    v = inp.chi1_value_at_p
    return v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v)


def lp_factor(conductor_exp: int, chi_value, q: int, s0: Fraction) -> ExactProduct:
    """L_p(s0 + 1/2, chi): 1 when p divides the conductor, else the inverted
    Euler factor (1 - chi(varpi)|varpi|^(s0+1/2))^(-1)."""
    if conductor_exp >= 1:
        return ExactProduct.one()
    e = Fraction(s0) + Fraction(1, 2)
    cv = chi_value if isinstance(chi_value, Cyclotomic) else Cyclotomic.rational(chi_value)
    val = Cyclotomic.rational(1) - cv * _q_power_exact(q, -e)
    return ExactProduct(cyclo=val.inverse())


def _q_power_exact(q: int, e: Fraction) -> Cyclotomic:
    from .cyclotomic import sqrt_of_prime_power
    e = Fraction(e)
    if e.denominator == 1:
        return Cyclotomic.rational(Fraction(q) ** int(e))
    if e.denominator == 2:
        return sqrt_of_prime_power(q) ** int(2 * e)
    raise ValueError("only half-integer q-exponents are exact")


def _modification_exact(inp: InterpolationInput, s0: Fraction) -> ExactProduct:
    shape = inp.shape
    pl = inp.p_place()
    mod = modification_M(shape.case, shape.m, shape.r)
    vals = standard_values(pl.q, s0 + Fraction(1, 2), satake=pl.satake,
                           chi_value=_chi_value_at_p(inp), betas=pl.satake, exact=True)
    return euler_product_exact(mod, vals)


def _l_value_exact(inp: InterpolationInput, s0: Fraction) -> ExactProduct:
    val, _ = global_truncated_L(inp.eigenform, inp.shape.case,
                                s0 + Fraction(1, 2), inp.place_set, exact=True)
    return ExactProduct(cyclo=val)


def _gauss_total(inp: InterpolationInput, which: str) -> Cyclotomic:
    g = Cyclotomic.rational(1)
    for loc in inp.chi1_gauss_local:
        g = g * loc
    if inp.chi_p is not None and inp.conductor_exp > 0:
        if which == "D" and inp.gauss_p_D is not None:
            g = g * inp.gauss_p_D
        else:
            g = g * gauss_sum(inp.chi_p)
    return g


def _gauss_block(inp: InterpolationInput, power: int, which: str = "D") -> ExactProduct:
    """G^D(chi)^power (or the base-field variant): product of the fixed-part
    local sums and the p-part sum."""
    g = _gauss_total(inp, which)
    if power >= 0:
        return ExactProduct(cyclo=g ** power)
    return ExactProduct(cyclo=(g.inverse()) ** (-power))


def _gamma_blocks(inp: InterpolationInput, s0: Fraction, symplectic: bool) -> ExactProduct:
    shape, l = inp.shape, inp.l
    consts = derive_constants(shape)
    n, d1, d_F = consts.n, consts.d1, inp.eigenform.degree
    cl = gamma_expr_to_exact(c_l(shape.case, shape.m, shape.r, l, s0))
    block = ExactProduct()
    if symplectic:
        block.gammas[s0 + Fraction(1, 2)] += 1
        for i in range(n * d1):
            block.gammas[Fraction(l) - Fraction(i, 2)] += 1
    else:
        for i in range(n):
            block.gammas[Fraction(d1 * (l - i))] += 1
    combined = cl * block
    out = ExactProduct.one()
    for _ in range(d_F):
        out = out * combined
    return out


def interp_unitary(inp: InterpolationInput) -> dict:
    """Measure value for the unitary / quaternionic-unitary cases: the
    |varpi|-power, the Gauss-sum power, pi^(d(F) d(pi)), the Gamma block,
    the modification factor (c = 0 only) and the truncated L-value, with
    the CM period and Petersson norm as symbolic units."""
    fam = inp.shape.family
    if fam not in ("IV", "V"):
        raise ValueError("unitary assembly covers cases IV and V")
    return _interp_common(inp, symplectic=False)


def interp_symplectic(inp: InterpolationInput) -> dict:
    fam = inp.shape.family
    if fam not in ("II", "III"):
        raise ValueError("symplectic assembly covers cases II and III")
    if fam == "II" and (inp.l - inp.shape.m) % 2 != 0:
        raise ValueError("case II needs l = m mod 2")
    if fam == "III" and inp.shape.r > 0 and not inp.split_at_p:
        raise ValueError("case III with r > 0 needs p split in D")
    return _interp_common(inp, symplectic=True)


def _interp_common(inp: InterpolationInput, symplectic: bool) -> dict:
    inp.check()
    shape = inp.shape
    consts = derive_constants(shape)
    sp = special_point(shape.case, shape.m, shape.r, inp.l, inp.over_Q)
    s0 = sp["s0"]
    c = inp.conductor_exp
    m, d1, d_F = shape.m, consts.d1, inp.eigenform.degree
    qp = inp.p_place().q

    factors = {}
    factors["varpi_power"] = ExactProduct(
        rational=Fraction(1, qp ** (c * d1 * (m * (m - 1) // 2))))
    factors["gauss_power"] = _gauss_block(inp, -m)
    if symplectic:
        e = c * (s0 - Fraction(1, 2))
        factors["norm_power"] = ExactProduct(cyclo=_q_power_exact(qp, e))
        factors["gauss_F_power"] = _gauss_block(inp, -1, which="F")
    factors["pi_power"] = ExactProduct(pi_exp=Fraction(d_F) * sp["d_pi"])
    factors["gamma_block"] = _gamma_blocks(inp, s0, symplectic)
    if symplectic:
        if c == 0:
            chi_v = _chi_value_at_p(inp)
            num = Cyclotomic.rational(1) - chi_v.inverse() * _q_power_exact(qp, s0 - Fraction(1, 2))
            den = Cyclotomic.rational(1) - chi_v * _q_power_exact(qp, -(s0 + Fraction(1, 2)))
            factors["lp_ratio"] = ExactProduct(cyclo=num * den.inverse())
        else:
            factors["lp_ratio"] = ExactProduct.one()
    if c == 0:
        factors["modification"] = _modification_exact(inp, s0)
    factors["l_value"] = _l_value_exact(inp, s0)
    period = ExactProduct()
    period.units["petersson"] -= 1
    if shape.family == "V":
        period.units["Omega"] -= 1
    factors["period"] = period

    total = ExactProduct.one()
    for f in factors.values():
        total = total * f
    direct = _direct_assembly(inp, symplectic, sp)
    return {
        "case": shape.case, "s0": s0, "conductor_exp": c,
        "factors": factors,
        "total": total,
        "total_direct": direct,
        "dual_path_equal": total == direct,
        "metadata": {
            "lp_ratio_convention": "present only at c = 0; the displayed "
                                   "c > 0 ratio is replaced by 1",
        },
    }


def _direct_assembly(inp: InterpolationInput, symplectic: bool, sp) -> ExactProduct:
    """Second evaluation route: one pass, reversed grouping, no factor dict."""
    shape = inp.shape
    consts = derive_constants(shape)
    s0, c = sp["s0"], inp.conductor_exp
    m, d1, d_F = shape.m, consts.d1, inp.eigenform.degree
    qp = inp.p_place().q

    cy = Cyclotomic.rational(1)
    # L-value first, then modification, Gauss parts last (reversed order)
    lv, _ = global_truncated_L(inp.eigenform, shape.case, s0 + Fraction(1, 2),
                               inp.place_set, exact=True)
    cy = cy * lv
    if c == 0:
        pl = inp.p_place()
        vals = standard_values(pl.q, s0 + Fraction(1, 2), satake=pl.satake,
                               chi_value=_chi_value_at_p(inp), betas=pl.satake,
                               exact=True)
        cy = cy * modification_M(shape.case, shape.m, shape.r).evaluate(vals)
    if symplectic and c == 0:
        chi_v = _chi_value_at_p(inp)
        num = Cyclotomic.rational(1) - chi_v.inverse() * _q_power_exact(qp, s0 - Fraction(1, 2))
        den = Cyclotomic.rational(1) - chi_v * _q_power_exact(qp, -(s0 + Fraction(1, 2)))
        cy = cy * num * den.inverse()
    cy = cy * _gauss_total(inp, "D").inverse() ** m
    if symplectic:
        cy = cy * _gauss_total(inp, "F").inverse()
        cy = cy * _q_power_exact(qp, c * (s0 - Fraction(1, 2)))
    out = ExactProduct(rational=Fraction(1, qp ** (c * d1 * (m * (m - 1) // 2))),
                       cyclo=cy,
                       pi_exp=Fraction(d_F) * sp["d_pi"])
    out = out * _gamma_blocks(inp, s0, symplectic)
    out.units["petersson"] -= 1
    if shape.family == "V":
        out.units["Omega"] -= 1
    return out


def algebraicity_ratio(inp: InterpolationInput) -> dict:
    """The normalized special value L [M] / (pi^(d(F) dd(pi)) Omega <f,f>)
    together with the independent pi-exponent audit."""
    shape = inp.shape
    sp = special_point(shape.case, shape.m, shape.r, inp.l, inp.over_Q)
    audit = pi_exponent_audit(shape.case, shape.m, shape.r, inp.l, inp.over_Q)
    num = _l_value_exact(inp, sp["s0"])
    if inp.conductor_exp == 0:
        num = num * _modification_exact(inp, sp["s0"])
    ratio = ExactProduct(rational=num.rational, cyclo=num.cyclo,
                         pi_exp=num.pi_exp - Fraction(inp.eigenform.degree) * sp["dd_pi"])
    ratio.units["petersson"] -= 1
    if shape.family == "V":
        ratio.units["Omega"] -= 1   # Omega = 1 in cases II, III, IV
    return {"ratio": ratio, "audit": audit,
            "exponent_match": audit["d_match"] and audit["dd_match"]}


# ---------------------------------------------------------------------------
# Kummer-congruence property check


@dataclass
class MeasureEntry:
    char_order: int
    conductor_exp: int
    value: ExactProduct
    ledger: dict
    residual: Fraction


@dataclass
class MeasureTable:
    p: int
    c_max: int
    entries: dict = field(default_factory=dict)   # (order, generator-exp, c) -> entry


def _characters_mod(p: int, c: int):
    """All characters of (Z/p^c)x, indexed by the exponent k with
    chi_k(g) = zeta_phi^k for the canonical generator g."""
    if c == 0:
        return [(0, None)]
    ring = ZModRing(p, c)
    total = ring.unit_count()
    chars = []
    base = FiniteCharacter(ring, total)
    for k in range(total):
        ch = FiniteCharacter.__new__(FiniteCharacter)
        ch.ring, ch.generator = ring, base.generator
        d = math.gcd(k, total)
        ch.order = total // d
        ch.log_table = {u: (e * k // d) % ch.order if ch.order > 1 else 0
                        for u, e in base.log_table.items()}
        ch.conductor_exp = ch._conductor()
        chars.append((k, ch))
    return chars


def kummer_check(build_input, p: int, c_max: int, alpha_p) -> dict:
    """Populate a measure table over all characters of (Z/p^c)x for c <= c_max
    and test the boundedness profile.

    build_input(chi_p or None) must return an InterpolationInput with the
    character wired into the per-place data; alpha_p is the U(p)-eigenvalue.
    The ledger includes the level-compatibility normalization
    alpha(p)^(2 - 2 max(c, 1)), whose valuation drifts unless the eigenvalue
    is a p-adic unit.
    """
    v_alpha = padic_val(alpha_p, p)
    if v_alpha == INF:
        raise ValueError("alpha(p) must be nonzero")
    table = MeasureTable(p=p, c_max=c_max)
    reference_names = {"varpi_power", "gauss_power", "gauss_F_power",
                       "norm_power", "pi_power", "gamma_block", "period"}
    failures = []
    data_floor = Fraction(0)
    alpha_vals = {}
    for c in range(c_max + 1):
        chars = [(0, None)] if c == 0 else [(k, ch) for k, ch in _characters_mod(p, c)
                                            if ch.conductor_exp == c]
        for k, ch in chars:
            inp = build_input(ch)
            rec = (interp_symplectic if inp.shape.family in ("II", "III")
                   else interp_unitary)(inp)
            n_level = max(c, 1)
            alpha_factor = ExactProduct(rational=Fraction(1))
            av = Fraction(alpha_p)
            alpha_exp = 2 - 2 * n_level
            alpha_factor.rational = av ** alpha_exp
            value = rec["total"] * alpha_factor
            ledger = {}
            for name, f in rec["factors"].items():
                ledger[name] = f.padic_valuation(p)
            ledger["alpha_normalization"] = alpha_factor.padic_valuation(p)
            residual = Fraction(0)
            for name, v in ledger.items():
                if name in reference_names or v == INF:
                    continue
                if name == "alpha_normalization":
                    continue
                residual += Fraction(v)
            entry = MeasureEntry(char_order=(ch.order if ch else 1),
                                 conductor_exp=c, value=value,
                                 ledger=ledger, residual=residual)
            table.entries[(c, k)] = entry
            data_floor = min(data_floor, residual)
            alpha_vals.setdefault(c, []).append(Fraction(ledger["alpha_normalization"]))
    V0 = -data_floor
    bounded = True
    for c in range(1, c_max + 1):
        prev = min(alpha_vals.get(c - 1, [Fraction(0)]))
        cur = min(alpha_vals.get(c, [Fraction(0)]))
        if cur < prev:
            bounded = False
            failures.append({"kind": "alpha-drift", "level": c,
                             "valuation": str(cur), "previous": str(prev),
                             "witness": [key for key, e in table.entries.items()
                                         if key[0] == c]})
    for key, entry in table.entries.items():
        if entry.residual + Fraction(entry.ledger["alpha_normalization"]) < -V0:
            bounded = False
            failures.append({"kind": "residual-below-floor", "entry": key,
                             "residual": str(entry.residual)})
    transforms = _coset_transforms(table, p, c_max)
    return {"bounded": bounded, "V0": V0, "failures": failures,
            "table": table, "transforms": transforms}


def _coset_transforms(table: MeasureTable, p: int, c_max: int) -> dict:
    """Inverse character transforms of the reference-normalized algebraic
    parts on the cosets of (Z/p^c)x, with exact valuations."""
    out = {}
    for c in range(1, c_max + 1):
        ring = ZModRing(p, c)
        total = ring.unit_count()
        base = FiniteCharacter(ring, total)
        values = {}
        for (cc, k), entry in table.entries.items():
            if cc <= c:
                values[(cc, k)] = entry.value
        for a, loga in base.log_table.items():
            acc_cyclo = Cyclotomic.rational(0)
            count = 0
            for (cc, k), val in values.items():
                if cc == 0:
                    chi_a_bar = Cyclotomic.rational(1)
                else:
                    sub = FiniteCharacter(ZModRing(p, cc),
                                          ZModRing(p, cc).unit_count())
                    la = sub.log_table.get(a % (p ** cc))
                    if la is None:
                        continue
                    order = ZModRing(p, cc).unit_count()
                    d = math.gcd(k, order)
                    ordk = order // d
                    chi_a_bar = Cyclotomic.zeta(ordk, (-(la * k // d)) % ordk) \
                        if ordk > 1 else Cyclotomic.rational(1)
                acc_cyclo = acc_cyclo + chi_a_bar * val.cyclo * val.rational
                count += 1
            acc_cyclo = acc_cyclo * Fraction(1, total)
            v = acc_cyclo.padic_valuation(p) if not acc_cyclo.is_zero() else INF
            out[(c, a)] = {"valuation": v if v == INF else Fraction(v),
                           "terms": count}
    return out
