"""Local L-factor formulas for the eight supported cases.

Everything is returned symbolically as an EulerProduct in the alphabet
X = q^(-s), Q = q^(1/2), c = character value at the uniformizer, a1..am
(unramified Satake parameters) and b1..b2m (ramified ones).  Numeric
evaluation is a separate pass through standard_values().
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import Cyclotomic, sqrt_of_prime_power
from .groups import GroupShape, case_family, derive_constants, kappa_of
from .laurent import EulerProduct, LaurentMonomial, rational_function_equal

CHI = "c"


def qpow(e) -> LaurentMonomial:
    """q^e as a monomial in Q (e may be a half-integer)."""
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ValueError(f"q-exponent {e} is not a half-integer")
    return LaurentMonomial(1, {"Q": int(e2)})


def _mono(chi_power=0, q_exp=0, x_power=0, satake=None, coeff=1) -> LaurentMonomial:
    m = LaurentMonomial(coeff, {"X": x_power}) * qpow(q_exp)
    if chi_power:
        m = m * LaurentMonomial(1, {CHI: chi_power})
    if satake:
        sym, e = satake
        m = m * LaurentMonomial(1, {sym: e})
    return m


def hecke_local_L(shift, chi_power: int = 1, x_power: int = 1,
                  coeff=1) -> EulerProduct:
    """L(x_power*s + shift, chi^chi_power) as an inverted Euler factor.

    The underlying monomial is coeff * c^chi_power * q^(-shift) * X^x_power,
    matching L(s+shift, chi)^-1 = 1 - chi(varpi) q^(-s-shift).
    """
    return EulerProduct([(_mono(chi_power, -Fraction(shift), x_power, coeff=coeff), True)])


# ---------------------------------------------------------------------------
# normalizing factors b(s, chi), Section 3.1 lists


def normalizing_b(case: str, n: int, conductor_exp: int = 0) -> EulerProduct:
    """The normalizing factor b(s, chi) for an unramified character."""
    if conductor_exp:
        raise ValueError("b(s, chi) is only defined for unramified chi")
    fam = case_family(case)
    out = EulerProduct.one()
    if fam == "I":
        for i in range(1, n // 2 + 1):
            out = out * hecke_local_L(n + 1 - 2 * i, chi_power=2, x_power=2)
    elif fam == "II":
        out = out * hecke_local_L(Fraction(n + 1, 2))
        for i in range(1, n // 2 + 1):
            out = out * hecke_local_L(2 * i - 1, chi_power=2, x_power=2)
    elif fam == "III":
        if case == "III'":
            out = out * hecke_local_L(Fraction(2 * n + 1, 2))
            for i in range(1, n + 1):
                out = out * hecke_local_L(2 * i - 1, chi_power=2, x_power=2)
        else:
            out = out * hecke_local_L(Fraction(2 * n + 1, 2))
            for i in range(1, n + 1):
                out = out * hecke_local_L(2 * n + 1 - 4 * i, chi_power=2, x_power=2)
    elif fam == "IV":
        if case == "IV'":
            for i in range(1, n + 1):
                out = out * hecke_local_L(2 * n + 1 - 2 * i, chi_power=2, x_power=2)
        else:
            for i in range(1, n + 1):
                out = out * hecke_local_L(2 * n + 3 - 4 * i, chi_power=2, x_power=2)
    elif fam == "V":
        # chi^0 = chi restricted to F; the quadratic character of E/F enters
        # as a sign at the uniformizer (inert: -1; ramified: odd twists drop)
        ramified = case == "V-ramified"
        for i in range(1, n + 1):
            twist_odd = (n + i) % 2 == 1
            if ramified:
                if twist_odd:
                    continue  # chi^0 chi_{E/F} is ramified, factor omitted
                # chi^0(varpi) = chi(tilde-varpi)^2 = c^2
                out = out * hecke_local_L(i, chi_power=2, x_power=2)
            else:
                sign = -1 if twist_odd else 1
                out = out * hecke_local_L(i, chi_power=1, x_power=2, coeff=sign)
    else:
        raise ValueError(f"unsupported case {case}")
    return out


# ---------------------------------------------------------------------------
# unramified local factors (Proposition 3.1 lists), inverse side


def unramified_inv(case: str, m_loc: int, r_loc: int) -> EulerProduct:
    """L(s, phi x chi)^(-1) at an unramified place, with the local Witt
    index m_loc and anisotropic rank r_loc supplied explicitly."""
    fam = case_family(case)
    fac = []
    a = lambda i: f"a{i}"
    if fam == "I":
        r = r_loc
        for i in range(1, r // 2 + 1):
            fac.append((_mono(2, 2 * i - r, 2), False))
        for i in range(1, m_loc + 1):
            fac.append((_mono(1, Fraction(r, 2) - 1, 1, (a(i), 1)), False))
            fac.append((_mono(1, 1 - Fraction(r, 2), 1, (a(i), -1)), False))
    elif fam == "II":
        fac.append((_mono(1, 0, 1), False))
        for i in range(1, m_loc + 1):
            fac.append((_mono(1, 0, 1, (a(i), 1)), False))
            fac.append((_mono(1, 0, 1, (a(i), -1)), False))
    elif fam == "III":
        r = r_loc
        fac.append((_mono(1, -r, 1), False))
        for i in range(1, m_loc + r + 1):
            fac.append((_mono(2, 4 * i - 2 * r, 2), False))
        for i in range(1, m_loc + 1):
            fac.append((_mono(1, r - 1, 1, (a(i), 1)), False))
            fac.append((_mono(1, -r, 1, (a(i), -1)), False))
    elif fam == "IV":
        r = r_loc
        for i in range(1, m_loc + r + 1):
            fac.append((_mono(2, 4 * i - 2 - 2 * r, 2), False))
        for i in range(1, m_loc + 1):
            fac.append((_mono(1, r - 2, 1, (a(i), 1)), False))
            fac.append((_mono(1, 1 - r, 1, (a(i), -1)), False))
    elif fam == "V":
        r = r_loc
        if case == "V-ramified":
            for i in range(1, m_loc + 1):
                fac.append((_mono(1, Fraction(r - 1, 2), 1, (a(i), 1)), False))
                fac.append((_mono(1, Fraction(1 - r, 2), 1, (a(i), -1)), False))
        else:
            for i in range(1, m_loc + 1):
                fac.append((_mono(1, r - 1, 1, (a(i), 1)), False))
                fac.append((_mono(1, 1 - r, 1, (a(i), -1)), False))
    else:
        raise ValueError(f"unsupported case {case}")
    return EulerProduct(fac)


# ---------------------------------------------------------------------------
# ramified local factors (Proposition 3.3) and split lists (Section 3.3)


def ramified_inv(case: str, m: int, r: int, conductor_exp: int = 0) -> EulerProduct:
    """L(s, phi x chi)^(-1) at a ramified place of level c >= 1.

    For a ramified twisting character the factor is 1.
    """
    if conductor_exp >= 1:
        return EulerProduct.one()
    if case in ("III'", "IV'"):
        return split_case_inv(case, m, r)
    fam = case_family(case)
    shift = {
        "I": Fraction(r, 2) - 1,
        "II": Fraction(0),
        "III": r - 1,
        "IV": r - 2,
    }.get(fam)
    if fam == "V":
        shift = Fraction(r - 1, 2) if case == "V-ramified" else Fraction(r - 1)
    if shift is None:
        raise ValueError(f"unsupported case {case}")
    fac = [(_mono(1, shift, 1, (f"b{i}", 1)), False) for i in range(1, m + 1)]
    return EulerProduct(fac)


def split_case_inv(case: str, m: int, r: int) -> EulerProduct:
    """Degree-2m ramified factors for the split quaternionic cases."""
    if case == "III'":
        fac = [(_mono(1, 0, 1, (f"b{i}", 1)), False) for i in range(1, 2 * m + 1)]
    elif case == "IV'":
        fac = [(_mono(1, r - 1, 1, (f"b{i}", 1)), False) for i in range(1, 2 * m + 1)]
    else:
        raise ValueError("split list only for Case III' / IV'")
    return EulerProduct(fac)


def modification_M(case: str, m: int, r: int) -> EulerProduct:
    """The p-stabilization modification factor M (Proposition 4.6 list)."""
    fam = case_family(case)
    shift = {
        "I": Fraction(r, 2),
        "II": Fraction(1),
        "III": Fraction(r + 1),
        "IV": Fraction(r),
    }.get(fam)
    if fam == "V":
        shift = Fraction(r + 1, 2) if case == "V-ramified" else Fraction(r + 1)
    if shift is None:
        raise ValueError(f"unsupported case {case}")
    fac = [(_mono(1, shift, 1, (f"b{i}", 1)), False) for i in range(1, m + 1)]
    return EulerProduct(fac)


def ml_shift_identity(case: str, m: int, r: int):
    """Check M(s) = L^(-1)(s - d3) exactly, i.e. the X -> q^d3 X substitution
    carries the ramified list onto the modification list."""
    d3 = 1 if (case_family(case) in ("I", "II") or case == "V-ramified") else 2
    shifted = ramified_inv(case, m, r).substitute(
        {"X": LaurentMonomial(1, {"Q": 2 * d3, "X": 1})})
    return rational_function_equal(modification_M(case, m, r), shifted)


# ---------------------------------------------------------------------------
# the Case IV Dirichlet-series identity from the proof of Proposition 3.1


def _q_int(e: int, x_power: int = 0, satake=None) -> LaurentMonomial:
    return _mono(0, e, x_power, satake)


def caseIV_identity_check(m: int, r: int):
    """alpha(s) beta(2s-2m+1) A(s-n+1-r, s) equals the closed form
    prod (1-q^(4i-4-2s)) / ((1-q^(n+r-3-s) a_i)(1-q^(2m-s) a_i^(-1))).

    Returns (ok, report); on failure the report carries the first differing
    coefficient of the cross-multiplied comparison.
    """
    n = 2 * m + r
    lhs_fac = []
    # alpha(s): prod (1-q^(4i-4-2s)) / (1-q^(2m+2i-3-2s))
    for i in range(1, m + 1):
        lhs_fac.append((_q_int(4 * i - 4, 2), False))
        lhs_fac.append((_q_int(2 * m + 2 * i - 3, 2), True))
    # beta at 2s-2m+1: prod (1-q^(2i-2-(2s-2m+1))) / (1-q^(2r+2i-2-(2s-2m+1)))
    for i in range(1, m + 1):
        lhs_fac.append((_q_int(2 * m + 2 * i - 3, 2), False))
        lhs_fac.append((_q_int(2 * m + 2 * r + 2 * i - 3, 2), True))
    # A(s', s) at s' = s-n+1-r
    for i in range(1, m + 1):
        lhs_fac.append((_q_int(n + r + 2 * i - 3, 2), False))
        lhs_fac.append((_q_int(n + r - 3, 1, (f"a{i}", 1)), True))
        lhs_fac.append((_q_int(2 * m, 1, (f"a{i}", -1)), True))
    lhs = EulerProduct(lhs_fac)

    rhs_fac = []
    for i in range(1, m + 1):
        rhs_fac.append((_q_int(4 * i - 4, 2), False))
        rhs_fac.append((_q_int(n + r - 3, 1, (f"a{i}", 1)), True))
        rhs_fac.append((_q_int(2 * m, 1, (f"a{i}", -1)), True))
    rhs = EulerProduct(rhs_fac)

    ok, witness = rational_function_equal(lhs, rhs)
    report = {"m": m, "r": r, "equal": ok}
    if not ok:
        report["first_difference"] = {"exponents": witness[0], "coefficient": repr(witness[1])}
    return ok, report


# ---------------------------------------------------------------------------
# per-place data and global products


@dataclass
class LocalPlaceData:
    q: int                       # residue cardinality
    ram_class: str = "unramified"   # unramified | ramified-level-c | p-stabilized
    m_local: int = 1
    r_local: int = 0
    satake: list = field(default_factory=list)   # values; empty = symbolic
    chi_value: object = None     # Cyclotomic / Fraction; None = symbolic
    conductor_exp: int = 0
    case: str | None = None      # local case override (e.g. III' at a split place)

    def __post_init__(self):
        if self.ram_class not in ("unramified", "ramified-level-c", "p-stabilized"):
            raise ValueError(f"unknown ramification class {self.ram_class}")


@dataclass
class EigenformData:
    weight: int
    degree: int                   # d(F)
    places: dict                  # place id -> LocalPlaceData
    n1: list = field(default_factory=list)   # [(place id, exponent)]
    n2: list = field(default_factory=list)
    p: list = field(default_factory=list)    # the distinguished prime, [(id, 1)]
    alpha_p: object = None        # U(p) eigenvalue

    def __post_init__(self):
        ids = [pid for lst in (self.n1, self.n2, self.p) for pid, _ in lst]
        if len(ids) != len(set(ids)):
            raise ValueError("n1, n2 and p must be supported on disjoint places")


def standard_values(q: int, s, satake=None, chi_value=1, betas=None, exact=False):
    """Assignment table for evaluating an EulerProduct at a place.

    With exact=True, q^(1/2) is realized as an exact cyclotomic square root
    and s must be a half-integer.
    """
    vals = {}
    if exact:
        s = Fraction(s)
        vals["Q"] = sqrt_of_prime_power(q)
        x2 = Fraction(q) ** (-int(2 * s)) if (2 * s).denominator == 1 else None
        if x2 is None:
            raise ValueError("exact evaluation needs a half-integer s")
        if s.denominator == 1:
            vals["X"] = Cyclotomic.rational(Fraction(q) ** (-int(s)))
        else:
            vals["X"] = vals["Q"] ** (-int(2 * s))
        vals[CHI] = chi_value if isinstance(chi_value, Cyclotomic) else Cyclotomic.rational(chi_value)
    else:
        vals["Q"] = complex(q) ** 0.5
        vals["X"] = complex(q) ** (-complex(s))
        vals[CHI] = (chi_value.eval_complex() if isinstance(chi_value, Cyclotomic)
                     else complex(chi_value))
    for i, av in enumerate(satake or []):
        if exact:
            vals[f"a{i+1}"] = av if isinstance(av, Cyclotomic) else Cyclotomic.rational(av)
        else:
            vals[f"a{i+1}"] = av.eval_complex() if isinstance(av, Cyclotomic) else complex(av)
    for i, bv in enumerate(betas or []):
        if exact:
            vals[f"b{i+1}"] = bv if isinstance(bv, Cyclotomic) else Cyclotomic.rational(bv)
        else:
            vals[f"b{i+1}"] = bv.eval_complex() if isinstance(bv, Cyclotomic) else complex(bv)
    return vals


def local_l_inverse(case: str, place: LocalPlaceData) -> EulerProduct:
    """Select the appropriate inverse local factor for a place."""
    case = place.case or case
    if place.ram_class == "unramified":
        return unramified_inv(case, place.m_local, place.r_local)
    if case in ("III'", "IV'"):
        return split_case_inv(case, place.m_local, place.r_local)
    return ramified_inv(case, place.m_local, place.r_local, place.conductor_exp)


def global_truncated_L(data: EigenformData, case: str, s, place_set, exact=False):
    """Product of local L-factors over a finite place set.

    Returns (value, [(place id, EulerProduct of the inverse factor)]).
    """
    factors = []
    total = Cyclotomic.rational(1) if exact else complex(1)
    for pid in place_set:
        if pid not in data.places:
            raise KeyError(f"place {pid} has no local data")
        pl = data.places[pid]
        inv = local_l_inverse(case, pl)
        factors.append((pid, inv))
        sat = pl.satake or []
        vals = standard_values(pl.q, s, satake=sat, chi_value=pl.chi_value or 1,
                               betas=sat, exact=exact)
        v = inv.evaluate(vals)
        if exact:
            total = total * v.inverse()
        else:
            total = total * (1.0 / v)
    return total, factors


# ---------------------------------------------------------------------------
# doubling output constants (Theorem 2.2 / Theorem 6.1)


def doubling_constants(shape: GroupShape, data: EigenformData, variant: str = "C",
                       gl_count=None):
    """The constant C / C' / C'' in front of the integral representation.

    Returns a dict with the per-place monomial of chi(n1)^(m d1) |n1|^(m d2 (s+kappa)),
    the volume term vol(GL_m(O)/GL_m(n2 [p^c] O)) realized as a coset count,
    and the sign / |varpi|-power extras of the C'' variant.
    """
    consts = derive_constants(shape)
    m = shape.m
    monomials = []
    for pid, exp in data.n1:
        # chi(p^exp)^(m d1) |p^exp|^(m d2 (s+kappa))
        #   = c^(exp m d1) X^(exp m d2) Q^(-2 exp m d2 kappa)
        mono = LaurentMonomial(1, {CHI: exp * m * consts.d1,
                                   "X": exp * m * consts.d2})
        mono = mono * qpow(-Fraction(exp * m * consts.d2) * consts.kappa)
        monomials.append((pid, mono))
    from .residue import gl_congruence_count, ZModRing  # local import to avoid a cycle
    volume = 1
    count_places = list(data.n2) + (list(data.p) if variant == "C'" else [])
    for pid, exp in count_places:
        q = data.places[pid].q
        volume *= gl_congruence_count(m, ZModRing(q, exp)) if gl_count is None \
            else gl_count(m, q, exp)
    out = {"variant": variant, "monomials": monomials, "volume": volume, "sign": 1,
           "varpi_power": Fraction(0)}
    if variant == "C''":
        out["sign"] = (-1) ** m
        qp = data.places[data.p[0][0]].q if data.p else None
        out["varpi_power"] = Fraction(consts.d3 * (m * m + m), 2)
        out["varpi_base"] = qp
    return out


def prop42_scalar(shape: GroupShape, conductor_exp: int) -> LaurentMonomial:
    """chi(varpi)^(c m d1) q^(-c m d2 (s+kappa)), the eigenvalue constant of
    the dagger-section pairing."""
    consts = derive_constants(shape)
    c, m = conductor_exp, shape.m
    mono = LaurentMonomial(1, {CHI: c * m * consts.d1, "X": c * m * consts.d2})
    return mono * qpow(-Fraction(c * m * consts.d2) * consts.kappa)
