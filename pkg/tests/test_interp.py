import math
from fractions import Fraction

import pytest

from doublecheck.cyclotomic import Cyclotomic
from doublecheck.gauss import FiniteCharacter, gauss_sum_norm_twist
from doublecheck.groups import GroupShape
from doublecheck.interp import (DirichletCharacter, ExactProduct,
                                InterpolationInput, algebraicity_ratio,
                                bernoulli_L, bernoulli_number,
                                dirichlet_L_numeric, functional_eq_check,
                                interp_symplectic, interp_unitary, kummer_check,
                                lp_factor, pi_exponent_audit, special_point,
                                weight_bound)
from doublecheck.localfactors import EigenformData, LocalPlaceData
from doublecheck.residue import QuadRing, ZModRing

F = Fraction


def make_input(case, m, r, l, p=3, c=0, q_aux=7, alpha=F(1), sat_aux=F(2),
               chi_order=None):
    shape = GroupShape(case, m, r)
    chi_p = None
    chi_val_ell = Cyclotomic.rational(1)
    if c > 0:
        order = chi_order if chi_order else (2 if c == 1 else 6)
        chi_p = FiniteCharacter(ZModRing(p, c), order)
        chi_val_ell = chi_p.value(q_aux % (p ** c))
    places = {
        "aux": LocalPlaceData(q=q_aux, ram_class="unramified", m_local=m, r_local=r,
                              satake=[sat_aux] * m, chi_value=chi_val_ell),
        "p": LocalPlaceData(q=p, ram_class="p-stabilized", m_local=m, r_local=r,
                            satake=[F(1)] * m, chi_value=1, conductor_exp=c),
    }
    ef = EigenformData(weight=l, degree=1, places=places, p=[("p", 1)], alpha_p=alpha)
    gauss_D = gauss_sum_norm_twist(chi_p, QuadRing(p, 1, -1)) \
        if (c == 1 and case == "IV") else None
    return InterpolationInput(shape=shape, eigenform=ef, l=l, chi_p=chi_p,
                              place_set=["aux"], gauss_p_D=gauss_D)


# -- special points ---------------------------------------------------------

def test_special_point_case_ii_example():
    sp = special_point("II", 2, 0, 5)
    assert sp["s0"] == F(5, 2) and sp["d_pi"] == 20


def test_special_point_case_v_example():
    sp = special_point("V", 1, 0, 3)
    assert sp["s0"] == F(1, 2) and sp["dd_pi"] == 4


def test_weight_bound_guard():
    with pytest.raises(ValueError):
        special_point("II", 2, 0, 2)
    assert weight_bound("IV", 1, 1, over_Q=True) == 5
    assert weight_bound("IV", 1, 1, over_Q=False) == 4


@pytest.mark.parametrize("case", ["II", "III", "IV", "V"])
@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("r", [0, 1])
def test_pi_exponent_audit(case, m, r):
    if case == "II" and r > 0:
        pytest.skip("case II is totally isotropic")
    b = weight_bound(case, m, r)
    for l in (b, b + 1):
        audit = pi_exponent_audit(case, m, r, l)
        assert audit["d_match"] and audit["dd_match"], (case, m, r, l, audit)


# -- Bernoulli / Dirichlet side ----------------------------------------------

def test_zeta_negative_values():
    triv = DirichletCharacter(1)
    assert bernoulli_L(triv, 2) == F(-1, 12)
    for n in range(2, 13):
        assert bernoulli_L(triv, n) == -bernoulli_number(n) / n


def test_bernoulli_quadratic_mod5():
    chi5 = DirichletCharacter(5, 2)
    assert bernoulli_L(chi5, 2) == F(-2, 5)


def test_bernoulli_odd_mod3():
    chi3 = DirichletCharacter(3, 2)
    assert bernoulli_L(chi3, 1) == F(1, 3)


def test_numeric_zeta2():
    assert abs(dirichlet_L_numeric(DirichletCharacter(1), 2.0)
               - math.pi ** 2 / 6) < 1e-10


def test_numeric_quadratic_mod5_closed_form():
    v = dirichlet_L_numeric(DirichletCharacter(5, 2), 2.0)
    assert abs(v - 4 * math.pi ** 2 * 5 ** -2.5) < 1e-10


def test_numeric_matches_bernoulli_via_fe():
    # s = 4 for the quadratic character mod 5 through the classical FE
    rep = functional_eq_check(DirichletCharacter(5, 2), F(7, 2))
    assert abs(rep["lhs_series"] - rep["rhs_classical"]) < 1e-8 * abs(rep["lhs_series"])


@pytest.mark.parametrize("modulus,order", [(5, 2), (7, 3)])
@pytest.mark.parametrize("s0", [F(3, 2), F(7, 2)])
def test_functional_equation(modulus, order, s0):
    psi = DirichletCharacter(modulus, order)
    rep = functional_eq_check(psi, s0)
    assert rep["classical_agrees"]
    assert abs(rep["paper_to_classical_ratio"] - modulus) < 1e-7


def test_functional_equation_guards():
    with pytest.raises(ValueError):
        functional_eq_check(DirichletCharacter(9, 2), F(3, 2))  # imprimitive
    with pytest.raises(ValueError):
        functional_eq_check(DirichletCharacter(3, 2), F(3, 2))  # odd psi, even k


def test_lp_factor():
    assert lp_factor(1, 1, 3, F(3, 2)) == ExactProduct.one()
    assert lp_factor(0, 1, 3, F(3, 2)).cyclo.as_fraction() == F(9, 8)
    # ratio is 1 when c >= 1
    num = lp_factor(1, 1, 3, F(3, 2))
    den = lp_factor(1, 1, 3, -F(3, 2) + 0)
    assert num == den == ExactProduct.one()


# -- interpolation assemblies -------------------------------------------------

CONFIGS = []
for c in (0, 1, 2):
    CONFIGS += [("II", 1, 0, 5, c), ("II", 2, 0, 6, c), ("IV", 1, 0, 5, c),
                ("V-inert", 1, 0, 4, c), ("III", 1, 0, 5, c)]
CONFIGS += [("IV", 2, 0, 7, 0), ("V-inert", 2, 0, 6, 1), ("II", 1, 0, 7, 2),
            ("III", 2, 0, 7, 0), ("V-inert", 1, 0, 6, 2)]


@pytest.mark.parametrize("case,m,r,l,c", CONFIGS)
def test_dual_path_assembly(case, m, r, l, c):
    inp = make_input(case, m, r, l, c=c)
    rec = (interp_symplectic if case in ("II", "III") else interp_unitary)(inp)
    assert rec["dual_path_equal"]
    assert ("modification" in rec["factors"]) == (c == 0)


def test_symplectic_guards():
    with pytest.raises(ValueError):
        interp_symplectic(make_input("II", 1, 0, 4, c=0))  # parity l != m mod 2
    with pytest.raises(ValueError):
        interp_unitary(make_input("II", 1, 0, 5, c=0))


def test_alpha_zero_rejected():
    inp = make_input("IV", 1, 0, 5, c=0)
    inp.eigenform.alpha_p = 0
    with pytest.raises(ValueError):
        interp_unitary(inp)


def test_lp_ratio_only_at_c0():
    rec0 = interp_symplectic(make_input("II", 1, 0, 5, c=0))
    rec1 = interp_symplectic(make_input("II", 1, 0, 5, c=1))
    assert rec0["factors"]["lp_ratio"] != ExactProduct.one()
    assert rec1["factors"]["lp_ratio"] == ExactProduct.one()


def test_varpi_prefactor_trivial_for_m1():
    rec = interp_symplectic(make_input("II", 1, 0, 5, c=1))
    assert rec["factors"]["varpi_power"].rational == 1


def test_gamma_block_length_case_iii():
    rec = interp_symplectic(make_input("III", 1, 0, 5, c=1))
    gb = rec["factors"]["gamma_block"]
    half_steps = [a for a, mult in gb.gammas.items() if mult > 0]
    # n d1 = 2n = 4 arguments l - i/2 plus Gamma(s0 + 1/2) plus c_l numerators
    assert F(5) in half_steps and F(7, 2) in half_steps


def test_ledger_multiplicative_in_places():
    full = interp_unitary(make_input("IV", 1, 0, 5, c=0))
    empty_inp = make_input("IV", 1, 0, 5, c=0)
    empty_inp.place_set = []
    empty = interp_unitary(empty_inp)
    lf = full["factors"]["l_value"].cyclo
    assert empty["total"].cyclo * lf == full["total"].cyclo


def test_algebraicity_ratio_audit():
    rep = algebraicity_ratio(make_input("IV", 1, 0, 5, c=0))
    assert rep["exponent_match"]
    assert rep["ratio"].units["petersson"] == -1
    rep = algebraicity_ratio(make_input("V-inert", 1, 0, 4, c=1))
    assert rep["ratio"].units["Omega"] == -1


# -- Kummer property -----------------------------------------------------------

def build_kummer(alpha):
    def build(chi_p):
        shape = GroupShape("II", 1, 0)
        chi_val = Cyclotomic.rational(1) if chi_p is None \
            else chi_p.value(7 % chi_p.ring.modulus)
        places = {
            "aux": LocalPlaceData(q=7, ram_class="unramified", m_local=1, r_local=0,
                                  satake=[F(2)], chi_value=chi_val),
            "p": LocalPlaceData(q=3, ram_class="p-stabilized", m_local=1, r_local=0,
                                satake=[F(1)], chi_value=1,
                                conductor_exp=0 if chi_p is None else chi_p.conductor_exp),
        }
        ef = EigenformData(weight=5, degree=1, places=places, p=[("p", 1)],
                           alpha_p=alpha)
        return InterpolationInput(shape=shape, eigenform=ef, l=5, chi_p=chi_p,
                                  place_set=["aux"])
    return build


def test_kummer_constant_function_is_c0_entry():
    rep = kummer_check(build_kummer(F(1)), 3, 1, F(1))
    entry = rep["table"].entries[(0, 0)]
    direct = interp_symplectic(build_kummer(F(1))(None))
    assert entry.value == direct["total"]


def test_kummer_ordinary_bounded():
    rep = kummer_check(build_kummer(F(1)), 3, 2, F(1))
    assert rep["bounded"], rep["failures"]
    assert len(rep["table"].entries) == 6  # trivial + quadratic + 4 primitive mod 9
    for val in rep["transforms"].values():
        assert val["valuation"] >= -rep["V0"] - 1  # phi(p^c) budget


def test_kummer_non_ordinary_flagged():
    rep = kummer_check(build_kummer(F(3)), 3, 2, F(3))
    assert not rep["bounded"]
    kinds = {f["kind"] for f in rep["failures"]}
    assert "alpha-drift" in kinds
    drift = next(f for f in rep["failures"] if f["kind"] == "alpha-drift")
    assert drift["witness"]


def test_kummer_deterministic():
    a = kummer_check(build_kummer(F(1)), 3, 2, F(1))
    b = kummer_check(build_kummer(F(1)), 3, 2, F(1))
    assert a["V0"] == b["V0"] and a["bounded"] == b["bounded"]
    assert {k: e.residual for k, e in a["table"].entries.items()} == \
        {k: e.residual for k, e in b["table"].entries.items()}
