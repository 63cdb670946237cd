import cmath
import math
from fractions import Fraction

import pytest

from doublecheck.arch import (ArchParams, GammaExpr, arch_fc, c_l,
                              eisenstein_constant, gamma_factor, omega_special,
                              xi_closed_form, xi_quadrature, zero_criterion)

F = Fraction


def test_gamma_factor_case_ii_positive():
    g = gamma_factor(ArchParams("II", 1, 3, F(3), F(0), t=1, t_plus=1))
    assert g.num == [] and g.den == [F(3)]
    assert abs(g.value() - 1 / math.gamma(3)) < 1e-15


def test_gamma_factor_case_iv():
    g = gamma_factor(ArchParams("IV", 1, 3, F(3), F(0), t=1, t_plus=1))
    assert g.den == [F(6)]  # 1/Gamma(2l)


def test_gamma_factor_case_v_pole_bookkeeping():
    g = gamma_factor(ArchParams("V", 2, 4, F(4), F(0), t=1, t_plus=1))
    assert g.num == [F(2)]
    assert sorted(g.den) == [F(0), F(3), F(4)]
    assert g.den_poles == 1 and g.num_poles == 0
    assert g.zero_order == 1
    with pytest.raises(ArithmeticError):
        g.value()


def test_zero_criterion():
    assert zero_criterion(ArchParams("II", 1, 3, F(3), F(0), t=1, t_plus=0,
                                     t_minus=1))["verdict"] == "vanishes"
    assert zero_criterion(ArchParams("II", 1, 3, F(3), F(0), t=1,
                                     t_plus=1))["verdict"] == "nonvanishing-possible"
    assert zero_criterion(ArchParams("II", 2, 3, F(3), F(0),
                                     t=0))["verdict"] == "vanishes"


def test_omega_special_value():
    w = omega_special("II", 1, 1.0, 1.0, 2)
    assert abs(w["value"] - (-4 * math.pi ** 2 * math.exp(-2 * math.pi))) < 1e-12


def test_omega_pi_exponent_case_v_n2():
    w = omega_special("V", 2, 1.0, 1.0, 3)
    assert w["pi_exponent"] == F(5)  # nl - iota n(n-1)/4 = 6 - 1
    assert w["value"] is None


def test_omega_nu_norm_one():
    w = omega_special("II", 1, 0.5, 1.0, 4)
    assert w["nu_2beta"] == 1.0
    assert w["nu_2beta"] ** float(w["nu_2beta_exponent"]) == 1.0


def test_omega_needs_positive_beta():
    with pytest.raises(ValueError):
        omega_special("II", 1, -1.0, 1.0, 2)


def test_xi_quadrature_against_closed_form():
    v, err = xi_quadrature(1.0, 1.0, 2.0, 0.0)
    cf = xi_closed_form("II", 1.0, 1.0, 2)
    assert abs(v - cf) < 1e-8 * abs(cf)
    assert err < 1e-8


def test_xi_quadrature_beta_zero_elementary():
    v, _ = xi_quadrature(1.0, 0.0, 2.0, 2.0)
    assert abs(v - math.pi / 2) < 1e-9


def test_xi_vanishing_negative_beta():
    v, _ = xi_quadrature(1.0, -1.0, 3.0, 0.0)
    assert abs(v) <= 1e-8


def test_xi_convergence_guard():
    with pytest.raises(ValueError):
        xi_quadrature(1.0, 1.0, 0.5, 0.0)


def test_arch_fc_matches_xi_path():
    for l, beta, y, x in [(2, 0.5, 0.8, 0.0), (3, 1.5, 1.2, 0.3)]:
        a = arch_fc("II", 1, beta, x, y, l)["value"]
        xi_v, _ = xi_quadrature(y * y, beta, float(l), 0.0)
        path = cmath.exp(2j * math.pi * beta * x) * (y ** l) * xi_v
        assert abs(a - path) <= 1e-9 * abs(path)


def test_arch_fc_case_iv_gamma_denominator():
    rep = arch_fc("IV", 1, 1.0, 0.0, 1.0, 3)
    assert rep["gamma_denominator"] == [F(6)]  # Gamma(2l)


def test_arch_fc_phase_at_z_diag():
    rep = arch_fc("II", 1, 1.0, 0.0, 1.0, 2)
    # x = 0: e(tau(beta z)) = e^(-2 pi tau(beta))
    assert rep["value"].imag == pytest.approx(0.0, abs=1e-12)


def test_c_l_case_v_examples():
    c = c_l("V", 1, 0, 3, F(1, 2))
    assert abs(c.value() - math.pi / 2) < 1e-14
    c = c_l("V", 1, 0, 4, F(1))
    assert abs(c.value() - math.pi / 3) < 1e-14  # Gamma(x)/Gamma(x+1) = 1/x


def test_c_l_case_ii_at_s_lminus1():
    l = 3
    c = c_l("II", 1, 0, l, l - 1)
    assert c.num == [F(4 * l - 3, 4)] and c.den == [F(4 * l + 1, 4)]
    assert abs(c.value() - math.pi * math.gamma(l - 0.75) / math.gamma(l + 0.25)) < 1e-14


def test_c_l_convergence_guard():
    with pytest.raises(ValueError):
        c_l("II", 1, 0, 2, F(-10))


def test_eisenstein_constant_case_v_n1():
    e = eisenstein_constant("V", 1, 3)
    # 2 i^(-3) pi^3 / Gamma(3)
    val = e.scaled(1).value()
    expect = 2 * (1j) ** 1 * math.pi ** 3 / math.gamma(3)
    assert abs(val - expect) < 1e-12
