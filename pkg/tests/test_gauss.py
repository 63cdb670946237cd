from fractions import Fraction
from itertools import product

import pytest

from doublecheck.cyclotomic import Cyclotomic
from doublecheck.gauss import (FiniteCharacter, gauss_sum, gauss_sum_norm_twist,
                               global_gauss, matrix_gauss_bruteforce,
                               matrix_gauss_bruteforce_quad, matrix_gauss_closed)
from doublecheck.residue import QuadRing, ZModRing


def test_quadratic_gauss_sum_p3():
    chi = FiniteCharacter(ZModRing(3, 1), 2)
    assert gauss_sum(chi) == Cyclotomic(3, {1: 1, 2: -1})


def test_quadratic_gauss_sum_p5_modulus():
    chi = FiniteCharacter(ZModRing(5, 1), 2)
    g = gauss_sum(chi)
    assert abs(abs(g.eval_complex()) ** 2 - 5) < 1e-10
    assert g * g.conj() == 5


def test_ramanujan_sum():
    triv = FiniteCharacter(ZModRing(3, 1), 1)
    assert gauss_sum(triv) == -1


def test_conductors():
    assert FiniteCharacter(ZModRing(3, 2), 6).conductor_exp == 2
    assert FiniteCharacter(ZModRing(3, 2), 2).conductor_exp == 1
    assert FiniteCharacter(ZModRing(3, 2), 1).conductor_exp == 0
    assert FiniteCharacter(ZModRing(7, 1), 3).conductor_exp == 1


def test_bad_order_rejected():
    with pytest.raises(ValueError):
        FiniteCharacter(ZModRing(3, 1), 5)


@pytest.mark.parametrize("p,c,order", [(3, 1, 2), (5, 1, 4), (7, 1, 6),
                                       (3, 2, 6), (5, 2, 20), (7, 2, 42)])
def test_primitive_modulus_identity(p, c, order):
    chi = FiniteCharacter(ZModRing(p, c), order)
    assert chi.is_primitive()
    g = gauss_sum(chi)
    # exact form of |G|^2 = q^c
    assert g * g.conj() == p ** c
    assert abs(abs(g.eval_complex()) ** 2 - p ** c) < 1e-9


def test_value_of_rational():
    chi = FiniteCharacter(ZModRing(3, 1), 2)
    assert chi.value_of_rational(Fraction(1, 2)) == chi.value(2)  # 1/2 = 2 mod 3
    assert chi.value_of_rational(3) == 0


def test_matrix_zero_beta():
    chi = FiniteCharacter(ZModRing(3, 1), 2)
    assert matrix_gauss_bruteforce(chi, [[0]], 1) == 0


def test_matrix_identity_beta_gives_g():
    chi = FiniteCharacter(ZModRing(3, 1), 2)
    assert matrix_gauss_bruteforce(chi, [[1]], 1) == gauss_sum(chi)


def test_matrix_singular_beta_vanishes():
    chi = FiniteCharacter(ZModRing(3, 1), 2)
    assert matrix_gauss_bruteforce(chi, [[1, 0], [0, 3]], 2) == 0
    assert matrix_gauss_closed(chi, [[1, 0], [0, 3]], 2) == 0


def test_closed_equals_brute_exhaustive_small():
    chi = FiniteCharacter(ZModRing(3, 1), 2)
    for bet in product(range(3), repeat=4):
        B = [[bet[0], bet[1]], [bet[2], bet[3]]]
        assert matrix_gauss_bruteforce(chi, B, 2) == matrix_gauss_closed(chi, B, 2)


def test_closed_form_shape_m2():
    chi = FiniteCharacter(ZModRing(3, 1), 2)
    g = gauss_sum(chi)
    val = matrix_gauss_closed(chi, [[1, 1], [1, 2]], 2)  # det = 1
    assert val == chi.value(1) * g * g


def test_quad_model_agreement():
    model = QuadRing(3, 1, -1)
    chi = FiniteCharacter(ZModRing(3, 1), 2)
    g = gauss_sum_norm_twist(chi, model)
    assert abs(abs(g.eval_complex()) ** 2 - 9) < 1e-9
    one, zero, i9 = model.one(), model.zero(), (0, 1)
    for beta in ([[one]], [[i9]], [[zero]],
                 [[one, zero], [zero, i9]], [[one, one], [i9, one]]):
        m = len(beta)
        assert matrix_gauss_bruteforce_quad(chi, model, beta, m) == \
            matrix_gauss_closed(chi, beta, m, model=model)


def test_quad_model_level_guard():
    model = QuadRing(3, 2, -1)
    chi = FiniteCharacter(ZModRing(3, 1), 2)
    with pytest.raises(NotImplementedError):
        gauss_sum_norm_twist(chi, model)


def test_global_gauss():
    g3 = gauss_sum(FiniteCharacter(ZModRing(3, 1), 2))
    g5 = gauss_sum(FiniteCharacter(ZModRing(5, 1), 2))
    assert global_gauss([]) == 1
    assert global_gauss([g3]) == g3
    assert global_gauss([g3, g5]) == g3 * g5


def test_multiplicativity_guard_full_table():
    chi = FiniteCharacter(ZModRing(7, 1), 6)  # small; full table verified
    lt = chi.log_table
    for u in lt:
        for v in lt:
            assert lt[(u * v) % 7] == (lt[u] + lt[v]) % 6
