import random
from fractions import Fraction

import pytest

from doublecheck.cyclotomic import (INF, Cyclotomic, cyclotomic_polynomial,
                                    padic_val, sqrt_of_prime,
                                    sqrt_of_prime_power)


def test_zeta4_square():
    z4 = Cyclotomic.zeta(4)
    assert z4 * z4 == -1


def test_cube_roots_sum():
    z3 = Cyclotomic.zeta(3)
    assert z3 + z3 ** 2 == -1


def test_eval_complex_zeta8():
    v = Cyclotomic.zeta(8).eval_complex()
    assert abs(v - (0.7071067811865476 + 0.7071067811865476j)) < 1e-12


def test_padic_val_examples():
    assert padic_val(12, 2) == 2
    assert padic_val(Fraction(5, 3), 3) == -1
    assert padic_val(0, 7) == INF
    with pytest.raises(ValueError):
        padic_val(5, 6)


def test_conj_involution_and_embedding():
    x = Cyclotomic(12, {0: 4, 1: Fraction(2, 3), 5: -1})
    assert x.conj().conj() == x
    assert abs(x.conj().eval_complex() - x.eval_complex().conjugate()) < 1e-12


def test_inverse():
    x = Cyclotomic(20, {1: 1, 3: Fraction(1, 2), 0: -2})
    assert x * x.inverse() == 1


def test_cross_order_equality():
    # zeta_6 = -zeta_3^2 seen in different ambient orders
    assert Cyclotomic.zeta(6) == -(Cyclotomic.zeta(3) ** 2)
    assert Cyclotomic.zeta(6, 3) == -1


def test_cyclotomic_polynomials():
    assert list(cyclotomic_polynomial(1)) == [-1, 1]
    assert list(cyclotomic_polynomial(12)) == [1, 0, -1, 0, 1]
    assert list(cyclotomic_polynomial(9)) == [1, 0, 0, 1, 0, 0, 1]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_sqrt_of_prime(p):
    s = sqrt_of_prime(p)
    assert s * s == p
    assert abs(s.eval_complex() - p ** 0.5) < 1e-9


def test_sqrt_of_prime_power():
    for q in (9, 27, 49, 125):
        s = sqrt_of_prime_power(q)
        assert s * s == q


def test_padic_valuation_cyclotomic():
    g = Cyclotomic(3, {1: 1, 2: -1})          # i sqrt(3)
    assert g.padic_valuation(3) == Fraction(1, 2)
    assert (Cyclotomic.zeta(9) - 1).padic_valuation(3) == Fraction(1, 6)
    assert Cyclotomic.zeta(8).padic_valuation(3) == 0
    with pytest.raises(ValueError):
        (Cyclotomic.zeta(4) + 2).padic_valuation(5)  # two primes above 5 in Q(i)


def test_field_axioms_randomized():
    rng = random.Random(5)

    def rand_elt():
        n = rng.choice([1, 3, 4, 6, 12])
        return Cyclotomic(n, {rng.randrange(n): Fraction(rng.randint(-4, 4),
                                                         rng.randint(1, 3))
                              for _ in range(2)})

    for _ in range(60):
        a, b, c = rand_elt(), rand_elt(), rand_elt()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
