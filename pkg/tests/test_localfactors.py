from fractions import Fraction

import pytest

from doublecheck.groups import GroupShape
from doublecheck.laurent import LaurentMonomial
from doublecheck.localfactors import (EigenformData, LocalPlaceData,
                                      caseIV_identity_check, doubling_constants,
                                      global_truncated_L, hecke_local_L,
                                      ml_shift_identity, modification_M,
                                      normalizing_b, prop42_scalar,
                                      ramified_inv, split_case_inv,
                                      standard_values, unramified_inv)

F = Fraction


def keys_of(ep):
    return sorted(tuple(sorted(u.exps.items())) for u, _ in ep.factors)


def test_hecke_local_L_shift_encoding():
    # L(s + 3/2, chi): monomial c Q^-3 X, inverted
    ep = hecke_local_L(F(3, 2))
    assert len(ep.factors) == 1
    u, inv = ep.factors[0]
    assert inv and u.exps == {"Q": -3, "X": 1, "c": 1}
    # the zeta factor L(s, 1)
    assert hecke_local_L(0).factors[0][0].exps == {"X": 1, "c": 1}


def test_normalizing_b_lists():
    b = normalizing_b("II", 2)
    assert keys_of(b) == sorted([(("Q", -3), ("X", 1), ("c", 1)),
                                 (("Q", -2), ("X", 2), ("c", 2))])
    b = normalizing_b("IV", 1)
    assert keys_of(b) == [(("Q", -2), ("X", 2), ("c", 2))]
    b = normalizing_b("I", 2)
    assert keys_of(b) == [(("Q", -2), ("X", 2), ("c", 2))]
    with pytest.raises(ValueError):
        normalizing_b("II", 2, conductor_exp=1)
    # Case V inert: signs (-1)^(n+i); ramified keeps only even twists
    b = normalizing_b("V-inert", 2)
    coeffs = sorted(str(u.coeff) for u, _ in b.factors)
    assert coeffs == ["-1", "1"]
    # n=3 ramified: i=1 (n+i even) kept, i=2 dropped, i=3 kept
    b = normalizing_b("V-ramified", 3)
    assert len(b.factors) == 2


def test_normalizing_degree_counts():
    # number of L-factors per list
    assert len(normalizing_b("II", 4).factors) == 1 + 2
    assert len(normalizing_b("I", 5).factors) == 2
    assert len(normalizing_b("III", 2).factors) == 1 + 2
    assert len(normalizing_b("IV'", 3).factors) == 3


def test_unramified_lists():
    u = unramified_inv("II", 1, 0)
    assert keys_of(u) == sorted([(("X", 1), ("c", 1)),
                                 (("X", 1), ("a1", 1), ("c", 1)),
                                 (("X", 1), ("a1", -1), ("c", 1))])
    u = unramified_inv("V-inert", 1, 0)
    assert (("Q", -2), ("X", 1), ("a1", 1), ("c", 1)) in keys_of(u)
    assert (("Q", 2), ("X", 1), ("a1", -1), ("c", 1)) in keys_of(u)
    u = unramified_inv("III", 1, 0)
    assert (("Q", 8), ("X", 2), ("c", 2)) in keys_of(u)
    assert (("Q", -2), ("X", 1), ("a1", 1), ("c", 1)) in keys_of(u)
    assert (("X", 1), ("c", 1)) in keys_of(u)


@pytest.mark.parametrize("case,m,r,deg", [
    ("II", 1, 0, 3), ("II", 2, 0, 5), ("II", 3, 0, 7),
    ("I", 1, 0, 2), ("I", 2, 1, 4), ("I", 3, 2, 8),
    ("III", 1, 0, 5), ("III", 2, 1, 11),
    ("IV", 1, 0, 4), ("IV", 2, 1, 10),
    ("V-inert", 1, 0, 2), ("V-inert", 3, 0, 6),
    ("V-ramified", 2, 1, 4),
])
def test_unramified_degree_law(case, m, r, deg):
    assert unramified_inv(case, m, r).degree("X") == deg


def test_ramified_lists():
    r = ramified_inv("II", 2, 0)
    assert len(r.factors) == 2
    assert ramified_inv("II", 2, 0, conductor_exp=1).factors == []
    r = ramified_inv("V-ramified", 1, 0)
    assert r.factors[0][0].exps == {"Q": -1, "X": 1, "b1": 1, "c": 1}


@pytest.mark.parametrize("m", [1, 2, 3])
def test_split_degree_always_2m(m):
    assert len(split_case_inv("III'", m, 0).factors) == 2 * m
    assert len(split_case_inv("IV'", m, 0).factors) == 2 * m


def test_split_lists():
    sp = split_case_inv("III'", 1, 0)
    assert sp.factors[0][0].exps == {"X": 1, "b1": 1, "c": 1}
    sp = split_case_inv("IV'", 1, 0)
    assert sp.factors[0][0].exps == {"Q": -2, "X": 1, "b1": 1, "c": 1}


def test_modification_lists():
    assert modification_M("II", 1, 0).factors[0][0].exps == \
        {"Q": 2, "X": 1, "b1": 1, "c": 1}
    assert modification_M("IV", 1, 0).factors[0][0].exps == \
        {"X": 1, "b1": 1, "c": 1}


@pytest.mark.parametrize("case", ["I", "II", "III", "IV", "V-inert", "V-ramified"])
@pytest.mark.parametrize("m", [1, 2])
def test_ml_shift_identity(case, m):
    for r in ((0,) if case == "II" else (0, 1)):
        ok, witness = ml_shift_identity(case, m, r)
        assert ok, (case, m, r, witness)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("r", [0, 1])
def test_caseIV_identity(m, r):
    ok, report = caseIV_identity_check(m, r)
    assert ok, report


def test_global_truncated_L():
    pl = LocalPlaceData(q=3, ram_class="unramified", m_local=1, r_local=0,
                        satake=[1], chi_value=1)
    ef = EigenformData(weight=4, degree=1, places={"3": pl})
    val, factors = global_truncated_L(ef, "II", 3, ["3"])
    assert abs(val - (1 - 3.0 ** -3) ** -3) < 1e-12
    assert len(factors) == 1
    assert global_truncated_L(ef, "II", 3, [])[0] == 1
    exact, _ = global_truncated_L(ef, "II", 3, ["3"], exact=True)
    assert exact.as_fraction() == F(27, 26) ** 3
    with pytest.raises(KeyError):
        global_truncated_L(ef, "II", 3, ["missing"])


def test_mixed_place_product_is_product_of_factors():
    unram = LocalPlaceData(q=3, ram_class="unramified", m_local=1, r_local=0,
                           satake=[1], chi_value=1)
    ram = LocalPlaceData(q=5, ram_class="ramified-level-c", m_local=1, r_local=0,
                         satake=[1], chi_value=1)
    ef = EigenformData(weight=4, degree=1, places={"a": unram, "b": ram})
    both, _ = global_truncated_L(ef, "II", 3, ["a", "b"])
    va, _ = global_truncated_L(ef, "II", 3, ["a"])
    vb, _ = global_truncated_L(ef, "II", 3, ["b"])
    assert abs(both - va * vb) < 1e-12


def test_doubling_constants_monomial():
    sh = GroupShape("II", 1, 0)
    pl = LocalPlaceData(q=3, ram_class="ramified-level-c", conductor_exp=1)
    pl2 = LocalPlaceData(q=5, ram_class="ramified-level-c", conductor_exp=1)
    ef = EigenformData(weight=4, degree=1, places={"n1": pl, "n2": pl2},
                       n1=[("n1", 1)], n2=[("n2", 1)])
    out = doubling_constants(sh, ef, "C")
    (pid, mono), = out["monomials"]
    # c q^-(s+kappa) with kappa = 3/2: c X Q^-3
    assert mono.exps == {"c": 1, "X": 1, "Q": -3}
    assert out["volume"] == 4  # |GL_1(Z/5)|
    assert out["sign"] == 1
    out2 = doubling_constants(sh, ef, "C''")
    assert out2["sign"] == -1


def test_prop42_scalar():
    sh = GroupShape("II", 1, 0)
    mono = prop42_scalar(sh, 1)
    assert mono.exps == {"c": 1, "X": 1, "Q": -3}


def test_compositional_b_from_hecke():
    # composing hecke_local_L reproduces normalizing_b for Case II n=2
    built = hecke_local_L(F(3, 2)) * hecke_local_L(1, chi_power=2, x_power=2)
    assert keys_of(built) == keys_of(normalizing_b("II", 2))


def test_standard_values_exact_halves():
    vals = standard_values(3, F(3, 2), exact=True)
    q32 = vals["X"]
    assert (q32 * q32).as_fraction() == F(1, 27)
