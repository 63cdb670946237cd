import random
from fractions import Fraction

import numpy as np
import pytest

from doublecheck.algebras import Algebra, Mat
from doublecheck.groups import (GroupShape, build_doubling, delta_matrix,
                                derive_constants, embed_pair, in_group,
                                j_matrix, random_group_element)

F = Fraction


def quad_shape(case="V-inert", m=1, r=1):
    E = Algebra.quadratic(-1)
    th = Mat(E, [[(F(0), F(1))]])  # theta = sqrt(-1), theta* = -theta
    return GroupShape(case, m, r, theta=th, alg=E)


# hand-transcribed constant table: (case, m, r) -> (n, kappa, d1, d2, d3, d4)
CONSTANT_FIXTURE = {
    ("I", 1, 0): (2, F(1, 2), 1, 1, 1, 1),
    ("I", 2, 1): (5, F(2), 1, 1, 1, 1),
    ("II", 1, 0): (2, F(3, 2), 1, 1, 1, 1),
    ("II", 2, 0): (4, F(5, 2), 1, 1, 1, 1),
    ("III", 1, 0): (2, F(5, 2), 2, 2, 2, 1),
    ("III", 2, 1): (5, F(11, 2), 2, 2, 2, 1),
    ("IV", 1, 0): (2, F(3, 2), 2, 2, 2, 1),
    ("IV", 1, 1): (3, F(5, 2), 2, 2, 2, 1),
    ("V-inert", 1, 0): (2, F(1), 1, 2, 2, 2),
    ("V-inert", 2, 1): (5, F(5, 2), 1, 2, 2, 2),
    ("V-ramified", 1, 1): (3, F(3, 2), 1, 2, 1, 1),
    ("V-ramified", 2, 0): (4, F(2), 1, 2, 1, 1),
}


@pytest.mark.parametrize("key", sorted(CONSTANT_FIXTURE))
def test_derived_constants_fixture(key):
    case, m, r = key
    theta = None
    alg = None
    if r > 0:
        if case.startswith("V"):
            sh = quad_shape(case, m, r)
        else:
            alg = Algebra.quaternion(-1, -1)
            if case in ("III", "III'"):
                # hermitian theta (theta* = theta): scalar diagonal works
                th = Mat.diag(alg, [(F(1), F(0), F(0), F(0))] * r)
            else:
                # skew-hermitian theta (theta* = -theta): pure quaternion diagonal
                th = Mat.diag(alg, [(F(0), F(1), F(0), F(0))] * r)
            sh = GroupShape(case, m, r, theta=th, alg=alg)
    else:
        sh = quad_shape(case, m, 0) if case.startswith("V") else GroupShape(case, m, 0)
    c = derive_constants(sh)
    n, kappa, d1, d2, d3, d4 = CONSTANT_FIXTURE[key]
    assert (c.n, c.kappa, c.d1, c.d2, c.d3, c.d4) == (n, kappa, d1, d2, d3, d4)


def test_iota_values():
    assert derive_constants(GroupShape("II", 1, 0)).iota == 1
    assert derive_constants(GroupShape("IV", 1, 0)).iota == 4
    assert derive_constants(quad_shape("V-inert", 1, 0)).iota == 2


def test_split_case_rejected():
    with pytest.raises(ValueError):
        GroupShape("V'", 1, 0)


def test_j_matrix_case_ii_m1():
    d = build_doubling(GroupShape("II", 1, 0))
    assert d["J"].e == Mat(Algebra.field(),
                           [[0, 0, 1, 0], [0, 0, 0, 1],
                            [-1, 0, 0, 0], [0, -1, 0, 0]]).e


@pytest.mark.parametrize("shape_fn", [
    lambda: GroupShape("I", 1, 0),
    lambda: GroupShape("II", 1, 0),
    lambda: GroupShape("II", 2, 0),
    lambda: GroupShape("III", 1, 0),
    lambda: GroupShape("IV", 1, 0),
    lambda: quad_shape("V-inert", 1, 0),
    lambda: quad_shape("V-inert", 1, 1),
    lambda: quad_shape("V-ramified", 1, 1),
])
def test_doubling_identity(shape_fn):
    build_doubling(shape_fn())  # raises if R diag(Phi,-Phi) R* != J


def test_embed_membership_and_parabolic():
    rng = random.Random(3)
    for sh in (GroupShape("II", 1, 0), GroupShape("II", 2, 0), quad_shape()):
        J = j_matrix(sh)
        delta = delta_matrix(sh)
        delta_inv = delta.inverse()
        for _ in range(8):
            g = random_group_element(sh, rng)
            assert in_group(g, sh)[0]
            h = embed_pair(g, g, sh)
            assert h * J * h.star() == J
            t = delta * h * delta_inv
            assert t.block(sh.n, 2 * sh.n, 0, sh.n).is_zero()


def test_embed_rejects_non_member():
    sh = GroupShape("II", 1, 0)
    bad = Mat(Algebra.field(), [[1, 0], [1, 1]])
    bad.e[0][0] = F(2)
    with pytest.raises(ValueError):
        embed_pair(bad, Mat.identity(sh.alg, 2), sh)


def test_embed_identity_pair():
    sh = GroupShape("II", 1, 0)
    one = Mat.identity(sh.alg, 2)
    assert embed_pair(one, one, sh) == Mat.identity(sh.alg, 4)


def test_embed_quaternionic_smoke():
    rng = random.Random(4)
    for case in ("III", "IV"):
        sh = GroupShape(case, 1, 0)
        J = j_matrix(sh)
        for _ in range(5):
            g1 = random_group_element(sh, rng)
            g2 = random_group_element(sh, rng)
            h = embed_pair(g1, g2, sh)
            assert h * J * h.star() == J


def test_nu_multiplicative_random_quaternions():
    H = Algebra.quaternion(-1, -1)
    rng = random.Random(7)
    for _ in range(100):
        u = tuple(F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4))
        v = tuple(F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4))
        assert H.nu(H.mul(u, v)) == H.nu(u) * H.nu(v)


def test_quaternion_matrix_norm_vs_embedding():
    H = Algebra.quaternion(-1, -1)
    rng = random.Random(13)
    for _ in range(10):
        M = Mat(H, [[tuple(F(rng.randint(-3, 3)) for _ in range(4))
                     for _ in range(2)] for _ in range(2)])
        det = np.linalg.det(M.to_complex())
        assert abs(det - complex(M.reduced_norm())) < 1e-6 * max(1.0, abs(det))
