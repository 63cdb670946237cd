from fractions import Fraction

import pytest

from doublecheck.algebras import Algebra, Mat
from doublecheck.cosets import (descent_reps, lemma32_reps,
                                skew_condition_holds, verify_decomposition)
from doublecheck.groups import GroupShape, j_matrix, phi_matrix
from doublecheck.residue import (QuadRing, ZModRing, gl_congruence_count,
                                 gl_count_bruteforce)

F = Fraction


def test_gl_counts_closed_form():
    assert gl_congruence_count(1, ZModRing(3, 1)) == 2
    assert gl_congruence_count(1, ZModRing(3, 2)) == 6
    assert gl_congruence_count(2, ZModRing(3, 1)) == 48


@pytest.mark.parametrize("ring,m", [
    (ZModRing(3, 1), 2), (ZModRing(3, 2), 2), (ZModRing(5, 1), 2),
    (ZModRing(7, 2), 1), (QuadRing(3, 1, -1), 1),
])
def test_gl_closed_form_vs_enumeration(ring, m):
    assert gl_congruence_count(m, ring) == gl_count_bruteforce(m, ring)


def test_enumeration_cap():
    with pytest.raises(ValueError):
        gl_count_bruteforce(2, ZModRing(7, 2), limit=10 ** 6)


def test_unit_generator():
    ring = ZModRing(3, 2)
    g = ring.unit_generator()
    seen = set()
    x = 1
    for _ in range(ring.unit_count()):
        seen.add(x)
        x = ring.mul(x, g)
    assert len(seen) == 6
    fq = QuadRing(3, 1, -1)
    g = fq.unit_generator()
    assert len({fq._pow(g, k) for k in range(8)}) == 8


def test_lemma32_sp2():
    sh = GroupShape("II", 1, 0)
    reps = lemma32_reps(sh, 3, 1, [1])
    assert len(reps) == 9
    phi = phi_matrix(sh)
    for g in reps:
        assert g * phi * g.star() == phi
    # xi = identity: a single trivial representative
    assert len(lemma32_reps(sh, 3, 1, [0])) == 1


def test_lemma32_case_i_forces_c_zero():
    sh = GroupShape("I", 1, 0)
    reps = lemma32_reps(sh, 3, 1, [1])
    assert len(reps) == 1
    assert reps[0].e[0][1] == 0  # c block vanishes for p odd


def test_lemma32_rejects_p2_and_caps():
    sh = GroupShape("II", 1, 0)
    with pytest.raises(ValueError):
        lemma32_reps(sh, 2, 1, [1])
    with pytest.raises(ValueError):
        lemma32_reps(GroupShape("II", 2, 0), 3, 1, [2, 2], size_cap=10)


def test_lemma32_quadratic_with_b_blocks():
    E = Algebra.quadratic(-1)
    th = Mat(E, [[(F(0), F(1))]])
    sh = GroupShape("V-inert", 1, 1, theta=th, alg=E)
    reps = lemma32_reps(sh, 3, 1, [1], size_cap=10 ** 6)
    assert len(reps) == 81  # 9 b-choices x 9 c-choices
    phi = phi_matrix(sh)
    for g in reps[:10]:
        assert g * phi * g.star() == phi


def test_verify_sp2():
    sh = GroupShape("II", 1, 0)
    reps = lemma32_reps(sh, 3, 1, [1])
    rep = verify_decomposition(sh, 3, 1, [1], reps)
    assert rep.verified and rep.count == 9
    # a duplicate breaks disjointness with a witness
    dup = verify_decomposition(sh, 3, 1, [1], reps + [reps[0]])
    assert not dup.disjoint
    assert dup.failures[0]["kind"] == "not-disjoint"
    # a missing representative breaks coverage
    part = verify_decomposition(sh, 3, 1, [1], reps[:-1])
    assert not part.covers


def test_verify_case_i():
    sh = GroupShape("I", 1, 0)
    reps = lemma32_reps(sh, 3, 1, [1])
    rep = verify_decomposition(sh, 3, 1, [1], reps)
    assert rep.verified and rep.count == 1


def test_verify_p5():
    sh = GroupShape("II", 1, 0)
    reps = lemma32_reps(sh, 5, 1, [1])
    assert len(reps) == 25
    assert verify_decomposition(sh, 5, 1, [1], reps).verified


def test_descent_counts():
    sh = GroupShape("II", 1, 0)
    assert len(descent_reps(sh, 3, 1)) == 1
    dr = descent_reps(sh, 3, 2)
    assert len(dr) == 81
    J = j_matrix(sh)
    for g in dr[::13]:
        assert g * J * g.star() == J


def test_descent_skew_condition_constructive():
    E = Algebra.quadratic(-1)
    th = Mat(E, [[(F(0), F(1))]])
    sh = GroupShape("V-inert", 1, 1, theta=th, alg=E)
    # n_level = 1: empty moduli, identity representative
    dr = descent_reps(sh, 3, 1)
    assert len(dr) == 1
    b0 = Mat.zeros(E, 1, 1)
    c0 = Mat.zeros(E, 1, 1)
    assert skew_condition_holds(sh, b0, c0)
