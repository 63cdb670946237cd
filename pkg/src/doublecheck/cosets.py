"""Hecke double-coset representatives and their brute-force verification.

Representatives for K(p^c) xi K(p^c) / K(p^c) are produced exactly over the
rationals from the triangular shape

    [[d, -b* theta^(-1), c d^],
     [0,      1,         b d^],
     [0,      0,          d^ ]]

with d running over elementary-divisor cosets, b over Mat_{r,m}(O) mod the
d-lattice and c over the solutions of eps c + b* theta^ b + c* = 0 modulo
d S_m(O) d*.  Verification works in the finite image G(Z/p^N): scaled
matrices p^Delta * gamma are compared by an exact divide-after-adjugate
membership test, and coverage is an orbit computation under generators of
the congruence subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .algebras import Algebra, Mat
from .cyclotomic import padic_val
from .groups import GroupShape, phi_matrix


@dataclass
class DecompositionReport:
    count: int
    disjoint: bool
    covers: bool
    failures: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.disjoint and self.covers


# ---------------------------------------------------------------------------
# exact representative construction (Lemma 3.2 shape)


def _hermite_cosets(alg: Algebra, p: int, u_exps):
    """Right cosets d GL_m inside GL_m u GL_m for u = diag(varpi^a_i).

    Enumerates upper-triangular Hermite candidates and keeps those whose
    elementary divisors match; the scalar case u = varpi^a 1_m yields the
    single coset varpi^a 1_m.
    """
    m = len(u_exps)
    target = sorted(u_exps)
    if all(e == u_exps[0] for e in u_exps):
        return [Mat.scalar(alg, m, Fraction(p) ** u_exps[0])]
    if alg.kind != Algebra.FIELD:
        raise NotImplementedError("non-scalar elementary divisors only over the base field")
    total = sum(u_exps)
    out = []
    seen = []
    for diag in _compositions(total, m, max(u_exps)):
        uppers = [list(product(*[range(p ** diag[i]) for _ in range(m - 1 - i)]))
                  for i in range(m)]
        for entries in product(*uppers):
            d = Mat.zeros(alg, m, m)
            for i in range(m):
                d.e[i][i] = Fraction(p) ** diag[i]
                for k, j in enumerate(range(i + 1, m)):
                    d.e[i][j] = Fraction(entries[i][k])
            if _divisor_type(d, p) != target:
                continue
            if any(_same_right_coset(d, s, p) for s in seen):
                continue
            seen.append(d)
            out.append(d)
    return out


def _compositions(total, parts, cap):
    if parts == 1:
        if 0 <= total <= cap:
            yield (total,)
        return
    for first in range(0, min(cap, total) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def _divisor_type(d: Mat, p: int):
    """Valuations of the elementary divisors of an integral matrix."""
    m = d.rows
    a = [[Fraction(x) for x in row] for row in d.e]
    # gcd of k x k minors, via valuations of all minors (m <= 3 at desk scale)
    from itertools import combinations
    vals = []
    prev = 0
    for k in range(1, m + 1):
        best = None
        for rows in combinations(range(m), k):
            for cols in combinations(range(m), k):
                minor = _det([[a[i][j] for j in cols] for i in rows])
                if minor != 0:
                    v = padic_val(minor, p)
                    best = v if best is None else min(best, v)
        if best is None:
            return None
        vals.append(best - prev)
        prev = best
    return sorted(int(v) for v in vals)


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = 0
    for j in range(n):
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        out += (-1) ** j * rows[0][j] * _det(sub)
    return out


def _same_right_coset(d1: Mat, d2: Mat, p: int) -> bool:
    q = d2.inverse() * d1
    return all(x.denominator == 1 for row in q.e for x in row) and \
        padic_val(q.reduced_norm(), p) == 0


def _s_matrix_reps(alg: Algebra, eps: int, m: int, p: int, exps):
    """Representatives of S_m(O) / d S_m(O) d* for d = diag(varpi^exps)."""
    basis = alg.basis()
    slots = []
    for i in range(m):
        mod = p ** (2 * exps[i])
        diag_basis = [b for b in basis
                      if alg.is_zero(alg.add(alg.mul(alg.scalar(eps), b), alg.conj(b)))]
        slots.append(("diag", i, diag_basis, mod))
    for i in range(m):
        for j in range(i + 1, m):
            mod = p ** (exps[i] + exps[j])
            slots.append(("pair", (i, j), basis, mod))
    choice_sets = []
    for kind, pos, bas, mod in slots:
        per_slot = [range(mod)] * len(bas)
        choice_sets.append((kind, pos, bas, list(product(*per_slot))))
    for combo in product(*[cs[3] for cs in choice_sets]):
        z = Mat.zeros(alg, m, m)
        for (kind, pos, bas, _), coeffs in zip(choice_sets, combo):
            x = alg.zero()
            for cf, b in zip(coeffs, bas):
                x = alg.add(x, alg.mul(alg.scalar(cf), b))
            if kind == "diag":
                z.e[pos][pos] = alg.add(z.e[pos][pos], x)
            else:
                i, j = pos
                z.e[i][j] = x
                z.e[j][i] = alg.neg(alg.mul(alg.scalar(eps), alg.conj(x)))
        yield z


def _b_matrix_reps(alg: Algebra, r: int, m: int, p: int, exps):
    """Representatives of Mat_{r,m}(O) / Mat_{r,m}(O) d* (column j mod varpi^exps_j)."""
    if r == 0:
        yield Mat.zeros(alg, 0, m)
        return
    basis = alg.basis()
    cells = [(i, j, p ** exps[j]) for i in range(r) for j in range(m)]
    per_cell = [list(product(*[range(mod)] * len(basis))) for _, _, mod in cells]
    for combo in product(*per_cell):
        b = Mat.zeros(alg, r, m)
        for (i, j, _), coeffs in zip(cells, combo):
            x = alg.zero()
            for cf, bb in zip(coeffs, basis):
                x = alg.add(x, alg.mul(alg.scalar(cf), bb))
            b.e[i][j] = x
        yield b


def _theta_hat(shape: GroupShape) -> Mat:
    return shape.theta.star().inverse()


def lemma32_reps(shape: GroupShape, p: int, c: int, u_exps, size_cap: int = 200000):
    """Exact coset representatives for K(p^c) xi K(p^c) with
    xi = diag(u, 1_r, u^), u = diag(varpi^a_i).

    Every returned matrix satisfies the skew condition and lies in G(F).
    """
    if p == 2:
        raise ValueError("p = 2 is rejected (2 must be a unit)")
    alg, m, r, eps = shape.alg, shape.m, shape.r, shape.epsilon
    if alg.kind not in (Algebra.FIELD, Algebra.QUAD):
        raise NotImplementedError("representative enumeration over field/quadratic entries only")
    reps = []
    dim = len(alg.basis())
    for d in _hermite_cosets(alg, p, list(u_exps)):
        exps = [int(padic_val(Fraction(alg.coords(d.e[i][i])[0]), p)) for i in range(m)]
        n_b = (p ** sum(exps)) ** (r * dim)
        n_c = 1
        for i in range(m):
            n_c *= p ** (2 * exps[i])
        if n_b * n_c > size_cap:
            raise ValueError(f"enumeration would need {n_b * n_c} representatives per d; "
                             f"cap is {size_cap}")
        d_hat = d.inverse().star()
        for b in _b_matrix_reps(alg, r, m, p, exps):
            if r > 0:
                a_mat = b.star() * _theta_hat(shape) * b
                c0 = a_mat * Fraction(-eps, 2)
            else:
                c0 = Mat.zeros(alg, m, m)
            for z in _s_matrix_reps(alg, eps, m, p, exps):
                cmat = c0 + z
                rep = _assemble_rep(shape, d, b, cmat, d_hat)
                reps.append(rep)
    for rep in reps:
        _check_rep(shape, rep)
    return reps


def _diag_norm(alg, x):
    return Fraction(alg.coords(x)[0])


def _assemble_rep(shape: GroupShape, d, b, cmat, d_hat) -> Mat:
    alg, m, r = shape.alg, shape.m, shape.r
    if r == 0:
        z = Mat.zeros(alg, m, m)
        return Mat.from_blocks([[d, cmat * d_hat], [z, d_hat]])
    th_inv = shape.theta.inverse()
    return Mat.from_blocks([
        [d, -(b.star() * th_inv), cmat * d_hat],
        [Mat.zeros(alg, r, m), Mat.identity(alg, r), b * d_hat],
        [Mat.zeros(alg, m, m), Mat.zeros(alg, m, r), d_hat],
    ])


def _check_rep(shape: GroupShape, rep: Mat):
    phi = phi_matrix(shape)
    if rep * phi * rep.star() != phi:
        raise AssertionError("representative is not in G")


def skew_condition_holds(shape: GroupShape, b: Mat, cmat: Mat) -> bool:
    eps = shape.epsilon
    lhs = cmat * eps + cmat.star()
    if shape.r > 0:
        lhs = lhs + b.star() * _theta_hat(shape) * b
    return lhs.is_zero()


# ---------------------------------------------------------------------------
# level-descent representatives (the gamma list of the trace operator)


def descent_reps(shape: GroupShape, p: int, n_level: int, size_cap: int = 200000):
    """The 2n x 2n gamma-representatives of the level-descent operator at
    level p^n, enumerated over both (b1, c1) and (b2, c2) blocks."""
    alg, m, r, eps = shape.alg, shape.m, shape.r, shape.epsilon
    n = shape.n
    if n_level < 1:
        raise ValueError("n_level >= 1")
    w = Fraction(p) ** (n_level - 1)
    w_inv = 1 / w
    exps = [n_level - 1] * m
    pairs = []
    count_b = (p ** (n_level - 1)) ** (r * m * len(alg.basis()))
    count_c = p ** ((2 * n_level - 2) * _s_dim(alg, eps, m))
    if (count_b * count_c) ** 2 > size_cap:
        raise ValueError(f"descent enumeration of {(count_b*count_c)**2} matrices exceeds cap")
    for b in _b_matrix_reps(alg, r, m, p, exps):
        if r > 0:
            c0 = (b.star() * _theta_hat(shape) * b) * Fraction(-eps, 2)
        else:
            c0 = Mat.zeros(alg, m, m)
        for z in _s_reps_level(alg, eps, m, p, 2 * n_level - 2):
            pairs.append((b, c0 + z))
    out = []
    one_r = Mat.identity(alg, r) if r else None
    th_inv = shape.theta.inverse() if r else None
    half = Fraction(1, 2)
    for (b1, c1) in pairs:
        for (b2, c2) in pairs:
            if not (skew_condition_holds(shape, b1, c1)
                    and skew_condition_holds(shape, b2, c2)):
                raise AssertionError("constructed block fails the skew condition")
            zmm = Mat.zeros(alg, m, m)
            if r > 0:
                zrr = Mat.zeros(alg, r, r)
                zrm, zmr = Mat.zeros(alg, r, m), Mat.zeros(alg, m, r)
                g = Mat.from_blocks([
                    [one_r, zrm, zrm, zrr, b2 * (eps * half * w_inv), -(b1 * (eps * half * w_inv))],
                    [b2.star() * th_inv * eps, Mat.scalar(alg, m, w), zmm, -(b2.star() * half), -(c2 * w_inv), zmm],
                    [-(b1.star() * th_inv * eps), zmm, Mat.scalar(alg, m, w), -(b1.star() * half), zmm, c1 * w_inv],
                    [zrr, zrm, zrm, one_r, -(th_inv * b2 * w_inv), th_inv * b1 * w_inv],
                    [zmr, zmm, zmm, zmr, Mat.scalar(alg, m, w_inv), zmm],
                    [zmr, zmm, zmm, zmr, zmm, Mat.scalar(alg, m, w_inv)],
                ])
            else:
                g = Mat.from_blocks([
                    [Mat.scalar(alg, m, w), zmm, -(c2 * w_inv), zmm],
                    [zmm, Mat.scalar(alg, m, w), zmm, c1 * w_inv],
                    [zmm, zmm, Mat.scalar(alg, m, w_inv), zmm],
                    [zmm, zmm, zmm, Mat.scalar(alg, m, w_inv)],
                ])
            out.append(g)
    return out


def _s_dim(alg, eps, m):
    basis = alg.basis()
    diag_dim = sum(1 for b in basis
                   if alg.is_zero(alg.add(alg.mul(alg.scalar(eps), b), alg.conj(b))))
    return m * diag_dim + (m * (m - 1) // 2) * len(basis)


def _s_reps_level(alg, eps, m, p, level):
    """Representatives of S_m(O) / p^level S_m(O)."""
    basis = alg.basis()
    slots = []
    for i in range(m):
        diag_basis = [b for b in basis
                      if alg.is_zero(alg.add(alg.mul(alg.scalar(eps), b), alg.conj(b)))]
        slots.append((("diag", i), diag_basis))
    for i in range(m):
        for j in range(i + 1, m):
            slots.append((("pair", (i, j)), basis))
    mod = p ** level
    per_slot = [list(product(*[range(mod)] * len(bas))) for _, bas in slots]
    for combo in product(*per_slot):
        z = Mat.zeros(alg, m, m)
        for ((kind, pos), bas), coeffs in zip(slots, combo):
            x = alg.zero()
            for cf, b in zip(coeffs, bas):
                x = alg.add(x, alg.mul(alg.scalar(cf), b))
            if kind == "diag":
                z.e[pos][pos] = x
            else:
                i, j = pos
                z.e[i][j] = x
                z.e[j][i] = alg.neg(alg.mul(alg.scalar(eps), alg.conj(x)))
        yield z


# ---------------------------------------------------------------------------
# verification in the finite quotient G(Z/p^N)


class FiniteVerifier:
    """Exact double-coset verification in G(Z/p^N) for base-field shapes
    with r = 0 (split symplectic / orthogonal hyperbolic)."""

    def __init__(self, shape: GroupShape, p: int, c: int, depth: int, N: int | None = None):
        if shape.alg.kind != Algebra.FIELD or shape.r != 0:
            raise NotImplementedError("finite verification for base-field shapes with r = 0")
        if p == 2:
            raise ValueError("p = 2 is rejected")
        self.shape, self.p, self.c = shape, p, c
        self.depth = depth
        self.N = N if N is not None else c + 2 * depth
        if self.N < c + 2 * depth:
            raise ValueError("N must be at least c + 2 * depth")
        self.mod = p ** self.N
        self.scale = p ** (2 * depth)
        n = shape.n
        eps = shape.epsilon
        self.n = n
        phi = np.zeros((n, n), dtype=np.int64)
        m = shape.m
        for i in range(m):
            phi[i, m + i] = 1
            phi[m + i, i] = eps
        self.phi = phi % self.mod
        self.phi_inv = np.zeros_like(phi)
        for i in range(m):
            self.phi_inv[i, m + i] = eps
            self.phi_inv[m + i, i] = 1
        self.phi_inv %= self.mod

    # -- scaled matrices --------------------------------------------------

    def scale_matrix(self, g: Mat) -> np.ndarray:
        """p^depth * g reduced mod p^N (entries must become integral)."""
        out = np.zeros((self.n, self.n), dtype=np.int64)
        s = Fraction(self.p) ** self.depth
        for i in range(self.n):
            for j in range(self.n):
                x = Fraction(g.e[i][j]) * s
                if x.denominator != 1:
                    raise ValueError(f"entry ({i},{j}) still has denominator after scaling")
                out[i, j] = int(x) % self.mod
        return out

    def left_tester(self, B: np.ndarray) -> np.ndarray:
        """Phi B* Phi^(-1), the scaled inverse up to p^(2 depth)."""
        return (self.phi @ B.T @ self.phi_inv) % self.mod

    def in_scaled_k(self, M: np.ndarray) -> bool:
        """Is M = p^(2 depth) k with k in the image of K(p^c)?"""
        if (M % self.scale).any():
            return False
        T = (M // self.scale) % (self.p ** (self.N - 2 * self.depth))
        m = self.shape.m
        return not (T[m:, :m] % (self.p ** self.c)).any()

    def same_coset(self, WA: np.ndarray, B: np.ndarray) -> bool:
        return self.in_scaled_k((WA @ B) % self.mod)

    # -- congruence-subgroup generators ------------------------------------

    def k_generators(self):
        """Generators of the image of K(p^c) in G(Z/p^N), via the Iwahori
        factorization into lower p^c-unipotents, Levi and upper unipotents."""
        m, eps, mod = self.shape.m, self.shape.epsilon, self.mod
        gens = []

        def sym_basis():
            out = []
            for i in range(m):
                for j in range(i, m):
                    b = np.zeros((m, m), dtype=np.int64)
                    if i == j:
                        if eps == -1:
                            b[i, i] = 1
                        else:
                            continue
                    else:
                        b[i, j] = 1
                        b[j, i] = -eps  # eps b + b^t = 0
                    out.append(b)
            return out

        for b in sym_basis():
            up = np.eye(self.n, dtype=np.int64)
            up[:m, m:] = b
            gens.append(up % mod)
            lo = np.eye(self.n, dtype=np.int64)
            lo[m:, :m] = (self.p ** self.c) * b
            gens.append(lo % mod)
        # Levi: GL_m generators diag(a, a^-t)
        mats = []
        g0 = _primitive_root(self.p)
        a = np.eye(m, dtype=np.int64)
        a[0, 0] = g0
        mats.append(a)
        for i in range(m):
            for j in range(m):
                if i != j:
                    a = np.eye(m, dtype=np.int64)
                    a[i, j] = 1
                    mats.append(a)
        for a in mats:
            ai = _mod_matrix_inverse(a, self.p, self.N)
            d = np.zeros((self.n, self.n), dtype=np.int64)
            d[:m, :m] = a
            d[m:, m:] = ai.T
            gens.append(d % mod)
        return gens

    # -- verification -------------------------------------------------------

    def verify(self, xi_u_exps, reps) -> DecompositionReport:
        scaled = [self.scale_matrix(g) for g in reps]
        testers = [self.left_tester(A) for A in scaled]
        failures = []
        disjoint = True
        for i in range(len(scaled)):
            for j in range(i + 1, len(scaled)):
                if self.same_coset(testers[i], scaled[j]):
                    disjoint = False
                    failures.append({"kind": "not-disjoint", "pair": (i, j)})
        # orbit of xi K under left multiplication by K-generators
        m = self.shape.m
        xi = np.zeros((self.n, self.n), dtype=np.int64)
        s = self.p ** self.depth
        for i, a in enumerate(xi_u_exps):
            if a > self.depth:
                raise ValueError("depth smaller than xi valuation")
            xi[i, i] = (self.p ** a * s) % self.mod
            xi[m + i, m + i] = s // self.p ** a
        gens = self.k_generators()
        orbit = [xi % self.mod]
        orbit_testers = [self.left_tester(orbit[0])]
        frontier = [orbit[0]]
        while frontier:
            new_frontier = []
            for g in frontier:
                for sgen in gens:
                    cand = (sgen @ g) % self.mod
                    stack = np.stack(orbit_testers)
                    prods = (stack @ cand) % self.mod
                    hit = False
                    for k in range(prods.shape[0]):
                        if self.in_scaled_k(prods[k]):
                            hit = True
                            break
                    if not hit:
                        orbit.append(cand)
                        orbit_testers.append(self.left_tester(cand))
                        new_frontier.append(cand)
            frontier = new_frontier
        covers = True
        # every rep must lie in the orbit, and counts must match
        for i, A in enumerate(scaled):
            WA = testers[i]
            if not any(self.in_scaled_k((WA @ g) % self.mod) for g in orbit):
                covers = False
                failures.append({"kind": "rep-outside-double-coset", "rep": i})
        if len(orbit) != len(reps):
            covers = False
            failures.append({"kind": "count-mismatch", "orbit": len(orbit),
                             "reps": len(reps)})
        return DecompositionReport(count=len(reps), disjoint=disjoint,
                                   covers=covers and disjoint, failures=failures)


def _primitive_root(p: int) -> int:
    from .residue import ZModRing
    return ZModRing(p, 1).unit_generator()


def _mod_matrix_inverse(a: np.ndarray, p: int, N: int) -> np.ndarray:
    mod = p ** N
    m = a.shape[0]
    aug = np.concatenate([a % mod, np.eye(m, dtype=np.int64)], axis=1)
    aug = aug % mod
    for col in range(m):
        piv = next(r for r in range(col, m) if aug[r, col] % p != 0)
        if piv != col:
            aug[[piv, col]] = aug[[col, piv]]
        inv = pow(int(aug[col, col]), -1, mod)
        aug[col] = (aug[col] * inv) % mod
        for r in range(m):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % mod
    return aug[:, m:]


def verify_decomposition(shape: GroupShape, p: int, c: int, u_exps, reps,
                         N: int | None = None) -> DecompositionReport:
    """Check that reps are pairwise-disjoint coset representatives whose
    union is K(p^c) xi K(p^c) inside G(Z/p^N)."""
    depth = max([abs(int(a)) for a in u_exps] + [0])
    ver = FiniteVerifier(shape, p, c, depth, N)
    return ver.verify(list(u_exps), reps)
