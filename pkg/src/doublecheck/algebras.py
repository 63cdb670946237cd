"""Scalar algebras with involution and exact matrices over them.

Four kinds of coefficient algebra appear: the base field itself, a quadratic
extension with its Galois conjugation, a quaternion algebra (structure
constants a, b: i^2=a, j^2=b, ij=-ji) with the main involution, and the split
quaternion model Mat_2 with the adjugate involution.  Scalars are Fractions or
small tuples of Fractions; all arithmetic is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

F = Fraction


class Algebra:
    """Descriptor for the coefficient algebra (D, rho)."""

    FIELD = "field"
    QUAD = "quadratic"
    QUAT = "quaternion"
    SPLIT_QUAT = "split-quaternion"

    def __init__(self, kind, a=None, b=None, d=None):
        self.kind = kind
        if kind == Algebra.QUAT:
            self.a, self.b = F(a), F(b)
        elif kind == Algebra.QUAD:
            self.d = F(d)

    @staticmethod
    def field():
        return Algebra(Algebra.FIELD)

    @staticmethod
    def quadratic(d):
        return Algebra(Algebra.QUAD, d=d)

    @staticmethod
    def quaternion(a, b):
        return Algebra(Algebra.QUAT, a=a, b=b)

    @staticmethod
    def split_quaternion():
        return Algebra(Algebra.SPLIT_QUAT)

    # -- element constructors ---------------------------------------------

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def scalar(self, x):
        x = F(x)
        if self.kind == Algebra.FIELD:
            return x
        if self.kind == Algebra.QUAD:
            return (x, F(0))
        if self.kind == Algebra.QUAT:
            return (x, F(0), F(0), F(0))
        return (x, F(0), F(0), x)  # Mat2 diagonal, stored row-major (p,q,r,s)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return self.scalar(x)
        return x

    def basis(self):
        """F-basis of the algebra as elements."""
        if self.kind == Algebra.FIELD:
            return [F(1)]
        if self.kind == Algebra.QUAD:
            return [(F(1), F(0)), (F(0), F(1))]
        if self.kind == Algebra.QUAT:
            e = [F(0)] * 4
            out = []
            for i in range(4):
                v = e[:]
                v[i] = F(1)
                out.append(tuple(v))
            return out
        out = []
        for i in range(4):
            v = [F(0)] * 4
            v[i] = F(1)
            out.append(tuple(v))
        return out

    def coords(self, x):
        """Coordinates of x in basis() order."""
        x = self.coerce(x)
        if self.kind == Algebra.FIELD:
            return [x]
        return list(x)

    # -- arithmetic ---------------------------------------------------------

    def add(self, x, y):
        x, y = self.coerce(x), self.coerce(y)
        if self.kind == Algebra.FIELD:
            return x + y
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        x = self.coerce(x)
        if self.kind == Algebra.FIELD:
            return -x
        return tuple(-a for a in x)

    def mul(self, x, y):
        x, y = self.coerce(x), self.coerce(y)
        k = self.kind
        if k == Algebra.FIELD:
            return x * y
        if k == Algebra.QUAD:
            (u1, v1), (u2, v2) = x, y
            return (u1 * u2 + self.d * v1 * v2, u1 * v2 + v1 * u2)
        if k == Algebra.QUAT:
            t1, x1, y1, z1 = x
            t2, x2, y2, z2 = y
            a, b = self.a, self.b
            return (
                t1 * t2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
                t1 * x2 + x1 * t2 - b * y1 * z2 + b * z1 * y2,
                t1 * y2 + y1 * t2 + a * x1 * z2 - a * z1 * x2,
                t1 * z2 + z1 * t2 + x1 * y2 - y1 * x2,
            )
        p1, q1, r1, s1 = x
        p2, q2, r2, s2 = y
        return (p1 * p2 + q1 * r2, p1 * q2 + q1 * s2,
                r1 * p2 + s1 * r2, r1 * q2 + s1 * s2)

    def conj(self, x):
        """The involution rho."""
        x = self.coerce(x)
        k = self.kind
        if k == Algebra.FIELD:
            return x
        if k == Algebra.QUAD:
            return (x[0], -x[1])
        if k == Algebra.QUAT:
            return (x[0], -x[1], -x[2], -x[3])
        p, q, r, s = x
        return (s, -q, -r, p)

    def nu(self, x):
        """Reduced norm of a scalar to the center (an algebra element for
        degree-1 kinds, a Fraction for the quaternion kinds)."""
        x = self.coerce(x)
        k = self.kind
        if k in (Algebra.FIELD, Algebra.QUAD):
            return x
        if k == Algebra.QUAT:
            t, xx, y, z = x
            return t * t - self.a * xx * xx - self.b * y * y + self.a * self.b * z * z
        p, q, r, s = x
        return p * s - q * r

    def tau(self, x):
        """Reduced trace of a scalar to the center."""
        x = self.coerce(x)
        k = self.kind
        if k in (Algebra.FIELD, Algebra.QUAD):
            return x
        if k == Algebra.QUAT:
            return 2 * x[0]
        return x[0] + x[3]

    def galois_norm(self, x):
        """x * x^rho, a Fraction for field/quadratic kinds (N_{E/F})."""
        x = self.coerce(x)
        if self.kind == Algebra.FIELD:
            return x * x
        if self.kind == Algebra.QUAD:
            return x[0] * x[0] - self.d * x[1] * x[1]
        return self.nu(x)

    def is_zero(self, x):
        x = self.coerce(x)
        if self.kind == Algebra.FIELD:
            return x == 0
        return all(c == 0 for c in x)

    def is_invertible(self, x):
        x = self.coerce(x)
        if self.kind == Algebra.FIELD:
            return x != 0
        if self.kind == Algebra.QUAD:
            return self.galois_norm(x) != 0
        return self.nu(x) != 0

    def inv(self, x):
        x = self.coerce(x)
        k = self.kind
        if k == Algebra.FIELD:
            return F(1) / x
        if k == Algebra.QUAD:
            n = self.galois_norm(x)
            c = self.conj(x)
            return (c[0] / n, c[1] / n)
        n = self.nu(x)
        if n == 0:
            raise ZeroDivisionError("non-invertible element")
        c = self.conj(x)
        return tuple(v / n for v in c)

    def to_complex(self, x):
        """Embedding into Mat_1(C) or Mat_2(C) used for float checks."""
        x = self.coerce(x)
        k = self.kind
        if k == Algebra.FIELD:
            return np.array([[complex(x)]])
        if k == Algebra.QUAD:
            root = complex(self.d) ** 0.5 if self.d >= 0 else 1j * abs(complex(self.d)) ** 0.5
            return np.array([[complex(x[0]) + complex(x[1]) * root]])
        if k == Algebra.SPLIT_QUAT:
            return np.array([[complex(x[0]), complex(x[1])],
                             [complex(x[2]), complex(x[3])]])
        ra = complex(self.a) ** 0.5 if self.a >= 0 else 1j * abs(complex(self.a)) ** 0.5
        t, xx, y, z = (complex(v) for v in x)
        b = complex(self.b)
        return np.array([[t + xx * ra, y + z * ra],
                         [b * (y - z * ra), t - xx * ra]])

    def embed_dim(self):
        return 1 if self.kind in (Algebra.FIELD, Algebra.QUAD) else 2


class Mat:
    """Dense exact matrix over an Algebra."""

    __slots__ = ("alg", "rows", "cols", "e")

    def __init__(self, alg: Algebra, entries):
        self.alg = alg
        self.e = [[alg.coerce(x) for x in row] for row in entries]
        self.rows = len(self.e)
        self.cols = len(self.e[0]) if self.e else 0

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zeros(alg, rows, cols):
        return Mat(alg, [[0] * cols for _ in range(rows)])

    @staticmethod
    def identity(alg, n):
        return Mat(alg, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def scalar(alg, n, x):
        return Mat(alg, [[x if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def diag(alg, entries):
        n = len(entries)
        return Mat(alg, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_blocks(grid):
        """Assemble from a 2D grid of Mat blocks (None for zero blocks is not
        allowed; pass explicit zero matrices so sizes are unambiguous)."""
        alg = grid[0][0].alg
        rows = []
        for brow in grid:
            h = brow[0].rows
            for i in range(h):
                row = []
                for blk in brow:
                    row.extend(blk.e[i])
                rows.append(row)
        return Mat(alg, rows)

    def block(self, r0, r1, c0, c1):
        return Mat(self.alg, [row[c0:c1] for row in self.e[r0:r1]])

    def copy(self):
        return Mat(self.alg, [row[:] for row in self.e])

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        return Mat(self.alg, [[self.alg.add(a, b) for a, b in zip(r1, r2)]
                              for r1, r2 in zip(self.e, other.e)])

    def __neg__(self):
        return Mat(self.alg, [[self.alg.neg(a) for a in row] for row in self.e])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = self.alg.scalar(other)
            return Mat(self.alg, [[self.alg.mul(a, s) for a in row] for row in self.e])
        assert self.cols == other.rows, (self.cols, other.rows)
        alg = self.alg
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = alg.zero()
                for k in range(self.cols):
                    acc = alg.add(acc, alg.mul(self.e[i][k], other.e[k][j]))
                row.append(acc)
            out.append(row)
        return Mat(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = self.alg.scalar(other)
            return Mat(self.alg, [[self.alg.mul(s, a) for a in row] for row in self.e])
        return NotImplemented

    def star(self):
        """Conjugate transpose x* = t(x^rho)."""
        alg = self.alg
        return Mat(alg, [[alg.conj(self.e[i][j]) for i in range(self.rows)]
                         for j in range(self.cols)])

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self.e == other.e)

    def is_zero(self):
        return all(self.alg.is_zero(x) for row in self.e for x in row)

    def inverse(self):
        """Inverse by row reduction; left-divides by invertible pivots."""
        assert self.rows == self.cols
        alg, n = self.alg, self.rows
        a = [row[:] for row in self.e]
        b = [[alg.one() if i == j else alg.zero() for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if alg.is_invertible(a[r][col])), None)
            if piv is None:
                raise ZeroDivisionError("matrix is not invertible")
            if piv != col:
                a[piv], a[col] = a[col], a[piv]
                b[piv], b[col] = b[col], b[piv]
            pinv = alg.inv(a[col][col])
            a[col] = [alg.mul(pinv, x) for x in a[col]]
            b[col] = [alg.mul(pinv, x) for x in b[col]]
            for r in range(n):
                if r != col and not alg.is_zero(a[r][col]):
                    f = a[r][col]
                    a[r] = [alg.add(x, alg.neg(alg.mul(f, y))) for x, y in zip(a[r], a[col])]
                    b[r] = [alg.add(x, alg.neg(alg.mul(f, y))) for x, y in zip(b[r], b[col])]
        return Mat(alg, b)

    def reduced_norm(self):
        """Reduced norm to the center: det for field/quadratic entries,
        Dieudonne-style elimination for quaternions, det of the flattening
        for the split model."""
        assert self.rows == self.cols
        alg, n = self.alg, self.rows
        if alg.kind == Algebra.SPLIT_QUAT:
            return self._split_det()
        a = [row[:] for row in self.e]
        sign_swaps = 0
        diag = []
        for col in range(n):
            piv = next((r for r in range(col, n) if alg.is_invertible(a[r][col])), None)
            if piv is None:
                if any(not alg.is_zero(a[r][col]) for r in range(col, n)):
                    raise ZeroDivisionError("nonzero non-invertible pivot column")
                return alg.zero() if alg.kind in (Algebra.FIELD, Algebra.QUAD) else F(0)
            if piv != col:
                a[piv], a[col] = a[col], a[piv]
                sign_swaps += 1
            pinv = alg.inv(a[col][col])
            for r in range(col + 1, n):
                if not alg.is_zero(a[r][col]):
                    f = alg.mul(a[r][col], pinv)
                    a[r] = [alg.add(x, alg.neg(alg.mul(f, y))) for x, y in zip(a[r], a[col])]
            diag.append(a[col][col])
        if alg.kind in (Algebra.FIELD, Algebra.QUAD):
            out = alg.one()
            for d in diag:
                out = alg.mul(out, d)
            if sign_swaps % 2:
                out = alg.neg(out)
            return out
        # quaternions: swaps have reduced norm +1, so no sign
        out = F(1)
        for d in diag:
            out = out * alg.nu(d)
        return out

    def _split_det(self):
        flat = self.flatten_split()
        return flat.reduced_norm()

    def flatten_split(self):
        """Mat_m(Mat_2(F)) -> Mat_2m(F)."""
        assert self.alg.kind == Algebra.SPLIT_QUAT
        base = Algebra.field()
        out = Mat.zeros(base, 2 * self.rows, 2 * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                p, q, r, s = self.e[i][j]
                out.e[2 * i][2 * j] = p
                out.e[2 * i][2 * j + 1] = q
                out.e[2 * i + 1][2 * j] = r
                out.e[2 * i + 1][2 * j + 1] = s
        return out

    def reduced_trace(self):
        alg = self.alg
        acc = alg.zero()
        for i in range(self.rows):
            acc = alg.add(acc, self.e[i][i])
        if alg.kind in (Algebra.FIELD, Algebra.QUAD):
            return acc
        return alg.tau(acc)

    def rank(self):
        """Rank over the fraction field (quaternion entries via flattening to
        the norm criterion column by column)."""
        alg = self.alg
        if alg.kind == Algebra.SPLIT_QUAT:
            return self.flatten_split().rank()
        a = [row[:] for row in self.e]
        r = 0
        for col in range(self.cols):
            piv = next((i for i in range(r, self.rows) if alg.is_invertible(a[i][col])), None)
            if piv is None:
                continue
            a[piv], a[r] = a[r], a[piv]
            pinv = alg.inv(a[r][col])
            for i in range(r + 1, self.rows):
                if not alg.is_zero(a[i][col]):
                    f = alg.mul(a[i][col], pinv)
                    a[i] = [alg.add(x, alg.neg(alg.mul(f, y))) for x, y in zip(a[i], a[r])]
            r += 1
        return r

    def to_complex(self) -> np.ndarray:
        d = self.alg.embed_dim()
        out = np.zeros((d * self.rows, d * self.cols), dtype=complex)
        for i in range(self.rows):
            for j in range(self.cols):
                out[d * i:d * i + d, d * j:d * j + d] = self.alg.to_complex(self.e[i][j])
        return out

    def __repr__(self):
        return "Mat(" + "; ".join(",".join(str(x) for x in row) for row in self.e) + ")"
