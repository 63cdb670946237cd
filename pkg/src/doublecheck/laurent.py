"""Multivariate Laurent monomials, polynomials and Euler products.

The symbol alphabet is open-ended; the conventional names are
X = q^(-s), Q = q^(1/2), a1..am / b1..bm for Satake parameters and c for a
symbolic character value.  All q-powers are carried as integer powers of Q,
so every exponent is an integer.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclotomic

X, Q = "X", "Q"


def _coerce_coeff(c):
    if isinstance(c, Cyclotomic):
        return c
    return Cyclotomic.rational(c)


class LaurentMonomial:
    """coeff * prod(sym^exp)."""

    __slots__ = ("coeff", "exps")

    def __init__(self, coeff=1, exps=None):
        self.coeff = _coerce_coeff(coeff)
        self.exps = {}
        if exps:
            for s, e in exps.items():
                if int(e) != e:
                    raise ValueError(f"non-integer exponent {e} for {s}")
                if e:
                    self.exps[s] = int(e)

    @staticmethod
    def one():
        return LaurentMonomial(1)

    def key(self):
        return tuple(sorted(self.exps.items()))

    def __mul__(self, other):
        if isinstance(other, LaurentMonomial):
            exps = dict(self.exps)
            for s, e in other.exps.items():
                exps[s] = exps.get(s, 0) + e
            return LaurentMonomial(self.coeff * other.coeff, exps)
        return LaurentMonomial(self.coeff * _coerce_coeff(other), self.exps)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k == 0:
            return LaurentMonomial.one()
        coeff = self.coeff ** k
        return LaurentMonomial(coeff, {s: e * k for s, e in self.exps.items()})

    def __neg__(self):
        return LaurentMonomial(-1 * self.coeff, self.exps)

    def degree(self, sym: str) -> int:
        return self.exps.get(sym, 0)

    def substitute(self, table: dict) -> "LaurentMonomial":
        """Replace symbols by monomials (symbols absent from table are kept)."""
        out = LaurentMonomial(self.coeff)
        for s, e in self.exps.items():
            rep = table.get(s)
            if rep is None:
                out = out * LaurentMonomial(1, {s: e})
            else:
                out = out * (rep ** e)
        return out

    def evaluate(self, values: dict):
        """Numeric / exact evaluation; every symbol must be assigned."""
        out = self.coeff if isinstance(self.coeff, Cyclotomic) else Cyclotomic.rational(self.coeff)
        acc_exact = out
        acc_float = None
        exact = True
        for s, e in self.exps.items():
            v = values[s]
            if isinstance(v, (Cyclotomic, int, Fraction)):
                vv = v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v)
                acc_exact = acc_exact * (vv ** e)
            else:
                exact = False
                acc_float = (acc_float if acc_float is not None else 1.0) * complex(v) ** e
        if exact:
            return acc_exact
        return acc_exact.eval_complex() * acc_float

    def __eq__(self, other):
        return (isinstance(other, LaurentMonomial)
                and self.coeff == other.coeff and self.exps == other.exps)

    def __repr__(self):
        parts = [f"({self.coeff})"]
        parts += [f"{s}^{e}" if e != 1 else s for s, e in sorted(self.exps.items())]
        return "*".join(parts)


class LaurentPoly:
    """Finite sum of monomials, keyed by exponent vector."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m in terms:
                self._add_monomial(m)

    def _add_monomial(self, m: LaurentMonomial):
        k = m.key()
        c = self.terms.get(k)
        c = m.coeff if c is None else c + m.coeff
        if c.is_zero():
            self.terms.pop(k, None)
        else:
            self.terms[k] = c

    @staticmethod
    def from_monomial(m):
        p = LaurentPoly()
        p._add_monomial(m)
        return p

    @staticmethod
    def one():
        return LaurentPoly.from_monomial(LaurentMonomial.one())

    def monomials(self):
        return [LaurentMonomial(c, dict(k)) for k, c in self.terms.items()]

    def __add__(self, other):
        out = LaurentPoly()
        out.terms = dict(self.terms)
        for k, c in other.terms.items():
            cur = out.terms.get(k)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                out.terms.pop(k, None)
            else:
                out.terms[k] = cur
        return out

    def __neg__(self):
        out = LaurentPoly()
        out.terms = {k: -1 * c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentMonomial):
            other = LaurentPoly.from_monomial(other)
        out = LaurentPoly()
        for k1, c1 in self.terms.items():
            m1 = LaurentMonomial(c1, dict(k1))
            for k2, c2 in other.terms.items():
                out._add_monomial(m1 * LaurentMonomial(c2, dict(k2)))
        return out

    def is_zero(self):
        return not self.terms

    def degree(self, sym: str) -> int:
        return max((dict(k).get(sym, 0) for k in self.terms), default=0)

    def truncate(self, sym: str, bound: int) -> "LaurentPoly":
        out = LaurentPoly()
        out.terms = {k: c for k, c in self.terms.items() if dict(k).get(sym, 0) <= bound}
        return out

    def evaluate(self, values: dict):
        vals = [LaurentMonomial(c, dict(k)).evaluate(values) for k, c in self.terms.items()]
        if all(isinstance(v, Cyclotomic) for v in vals):
            out = Cyclotomic.rational(0)
            for v in vals:
                out = out + v
            return out
        return sum(complex(v.eval_complex()) if isinstance(v, Cyclotomic) else v for v in vals)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(repr(LaurentMonomial(c, dict(k)))
                          for k, c in sorted(self.terms.items()))


class EulerProduct:
    """prefactor * prod over factors (1 - u) or (1 - u)^(-1), u a monomial."""

    __slots__ = ("prefactor", "factors")

    def __init__(self, factors=None, prefactor=None):
        self.prefactor = prefactor if prefactor is not None else LaurentMonomial.one()
        self.factors = list(factors or [])

    @staticmethod
    def one():
        return EulerProduct()

    def __mul__(self, other: "EulerProduct") -> "EulerProduct":
        return EulerProduct(self.factors + other.factors,
                            self.prefactor * other.prefactor)

    def inverted(self) -> "EulerProduct":
        if self.prefactor != LaurentMonomial.one():
            raise ValueError("can only invert a product with trivial prefactor")
        return EulerProduct([(u, not inv) for u, inv in self.factors])

    def degree(self, sym: str) -> int:
        return sum(u.degree(sym) for u, inv in self.factors if not inv) \
            + self.prefactor.degree(sym)

    def substitute(self, table: dict) -> "EulerProduct":
        return EulerProduct([(u.substitute(table), inv) for u, inv in self.factors],
                            self.prefactor.substitute(table))

    def expand(self, truncation=None) -> LaurentPoly:
        """Multiply out; inverted factors need an X-degree truncation bound."""
        out = LaurentPoly.from_monomial(self.prefactor)
        one = LaurentMonomial.one()
        for u, inv in self.factors:
            if not inv:
                out = out * (LaurentPoly.from_monomial(one) - LaurentPoly.from_monomial(u))
            else:
                d = u.degree(X)
                if truncation is None:
                    raise ValueError("inverted factor needs a truncation order")
                if d < 1:
                    raise ValueError(f"inverted factor {u} has X-degree {d}; "
                                     "geometric expansion will not terminate")
                geo = LaurentPoly.one()
                power = one
                for _ in range(truncation // d):
                    power = power * u
                    geo._add_monomial(power)
                out = out * geo
            if truncation is not None:
                out = out.truncate(X, truncation)
        return out

    def evaluate(self, values: dict):
        pre = self.prefactor.evaluate(values)
        val = pre if not isinstance(pre, Cyclotomic) else pre
        exact = isinstance(pre, Cyclotomic)
        acc = pre
        for u, inv in self.factors:
            uv = u.evaluate(values)
            if isinstance(uv, Cyclotomic) and exact:
                f = Cyclotomic.rational(1) - uv
                acc = acc * (f.inverse() if inv else f)
            else:
                if exact:
                    acc = acc.eval_complex()
                    exact = False
                uvc = uv.eval_complex() if isinstance(uv, Cyclotomic) else uv
                acc = acc * ((1 - uvc) ** -1 if inv else (1 - uvc))
        return acc

    def numerator_denominator(self):
        num = [u for u, inv in self.factors if not inv]
        den = [u for u, inv in self.factors if inv]
        return num, den

    def __repr__(self):
        parts = []
        if self.prefactor != LaurentMonomial.one():
            parts.append(repr(self.prefactor))
        for u, inv in self.factors:
            parts.append(f"(1 - {u!r})" + ("^-1" if inv else ""))
        return " * ".join(parts) if parts else "1"


def rational_function_equal(lhs: EulerProduct, rhs: EulerProduct):
    """Cross-multiplied exact equality of two (1-u)-factor products.

    Returns (equal, witness) where witness is a differing exponent key when
    unequal.
    """
    lnum, lden = lhs.numerator_denominator()
    rnum, rden = rhs.numerator_denominator()
    left = EulerProduct([(u, False) for u in lnum + rden], lhs.prefactor).expand()
    right = EulerProduct([(u, False) for u in rnum + lden], rhs.prefactor).expand()
    diff = left - right
    if diff.is_zero():
        return True, None
    key = sorted(diff.terms)[0]
    return False, (key, diff.terms[key])
