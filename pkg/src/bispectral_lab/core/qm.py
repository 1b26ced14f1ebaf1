"""Quasi-monomials: finite Q-linear combinations of x^gamma (ln x)^j.

These span the kernels of Bessel operators and the coefficients of all the
differential operators in the Darboux machinery.  The class of sums is closed
under d/dx and under the Euler derivative D = x d/dx; fractions with a
log-free denominator are closed under everything we need, including the
quotient rule.
"""

from __future__ import annotations

from fractions import Fraction

from bispectral_lab.core.jets import Jet, Q, log_jet, power_jet, qq


class PoleAtOne(ArithmeticError):
    """Raised when a quasi-monomial fraction is evaluated/jetted at x=1 but
    its denominator vanishes there."""


class QuasiMonomialSum:
    """sum of c * x^gamma * (ln x)^j, stored as {(gamma, j): c} with no zeros."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (gamma, j), c in terms.items():
                c = qq(c)
                if c != 0:
                    key = (qq(gamma), int(j))
                    clean[key] = clean.get(key, Q(0)) + c
                    if clean[key] == 0:
                        del clean[key]
        self.terms = clean

    # construction

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(Q(0), 0): Q(1)})

    @classmethod
    def monomial(cls, c, gamma, j=0):
        return cls({(qq(gamma), int(j)): qq(c)})

    @classmethod
    def from_terms(cls, triples):
        """triples: iterable of (c, gamma, j)."""
        d = {}
        for c, gamma, j in triples:
            key = (qq(gamma), int(j))
            d[key] = d.get(key, Q(0)) + qq(c)
        return cls(d)

    # predicates

    def is_zero(self):
        return not self.terms

    def is_log_free(self):
        return all(j == 0 for (_, j) in self.terms)

    def is_polynomial(self):
        return all(j == 0 and g.denominator == 1 and g >= 0 for (g, j) in self.terms)

    def min_exponent(self):
        if not self.terms:
            raise ValueError("zero sum has no exponents")
        return min(g for (g, _) in self.terms)

    def support(self):
        return sorted(self.terms)

    # ring operations

    def __add__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, Q(0)) + c
        return QuasiMonomialSum(d)

    def __sub__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, Q(0)) - c
        return QuasiMonomialSum(d)

    def __neg__(self):
        return QuasiMonomialSum({k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = qq(c)
        return QuasiMonomialSum({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, QuasiMonomialSum):
            return self.scale(other)
        d = {}
        for (g1, j1), c1 in self.terms.items():
            for (g2, j2), c2 in other.terms.items():
                key = (g1 + g2, j1 + j2)
                d[key] = d.get(key, Q(0)) + c1 * c2
        return QuasiMonomialSum(d)

    __rmul__ = __mul__

    def x_shift_mul(self, gamma):
        """Multiply by x^gamma."""
        gamma = qq(gamma)
        return QuasiMonomialSum({(g + gamma, j): c for (g, j), c in self.terms.items()})

    def derivative(self):
        """d/dx: x^g ln^j -> g x^(g-1) ln^j + j x^(g-1) ln^(j-1)."""
        d = {}
        for (g, j), c in self.terms.items():
            if g != 0:
                key = (g - 1, j)
                d[key] = d.get(key, Q(0)) + c * g
            if j > 0:
                key = (g - 1, j - 1)
                d[key] = d.get(key, Q(0)) + c * j
        return QuasiMonomialSum(d)

    def euler(self):
        """D = x d/dx; keeps exponents."""
        d = {}
        for (g, j), c in self.terms.items():
            if g != 0:
                key = (g, j)
                d[key] = d.get(key, Q(0)) + c * g
            if j > 0:
                key = (g, j - 1)
                d[key] = d.get(key, Q(0)) + c * j
        return QuasiMonomialSum(d)

    def shift_x(self, a):
        """Substitute x -> x + a.  Only for polynomial sums."""
        if not self.is_polynomial():
            raise ValueError("x-translation needs a polynomial quasi-monomial sum")
        a = qq(a)
        out = {}
        for (g, _), c in self.terms.items():
            n = int(g)
            coef = Q(1)
            # binomial expansion of (x+a)^n
            for i in range(n + 1):
                key = (Q(i), 0)
                out[key] = out.get(key, Q(0)) + c * coef * a ** (n - i)
                coef = coef * (n - i) / (i + 1)
        return QuasiMonomialSum(out)

    # evaluation

    def eval_at_one(self):
        """Value at x = 1 (where ln x = 0)."""
        return sum((c for (g, j), c in self.terms.items() if j == 0), Q(0))

    def jet(self, order):
        """Jet at x = 1 in s = x - 1, exact through the requested order."""
        maxj = max((j for (_, j) in self.terms), default=0)
        logpows = [Jet.scalar(1, order)]
        if maxj:
            lj = log_jet(order)
            for _ in range(maxj):
                logpows.append(logpows[-1] * lj)
        out = Jet.zero(order)
        for (g, j), c in sorted(self.terms.items()):
            out = out + (power_jet(g, order) * logpows[j]).scale(c)
        return out

    def __eq__(self, other):
        if not isinstance(other, QuasiMonomialSum):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (g, j), c in sorted(self.terms.items()):
            s = str(c)
            if g != 0:
                s += "*x^%s" % g
            if j:
                s += "*ln(x)^%d" % j if j > 1 else "*ln(x)"
            bits.append(s)
        return " + ".join(bits)

    __repr__ = __str__


class QuasiMonomialFraction:
    """num/den with den a nonzero log-free QuasiMonomialSum.

    Normal form: the minimal exponent of den is 0 (the x^gamma factor is
    pushed into num) and the coefficient of that minimal term is 1.  Equality
    is decided by cross-multiplication, so the normal form is cosmetic but
    makes serialization canonical.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = QuasiMonomialSum.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not den.is_log_free():
            raise ValueError("denominator must be log-free")
        if num.is_zero():
            self.num = QuasiMonomialSum.zero()
            self.den = QuasiMonomialSum.one()
            return
        g0 = den.min_exponent()
        c0 = den.terms[(g0, 0)]
        num = num.x_shift_mul(-g0).scale(1 / c0)
        den = den.x_shift_mul(-g0).scale(1 / c0)
        self.num = num
        self.den = den

    @classmethod
    def from_sum(cls, s):
        return cls(s)

    @classmethod
    def zero(cls):
        return cls(QuasiMonomialSum.zero())

    @classmethod
    def one(cls):
        return cls(QuasiMonomialSum.one())

    @classmethod
    def monomial(cls, c, gamma, j=0):
        return cls(QuasiMonomialSum.monomial(c, gamma, j))

    def is_zero(self):
        return self.num.is_zero()

    def is_sum(self):
        return self.den == QuasiMonomialSum.one()

    def as_sum(self):
        if not self.is_sum():
            raise ValueError("fraction has a nontrivial denominator: %s" % self)
        return self.num

    def __add__(self, other):
        other = _coerce(other)
        return QuasiMonomialFraction(self.num * other.den + other.num * self.den,
                                     self.den * other.den)

    def __sub__(self, other):
        other = _coerce(other)
        return QuasiMonomialFraction(self.num * other.den - other.num * self.den,
                                     self.den * other.den)

    def __neg__(self):
        return QuasiMonomialFraction(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuasiMonomialFraction(self.num.scale(other), self.den)
        other = _coerce(other)
        return QuasiMonomialFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        if not other.num.is_log_free():
            raise ValueError("cannot invert a fraction with logs in its numerator")
        return QuasiMonomialFraction(self.num * other.den, self.den * other.num)

    def inverse(self):
        return QuasiMonomialFraction.one() / self

    def x_shift_mul(self, gamma):
        return QuasiMonomialFraction(self.num.x_shift_mul(gamma), self.den)

    def derivative(self):
        return QuasiMonomialFraction(self.num.derivative() * self.den
                                     - self.num * self.den.derivative(),
                                     self.den * self.den)

    def euler(self):
        return QuasiMonomialFraction(self.num.euler() * self.den
                                     - self.num * self.den.euler(),
                                     self.den * self.den)

    def eval_at_one(self):
        d = self.den.eval_at_one()
        if d == 0:
            raise PoleAtOne("denominator vanishes at x=1: %s" % self.den)
        return self.num.eval_at_one() / d

    def jet(self, order):
        dj = self.den.jet(order)
        if dj.order >= 0 and dj.coeffs[0] == 0:
            raise PoleAtOne("denominator vanishes at x=1: %s" % self.den)
        return self.num.jet(order) / dj

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiMonomialFraction.monomial(other, 0)
        if not isinstance(other, QuasiMonomialFraction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __str__(self):
        if self.is_sum():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    __repr__ = __str__


def _coerce(v):
    if isinstance(v, QuasiMonomialFraction):
        return v
    if isinstance(v, QuasiMonomialSum):
        return QuasiMonomialFraction(v)
    return QuasiMonomialFraction.monomial(qq(v), 0)


def qm_derivative(f):
    """d/dx on a QuasiMonomialSum (or fraction, via the quotient rule)."""
    return f.derivative()


def qm_det(matrix):
    """Determinant of a small matrix of QuasiMonomialSums, by cofactors."""
    n = len(matrix)
    if n == 0:
        return QuasiMonomialSum.one()
    if n == 1:
        return matrix[0][0]
    acc = QuasiMonomialSum.zero()
    for i in range(n):
        if matrix[i][0].is_zero():
            continue
        minor = [row[1:] for k, row in enumerate(matrix) if k != i]
        term = matrix[i][0] * qm_det(minor)
        acc = acc + (term if i % 2 == 0 else -term)
    return acc
